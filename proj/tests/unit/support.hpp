#pragma once

// Shared fixtures and independent reference computations for the unit tests.
// The references deliberately avoid the library's own code paths: plain loops
// in long double, no max-shift tricks beyond what is needed for range.

#include <cmath>
#include <cstdint>
#include <vector>

#include "maxent/dataset.hpp"
#include "maxent/linalg.hpp"
#include "maxent/maxent_core.hpp"
#include "maxent/mixture_model.hpp"
#include "maxent/rng.hpp"

namespace maxent::testing {

inline Matrix random_matrix(Index rows, Index cols, double scale, Rng& rng) {
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = rng.uniform(-scale, scale);
  }
  return m;
}

// Random SPD-ish covariance B B^T / n with optional rank deficiency.
inline Matrix random_covariance(Index n, Rng& rng, Index rank = -1) {
  if (rank < 0) rank = n;
  Matrix b(n, std::max<Index>(rank, 1));
  for (Index r = 0; r < b.rows(); ++r) {
    for (Index c = 0; c < b.cols(); ++c) b(r, c) = rank == 0 ? 0.0 : rng.normal();
  }
  Matrix s = b * b.transpose() / static_cast<double>(n);
  return 0.5 * (s + s.transpose());
}

inline GaussianMixture random_mixture(Index n, std::size_t m, Rng& rng, bool center = true) {
  std::vector<MixtureComponent> comps;
  std::vector<double> w(m);
  double total = 0.0;
  for (auto& x : w) total += (x = 0.2 + rng.uniform());
  for (std::size_t i = 0; i < m; ++i) {
    Vector mu(n);
    for (Index j = 0; j < n; ++j) mu[j] = 1.5 * rng.normal();
    comps.push_back({w[i] / total, mu, random_covariance(n, rng)});
  }
  // Renormalize exactly: the last weight absorbs round-off.
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) head += comps[i].weight;
  comps.back().weight = 1.0 - head;
  auto mixture = GaussianMixture::validate(comps);
  return center ? recenter_zero_mean(mixture) : mixture;
}

inline LabeledDataset random_dataset(std::size_t count, Index dim, int classes, Rng& rng,
                                     double scale = 1.0) {
  RowMatrix x(static_cast<Index>(count), dim);
  std::vector<int> labels(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (Index j = 0; j < dim; ++j) x(static_cast<Index>(i), j) = scale * rng.normal();
    labels[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(classes)));
  }
  return LabeledDataset(std::move(x), std::move(labels), classes);
}

inline std::vector<long double> ref_logits(const LinearSoftmaxModel& model, const Vector& x) {
  const Index c = model.class_count();
  const Index n = model.feature_dim();
  std::vector<long double> phi(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    long double s = 0;
    if (model.has_feature_map()) {
      for (Index k = 0; k < x.size(); ++k) s += (long double)model.feature_map()(i, k) * x[k];
    } else {
      s = x[i];
    }
    phi[i] = s;
  }
  std::vector<long double> z(static_cast<std::size_t>(c));
  for (Index j = 0; j < c; ++j) {
    long double s = 0;
    for (Index i = 0; i < n; ++i) s += (long double)model.classifier()(j, i) * phi[i];
    z[j] = s;
  }
  return z;
}

inline std::vector<long double> ref_softmax(const std::vector<long double>& z) {
  long double mx = z[0];
  for (auto v : z) mx = std::max(mx, v);
  long double s = 0;
  std::vector<long double> p(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) s += (p[i] = std::exp(z[i] - mx));
  for (auto& v : p) v /= s;
  return p;
}

inline long double ref_entropy(const std::vector<long double>& p) {
  long double h = 0;
  for (auto v : p) {
    if (v > 0) h -= v * std::log(v);
  }
  return h;
}

// Mean over the batch of -ln p_y - gamma H, or smoothed CE when eps >= 0.
inline long double ref_loss(const LinearSoftmaxModel& model, const LabeledDataset& batch,
                            double gamma, double eps = -1.0) {
  long double total = 0;
  const auto c = static_cast<std::size_t>(model.class_count());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Vector x = batch.features().row(static_cast<Index>(i)).transpose();
    const auto p = ref_softmax(ref_logits(model, x));
    const int y = batch.labels()[i];
    if (eps >= 0) {
      for (std::size_t j = 0; j < c; ++j) {
        const long double t = (j == static_cast<std::size_t>(y) ? 1.0L - eps : 0.0L) + eps / c;
        total -= t * std::log(p[j]);
      }
    } else {
      total += -std::log(p[y]) - gamma * ref_entropy(p);
    }
  }
  return total / batch.size();
}

}  // namespace maxent::testing
