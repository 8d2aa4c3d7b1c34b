#include "maxent/mixture_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxent/error.hpp"

namespace maxent {
namespace {

constexpr double kWeightTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;
constexpr double kCenterTolerance = 1e-10;

Matrix spectral_factor(const Matrix& covariance, std::size_t index) {
  const double scale = std::max(1.0, covariance.cwiseAbs().maxCoeff());
  const double asymmetry = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > kSymmetryTolerance * scale) {
    throw CovarianceError("covariance " + std::to_string(index) + " is not symmetric (max |S - S^T| = " +
                          std::to_string(asymmetry) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(covariance);
  if (solver.info() != Eigen::Success) {
    throw CovarianceError("eigendecomposition failed for covariance " + std::to_string(index));
  }
  const Vector& eigenvalues = solver.eigenvalues();
  const double largest = eigenvalues.maxCoeff();
  const double smallest = eigenvalues.minCoeff();
  if (smallest < -kPsdTolerance * std::max(largest, 0.0)) {
    throw CovarianceError("covariance " + std::to_string(index) +
                          " is not positive semidefinite (eigenvalue " + std::to_string(smallest) +
                          ")");
  }
  const Vector roots = eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal();
}

void require_centered(const GaussianMixture& mixture) {
  const double offset = mixture.mean().norm();
  if (offset > kCenterTolerance) {
    throw NotCenteredError("mixture mean has norm " + std::to_string(offset) +
                           "; recenter_zero_mean first");
  }
}

}  // namespace

GaussianMixture::GaussianMixture(std::vector<MixtureComponent> components,
                                 std::vector<Matrix> factors)
    : components_(std::move(components)), factors_(std::move(factors)) {
  double running = 0.0;
  cumulative_weights_.reserve(components_.size());
  for (const auto& c : components_) {
    running += c.weight;
    cumulative_weights_.push_back(running);
  }
}

GaussianMixture GaussianMixture::validate(std::vector<MixtureComponent> components) {
  if (components.empty()) throw ShapeError("mixture needs at least one component");
  const Index n = components.front().mean.size();
  if (n < 1) throw ShapeError("mixture dimension must be positive");

  double total = 0.0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (!std::isfinite(c.weight) || c.weight <= 0.0) {
      throw WeightError("weight " + std::to_string(i) + " must be positive, got " +
                        std::to_string(c.weight));
    }
    total += c.weight;
    if (c.mean.size() != n) {
      throw ShapeError("mean " + std::to_string(i) + " has dimension " +
                       std::to_string(c.mean.size()) + ", expected " + std::to_string(n));
    }
    if (c.covariance.rows() != n || c.covariance.cols() != n) {
      throw ShapeError("covariance " + std::to_string(i) + " is " +
                       std::to_string(c.covariance.rows()) + "x" +
                       std::to_string(c.covariance.cols()) + ", expected " + std::to_string(n) +
                       "x" + std::to_string(n));
    }
    if (!c.mean.allFinite()) throw ShapeError("mean " + std::to_string(i) + " is not finite");
    if (!c.covariance.allFinite()) {
      throw CovarianceError("covariance " + std::to_string(i) + " is not finite");
    }
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw WeightError("weights sum to " + std::to_string(total) + ", expected 1");
  }

  std::vector<Matrix> factors;
  factors.reserve(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    factors.push_back(spectral_factor(components[i].covariance, i));
  }
  return GaussianMixture(std::move(components), std::move(factors));
}

Vector GaussianMixture::mean() const {
  Vector total = Vector::Zero(dim());
  for (const auto& c : components_) total += c.weight * c.mean;
  return total;
}

bool GaussianMixture::is_centered(double tolerance) const { return mean().norm() <= tolerance; }

GaussianMixture recenter_zero_mean(const GaussianMixture& mixture) {
  const Vector offset = mixture.mean();
  std::vector<MixtureComponent> shifted = mixture.components();
  for (auto& c : shifted) c.mean -= offset;
  // A second pass removes the rounding left by the first subtraction.
  Vector residual = Vector::Zero(mixture.dim());
  for (const auto& c : shifted) residual += c.weight * c.mean;
  for (auto& c : shifted) c.mean -= residual;
  return GaussianMixture::validate(std::move(shifted));
}

GaussianMixture linear_transform(const GaussianMixture& mixture, const Matrix& map) {
  if (map.cols() != mixture.dim()) {
    throw ShapeError("feature map has " + std::to_string(map.cols()) + " columns, mixture dim is " +
                     std::to_string(mixture.dim()));
  }
  std::vector<MixtureComponent> mapped;
  mapped.reserve(mixture.count());
  for (const auto& c : mixture.components()) {
    Matrix cov = map * c.covariance * map.transpose();
    cov = 0.5 * (cov + cov.transpose()).eval();
    mapped.push_back({c.weight, map * c.mean, std::move(cov)});
  }
  return GaussianMixture::validate(std::move(mapped));
}

MixtureSampler::MixtureSampler(const GaussianMixture& mixture, std::uint64_t seed)
    : mixture_(mixture), rng_(seed), z_(mixture.dim()) {}

int MixtureSampler::draw(Eigen::Ref<Vector> out) {
  const double u = rng_.uniform();
  const auto& cumulative = mixture_.cumulative_weights_;
  std::size_t index = 0;
  while (index + 1 < cumulative.size() && u >= cumulative[index]) ++index;
  for (Index j = 0; j < z_.size(); ++j) z_[j] = rng_.normal();
  out.noalias() = mixture_.components_[index].mean + mixture_.factors_[index] * z_;
  return static_cast<int>(index);
}

RowMatrix MixtureSampler::draw_many(std::size_t count, std::vector<int>* labels) {
  RowMatrix rows(static_cast<Index>(count), mixture_.dim());
  Vector x(mixture_.dim());
  if (labels != nullptr) labels->resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int component = draw(x);
    rows.row(static_cast<Index>(i)) = x.transpose();
    if (labels != nullptr) (*labels)[i] = component;
  }
  return rows;
}

LabeledDataset sample(const GaussianMixture& mixture, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw ShapeError("sample count must be positive");
  MixtureSampler sampler(mixture, seed);
  std::vector<int> labels;
  RowMatrix rows = sampler.draw_many(count, &labels);
  return LabeledDataset(std::move(rows), std::move(labels), static_cast<int>(mixture.count()));
}

Matrix overall_covariance(const GaussianMixture& mixture) {
  require_centered(mixture);
  const Index n = mixture.dim();
  Matrix total = Matrix::Zero(n, n);
  for (const auto& c : mixture.components()) {
    total += c.weight * (c.covariance + c.mean * c.mean.transpose());
  }
  return 0.5 * (total + total.transpose());
}

double expected_sqnorm(const GaussianMixture& mixture) {
  double total = 0.0;
  for (const auto& c : mixture.components()) {
    total += c.weight * (c.covariance.trace() + c.mean.squaredNorm());
  }
  return total;
}

FourthMoment fourth_moment_and_variance(const GaussianMixture& mixture) {
  double fourth = 0.0;
  for (const auto& c : mixture.components()) {
    const double trace = c.covariance.trace();
    const double mean_sq = c.mean.squaredNorm();
    const double frob_sq = c.covariance.squaredNorm();  // tr(Sigma^2) for symmetric Sigma
    const double quad = c.mean.dot(c.covariance * c.mean);
    fourth += c.weight * ((trace + mean_sq) * (trace + mean_sq) + 2.0 * frob_sq + 4.0 * quad);
  }
  const double second = expected_sqnorm(mixture);
  return {fourth, fourth - second * second};
}

MomentSummary moment_summary(const GaussianMixture& mixture) {
  const FourthMoment fourth = fourth_moment_and_variance(mixture);
  return {overall_covariance(mixture), expected_sqnorm(mixture), fourth.expected_fourth,
          fourth.var_sqnorm};
}

}  // namespace maxent
