#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "maxent/dataset.hpp"
#include "maxent/linalg.hpp"
#include "maxent/rng.hpp"

namespace maxent {

struct MixtureComponent {
  double weight = 0.0;
  Vector mean;
  Matrix covariance;
};

// A validated Gaussian mixture sum_i a_i N(mu_i, Sigma_i) over R^n.
//
// Instances only come out of GaussianMixture::validate (or operations on an
// already valid mixture), so holding one means the invariants hold:
// weights positive and summing to 1 within 1e-12, every covariance symmetric
// within 1e-12 and PSD up to -1e-10 times its largest eigenvalue.
//
// Validation also stores a spectral square-root factor per component, which
// is what sampling uses. Degenerate (even zero) covariances are accepted.
class GaussianMixture {
 public:
  static GaussianMixture validate(std::vector<MixtureComponent> components);

  const std::vector<MixtureComponent>& components() const { return components_; }
  const MixtureComponent& component(std::size_t i) const { return components_[i]; }
  std::size_t count() const { return components_.size(); }
  Index dim() const { return components_.front().mean.size(); }

  // sum_i a_i mu_i
  Vector mean() const;
  bool is_centered(double tolerance = 1e-10) const;

  // F_i with F_i F_i^T = Sigma_i.
  const Matrix& sampling_factor(std::size_t i) const { return factors_[i]; }

 private:
  GaussianMixture(std::vector<MixtureComponent> components, std::vector<Matrix> factors);

  std::vector<MixtureComponent> components_;
  std::vector<Matrix> factors_;
  std::vector<double> cumulative_weights_;

  friend class MixtureSampler;
};

// Shifts every mean by the mixture mean; weights and covariances unchanged.
GaussianMixture recenter_zero_mean(const GaussianMixture& mixture);

// The mixture of A x for x drawn from `mixture`: means A mu_i, covariances
// A Sigma_i A^T. Used to describe features produced by a linear feature map.
GaussianMixture linear_transform(const GaussianMixture& mixture, const Matrix& map);

// Draws i.i.d. samples. One uniform picks the component, then dim() normals
// feed the spectral factor, in that order, per draw.
class MixtureSampler {
 public:
  MixtureSampler(const GaussianMixture& mixture, std::uint64_t seed);

  // Writes one draw into `out` and returns its component index.
  int draw(Eigen::Ref<Vector> out);
  RowMatrix draw_many(std::size_t count, std::vector<int>* labels = nullptr);

 private:
  GaussianMixture mixture_;
  Rng rng_;
  Vector z_;
};

// `count` draws with the component index as label; class_count = count().
LabeledDataset sample(const GaussianMixture& mixture, std::size_t count, std::uint64_t seed);

// Sigma* = sum_i a_i (Sigma_i + mu_i mu_i^T). Throws NotCenteredError unless
// the mixture mean has norm <= 1e-10.
Matrix overall_covariance(const GaussianMixture& mixture);

// E||X||^2 = sum_i a_i (tr Sigma_i + ||mu_i||^2)
double expected_sqnorm(const GaussianMixture& mixture);

struct FourthMoment {
  double expected_fourth = 0.0;  // E||X||^4
  double var_sqnorm = 0.0;       // Var||X||^2
};

// Per component, with m = ||mu||^2 and t = tr Sigma:
//   E||X||^4 = (t + m)^2 + 2 tr(Sigma^2) + 4 mu^T Sigma mu
// then mixed over components by total expectation.
FourthMoment fourth_moment_and_variance(const GaussianMixture& mixture);

struct MomentSummary {
  Matrix overall_covariance;
  double expected_sqnorm = 0.0;
  double expected_fourth = 0.0;
  double var_sqnorm = 0.0;
};

MomentSummary moment_summary(const GaussianMixture& mixture);

}  // namespace maxent
