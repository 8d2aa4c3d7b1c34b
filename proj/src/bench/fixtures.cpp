#include "maxent/bench/fixtures.hpp"

#include <cmath>
#include <vector>

#include <Eigen/QR>

#include "maxent/error.hpp"
#include "maxent/rng.hpp"

namespace maxent::bench {
namespace {

Matrix random_rotation(Index n, Rng& rng) {
  Matrix g(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) g(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix column signs so Q does not depend on the QR implementation's choice.
  const Matrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index c = 0; c < n; ++c) {
    if (rr(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

RegimeFixtures make_regime_fixtures(const FixtureParams& p) {
  if (p.dim < 1 || p.components < 2) throw ShapeError("fixture needs dim >= 1 and >= 2 components");
  Rng rng(p.seed);
  const Index n = p.dim;

  std::vector<Vector> directions;
  for (int i = 0; i < p.components; ++i) {
    Vector g(n);
    for (Index j = 0; j < n; ++j) g[j] = rng.normal();
    directions.push_back(g * (p.radius / std::sqrt(static_cast<double>(n))));
  }

  std::vector<Matrix> shapes;  // unit-scale covariances
  for (int i = 0; i < p.components; ++i) {
    const Matrix q = random_rotation(n, rng);
    Vector d(n);
    for (Index j = 0; j < n; ++j) d[j] = std::exp(p.anisotropy * rng.normal());
    d *= static_cast<double>(n) / d.sum();
    shapes.push_back(symmetrized(q * d.asDiagonal() * q.transpose()));
  }

  Matrix nuisance = Matrix::Zero(n, n);
  for (int k = 0; k < p.nuisance_dims; ++k) {
    Vector v(n);
    for (Index j = 0; j < n; ++j) v[j] = rng.normal();
    v.normalize();
    nuisance += p.nuisance_variance * v * v.transpose();
  }

  const double weight = 1.0 / p.components;
  auto build = [&](double shrink, double sigma) {
    std::vector<MixtureComponent> comps;
    for (int i = 0; i < p.components; ++i) {
      comps.push_back({weight, directions[i] * shrink,
                       symmetrized(sigma * sigma * (shapes[i] + nuisance))});
    }
    return recenter_zero_mean(GaussianMixture::validate(std::move(comps)));
  };
  return {build(p.fine_shrink, p.fine_sigma), build(1.0, p.sigma)};
}

RegimeFixtures make_regime_fixtures(std::uint64_t seed) {
  FixtureParams params;
  params.seed = seed;
  return make_regime_fixtures(params);
}

FixtureParams spectrum_fixture_params() {
  FixtureParams params;
  params.nuisance_dims = 4;
  params.nuisance_variance = 20.0;
  return params;
}

}  // namespace maxent::bench
