#pragma once

#include <cstdint>

#include "maxent/bench/config.hpp"
#include "maxent/mixture_model.hpp"

namespace maxent::bench {

struct RegimeFixtures {
  GaussianMixture fine;
  GaussianMixture large;
};

// Two zero-mean mixtures of equal dim and count, drawn from one geometry.
// Class i of the large regime is N(mu_i, sigma^2 Q_i D_i Q_i^T) with
// mu_i = radius g_i / sqrt(dim), g_i standard normal, Q_i a random rotation
// and D_i log-normal with mean one. The fine regime uses fine_shrink mu_i and
// fine_sigma in place of sigma. Nuisance directions, when requested, add
// nuisance_variance sigma^2 v v^T to every class for shared random unit v.
RegimeFixtures make_regime_fixtures(const FixtureParams& params);
RegimeFixtures make_regime_fixtures(std::uint64_t seed);

// The fixture preset used for the eigen-spectrum experiment: the default
// geometry plus four strong label-free directions.
FixtureParams spectrum_fixture_params();

}  // namespace maxent::bench
