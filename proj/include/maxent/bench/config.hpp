#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "maxent/mixture_model.hpp"
#include "maxent/trainer.hpp"

namespace maxent::bench {

enum class Regime { fine_grained, large_scale };
const char* to_string(Regime regime);

enum class MixtureSource { fixture, file, inline_components };

// Geometry of the shipped synthetic regimes. Both regimes share class
// directions, per-class covariance orientations and spectra; the fine regime
// shrinks the means by `fine_shrink` and the noise scale to `fine_sigma`.
struct FixtureParams {
  int dim = 16;
  int components = 10;
  std::uint64_t seed = 7;
  double radius = 6.0;        // large-regime mean norm, on average
  double sigma = 1.0;         // large-regime noise scale
  double fine_shrink = 0.2;
  double fine_sigma = 0.4;
  double anisotropy = 2.5;    // log-normal spread of per-class covariance spectra
  int nuisance_dims = 0;      // shared label-free directions added to every class
  double nuisance_variance = 0.0;  // in units of the regime's sigma^2

  friend bool operator==(const FixtureParams&, const FixtureParams&) = default;
};

struct BoundsSettings {
  double delta = 0.1;
  std::size_t trials = 1000;
  std::vector<std::size_t> sample_counts{100, 1000, 10000};
  std::size_t reference_draws = 100000;
  double se_guard = 3.0;

  friend bool operator==(const BoundsSettings&, const BoundsSettings&) = default;
};

struct ExperimentConfig {
  std::string name = "experiment";
  Regime regime = Regime::fine_grained;
  std::size_t train_size = 200;
  std::size_t val_size = 4000;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6};
  std::string output;  // empty: chosen by the caller

  MixtureSource mixture_source = MixtureSource::fixture;
  std::string mixture_file;  // relative paths resolve against base_dir
  std::vector<MixtureComponent> components;
  FixtureParams fixture;

  TrainConfig train;

  std::vector<double> gammas{0.0, 0.5, 1.0};
  std::vector<double> noise_fractions{0.0, 0.1, 0.2, 0.3};
  std::vector<double> data_fractions{0.25, 0.5, 1.0};

  BoundsSettings bounds;

  // Directory of the file the config came from; not serialized.
  std::filesystem::path base_dir;

  // Throws ValidationError naming the field.
  void validate() const;

  friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
};

// Sectioned key = value text. `#` starts a comment; blank lines are ignored;
// an empty value keeps the default. Unknown sections or keys, duplicates and
// malformed values raise ParseError with the line number. The parsed config
// is validated before it is returned.
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Emits every field, so parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// A mixture file holds only [component] sections.
std::vector<MixtureComponent> parse_mixture_components(std::string_view text);

// Comma-separated seed list with optional ranges, e.g. "1-3,7".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

// The mixture named by the config: the regime's fixture, the file, or the
// inline components (recentred to zero mean).
GaussianMixture resolve_mixture(const ExperimentConfig& config);

}  // namespace maxent::bench
