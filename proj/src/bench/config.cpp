#include "maxent/bench/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "maxent/bench/fixtures.hpp"
#include "maxent/error.hpp"
#include "maxent/format.hpp"

namespace maxent::bench {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size() && std::isfinite(out);
}

template <typename T>
bool parse_integer(std::string_view s, T& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

// One `key = value` line inside a section.
struct Entry {
  std::size_t line;
  std::string_view key;
  std::string_view value;

  double real() const {
    double v = 0.0;
    if (!parse_double(value, v)) fail("expected a finite number");
    return v;
  }
  template <typename T>
  T integer() const {
    T v{};
    if (!parse_integer(value, v)) fail("expected a non-negative integer");
    return v;
  }
  std::vector<double> reals() const {
    std::vector<double> out;
    for (auto item : split_list(value)) {
      double v = 0.0;
      if (!parse_double(item, v)) fail("expected a comma-separated list of numbers");
      out.push_back(v);
    }
    return out;
  }
  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> out;
    for (auto item : split_list(value)) {
      std::size_t v = 0;
      if (!parse_integer(item, v)) fail("expected a comma-separated list of integers");
      out.push_back(v);
    }
    return out;
  }
  bool boolean() const {
    if (value == "true") return true;
    if (value == "false") return false;
    fail("expected true or false");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line, std::string(key) + " = " + std::string(value) + ": " + what);
  }
};

using Handler = std::function<void(const Entry&)>;

struct Section {
  std::string name;
  std::map<std::string, Handler, std::less<>> keys;
};

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

template <typename T>
std::string join_integers(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out;
}

const char* objective_name(TrainConfig::ObjectiveKind kind) {
  switch (kind) {
    case TrainConfig::ObjectiveKind::maxent: return "maxent";
    case TrainConfig::ObjectiveKind::lsr: return "lsr";
    case TrainConfig::ObjectiveKind::ce: return "ce";
  }
  return "maxent";
}

const char* schedule_name(LrSchedule::Kind kind) {
  switch (kind) {
    case LrSchedule::Kind::constant: return "constant";
    case LrSchedule::Kind::step: return "step";
    case LrSchedule::Kind::linear: return "linear";
  }
  return "constant";
}

const char* source_name(MixtureSource source) {
  switch (source) {
    case MixtureSource::fixture: return "fixture";
    case MixtureSource::file: return "file";
    case MixtureSource::inline_components: return "inline";
  }
  return "fixture";
}

// Partially built component; fields are checked once the section closes.
struct PendingComponent {
  std::size_t line = 0;
  std::optional<double> weight;
  std::optional<std::vector<double>> mean;
  std::optional<std::vector<double>> covariance;
};

MixtureComponent finish_component(const PendingComponent& pc) {
  if (!pc.weight || !pc.mean || !pc.covariance) {
    throw ParseError(pc.line, "[component] needs weight, mean and covariance");
  }
  const auto n = static_cast<Index>(pc.mean->size());
  MixtureComponent c;
  c.weight = *pc.weight;
  c.mean = Eigen::Map<const Vector>(pc.mean->data(), n);
  const auto& cov = *pc.covariance;
  if (cov.size() == 1) {
    c.covariance = cov[0] * Matrix::Identity(n, n);
  } else if (cov.size() == static_cast<std::size_t>(n * n)) {
    c.covariance.resize(n, n);
    for (Index r = 0; r < n; ++r) {
      for (Index col = 0; col < n; ++col) c.covariance(r, col) = cov[r * n + col];
    }
  } else {
    throw ParseError(pc.line, "[component] covariance needs 1 or dim*dim values, got " +
                                  std::to_string(cov.size()));
  }
  return c;
}

Section component_section(PendingComponent& pc) {
  Section s{"component", {}};
  s.keys["weight"] = [&pc](const Entry& e) { pc.weight = e.real(); };
  s.keys["mean"] = [&pc](const Entry& e) { pc.mean = e.reals(); };
  s.keys["covariance"] = [&pc](const Entry& e) { pc.covariance = e.reals(); };
  return s;
}

// Walks the text, dispatching entries to `sections`. A [component] header
// starts a fresh component each time it appears.
void parse_sections(std::string_view text, std::map<std::string, Section, std::less<>>& sections,
                    std::vector<MixtureComponent>* components) {
  std::size_t line_number = 0;
  const Section* current = nullptr;
  std::set<std::string, std::less<>> seen_keys;
  std::set<std::string, std::less<>> seen_sections;
  std::optional<PendingComponent> pending;
  Section pending_section;

  auto close_component = [&] {
    if (pending) components->push_back(finish_component(*pending));
    pending.reset();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_number;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_number, "unterminated section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      seen_keys.clear();
      if (name == "component") {
        if (!components) throw ParseError(line_number, "[component] is not allowed here");
        close_component();
        pending = PendingComponent{line_number, {}, {}, {}};
        pending_section = component_section(*pending);
        current = &pending_section;
        continue;
      }
      close_component();
      const auto it = sections.find(name);
      if (it == sections.end()) throw ParseError(line_number, "unknown section [" + std::string(name) + "]");
      if (!seen_sections.insert(std::string(name)).second) {
        throw ParseError(line_number, "section [" + std::string(name) + "] appears twice");
      }
      current = &it->second;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_number, "expected key = value");
    const Entry entry{line_number, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    if (entry.key.empty()) throw ParseError(line_number, "missing key");
    if (!current) throw ParseError(line_number, "key outside of any section");
    const auto handler = current->keys.find(entry.key);
    if (handler == current->keys.end()) {
      throw ParseError(line_number,
                       "unknown key '" + std::string(entry.key) + "' in [" + current->name + "]");
    }
    if (!seen_keys.insert(std::string(entry.key)).second) {
      throw ParseError(line_number, "duplicate key '" + std::string(entry.key) + "'");
    }
    if (entry.value.empty()) continue;  // keep the default
    handler->second(entry);
  }
  close_component();
}

bool components_equal(const std::vector<MixtureComponent>& a,
                      const std::vector<MixtureComponent>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].weight != b[i].weight) return false;
    if (a[i].mean.size() != b[i].mean.size() || a[i].mean != b[i].mean) return false;
    if (a[i].covariance.rows() != b[i].covariance.rows() ||
        a[i].covariance.cols() != b[i].covariance.cols() || a[i].covariance != b[i].covariance) {
      return false;
    }
  }
  return true;
}

void write_components(std::ostringstream& out, const std::vector<MixtureComponent>& components) {
  for (const auto& c : components) {
    out << "\n[component]\n";
    out << "weight = " << format_double(c.weight) << "\n";
    out << "mean = " << join({c.mean.data(), c.mean.data() + c.mean.size()}) << "\n";
    std::vector<double> cov;
    for (Index r = 0; r < c.covariance.rows(); ++r) {
      for (Index col = 0; col < c.covariance.cols(); ++col) cov.push_back(c.covariance(r, col));
    }
    out << "covariance = " << join(cov) << "\n";
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

std::filesystem::path resolve_path(const ExperimentConfig& config, const std::string& file) {
  std::filesystem::path p(file);
  if (p.is_relative() && !config.base_dir.empty()) p = config.base_dir / p;
  return p;
}

}  // namespace

const char* to_string(Regime regime) {
  return regime == Regime::fine_grained ? "fine_grained" : "large_scale";
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (auto item : split_list(text)) {
    if (item.empty()) throw ValidationError("seeds", "empty entry in seed list");
    const auto dash = item.find('-');
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    if (dash == std::string_view::npos) {
      if (!parse_integer(item, lo)) throw ValidationError("seeds", "bad seed '" + std::string(item) + "'");
      hi = lo;
    } else if (!parse_integer(item.substr(0, dash), lo) || !parse_integer(item.substr(dash + 1), hi) ||
               hi < lo || hi - lo > 100000) {
      throw ValidationError("seeds", "bad seed range '" + std::string(item) + "'");
    }
    for (std::uint64_t s = lo;; ++s) {
      seeds.push_back(s);
      if (s == hi) break;
    }
  }
  return seeds;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.name == b.name && a.regime == b.regime && a.train_size == b.train_size &&
         a.val_size == b.val_size && a.seeds == b.seeds && a.output == b.output &&
         a.mixture_source == b.mixture_source && a.mixture_file == b.mixture_file &&
         components_equal(a.components, b.components) && a.fixture == b.fixture &&
         a.train == b.train && a.gammas == b.gammas && a.noise_fractions == b.noise_fractions &&
         a.data_fractions == b.data_fractions && a.bounds == b.bounds;
}

void ExperimentConfig::validate() const {
  if (train_size < 1) throw ValidationError("experiment.train_size", "must be >= 1");
  if (val_size < 1) throw ValidationError("experiment.val_size", "must be >= 1");
  if (seeds.empty()) throw ValidationError("experiment.seeds", "seed list is empty");

  switch (mixture_source) {
    case MixtureSource::fixture:
      if (!components.empty()) {
        throw ValidationError("mixture.source", "[component] sections need source = inline");
      }
      break;
    case MixtureSource::file: {
      if (mixture_file.empty()) throw ValidationError("mixture.file", "source = file needs a path");
      const auto path = resolve_path(*this, mixture_file);
      if (!std::filesystem::is_regular_file(path)) {
        throw ValidationError("mixture.file", "no such file: " + path.string());
      }
      if (!components.empty()) {
        throw ValidationError("mixture.source", "[component] sections need source = inline");
      }
      break;
    }
    case MixtureSource::inline_components:
      if (components.empty()) throw ValidationError("mixture.source", "inline source has no [component]");
      break;
  }

  if (fixture.dim < 1) throw ValidationError("fixture.dim", "must be >= 1");
  if (fixture.components < 2) throw ValidationError("fixture.components", "must be >= 2");
  if (fixture.radius < 0.0) throw ValidationError("fixture.radius", "must be >= 0");
  if (fixture.sigma < 0.0) throw ValidationError("fixture.sigma", "must be >= 0");
  if (fixture.fine_shrink < 0.0) throw ValidationError("fixture.fine_shrink", "must be >= 0");
  if (fixture.fine_sigma < 0.0) throw ValidationError("fixture.fine_sigma", "must be >= 0");
  if (fixture.anisotropy < 0.0) throw ValidationError("fixture.anisotropy", "must be >= 0");
  if (fixture.nuisance_dims < 0) throw ValidationError("fixture.nuisance_dims", "must be >= 0");
  if (fixture.nuisance_variance < 0.0) {
    throw ValidationError("fixture.nuisance_variance", "must be >= 0");
  }

  try {
    train.validate();
  } catch (const ValidationError& e) {
    throw ValidationError("train." + e.field(), e.what() + e.field().size() + 2);
  }

  if (gammas.empty()) throw ValidationError("sweep.gammas", "list is empty");
  for (double g : gammas) {
    if (g < 0.0) throw ValidationError("sweep.gammas", "values must be >= 0");
  }
  for (double f : noise_fractions) {
    if (f < 0.0 || f > 1.0) throw ValidationError("sweep.noise_fractions", "values must lie in [0, 1]");
  }
  for (double f : data_fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw ValidationError("sweep.data_fractions", "values must lie in (0, 1]");
  }

  if (!(bounds.delta > 0.0 && bounds.delta < 0.5)) {
    throw ValidationError("bounds.delta", "must lie in (0, 1/2)");
  }
  if (bounds.trials < 1) throw ValidationError("bounds.trials", "must be >= 1");
  if (bounds.sample_counts.empty()) throw ValidationError("bounds.sample_counts", "list is empty");
  for (auto n : bounds.sample_counts) {
    if (n < 1) throw ValidationError("bounds.sample_counts", "values must be >= 1");
  }
  if (bounds.reference_draws < 100) throw ValidationError("bounds.reference_draws", "must be >= 100");
  if (bounds.se_guard < 0.0) throw ValidationError("bounds.se_guard", "must be >= 0");
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  c.base_dir = base_dir;
  std::map<std::string, Section, std::less<>> sections;

  auto& experiment = sections["experiment"] = Section{"experiment", {}};
  experiment.keys["name"] = [&](const Entry& e) { c.name = std::string(e.value); };
  experiment.keys["regime"] = [&](const Entry& e) {
    if (e.value == "fine_grained") c.regime = Regime::fine_grained;
    else if (e.value == "large_scale") c.regime = Regime::large_scale;
    else e.fail("expected fine_grained or large_scale");
  };
  experiment.keys["train_size"] = [&](const Entry& e) { c.train_size = e.integer<std::size_t>(); };
  experiment.keys["val_size"] = [&](const Entry& e) { c.val_size = e.integer<std::size_t>(); };
  experiment.keys["seeds"] = [&](const Entry& e) {
    try {
      c.seeds = parse_seed_list(e.value);
    } catch (const ValidationError& err) {
      e.fail(err.what());
    }
  };
  experiment.keys["output"] = [&](const Entry& e) { c.output = std::string(e.value); };

  auto& mixture = sections["mixture"] = Section{"mixture", {}};
  mixture.keys["source"] = [&](const Entry& e) {
    if (e.value == "fixture") c.mixture_source = MixtureSource::fixture;
    else if (e.value == "file") c.mixture_source = MixtureSource::file;
    else if (e.value == "inline") c.mixture_source = MixtureSource::inline_components;
    else e.fail("expected fixture, file or inline");
  };
  mixture.keys["file"] = [&](const Entry& e) { c.mixture_file = std::string(e.value); };

  auto& fixture = sections["fixture"] = Section{"fixture", {}};
  fixture.keys["dim"] = [&](const Entry& e) { c.fixture.dim = e.integer<int>(); };
  fixture.keys["components"] = [&](const Entry& e) { c.fixture.components = e.integer<int>(); };
  fixture.keys["seed"] = [&](const Entry& e) { c.fixture.seed = e.integer<std::uint64_t>(); };
  fixture.keys["radius"] = [&](const Entry& e) { c.fixture.radius = e.real(); };
  fixture.keys["sigma"] = [&](const Entry& e) { c.fixture.sigma = e.real(); };
  fixture.keys["fine_shrink"] = [&](const Entry& e) { c.fixture.fine_shrink = e.real(); };
  fixture.keys["fine_sigma"] = [&](const Entry& e) { c.fixture.fine_sigma = e.real(); };
  fixture.keys["anisotropy"] = [&](const Entry& e) { c.fixture.anisotropy = e.real(); };
  fixture.keys["nuisance_dims"] = [&](const Entry& e) { c.fixture.nuisance_dims = e.integer<int>(); };
  fixture.keys["nuisance_variance"] = [&](const Entry& e) { c.fixture.nuisance_variance = e.real(); };

  auto& train = sections["train"] = Section{"train", {}};
  train.keys["gamma"] = [&](const Entry& e) { c.train.gamma = e.real(); };
  train.keys["objective"] = [&](const Entry& e) {
    if (e.value == "maxent") c.train.objective = TrainConfig::ObjectiveKind::maxent;
    else if (e.value == "ce") c.train.objective = TrainConfig::ObjectiveKind::ce;
    else if (e.value == "lsr") c.train.objective = TrainConfig::ObjectiveKind::lsr;
    else e.fail("expected maxent, ce or lsr");
  };
  train.keys["lsr_epsilon"] = [&](const Entry& e) { c.train.lsr_epsilon = e.real(); };
  train.keys["lr"] = [&](const Entry& e) { c.train.lr.base = e.real(); };
  train.keys["lr_schedule"] = [&](const Entry& e) {
    if (e.value == "constant") c.train.lr.kind = LrSchedule::Kind::constant;
    else if (e.value == "step") c.train.lr.kind = LrSchedule::Kind::step;
    else if (e.value == "linear") c.train.lr.kind = LrSchedule::Kind::linear;
    else e.fail("expected constant, step or linear");
  };
  train.keys["lr_factor"] = [&](const Entry& e) { c.train.lr.factor = e.real(); };
  train.keys["lr_interval"] = [&](const Entry& e) { c.train.lr.interval = e.integer<int>(); };
  train.keys["weight_decay"] = [&](const Entry& e) { c.train.weight_decay = e.real(); };
  train.keys["batch_size"] = [&](const Entry& e) { c.train.batch_size = e.integer<std::size_t>(); };
  train.keys["epochs"] = [&](const Entry& e) { c.train.epochs = e.integer<int>(); };
  train.keys["train_feature_map"] = [&](const Entry& e) { c.train.train_feature_map = e.boolean(); };
  train.keys["init_scale"] = [&](const Entry& e) { c.train.init_scale = e.real(); };

  auto& sweep = sections["sweep"] = Section{"sweep", {}};
  sweep.keys["gammas"] = [&](const Entry& e) { c.gammas = e.reals(); };
  sweep.keys["noise_fractions"] = [&](const Entry& e) { c.noise_fractions = e.reals(); };
  sweep.keys["data_fractions"] = [&](const Entry& e) { c.data_fractions = e.reals(); };

  auto& bounds = sections["bounds"] = Section{"bounds", {}};
  bounds.keys["delta"] = [&](const Entry& e) { c.bounds.delta = e.real(); };
  bounds.keys["trials"] = [&](const Entry& e) { c.bounds.trials = e.integer<std::size_t>(); };
  bounds.keys["sample_counts"] = [&](const Entry& e) { c.bounds.sample_counts = e.counts(); };
  bounds.keys["reference_draws"] = [&](const Entry& e) {
    c.bounds.reference_draws = e.integer<std::size_t>();
  };
  bounds.keys["se_guard"] = [&](const Entry& e) { c.bounds.se_guard = e.real(); };

  bool decay_given = false;
  train.keys["lr_decay_epochs"] = [&](const Entry& e) {
    c.train.lr.decay_epochs = e.integer<int>();
    decay_given = true;
  };

  parse_sections(text, sections, &c.components);
  // A linear schedule decays over the whole run unless told otherwise.
  if (c.train.lr.kind == LrSchedule::Kind::linear && !decay_given) {
    c.train.lr.decay_epochs = std::max(1, c.train.epochs);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

std::vector<MixtureComponent> parse_mixture_components(std::string_view text) {
  std::map<std::string, Section, std::less<>> none;
  std::vector<MixtureComponent> components;
  parse_sections(text, none, &components);
  if (components.empty()) throw ValidationError("mixture", "no [component] sections");
  return components;
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "name = " << c.name << "\n";
  out << "regime = " << to_string(c.regime) << "\n";
  out << "train_size = " << c.train_size << "\n";
  out << "val_size = " << c.val_size << "\n";
  out << "seeds = " << join_integers(c.seeds) << "\n";
  out << "output = " << c.output << "\n";

  out << "\n[mixture]\n";
  out << "source = " << source_name(c.mixture_source) << "\n";
  out << "file = " << c.mixture_file << "\n";

  const auto& f = c.fixture;
  out << "\n[fixture]\n";
  out << "dim = " << f.dim << "\n";
  out << "components = " << f.components << "\n";
  out << "seed = " << f.seed << "\n";
  out << "radius = " << format_double(f.radius) << "\n";
  out << "sigma = " << format_double(f.sigma) << "\n";
  out << "fine_shrink = " << format_double(f.fine_shrink) << "\n";
  out << "fine_sigma = " << format_double(f.fine_sigma) << "\n";
  out << "anisotropy = " << format_double(f.anisotropy) << "\n";
  out << "nuisance_dims = " << f.nuisance_dims << "\n";
  out << "nuisance_variance = " << format_double(f.nuisance_variance) << "\n";

  const auto& t = c.train;
  out << "\n[train]\n";
  out << "gamma = " << format_double(t.gamma) << "\n";
  out << "objective = " << objective_name(t.objective) << "\n";
  out << "lsr_epsilon = " << format_double(t.lsr_epsilon) << "\n";
  out << "lr = " << format_double(t.lr.base) << "\n";
  out << "lr_schedule = " << schedule_name(t.lr.kind) << "\n";
  out << "lr_factor = " << format_double(t.lr.factor) << "\n";
  out << "lr_interval = " << t.lr.interval << "\n";
  out << "lr_decay_epochs = " << t.lr.decay_epochs << "\n";
  out << "weight_decay = " << format_double(t.weight_decay) << "\n";
  out << "batch_size = " << t.batch_size << "\n";
  out << "epochs = " << t.epochs << "\n";
  out << "train_feature_map = " << (t.train_feature_map ? "true" : "false") << "\n";
  out << "init_scale = " << format_double(t.init_scale) << "\n";

  out << "\n[sweep]\n";
  out << "gammas = " << join(c.gammas) << "\n";
  out << "noise_fractions = " << join(c.noise_fractions) << "\n";
  out << "data_fractions = " << join(c.data_fractions) << "\n";

  out << "\n[bounds]\n";
  out << "delta = " << format_double(c.bounds.delta) << "\n";
  out << "trials = " << c.bounds.trials << "\n";
  out << "sample_counts = " << join_integers(c.bounds.sample_counts) << "\n";
  out << "reference_draws = " << c.bounds.reference_draws << "\n";
  out << "se_guard = " << format_double(c.bounds.se_guard) << "\n";

  write_components(out, c.components);
  return out.str();
}

GaussianMixture resolve_mixture(const ExperimentConfig& config) {
  switch (config.mixture_source) {
    case MixtureSource::fixture: {
      const auto fixtures = make_regime_fixtures(config.fixture);
      return config.regime == Regime::fine_grained ? fixtures.fine : fixtures.large;
    }
    case MixtureSource::file:
      return recenter_zero_mean(GaussianMixture::validate(
          parse_mixture_components(read_file(resolve_path(config, config.mixture_file)))));
    case MixtureSource::inline_components:
      return recenter_zero_mean(GaussianMixture::validate(config.components));
  }
  throw ValidationError("mixture.source", "unknown source");
}

}  // namespace maxent::bench
