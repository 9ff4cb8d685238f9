#include "oldroyd/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "oldroyd/spectral/grid.hpp"

namespace oldroyd::harness {

using nlohmann::json;

namespace {

// Reads keys from one JSON object and rejects anything it was not asked for.
class Section {
 public:
  Section(const json& doc, std::string path) : path_(std::move(path)) {
    if (doc.is_null()) {
      obj_ = json::object();
    } else if (!doc.is_object()) {
      throw ConfigError(label() + " must be an object");
    } else {
      obj_ = doc;
    }
  }

  template <class T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception&) {
      throw ConfigError(name(key) + ": wrong type");
    }
  }

  void number(const std::string& key, double& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return;
    if (!it->is_number()) throw ConfigError(name(key) + ": expected a number");
    out = it->get<double>();
    if (!std::isfinite(out)) throw ConfigError(name(key) + ": must be finite");
  }

  bool present(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it != obj_.end() && !it->is_null();
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError("unknown key " + name(it.key()));
    }
  }

  std::string name(const std::string& key) const {
    return path_.empty() ? "'" + key + "'" : "'" + path_ + "." + key + "'";
  }

 private:
  std::string label() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  json obj_;
  std::string path_;
  std::set<std::string> seen_;
};

json section_of(const json& doc, const char* key) {
  auto it = doc.find(key);
  return it == doc.end() ? json(nullptr) : *it;
}

}  // namespace

RunConfig parse_config(const json& doc, bool override_horizon) {
  RunConfig c;
  Section top(doc, "");

  bool amplitude_given = false;
  bool horizon_given = false;
  bool center_given = false;
  {
    top.present("grid");
    Section s(section_of(doc, "grid"), "grid");
    s.read("n", c.n);
    s.number("L", c.length);
    s.finish();
  }
  {
    top.present("params");
    Section s(section_of(doc, "params"), "params");
    s.number("nu1", c.params.nu1);
    s.number("nu2", c.params.nu2);
    s.number("mu", c.params.mu);
    s.number("k", c.params.k);
    s.finish();
  }
  {
    top.present("initial");
    Section s(section_of(doc, "initial"), "initial");
    amplitude_given = s.present("amplitude");
    s.number("amplitude", c.initial.amplitude);
    s.number("target_free_energy", c.target_free_energy);
    s.number("velocity_width", c.initial.velocity_width);
    s.number("density_width", c.initial.density_width);
    s.number("epsilon", c.initial.epsilon);
    const bool direction_given = s.present("direction");
    if (direction_given) {
      std::array<double, 3> d{};
      s.read("direction", d);
      c.initial.direction = {d[0], d[1], d[2]};
    }
    if (s.present("seed")) {
      if (direction_given) throw ConfigError("'initial.direction' and 'initial.seed' are exclusive");
      std::uint64_t seed = 0;
      s.read("seed", seed);
      c.seed = seed;
    }
    center_given = s.present("center");
    s.read("center", c.initial.center);
    s.finish();
  }
  {
    top.present("time");
    Section s(section_of(doc, "time"), "time");
    horizon_given = s.present("horizon");
    s.number("horizon", c.time.horizon);
    s.number("cadence_ratio", c.time.cadence_ratio);
    s.number("cfl", c.time.cfl);
    s.number("dt_max", c.time.dt_max);
    s.read("checkpoint_interval", c.time.checkpoint_interval);
    s.finish();
  }
  if (top.present("companion_forcing")) {
    std::string f;
    top.read("companion_forcing", f);
    try {
      c.companion_forcing = solver::companion_forcing_from_string(f);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("'companion_forcing': ") + e.what());
    }
  }
  top.read("override_horizon", c.override_horizon);
  top.finish();
  c.override_horizon = c.override_horizon || override_horizon;

  // constraints
  spectral::Grid grid = [&] {
    try {
      return spectral::Grid(c.n, c.length);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
  }();
  try {
    solver::validate(c.params);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  if (!center_given) c.initial.center = {0.5 * c.length, 0.5 * c.length};
  if (c.seed) c.initial.direction = solver::random_direction(*c.seed);
  if (!amplitude_given) {
    try {
      c.initial.amplitude =
          solver::amplitude_for_free_energy(c.initial, c.params, c.target_free_energy);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("initial.target_free_energy: ") + e.what());
    }
  }
  try {
    solver::validate(c.initial, grid);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("initial: ") + e.what());
  }

  const double t_box = c.box_horizon();
  if (!horizon_given) c.time.horizon = t_box;
  if (!(c.time.horizon > 0.0)) throw ConfigError("time.horizon must be positive");
  if (c.time.horizon > t_box && !c.override_horizon) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "time.horizon = %.17g exceeds the trusted horizon T_box = %.17g "
                  "(use --override-horizon)",
                  c.time.horizon, t_box);
    throw ConfigError(buf);
  }
  if (!(c.time.cadence_ratio > 1.0)) throw ConfigError("time.cadence_ratio must exceed 1");
  if (!(c.time.cfl > 0.0 && c.time.cfl <= 1.0)) throw ConfigError("time.cfl must lie in (0, 1]");
  if (!(c.time.dt_max > 0.0)) throw ConfigError("time.dt_max must be positive");
  return c;
}

RunConfig load_config(const std::filesystem::path& path, bool override_horizon) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, override_horizon);
}

json to_json(const RunConfig& c) {
  const auto& d = c.initial.direction;
  json initial{{"amplitude", c.initial.amplitude},
               {"target_free_energy", c.target_free_energy},
               {"velocity_width", c.initial.velocity_width},
               {"density_width", c.initial.density_width},
               {"epsilon", c.initial.epsilon},
               {"center", c.initial.center}};
  if (c.seed) {
    initial["seed"] = *c.seed;
  } else {
    initial["direction"] = std::array<double, 3>{d.xx, d.xy, d.yy};
  }
  return json{{"grid", {{"n", c.n}, {"L", c.length}}},
              {"params",
               {{"nu1", c.params.nu1}, {"nu2", c.params.nu2}, {"mu", c.params.mu}, {"k", c.params.k}}},
              {"initial", initial},
              {"time",
               {{"horizon", c.time.horizon},
                {"cadence_ratio", c.time.cadence_ratio},
                {"cfl", c.time.cfl},
                {"dt_max", c.time.dt_max},
                {"checkpoint_interval", c.time.checkpoint_interval}}},
              {"companion_forcing", solver::to_string(c.companion_forcing)},
              {"override_horizon", c.override_horizon}};
}

std::string canonical_text(const RunConfig& c) { return to_json(c).dump(); }

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const RunConfig& c) { return fnv1a_hex(canonical_text(c)); }

}  // namespace oldroyd::harness
