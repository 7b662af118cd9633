#include "fhartree/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fhartree/errors.hpp"
#include "fhartree/evolution.hpp"

namespace fhartree {

namespace pt = boost::property_tree;

std::vector<double> SweepSpec::resolve() const {
  if (!amplitudes.empty()) return amplitudes;
  if (count < 2) return {};
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(c_lo + (c_hi - c_lo) * i / (count - 1));
  return out;
}

void RunConfig::validate() const {
  physics.validate();
  make_grid(grid.N, grid.n, grid.L);
  if (grid.N != physics.N) throw ValidationError("physics.N and the grid dimension differ");
  if (solver.max_iter < 1) throw ValidationError("solver.max_iter must be positive");
  if (!(solver.tol > 0.0)) throw ValidationError("solver.tol must be positive");
  if (!(solver.seed_width > 0.0)) throw ValidationError("solver.seed_width must be positive");
  stepper.validate();
  if (!(initial.amplitude > 0.0)) throw ValidationError("initial.amplitude must be positive");
  if (sweep.amplitudes.empty()) {
    if (!(sweep.c_lo > 0.0)) throw ValidationError("sweep.c_lo must be positive");
    if (sweep.count < 2) throw ValidationError("sweep.count must be at least 2");
    if (!(sweep.c_hi > sweep.c_lo)) throw ValidationError("sweep amplitude range is empty (c_hi <= c_lo)");
  } else {
    for (double c : sweep.amplitudes)
      if (!(c > 0.0)) throw ValidationError("sweep amplitudes must be positive");
  }
  if (diagnostics.quad_nodes < 10) throw ValidationError("diagnostics.quad_nodes must be at least 10");
  if (diagnostics.virial_R < 0.0) throw ValidationError("diagnostics.virial_R must be nonnegative");
  if (diagnostics.random_fields < 1) throw ValidationError("diagnostics.random_fields must be positive");
  if (io.snapshot_every < 0) throw ValidationError("io.snapshot_every must be nonnegative");
}

RunConfig canonical_config() {
  RunConfig cfg;
  cfg.physics = canonical_params();
  cfg.grid = GridSpec{2, 128, 32.0};
  cfg.stepper.dt = 1e-3;
  cfg.stepper.t_end = wraparound_time(cfg.grid, cfg.physics);
  return cfg;
}

namespace {

// Shortest representation that round-trips.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  double v = 0.0;
  if (!(is >> v) || !(is >> std::ws).eof()) throw ValidationError("config key " + key + ": not a number: '" + text + "'");
  return v;
}

long long parse_int(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ValidationError("config key " + key + ": not an integer: '" + text + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ValidationError("config key " + key + ": not a boolean: '" + text + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(parse_double(key, item.substr(b, item.find_last_not_of(" \t") - b + 1)));
  }
  return out;
}

void apply_entry(RunConfig& c, const std::string& key, const std::string& v) {
  if (key == "physics.N") c.physics.N = static_cast<int>(parse_int(key, v));
  else if (key == "physics.s") c.physics.s = parse_double(key, v);
  else if (key == "physics.gamma") c.physics.gamma = parse_double(key, v);
  else if (key == "grid.n") c.grid.n = static_cast<int>(parse_int(key, v));
  else if (key == "grid.L") c.grid.L = parse_double(key, v);
  else if (key == "grid.dealias") c.dealias = parse_bool(key, v);
  else if (key == "solver.max_iter") c.solver.max_iter = static_cast<int>(parse_int(key, v));
  else if (key == "solver.tol") c.solver.tol = parse_double(key, v);
  else if (key == "solver.seed_width") c.solver.seed_width = parse_double(key, v);
  else if (key == "stepper.dt") c.stepper.dt = parse_double(key, v);
  else if (key == "stepper.t_end") c.stepper.t_end = parse_double(key, v);
  else if (key == "stepper.record_every") c.stepper.record_every = static_cast<int>(parse_int(key, v));
  else if (key == "stepper.dt_min") c.stepper.dt_min = parse_double(key, v);
  else if (key == "stepper.blowup_grad_factor") c.stepper.blowup_grad_factor = parse_double(key, v);
  else if (key == "stepper.tail_fraction_max") c.stepper.tail_fraction_max = parse_double(key, v);
  else if (key == "stepper.adaptive") c.stepper.adaptive = parse_bool(key, v);
  else if (key == "stepper.adapt_phase") c.stepper.adapt_phase = parse_double(key, v);
  else if (key == "stepper.linear_only") c.stepper.linear_only = parse_bool(key, v);
  else if (key == "initial.amplitude") c.initial.amplitude = parse_double(key, v);
  else if (key == "initial.snapshot") c.initial.snapshot = v;
  else if (key == "sweep.c_lo") c.sweep.c_lo = parse_double(key, v);
  else if (key == "sweep.c_hi") c.sweep.c_hi = parse_double(key, v);
  else if (key == "sweep.count") c.sweep.count = static_cast<int>(parse_int(key, v));
  else if (key == "sweep.amplitudes") c.sweep.amplitudes = parse_list(key, v);
  else if (key == "sweep.workers") c.sweep.workers = static_cast<int>(parse_int(key, v));
  else if (key == "diagnostics.quad_nodes") c.diagnostics.quad_nodes = static_cast<int>(parse_int(key, v));
  else if (key == "diagnostics.virial_R") c.diagnostics.virial_R = parse_double(key, v);
  else if (key == "diagnostics.virial") c.diagnostics.virial = parse_bool(key, v);
  else if (key == "diagnostics.random_fields") c.diagnostics.random_fields = static_cast<int>(parse_int(key, v));
  else if (key == "io.out") c.io.out_dir = v;
  else if (key == "io.snapshot_every") c.io.snapshot_every = static_cast<int>(parse_int(key, v));
  else if (key == "io.seed") c.io.seed = static_cast<unsigned long long>(parse_int(key, v));
  else if (key == "io.ground_state") c.io.ground_state = v;
  else if (key == "io.solver_seed") c.io.solver_seed = v;
  else throw ValidationError("unknown config key: " + key);
}

}  // namespace

std::map<std::string, std::string> config_entries(const RunConfig& c) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"physics.N", std::to_string(c.physics.N)},
      {"physics.s", format_double(c.physics.s)},
      {"physics.gamma", format_double(c.physics.gamma)},
      {"grid.n", std::to_string(c.grid.n)},
      {"grid.L", format_double(c.grid.L)},
      {"grid.dealias", b(c.dealias)},
      {"solver.max_iter", std::to_string(c.solver.max_iter)},
      {"solver.tol", format_double(c.solver.tol)},
      {"solver.seed_width", format_double(c.solver.seed_width)},
      {"stepper.dt", format_double(c.stepper.dt)},
      {"stepper.t_end", format_double(c.stepper.t_end)},
      {"stepper.record_every", std::to_string(c.stepper.record_every)},
      {"stepper.dt_min", format_double(c.stepper.dt_min)},
      {"stepper.blowup_grad_factor", format_double(c.stepper.blowup_grad_factor)},
      {"stepper.tail_fraction_max", format_double(c.stepper.tail_fraction_max)},
      {"stepper.adaptive", b(c.stepper.adaptive)},
      {"stepper.adapt_phase", format_double(c.stepper.adapt_phase)},
      {"stepper.linear_only", b(c.stepper.linear_only)},
      {"initial.amplitude", format_double(c.initial.amplitude)},
      {"initial.snapshot", c.initial.snapshot.string()},
      {"sweep.c_lo", format_double(c.sweep.c_lo)},
      {"sweep.c_hi", format_double(c.sweep.c_hi)},
      {"sweep.count", std::to_string(c.sweep.count)},
      {"sweep.amplitudes", join(c.sweep.amplitudes)},
      {"sweep.workers", std::to_string(c.sweep.workers)},
      {"diagnostics.quad_nodes", std::to_string(c.diagnostics.quad_nodes)},
      {"diagnostics.virial_R", format_double(c.diagnostics.virial_R)},
      {"diagnostics.virial", b(c.diagnostics.virial)},
      {"diagnostics.random_fields", std::to_string(c.diagnostics.random_fields)},
      {"io.out", c.io.out_dir.string()},
      {"io.snapshot_every", std::to_string(c.io.snapshot_every)},
      {"io.seed", std::to_string(c.io.seed)},
      {"io.ground_state", c.io.ground_state.string()},
      {"io.solver_seed", c.io.solver_seed.string()},
  };
}

RunConfig load_config(const std::string& profile, const std::filesystem::path& file, const Overrides& overrides) {
  if (profile != "canonical") throw ValidationError("unknown profile: " + profile);
  RunConfig cfg = canonical_config();
  bool explicit_horizon = false;

  if (!file.empty()) {
    pt::ptree tree;
    try {
      pt::read_ini(file.string(), tree);
    } catch (const pt::ini_parser_error& e) {
      throw ValidationError(std::string("cannot read config file: ") + e.what());
    }
    for (const auto& [section, body] : tree) {
      if (body.empty()) throw ValidationError("config entry outside a section: " + section);
      for (const auto& [key, value] : body) {
        apply_entry(cfg, section + "." + key, value.get_value<std::string>());
        explicit_horizon = explicit_horizon || (section == "stepper" && key == "t_end");
      }
    }
  }
  for (const auto& [key, value] : overrides) {
    apply_entry(cfg, key, value);
    explicit_horizon = explicit_horizon || key == "stepper.t_end";
  }
  cfg.grid.N = cfg.physics.N;
  cfg.validate();
  // Without an explicit horizon, stop where dispersed mass starts to wrap around the box.
  if (!explicit_horizon) cfg.stepper.t_end = wraparound_time(cfg.grid, cfg.physics);
  return cfg;
}

void write_config(const std::filesystem::path& path, const RunConfig& cfg) {
  pt::ptree tree;
  for (const auto& [key, value] : config_entries(cfg)) tree.put(pt::ptree::path_type(key, '.'), value);
  pt::write_ini(path.string(), tree);
}

}  // namespace fhartree
