#include "seccell/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace seccell {
namespace {

using nlohmann::json;

std::string join_key(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where.empty() ? "<root>" : where, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, _] : obj.items()) {
    if (!ok.count(k)) throw ConfigError(join_key(where, k), "unknown key");
  }
}

double get_number(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join_key(where, key), "expected a number");
  return v.get<double>();
}

std::uint64_t get_count(const json& obj, const std::string& where, const char* key,
                        std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(join_key(where, key), "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Vec3 get_point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(where, "expected [x, y, z]");
  for (const auto& c : v) {
    if (!c.is_number()) throw ConfigError(where, "expected [x, y, z]");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::vector<Vec3> get_points(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where, "expected a non-empty list of [x, y, z]");
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_point(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::pair<double, double> get_range(const json& obj, const std::string& where, const char* key,
                                    std::pair<double, double> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  const std::string k = join_key(where, key);
  if (v.is_number()) return {v.get<double>(), v.get<double>()};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(k, "expected a number or [low, high]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

void parse_phys(const json& j, PhysParams& p) {
  const std::string w = "phys";
  only_keys(j, w, {"bandwidth_hz", "leds_per_ap", "dc_current_a", "modulation_index",
                   "conversion_efficiency", "responsivity", "tia_gain", "pd_area_m2",
                   "refractive_index", "semi_angle_deg", "fov_half_deg", "reflectance", "noise_psd"});
  p.bandwidth_hz = get_number(j, w, "bandwidth_hz", p.bandwidth_hz);
  p.leds_per_ap = static_cast<int>(get_count(j, w, "leds_per_ap", static_cast<std::uint64_t>(p.leds_per_ap)));
  p.dc_current = get_number(j, w, "dc_current_a", p.dc_current);
  p.modulation_index = get_number(j, w, "modulation_index", p.modulation_index);
  p.conversion_efficiency = get_number(j, w, "conversion_efficiency", p.conversion_efficiency);
  p.responsivity = get_number(j, w, "responsivity", p.responsivity);
  p.tia_gain = get_number(j, w, "tia_gain", p.tia_gain);
  p.pd_area = get_number(j, w, "pd_area_m2", p.pd_area);
  p.refractive_index = get_number(j, w, "refractive_index", p.refractive_index);
  p.semi_angle = deg_to_rad(get_number(j, w, "semi_angle_deg", rad_to_deg(p.semi_angle)));
  p.fov_half = deg_to_rad(get_number(j, w, "fov_half_deg", rad_to_deg(p.fov_half)));
  p.reflectance = get_number(j, w, "reflectance", p.reflectance);
  p.noise_psd = get_number(j, w, "noise_psd", p.noise_psd);
}

void parse_qos(const json& j, RunConfig& cfg) {
  const std::string w = "qos";
  only_keys(j, w, {"theta_per_bit", "be_bps", "profiles"});
  LayoutSpec& l = cfg.scenario.layout;
  std::tie(l.theta_lo_per_bit, l.theta_hi_per_bit) =
      get_range(j, w, "theta_per_bit", {l.theta_lo_per_bit, l.theta_hi_per_bit});
  std::tie(l.be_lo_bps, l.be_hi_bps) = get_range(j, w, "be_bps", {l.be_lo_bps, l.be_hi_bps});
  if (!(l.theta_lo_per_bit > 0.0 && l.theta_hi_per_bit > 0.0)) {
    throw ConfigError("qos.theta_per_bit", "must be positive");
  }
  if (!(l.be_lo_bps >= 0.0 && l.be_hi_bps >= 0.0)) throw ConfigError("qos.be_bps", "must be >= 0");
  if (j.contains("profiles")) {
    const json& arr = j.at("profiles");
    if (!arr.is_array() || arr.empty()) throw ConfigError("qos.profiles", "expected a non-empty list");
    std::vector<QoSProfile> profiles;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string pw = "qos.profiles[" + std::to_string(i) + "]";
      only_keys(arr[i], pw, {"theta_per_bit", "be_bps"});
      if (!arr[i].contains("theta_per_bit") || !arr[i].contains("be_bps")) {
        throw ConfigError(pw, "needs theta_per_bit and be_bps");
      }
      const double th = get_number(arr[i], pw, "theta_per_bit", 0.0);
      const double be = get_number(arr[i], pw, "be_bps", 0.0);
      if (!(th > 0.0)) throw ConfigError(pw + ".theta_per_bit", "must be positive");
      if (!(be >= 0.0)) throw ConfigError(pw + ".be_bps", "must be >= 0");
      profiles.push_back(QoSProfile::from_bits(th, be, cfg.scenario.phys.bandwidth_hz));
    }
    cfg.scenario.qos = std::move(profiles);
  }
}

void parse_run(const json& j, RunConfig& cfg) {
  const std::string w = "run";
  only_keys(j, w, {"algo", "slots", "seed", "out", "threads", "reps", "sweep"});
  if (j.contains("algo")) {
    if (!j["algo"].is_string()) throw ConfigError("run.algo", "expected a string");
    try {
      cfg.algorithm = parse_algorithm(j["algo"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("run.algo", e.what());
    }
  }
  cfg.slots = get_count(j, w, "slots", cfg.slots);
  cfg.seed = get_count(j, w, "seed", cfg.seed);
  cfg.sim.threads = get_count(j, w, "threads", cfg.sim.threads);
  cfg.reps = get_count(j, w, "reps", cfg.reps);
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("run.out", "expected a string");
    cfg.out = j["out"].get<std::string>();
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    only_keys(s, "run.sweep", {"axis", "values"});
    if (!s.contains("axis") || !s["axis"].is_string()) throw ConfigError("run.sweep.axis", "expected a string");
    SweepSpec spec;
    try {
      spec.axis = parse_sweep_axis(s["axis"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("run.sweep.axis", e.what());
    }
    if (!s.contains("values") || !s["values"].is_array() || s["values"].empty()) {
      throw ConfigError("run.sweep.values", "expected a non-empty list of numbers");
    }
    for (const auto& v : s["values"]) {
      if (!v.is_number()) throw ConfigError("run.sweep.values", "expected numbers");
      spec.values.push_back(v.get<double>());
    }
    cfg.sweep = std::move(spec);
  }
}

// Validation messages start with the dotted config key.
std::string leading_key(const std::string& msg) {
  std::string key = msg.substr(0, msg.find(' '));
  if (!key.empty() && key.back() == ':') key.pop_back();
  return key;
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  only_keys(root, "", {"room", "aps", "users", "phys", "wall_patch", "blockage", "qos", "epsilon",
                       "pso", "scheduler", "run"});
  RunConfig cfg;
  ScenarioTemplate& t = cfg.scenario;

  if (root.contains("room")) {
    const json& r = root["room"];
    only_keys(r, "room", {"length_m", "width_m", "height_m"});
    t.layout.room.length = get_number(r, "room", "length_m", t.layout.room.length);
    t.layout.room.width = get_number(r, "room", "width_m", t.layout.room.width);
    t.layout.room.height = get_number(r, "room", "height_m", t.layout.room.height);
  }
  if (root.contains("aps")) {
    const json& a = root["aps"];
    only_keys(a, "aps", {"grid_per_side", "positions"});
    if (a.contains("grid_per_side") && a.contains("positions")) {
      throw ConfigError("aps", "give either grid_per_side or positions, not both");
    }
    t.layout.ap_grid_per_side = get_count(a, "aps", "grid_per_side", t.layout.ap_grid_per_side);
    if (t.layout.ap_grid_per_side == 0) throw ConfigError("aps.grid_per_side", "must be >= 1");
    if (a.contains("positions")) t.ap_positions = get_points(a["positions"], "aps.positions");
  }
  if (root.contains("users")) {
    const json& u = root["users"];
    only_keys(u, "users", {"count", "layout_seed", "height_m", "positions"});
    t.layout.num_users = get_count(u, "users", "count", t.layout.num_users);
    t.layout.layout_seed = get_count(u, "users", "layout_seed", t.layout.layout_seed);
    t.layout.receiver_height = get_number(u, "users", "height_m", t.layout.receiver_height);
    if (u.contains("positions")) {
      if (u.contains("count")) throw ConfigError("users", "give either count or positions, not both");
      t.user_positions = get_points(u["positions"], "users.positions");
    }
  }
  if (root.contains("phys")) parse_phys(root["phys"], t.phys);
  if (root.contains("wall_patch")) {
    const json& wp = root["wall_patch"];
    only_keys(wp, "wall_patch", {"width_m", "height_m"});
    t.wall_grid.patch_width = get_number(wp, "wall_patch", "width_m", t.wall_grid.patch_width);
    t.wall_grid.patch_height = get_number(wp, "wall_patch", "height_m", t.wall_grid.patch_height);
  }
  if (root.contains("blockage")) {
    const json& b = root["blockage"];
    only_keys(b, "blockage", {"unblocked_probability"});
    t.unblocked_probability = get_number(b, "blockage", "unblocked_probability", t.unblocked_probability);
  }
  if (root.contains("qos")) parse_qos(root["qos"], cfg);
  if (root.contains("epsilon")) {
    const json& e = root["epsilon"];
    only_keys(e, "epsilon", {"quantile", "grid_spacing_m", "receiver_height_m", "value"});
    EpsilonGrid& g = cfg.sim.epsilon_grid;
    g.quantile = get_number(e, "epsilon", "quantile", g.quantile);
    g.spacing = get_number(e, "epsilon", "grid_spacing_m", g.spacing);
    g.receiver_height = get_number(e, "epsilon", "receiver_height_m", t.layout.receiver_height);
    if (e.contains("value")) cfg.sim.epsilon = get_number(e, "epsilon", "value", 0.0);
  } else {
    cfg.sim.epsilon_grid.receiver_height = t.layout.receiver_height;
  }
  if (root.contains("pso")) {
    const json& p = root["pso"];
    only_keys(p, "pso", {"swarm_size", "max_iters", "stall_threshold", "c1", "c2"});
    PsoConfig& pc = cfg.sim.pso;
    pc.swarm_size = get_count(p, "pso", "swarm_size", pc.swarm_size);
    pc.max_iters = get_count(p, "pso", "max_iters", pc.max_iters);
    pc.stall_threshold = get_count(p, "pso", "stall_threshold", pc.stall_threshold);
    pc.c1 = get_number(p, "pso", "c1", pc.c1);
    pc.c2 = get_number(p, "pso", "c2", pc.c2);
  }
  if (root.contains("scheduler")) {
    const json& s = root["scheduler"];
    only_keys(s, "scheduler", {"pf_window_slots", "an_alpha"});
    cfg.sim.pf_window = get_number(s, "scheduler", "pf_window_slots", cfg.sim.pf_window);
    cfg.sim.an_alpha = get_number(s, "scheduler", "an_alpha", cfg.sim.an_alpha);
  }
  if (root.contains("run")) parse_run(root["run"], cfg);
  if (cfg.sweep) cfg.sweep->reps = cfg.reps;
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SweepSpec parse_sweep_arg(std::string_view arg) {
  const auto eq = arg.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == arg.size()) {
    throw ConfigError("--sweep", "expected AXIS=v1,v2,...");
  }
  SweepSpec spec;
  try {
    spec.axis = parse_sweep_axis(arg.substr(0, eq));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--sweep", e.what());
  }
  std::string rest(arg.substr(eq + 1));
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError("--sweep", "bad value '" + item + "'");
    spec.values.push_back(v);
  }
  if (spec.values.empty()) throw ConfigError("--sweep", "no values given");
  return spec;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.slots < 1) throw ConfigError("run.slots", "must be >= 1");
  if (cfg.reps < 1) throw ConfigError("run.reps", "must be >= 1");
  try {
    cfg.sim.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(leading_key(e.what()), e.what());
  }
  try {
    const Scenario s = cfg.scenario.build(cfg.scenario.layout.layout_seed);
    if (s.num_users() < 2) throw std::invalid_argument("users: need >= 2 users for secrecy");
    s.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(leading_key(e.what()), e.what());
  }
}

}  // namespace seccell
