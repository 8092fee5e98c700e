#include "donsa/config.hpp"

#include <fstream>
#include <limits>
#include <set>

#include "donsa/errors.hpp"

namespace donsa {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& ctx) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError(ctx + ": unknown key '" + key + "'");
}

double get_num(const json& obj, const std::string& key, const std::string& ctx) {
  if (!obj.contains(key)) throw ConfigError(ctx + ": missing key '" + key + "'");
  if (!obj[key].is_number()) throw ConfigError(ctx + ": '" + key + "' must be a number");
  return obj[key].get<double>();
}

double get_num_or(const json& obj, const std::string& key, double fallback,
                  const std::string& ctx) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(ctx + ": '" + key + "' must be a number");
  return obj[key].get<double>();
}

RfInterface parse_rf(const json& item, const std::string& ctx) {
  check_keys(item,
             {"id", "class", "channel_bw_hz", "max_rate_bps", "num_channels", "bs_total_bw_hz",
              "bs_conn_cap", "carrier_freq_hz", "tx_power_dbm"},
             ctx);
  RfInterface rf;
  if (!item.contains("id") || !item["id"].is_string())
    throw ConfigError(ctx + ": every interface needs a string 'id'");
  rf.id = item["id"].get<std::string>();
  const std::string cls = item.value("class", std::string{});
  if (cls == "m2m")
    rf.rf_class = RfClass::M2M;
  else if (cls == "m2b")
    rf.rf_class = RfClass::M2B;
  else
    throw ConfigError(ctx + ": interface '" + rf.id + "' class must be \"m2m\" or \"m2b\"");
  rf.channel_bw_hz = get_num(item, "channel_bw_hz", ctx);
  rf.max_rate_bps =
      get_num_or(item, "max_rate_bps", std::numeric_limits<double>::infinity(), ctx);
  rf.num_channels = static_cast<int>(get_num_or(item, "num_channels", 1, ctx));
  rf.bs_total_bw_hz = get_num_or(item, "bs_total_bw_hz", 0.0, ctx);
  rf.bs_conn_cap = static_cast<int>(get_num_or(item, "bs_conn_cap", 0, ctx));
  rf.carrier_freq_hz = get_num_or(item, "carrier_freq_hz", 0.0, ctx);
  rf.tx_power_dbm = get_num_or(item, "tx_power_dbm", 23.0, ctx);
  validate(rf);
  return rf;
}

ChannelModel parse_channel_model(const json& obj) {
  const std::string ctx = "channel_model";
  check_keys(obj,
             {"path_loss_exponent", "shadowing_std_db", "rayleigh_scale", "noise_psd_dbm_hz",
              "noise_figure_db", "reference_distance_m", "reference_loss_db"},
             ctx);
  ChannelModel cm = default_channel_model();
  cm.path_loss_exponent = get_num_or(obj, "path_loss_exponent", cm.path_loss_exponent, ctx);
  cm.shadowing_std_db = get_num_or(obj, "shadowing_std_db", cm.shadowing_std_db, ctx);
  cm.rayleigh_scale = get_num_or(obj, "rayleigh_scale", cm.rayleigh_scale, ctx);
  cm.noise_psd_dbm_hz = get_num_or(obj, "noise_psd_dbm_hz", cm.noise_psd_dbm_hz, ctx);
  cm.noise_figure_db = get_num_or(obj, "noise_figure_db", cm.noise_figure_db, ctx);
  cm.reference_distance_m = get_num_or(obj, "reference_distance_m", cm.reference_distance_m, ctx);
  cm.reference_loss_db = get_num_or(obj, "reference_loss_db", cm.reference_loss_db, ctx);
  validate(cm);
  return cm;
}

ScenarioSpec parse_scenario(const json& obj) {
  const std::string ctx = "scenario";
  check_keys(obj,
             {"id", "n_machines", "n_sources", "n_relays", "n_bs", "cell_radius_m",
              "requested_bw_hz", "sweep_variable", "sweep_points", "runs", "algorithms",
              "base_seed", "jobs", "algorithm_overrides"},
             ctx);
  const std::string id = obj.value("id", std::string("custom"));
  ScenarioSpec spec = id == "custom" ? ScenarioSpec{} : scenario_preset(id);
  spec.id = id;
  spec.n_machines = static_cast<int>(get_num_or(obj, "n_machines", spec.n_machines, ctx));
  spec.n_sources = static_cast<int>(get_num_or(obj, "n_sources", spec.n_sources, ctx));
  spec.n_relays = static_cast<int>(get_num_or(obj, "n_relays", spec.n_relays, ctx));
  spec.n_bs = static_cast<int>(get_num_or(obj, "n_bs", spec.n_bs, ctx));
  spec.cell_radius_m = get_num_or(obj, "cell_radius_m", spec.cell_radius_m, ctx);
  spec.requested_bw_hz = get_num_or(obj, "requested_bw_hz", spec.requested_bw_hz, ctx);
  if (obj.contains("sweep_variable"))
    spec.sweep_variable = sweep_variable_from_name(obj["sweep_variable"].get<std::string>());
  if (obj.contains("sweep_points")) {
    if (!obj["sweep_points"].is_array())
      throw ConfigError(ctx + ": sweep_points must be an array of numbers");
    spec.sweep_points.clear();
    for (const auto& p : obj["sweep_points"]) {
      if (!p.is_number()) throw ConfigError(ctx + ": sweep_points must be numbers");
      spec.sweep_points.push_back(p.get<double>());
    }
  }
  spec.runs = static_cast<int>(get_num_or(obj, "runs", spec.runs, ctx));
  spec.base_seed = static_cast<std::uint64_t>(get_num_or(obj, "base_seed",
                                                         static_cast<double>(spec.base_seed), ctx));
  spec.jobs = static_cast<int>(get_num_or(obj, "jobs", spec.jobs, ctx));
  if (obj.contains("algorithms")) {
    if (!obj["algorithms"].is_array())
      throw ConfigError(ctx + ": algorithms must be an array of names");
    std::vector<std::string> names;
    for (const auto& name : obj["algorithms"]) {
      if (!name.is_string()) throw ConfigError(ctx + ": algorithm names must be strings");
      names.push_back(name.get<std::string>());
    }
    const json* overrides =
        obj.contains("algorithm_overrides") ? &obj["algorithm_overrides"] : nullptr;
    spec.algorithms = resolve_algorithms(names, overrides);
  } else if (obj.contains("algorithm_overrides")) {
    std::vector<std::string> names;
    for (const AlgorithmSpec& a : spec.algorithms) names.push_back(a.name);
    spec.algorithms = resolve_algorithms(names, &obj["algorithm_overrides"]);
  }
  return spec;
}

}  // namespace

std::vector<RfInterface> default_catalog() {
  std::vector<RfInterface> catalog;
  auto m2m = [](std::string id, double bw, double cap, double freq) {
    RfInterface rf;
    rf.id = std::move(id);
    rf.rf_class = RfClass::M2M;
    rf.channel_bw_hz = bw;
    rf.max_rate_bps = cap;
    rf.carrier_freq_hz = freq;
    return rf;
  };
  auto m2b = [](std::string id, double bw, double cap, double bs_bw, int conn, double freq) {
    RfInterface rf;
    rf.id = std::move(id);
    rf.rf_class = RfClass::M2B;
    rf.channel_bw_hz = bw;
    rf.max_rate_bps = cap;
    rf.bs_total_bw_hz = bs_bw;
    rf.bs_conn_cap = conn;
    rf.carrier_freq_hz = freq;
    return rf;
  };
  catalog.push_back(m2m("zwave", 200e3, 100e3, 868e6));
  catalog.push_back(m2m("bluetooth", 1e6, 2e6, 2.4e9));
  catalog.push_back(m2m("wifi", 20e6, 54e6, 2.4e9));
  catalog.push_back(m2b("nbiot", 200e3, 250e3, 2e6, 50, 900e6));
  catalog.push_back(m2b("ltem", 1.4e6, 1e6, 5e6, 50, 700e6));
  catalog.push_back(m2b("lte", 20e6, 100e6, 20e6, 100, 1.8e9));
  return catalog;
}

ChannelModel default_channel_model() { return ChannelModel{}; }

ScenarioSpec scenario_preset(const std::string& id) {
  ScenarioSpec spec;
  spec.id = id;
  spec.algorithms = resolve_algorithms(known_algorithms());
  if (id == "s1") {
    spec.n_machines = 300;
    spec.sweep_variable = SweepVariable::NSources;
    spec.sweep_points = {50, 100, 150, 200, 250, 300};
  } else if (id == "s2") {
    spec.n_sources = 150;
    spec.n_relays = 150;
    spec.sweep_variable = SweepVariable::CellRadius;
    spec.sweep_points = {100, 250, 500, 750, 1000};
  } else if (id == "s3") {
    spec.n_sources = 150;
    spec.n_relays = 150;
    spec.sweep_variable = SweepVariable::RequestedBw;
    spec.sweep_points = {20e3, 50e3, 100e3, 200e3, 500e3, 1e6, 1.4e6, 2e6, 5e6, 10e6, 20e6};
  } else {
    throw ConfigError("unknown scenario preset '" + id + "' (expected s1, s2 or s3)");
  }
  return spec;
}

Config default_config() {
  Config cfg;
  cfg.rf_catalog = default_catalog();
  cfg.channel_model = default_channel_model();
  return cfg;
}

std::vector<AlgorithmSpec> resolve_algorithms(const std::vector<std::string>& names,
                                              const nlohmann::json* overrides) {
  std::vector<AlgorithmSpec> specs;
  for (const std::string& name : names) {
    AlgorithmSpec spec = algorithm_preset(name);
    if (overrides && overrides->contains(name)) {
      const json& o = (*overrides)[name];
      check_keys(o, {"direct_enabled", "relays_enabled"}, "algorithm_overrides." + name);
      if (o.contains("direct_enabled")) spec.direct_enabled = o["direct_enabled"].get<bool>();
      if (o.contains("relays_enabled")) spec.relays_enabled = o["relays_enabled"].get<bool>();
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

Config parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration document must be a JSON object");
  // An emitted manifest wraps the config; accept it directly.
  if (doc.contains("config") && doc.contains("meta")) return parse_config(doc["config"]);

  check_keys(doc,
             {"rf_catalog", "channel_model", "scenario", "output_dir", "repair_conflicts",
              "truncate_channels_to_sources", "jobs"},
             "config");
  Config cfg = default_config();
  if (doc.contains("rf_catalog")) {
    if (!doc["rf_catalog"].is_array()) throw ConfigError("rf_catalog must be an array");
    cfg.rf_catalog.clear();
    for (const auto& item : doc["rf_catalog"]) cfg.rf_catalog.push_back(parse_rf(item, "rf_catalog"));
    if (cfg.rf_catalog.empty()) throw ConfigError("rf_catalog must not be empty");
  }
  if (doc.contains("channel_model")) cfg.channel_model = parse_channel_model(doc["channel_model"]);
  if (doc.contains("scenario")) {
    cfg.scenario = parse_scenario(doc["scenario"]);
    cfg.has_scenario = true;
  }
  if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
  if (doc.contains("repair_conflicts")) cfg.repair_conflicts = doc["repair_conflicts"].get<bool>();
  if (doc.contains("truncate_channels_to_sources"))
    cfg.truncate_channels_to_sources = doc["truncate_channels_to_sources"].get<bool>();
  if (doc.contains("jobs")) cfg.jobs = static_cast<int>(get_num(doc, "jobs", "config"));
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

ordered_json config_to_json(const Config& cfg) {
  ordered_json doc;
  ordered_json catalog = ordered_json::array();
  for (const RfInterface& rf : cfg.rf_catalog) {
    ordered_json item;
    item["id"] = rf.id;
    item["class"] = rf.rf_class == RfClass::M2M ? "m2m" : "m2b";
    item["channel_bw_hz"] = rf.channel_bw_hz;
    if (std::isfinite(rf.max_rate_bps)) item["max_rate_bps"] = rf.max_rate_bps;
    item["num_channels"] = rf.num_channels;
    if (rf.rf_class == RfClass::M2B) {
      item["bs_total_bw_hz"] = rf.bs_total_bw_hz;
      item["bs_conn_cap"] = rf.bs_conn_cap;
    }
    item["carrier_freq_hz"] = rf.carrier_freq_hz;
    item["tx_power_dbm"] = rf.tx_power_dbm;
    catalog.push_back(item);
  }
  doc["rf_catalog"] = catalog;

  ordered_json cm;
  cm["path_loss_exponent"] = cfg.channel_model.path_loss_exponent;
  cm["shadowing_std_db"] = cfg.channel_model.shadowing_std_db;
  cm["rayleigh_scale"] = cfg.channel_model.rayleigh_scale;
  cm["noise_psd_dbm_hz"] = cfg.channel_model.noise_psd_dbm_hz;
  cm["noise_figure_db"] = cfg.channel_model.noise_figure_db;
  cm["reference_distance_m"] = cfg.channel_model.reference_distance_m;
  cm["reference_loss_db"] = cfg.channel_model.reference_loss_db;
  doc["channel_model"] = cm;

  if (cfg.has_scenario) {
    const ScenarioSpec& s = cfg.scenario;
    ordered_json sc;
    sc["id"] = s.id;
    sc["n_machines"] = s.n_machines;
    sc["n_sources"] = s.n_sources;
    sc["n_relays"] = s.n_relays;
    sc["n_bs"] = s.n_bs;
    sc["cell_radius_m"] = s.cell_radius_m;
    sc["requested_bw_hz"] = s.requested_bw_hz;
    sc["sweep_variable"] = sweep_variable_name(s.sweep_variable);
    sc["sweep_points"] = s.sweep_points;
    sc["runs"] = s.runs;
    ordered_json names = ordered_json::array();
    ordered_json overrides;
    for (const AlgorithmSpec& a : s.algorithms) {
      names.push_back(a.name);
      const AlgorithmSpec preset = algorithm_preset(a.name);
      if (a.direct_enabled != preset.direct_enabled ||
          a.relays_enabled != preset.relays_enabled) {
        ordered_json o;
        o["direct_enabled"] = a.direct_enabled;
        o["relays_enabled"] = a.relays_enabled;
        overrides[a.name] = o;
      }
    }
    sc["algorithms"] = names;
    if (!overrides.empty()) sc["algorithm_overrides"] = overrides;
    sc["base_seed"] = s.base_seed;
    sc["jobs"] = s.jobs;
    doc["scenario"] = sc;
  }
  doc["output_dir"] = cfg.output_dir;
  doc["repair_conflicts"] = cfg.repair_conflicts;
  doc["truncate_channels_to_sources"] = cfg.truncate_channels_to_sources;
  doc["jobs"] = cfg.jobs;
  return doc;
}

}  // namespace donsa
