#include "isacsim/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "isacsim/errors.hpp"
#include "isacsim/units.hpp"

namespace isacsim {
namespace {

using nlohmann::json;

/// Rejects keys the schema does not know; silent typos in physics configs
/// are the top source of bogus results.
void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("scenario: unknown key '" + key + "' in " + where);
    }
  }
}

double require_number(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) {
    throw ConfigError("scenario: missing '" + std::string(key) + "' in " + where);
  }
  if (!obj.at(key).is_number()) {
    throw ConfigError("scenario: '" + std::string(key) + "' in " + where + " must be a number");
  }
  return obj.at(key).get<double>();
}

WindowKind parse_window(const std::string& name) {
  if (name == "rect" || name == "rectangular") return WindowKind::Rectangular;
  if (name == "hann") return WindowKind::Hann;
  if (name == "hamming") return WindowKind::Hamming;
  throw ConfigError("scenario: unknown doppler_window '" + name + "'");
}

Numerology parse_numerology(const json& obj) {
  check_keys(obj, "numerology",
             {"subcarrier_spacing_khz", "bandwidth_mhz", "symbols_per_slot",
              "slots_per_period", "period_duration_ms", "fft_size", "cp_fraction"});
  Numerology num;
  num.subcarrier_spacing_hz = require_number(obj, "numerology", "subcarrier_spacing_khz") * 1e3;
  num.bandwidth_hz = require_number(obj, "numerology", "bandwidth_mhz") * 1e6;
  num.symbols_per_slot = obj.value("symbols_per_slot", std::size_t{14});
  num.slots_per_period = obj.value("slots_per_period", std::size_t{10});
  num.period_duration_s = require_number(obj, "numerology", "period_duration_ms") * 1e-3;
  num.fft_size = obj.value("fft_size", std::size_t{4096});
  num.cp_fraction = obj.value("cp_fraction", 1.0 / 14.0);
  return num;
}

ImpairmentConfig parse_impairments(const json& obj) {
  check_keys(obj, "scene.impairments",
             {"phase_jitter_std_rad", "amplitude_jitter_std", "saturation_level_db",
              "jitter_correlation"});
  ImpairmentConfig imp;
  imp.phase_jitter_std_rad = obj.value("phase_jitter_std_rad", 0.0);
  imp.amplitude_jitter_std = obj.value("amplitude_jitter_std", 0.0);
  if (obj.contains("saturation_level_db") && !obj.at("saturation_level_db").is_null()) {
    imp.saturation_level_db = obj.at("saturation_level_db").get<double>();
  }
  imp.jitter_correlation = obj.value("jitter_correlation", 0.9);
  return imp;
}

LinkParams parse_link(const json& obj) {
  check_keys(obj, "link",
             {"transmit_power_dbm", "antenna_gain_db", "carrier_frequency_ghz",
              "wavelength_mm", "rcs_m2", "num_symbols", "symbol_duration_us", "duty_ratio",
              "max_range_m", "temperature_k", "loss_noise_figure_db"});
  LinkParams link;
  if (obj.contains("transmit_power_dbm")) {
    link.transmit_power_w = db_to_linear(obj.at("transmit_power_dbm").get<double>()) * 1e-3;
  }
  link.antenna_gain_db = obj.value("antenna_gain_db", link.antenna_gain_db);
  if (obj.contains("wavelength_mm")) {
    link.wavelength_m = obj.at("wavelength_mm").get<double>() * 1e-3;
  } else if (obj.contains("carrier_frequency_ghz")) {
    link.wavelength_m = kSpeedOfLight / (obj.at("carrier_frequency_ghz").get<double>() * 1e9);
  }
  link.rcs_m2 = obj.value("rcs_m2", link.rcs_m2);
  link.num_symbols = obj.value("num_symbols", link.num_symbols);
  if (obj.contains("symbol_duration_us")) {
    link.symbol_duration_s = obj.at("symbol_duration_us").get<double>() * 1e-6;
  }
  link.duty_ratio = obj.value("duty_ratio", link.duty_ratio);
  link.max_range_m = obj.value("max_range_m", link.max_range_m);
  link.temperature_k = obj.value("temperature_k", link.temperature_k);
  link.loss_noise_figure_db = obj.value("loss_noise_figure_db", link.loss_noise_figure_db);
  return link;
}

ProcessingSection parse_processing(const json& obj) {
  check_keys(obj, "processing",
             {"doppler_window", "combine_channel", "nlms", "mti", "cfar", "cfps", "tracking"});
  ProcessingSection proc;
  if (obj.contains("doppler_window")) {
    proc.doppler_window = parse_window(obj.at("doppler_window").get<std::string>());
  }
  if (obj.contains("combine_channel") && !obj.at("combine_channel").is_null()) {
    proc.combine_channel = obj.at("combine_channel").get<std::size_t>();
  }
  if (obj.contains("nlms")) {
    const json& n = obj.at("nlms");
    check_keys(n, "processing.nlms",
               {"enabled", "filter_order", "step_size", "regularization", "training_pulses",
                "retrain_each_cpi"});
    proc.nlms.enabled = n.value("enabled", true);
    proc.nlms.config.filter_order = n.value("filter_order", proc.nlms.config.filter_order);
    proc.nlms.config.step_size = n.value("step_size", proc.nlms.config.step_size);
    proc.nlms.config.regularization = n.value("regularization", proc.nlms.config.regularization);
    proc.nlms.config.training_pulses =
        n.value("training_pulses", proc.nlms.config.training_pulses);
    proc.nlms.retrain_each_cpi = n.value("retrain_each_cpi", false);
  }
  if (obj.contains("mti")) {
    const json& m = obj.at("mti");
    check_keys(m, "processing.mti", {"enabled", "order"});
    proc.mti.enabled = m.value("enabled", true);
    proc.mti.order = m.value("order", std::size_t{1});
  }
  if (obj.contains("cfar")) {
    const json& c = obj.at("cfar");
    check_keys(c, "processing.cfar",
               {"guard_range", "guard_doppler", "train_range", "train_doppler", "pfa"});
    proc.cfar.guard_range = c.value("guard_range", proc.cfar.guard_range);
    proc.cfar.guard_doppler = c.value("guard_doppler", proc.cfar.guard_doppler);
    proc.cfar.train_range = c.value("train_range", proc.cfar.train_range);
    proc.cfar.train_doppler = c.value("train_doppler", proc.cfar.train_doppler);
    proc.cfar.pfa = c.value("pfa", proc.cfar.pfa);
  }
  if (obj.contains("cfps")) {
    const json& c = obj.at("cfps");
    check_keys(c, "processing.cfps",
               {"enabled", "pfa", "concavity", "smoothing_window", "poly_order",
                "fit_halfwidth", "zero_doppler_guard_hz", "training_cpis",
                "max_training_features", "mode", "region_file"});
    proc.cfps.enabled = c.value("enabled", true);
    proc.cfps.pfa = c.value("pfa", proc.cfps.pfa);
    proc.cfps.concavity = c.value("concavity", proc.cfps.concavity);
    proc.cfps.smoothing_window = c.value("smoothing_window", proc.cfps.smoothing_window);
    proc.cfps.poly_order = c.value("poly_order", proc.cfps.poly_order);
    proc.cfps.fit_halfwidth = c.value("fit_halfwidth", proc.cfps.fit_halfwidth);
    proc.cfps.zero_doppler_guard_hz =
        c.value("zero_doppler_guard_hz", proc.cfps.zero_doppler_guard_hz);
    proc.cfps.training_cpis = c.value("training_cpis", proc.cfps.training_cpis);
    proc.cfps.max_training_features =
        c.value("max_training_features", proc.cfps.max_training_features);
    if (c.contains("mode")) {
      const std::string mode = c.at("mode").get<std::string>();
      if (mode == "all") {
        proc.cfps.mode = RegionMode::AllFeatures;
      } else if (mode == "location") {
        proc.cfps.mode = RegionMode::LocationOnly;
      } else {
        throw ConfigError("scenario: cfps.mode must be 'all' or 'location'");
      }
    }
    proc.cfps.region_file = c.value("region_file", std::string{});
  }
  if (obj.contains("tracking")) {
    const json& t = obj.at("tracking");
    check_keys(t, "processing.tracking",
               {"enabled", "source", "gate_mahalanobis_sq", "self_transition", "range_std_m",
                "velocity_std_mps", "azimuth_std_deg"});
    proc.tracking.enabled = t.value("enabled", true);
    proc.tracking.source = t.value("source", proc.tracking.source);
    if (proc.tracking.source != "cfps" && proc.tracking.source != "ca_cfar" &&
        proc.tracking.source != "both") {
      throw ConfigError("scenario: tracking.source must be cfps, ca_cfar or both");
    }
    proc.tracking.gate_mahalanobis_sq =
        t.value("gate_mahalanobis_sq", proc.tracking.gate_mahalanobis_sq);
    proc.tracking.self_transition = t.value("self_transition", proc.tracking.self_transition);
    proc.tracking.range_std_m = t.value("range_std_m", proc.tracking.range_std_m);
    proc.tracking.velocity_std_mps = t.value("velocity_std_mps", proc.tracking.velocity_std_mps);
    proc.tracking.azimuth_std_deg = t.value("azimuth_std_deg", proc.tracking.azimuth_std_deg);
  }
  return proc;
}

}  // namespace

SensingSchedule Scenario::schedule() const {
  SensingSchedule sched = build_schedule(numerology, pattern, sensing_slots, pulses_per_cpi);
  if (pri_override_s) sched.pri_s = *pri_override_s;
  return sched;
}

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  check_keys(doc, "scenario root",
             {"numerology", "slot_pattern", "schedule", "scene", "link", "array",
              "processing", "rates", "num_cpis", "seed"});

  Scenario sc;
  if (!doc.contains("numerology")) throw ConfigError("scenario: missing numerology section");
  sc.numerology = parse_numerology(doc.at("numerology"));
  if (!doc.contains("slot_pattern")) throw ConfigError("scenario: missing slot_pattern");
  sc.pattern = SlotPattern::from_string(doc.at("slot_pattern").get<std::string>());

  if (!doc.contains("schedule")) throw ConfigError("scenario: missing schedule section");
  {
    const json& s = doc.at("schedule");
    check_keys(s, "schedule", {"sensing_slots", "pulses_per_cpi", "pri_override_ms"});
    if (!s.contains("sensing_slots")) throw ConfigError("scenario: missing schedule.sensing_slots");
    sc.sensing_slots = s.at("sensing_slots").get<std::vector<std::size_t>>();
    sc.pulses_per_cpi = s.value("pulses_per_cpi", std::size_t{256});
    if (s.contains("pri_override_ms") && !s.at("pri_override_ms").is_null()) {
      sc.pri_override_s = s.at("pri_override_ms").get<double>() * 1e-3;
    }
  }

  if (doc.contains("scene")) {
    const json& s = doc.at("scene");
    check_keys(s, "scene",
               {"targets", "clutter", "impairments", "noise_floor", "receive_window_m",
                "chirp_occupied_subcarriers", "direct_path_isolation_db"});
    for (const json& t : s.value("targets", json::array())) {
      check_keys(t, "scene.targets[]",
                 {"range_m", "velocity_mps", "rcs_m2", "azimuth_deg", "waypoints"});
      ScenarioTarget target;
      target.spec.range_m = require_number(t, "target", "range_m");
      target.spec.radial_velocity_mps = t.value("velocity_mps", 0.0);
      target.spec.rcs_m2 = t.value("rcs_m2", 0.1);
      target.spec.azimuth_deg = t.value("azimuth_deg", 0.0);
      for (const json& w : t.value("waypoints", json::array())) {
        check_keys(w, "scene.targets[].waypoints[]",
                   {"cpi", "range_m", "velocity_mps", "azimuth_deg"});
        TargetWaypoint wp;
        wp.cpi = w.at("cpi").get<std::size_t>();
        wp.range_m = require_number(w, "waypoint", "range_m");
        wp.velocity_mps = w.value("velocity_mps", 0.0);
        wp.azimuth_deg = w.value("azimuth_deg", 0.0);
        target.waypoints.push_back(wp);
      }
      sc.targets.push_back(std::move(target));
    }
    for (const json& c : s.value("clutter", json::array())) {
      check_keys(c, "scene.clutter[]", {"range_m", "cnr_db", "azimuth_deg"});
      ClutterScatterer cl;
      cl.range_m = require_number(c, "clutter", "range_m");
      cl.cnr_db = require_number(c, "clutter", "cnr_db");
      cl.azimuth_deg = c.value("azimuth_deg", 0.0);
      sc.clutter.push_back(cl);
    }
    if (s.contains("impairments")) sc.impairments = parse_impairments(s.at("impairments"));
    sc.noise_floor = s.value("noise_floor", 1.0);
    sc.receive_window_m = s.value("receive_window_m", 0.0);
    if (s.contains("chirp_occupied_subcarriers")) {
      sc.chirp.occupied_subcarriers = s.at("chirp_occupied_subcarriers").get<std::size_t>();
    }
    if (s.contains("direct_path_isolation_db") &&
        !s.at("direct_path_isolation_db").is_null()) {
      sc.direct_path_isolation_db = s.at("direct_path_isolation_db").get<double>();
    }
  }

  if (doc.contains("link")) sc.link = parse_link(doc.at("link"));
  sc.link.num_symbols = sc.pulses_per_cpi;

  if (doc.contains("array")) {
    const json& a = doc.at("array");
    check_keys(a, "array", {"num_channels", "element_spacing_wl"});
    sc.array.num_channels = a.value("num_channels", sc.array.num_channels);
    sc.array.element_spacing_wl = a.value("element_spacing_wl", sc.array.element_spacing_wl);
  }

  if (doc.contains("processing")) sc.processing = parse_processing(doc.at("processing"));

  if (doc.contains("rates")) {
    const json& r = doc.at("rates");
    check_keys(r, "rates", {"benchmark_mbps", "measured_mbps"});
    sc.rates.benchmark_rate_bps = require_number(r, "rates", "benchmark_mbps") * 1e6;
    sc.rates.measured_rate_bps = require_number(r, "rates", "measured_mbps") * 1e6;
  }

  sc.num_cpis = doc.value("num_cpis", std::size_t{1});
  if (!doc.contains("seed")) {
    throw ConfigError("scenario: seed is mandatory for reproducibility");
  }
  sc.seed = doc.at("seed").get<std::uint64_t>();

  // referenced-entity validation
  sc.numerology.validate();
  (void)sc.schedule();
  sc.link.validate();
  sc.array.validate();
  for (const auto& t : sc.targets) t.spec.validate();
  for (const auto& c : sc.clutter) c.validate();
  sc.impairments.validate();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("scenario: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_hash(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  const std::string canonical = doc.dump();  // nlohmann sorts object keys
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << hash;
  return os.str();
}

}  // namespace isacsim
