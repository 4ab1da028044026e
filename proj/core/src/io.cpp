#include "isacsim/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>

#include "isacsim/errors.hpp"

namespace isacsim {
namespace {

using nlohmann::json;

void write_float32(std::ofstream& os, const std::complex<double>* data, std::size_t count) {
  std::vector<float> buf(2 * count);
  for (std::size_t i = 0; i < count; ++i) {
    buf[2 * i] = static_cast<float>(data[i].real());
    buf[2 * i + 1] = static_cast<float>(data[i].imag());
  }
  os.write(reinterpret_cast<const char*>(buf.data()),
           static_cast<std::streamsize>(buf.size() * sizeof(float)));
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw ConfigError("io: cannot open " + path + " for writing");
  return os;
}

const char* origin_name(MatrixOrigin origin) {
  switch (origin) {
    case MatrixOrigin::Raw: return "raw";
    case MatrixOrigin::Compressed: return "compressed";
    case MatrixOrigin::Cancelled: return "cancelled";
  }
  return "raw";
}

MatrixOrigin origin_from(const std::string& name) {
  if (name == "raw") return MatrixOrigin::Raw;
  if (name == "compressed") return MatrixOrigin::Compressed;
  if (name == "cancelled") return MatrixOrigin::Cancelled;
  throw ConfigError("io: unknown matrix origin '" + name + "'");
}

}  // namespace

void write_iq(const std::string& base_path, const PulseMatrix& matrix) {
  {
    auto os = open_out(base_path + ".iq", std::ios::binary);
    write_float32(os, matrix.storage().data(), matrix.storage().size());
  }
  json sidecar;
  sidecar["format"] = "float32-interleaved-iq-le";
  sidecar["fast_size"] = matrix.fast_size();
  sidecar["slow_size"] = matrix.slow_size();
  sidecar["channels"] = matrix.channel_count();
  sidecar["sample_rate_hz"] = matrix.sample_rate_hz;
  sidecar["pulse_times_s"] = matrix.pulse_times_s;
  sidecar["origin"] = origin_name(matrix.origin);
  sidecar["invalid_prefix"] = matrix.invalid_prefix;
  auto os = open_out(base_path + ".iqh");
  os << sidecar.dump(2) << "\n";
}

PulseMatrix read_iq(const std::string& base_path) {
  std::ifstream hs(base_path + ".iqh");
  if (!hs) throw ConfigError("io: cannot open " + base_path + ".iqh");
  json sidecar = json::parse(hs);

  PulseMatrix matrix(sidecar.at("fast_size").get<std::size_t>(),
                     sidecar.at("slow_size").get<std::size_t>(),
                     sidecar.at("channels").get<std::size_t>());
  matrix.sample_rate_hz = sidecar.at("sample_rate_hz").get<double>();
  matrix.pulse_times_s = sidecar.at("pulse_times_s").get<std::vector<double>>();
  matrix.origin = origin_from(sidecar.at("origin").get<std::string>());
  matrix.invalid_prefix = sidecar.value("invalid_prefix", std::size_t{0});

  std::ifstream is(base_path + ".iq", std::ios::binary);
  if (!is) throw ConfigError("io: cannot open " + base_path + ".iq");
  std::vector<float> buf(2 * matrix.storage().size());
  is.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (static_cast<std::size_t>(is.gcount()) != buf.size() * sizeof(float)) {
    throw ConfigError("io: " + base_path + ".iq shorter than the sidecar promises");
  }
  for (std::size_t i = 0; i < matrix.storage().size(); ++i) {
    matrix.storage()[i] = {static_cast<double>(buf[2 * i]),
                           static_cast<double>(buf[2 * i + 1])};
  }
  return matrix;
}

void write_symbol_iq(const std::string& path, const BasebandSymbol& symbol) {
  auto os = open_out(path, std::ios::binary);
  write_float32(os, symbol.time_domain.data(), symbol.time_domain.size());
}

void write_map_csv(const std::string& path, const RangeDopplerMap& map) {
  auto os = open_out(path);
  os << std::setprecision(10);
  os << "# channel," << map.channel << "\n";
  os << "# velocity_axis_mps";
  for (double v : map.velocity_axis_mps) os << "," << v;
  os << "\n# rows: range_m then one power value per doppler bin\n";
  for (std::size_t r = 0; r < map.range_size(); ++r) {
    os << map.range_axis_m[r];
    for (std::size_t d = 0; d < map.doppler_size(); ++d) os << "," << map.at(r, d);
    os << "\n";
  }
}

void write_map_binary(const std::string& base_path, const RangeDopplerMap& map) {
  {
    auto os = open_out(base_path + ".f32", std::ios::binary);
    std::vector<float> buf(map.power.size());
    for (std::size_t i = 0; i < map.power.size(); ++i) {
      buf[i] = static_cast<float>(map.power[i]);
    }
    os.write(reinterpret_cast<const char*>(buf.data()),
             static_cast<std::streamsize>(buf.size() * sizeof(float)));
  }
  json sidecar;
  sidecar["format"] = "float32-power-le";
  sidecar["range_size"] = map.range_size();
  sidecar["doppler_size"] = map.doppler_size();
  sidecar["range_axis_m"] = map.range_axis_m;
  sidecar["velocity_axis_mps"] = map.velocity_axis_mps;
  sidecar["channel"] = map.channel;
  auto os = open_out(base_path + ".hdr");
  os << sidecar.dump(2) << "\n";
}

void write_detections_csv(const std::string& path, const std::vector<Detection>& detections) {
  auto os = open_out(path);
  os << std::setprecision(10);
  os << "range_m,velocity_mps,score,detector,range_bin,doppler_bin\n";
  for (const auto& d : detections) {
    os << d.range_m << "," << d.velocity_mps << "," << d.score << ","
       << (d.detector == DetectorKind::CaCfar ? "ca_cfar" : "cfps_cfar") << ","
       << d.range_bin << "," << d.doppler_bin << "\n";
  }
}

void write_tracks_csv(const std::string& path, const std::vector<TrackRow>& rows) {
  auto os = open_out(path);
  os << std::setprecision(10);
  os << "timestamp_s,id,x_m,y_m,vx_mps,vy_mps,dominant_model,model_probabilities\n";
  for (const auto& row : rows) {
    os << row.timestamp_s << "," << row.id << "," << row.x_m << "," << row.y_m << ","
       << row.vx_mps << "," << row.vy_mps << "," << row.dominant_model << ",";
    for (std::size_t i = 0; i < row.model_probabilities.size(); ++i) {
      os << (i ? ";" : "") << row.model_probabilities[i];
    }
    os << "\n";
  }
}

void write_residual_history_csv(const std::string& path, const std::vector<double>& history) {
  auto os = open_out(path);
  os << std::setprecision(10);
  os << "iteration,residual_power\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    os << i << "," << history[i] << "\n";
  }
}

}  // namespace isacsim
