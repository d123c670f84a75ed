#include "vistrack/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vistrack/errors.hpp"

namespace vistrack {
namespace {

using nlohmann::json;

const std::set<std::string> kCommonKeys = {"filter", "camera", "image_size", "initial_point",
                                           "seed"};
const std::set<std::string> kEkfKeys = {"displacement", "init_cov_scale", "process_noise",
                                        "pixel_noise"};
const std::set<std::string> kPfKeys = {"particles",     "resampler",     "noise_x",
                                       "noise_y",       "noise_z",       "init_spread_x",
                                       "init_spread_y", "init_spread_z"};

double number(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw InvalidArgument("config key '" + key + "' must be a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw InvalidArgument("config key '" + key + "' must be finite");
  }
  return d;
}

template <std::size_t N>
std::array<double, N> numbers(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != N) {
    throw InvalidArgument("config key '" + key + "' must be an array of " + std::to_string(N) +
                          " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = number(v[i], key);
  }
  return out;
}

std::uint64_t unsigned_integer(const json& v, const std::string& key) {
  if (!v.is_number_unsigned()) {
    throw InvalidArgument("config key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Range range(const json& v, const std::string& key) {
  const auto r = numbers<2>(v, key);
  return {r[0], r[1]};
}

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

}  // namespace

FilterKind parse_filter_kind(std::string_view name) {
  if (name == "ekf") {
    return FilterKind::kEkf;
  }
  if (name == "pf") {
    return FilterKind::kPf;
  }
  throw InvalidArgument("unknown filter kind '" + std::string(name) + "' (expected ekf or pf)");
}

std::string to_string(FilterKind kind) { return kind == FilterKind::kEkf ? "ekf" : "pf"; }

Resampler parse_resampler(std::string_view name) {
  if (name == "systematic") {
    return Resampler::kSystematic;
  }
  if (name == "multinomial") {
    return Resampler::kMultinomial;
  }
  throw InvalidArgument("unknown resampler '" + std::string(name) +
                        "' (expected systematic or multinomial)");
}

std::string to_string(Resampler kind) {
  return kind == Resampler::kSystematic ? "systematic" : "multinomial";
}

void RunConfig::validate() const {
  camera.model();
  if (!initial.vec().allFinite()) {
    throw InvalidArgument("initial point must be finite");
  }
  normalize(initial);
  if (filter == FilterKind::kEkf) {
    if (!std::isfinite(displacement)) {
      throw InvalidArgument("displacement must be finite");
    }
    kalman.validate();
  } else {
    if (particle.count == 0) {
      throw InvalidArgument("particle count must be at least 1");
    }
    particle.noise.validate();
    particle.init_spread.validate();
  }
}

RunConfig parse_run_config(std::string_view json_text, FilterKind filter, std::string_view source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string(source), 0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw InvalidArgument("config must be a JSON object");
  }

  const std::set<std::string>& own = filter == FilterKind::kEkf ? kEkfKeys : kPfKeys;
  const std::set<std::string>& other = filter == FilterKind::kEkf ? kPfKeys : kEkfKeys;
  for (const auto& [key, value] : doc.items()) {
    if (other.count(key) != 0) {
      throw InvalidArgument("config key '" + key + "' does not apply to filter " +
                            to_string(filter));
    }
    if (kCommonKeys.count(key) == 0 && own.count(key) == 0) {
      throw InvalidArgument("unknown config key '" + key + "'");
    }
    if (value.is_object()) {
      throw InvalidArgument("config key '" + key + "' must not be a nested object");
    }
  }

  RunConfig cfg;
  cfg.filter = filter;
  if (doc.contains("filter")) {
    if (!doc["filter"].is_string() ||
        parse_filter_kind(doc["filter"].get<std::string>()) != filter) {
      throw InvalidArgument("config 'filter' does not match the requested filter " +
                            to_string(filter));
    }
  }
  if (doc.contains("camera")) {
    const auto c = numbers<3>(doc["camera"], "camera");
    cfg.camera.focal = c[0];
    cfg.camera.cx = c[1];
    cfg.camera.cy = c[2];
  }
  if (doc.contains("image_size")) {
    const auto s = numbers<2>(doc["image_size"], "image_size");
    cfg.camera.image_width = static_cast<int>(s[0]);
    cfg.camera.image_height = static_cast<int>(s[1]);
  }
  if (doc.contains("initial_point")) {
    const auto p = numbers<3>(doc["initial_point"], "initial_point");
    cfg.initial = {p[0], p[1], p[2], 1.0};
  }
  if (doc.contains("seed")) {
    cfg.seed.value = unsigned_integer(doc["seed"], "seed");
  }

  if (doc.contains("displacement")) {
    cfg.displacement = number(doc["displacement"], "displacement");
  }
  cfg.kalman.transition = make_transition(cfg.displacement);
  if (doc.contains("init_cov_scale")) {
    cfg.kalman.init_cov_scale = number(doc["init_cov_scale"], "init_cov_scale");
  }
  if (doc.contains("process_noise")) {
    const auto q = numbers<3>(doc["process_noise"], "process_noise");
    cfg.kalman.process_noise = Eigen::Vector4d(q[0], q[1], q[2], 0.0).asDiagonal();
  }
  if (doc.contains("pixel_noise")) {
    const auto r = numbers<2>(doc["pixel_noise"], "pixel_noise");
    cfg.kalman.pixel_noise = Eigen::Vector2d(r[0], r[1]).asDiagonal();
  }

  if (doc.contains("particles")) {
    const std::uint64_t n = unsigned_integer(doc["particles"], "particles");
    cfg.particle.count = static_cast<std::size_t>(n);
  }
  if (doc.contains("resampler")) {
    if (!doc["resampler"].is_string()) {
      throw InvalidArgument("config key 'resampler' must be a string");
    }
    cfg.particle.resampler = parse_resampler(doc["resampler"].get<std::string>());
  }
  const auto read_range = [&doc](const char* key, Range& target) {
    if (doc.contains(key)) {
      target = range(doc[key], key);
    }
  };
  read_range("noise_x", cfg.particle.noise.x);
  read_range("noise_y", cfg.particle.noise.y);
  read_range("noise_z", cfg.particle.noise.z);
  read_range("init_spread_x", cfg.particle.init_spread.x);
  read_range("init_spread_y", cfg.particle.init_spread.y);
  read_range("init_spread_z", cfg.particle.init_spread.z);

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, FilterKind filter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), filter, path.string());
}

std::string run_config_to_json(const RunConfig& cfg) {
  json doc;
  doc["filter"] = to_string(cfg.filter);
  doc["camera"] = json::array({cfg.camera.focal, cfg.camera.cx, cfg.camera.cy});
  doc["image_size"] = json::array({cfg.camera.image_width, cfg.camera.image_height});
  const HomPoint p = normalize(cfg.initial);
  doc["initial_point"] = json::array({p.x, p.y, p.z});
  doc["seed"] = cfg.seed.value;
  if (cfg.filter == FilterKind::kEkf) {
    const KalmanConfig& k = cfg.kalman;
    doc["displacement"] = cfg.displacement;
    doc["init_cov_scale"] = k.init_cov_scale;
    doc["process_noise"] =
        json::array({k.process_noise(0, 0), k.process_noise(1, 1), k.process_noise(2, 2)});
    doc["pixel_noise"] = json::array({k.pixel_noise(0, 0), k.pixel_noise(1, 1)});
  } else {
    const ParticleConfig& pc = cfg.particle;
    doc["particles"] = pc.count;
    doc["resampler"] = to_string(pc.resampler);
    doc["noise_x"] = range_json(pc.noise.x);
    doc["noise_y"] = range_json(pc.noise.y);
    doc["noise_z"] = range_json(pc.noise.z);
    doc["init_spread_x"] = range_json(pc.init_spread.x);
    doc["init_spread_y"] = range_json(pc.init_spread.y);
    doc["init_spread_z"] = range_json(pc.init_spread.z);
  }
  return doc.dump(2) + "\n";
}

}  // namespace vistrack
