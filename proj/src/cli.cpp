#include "vistrack/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "vistrack/config.hpp"
#include "vistrack/csv_io.hpp"
#include "vistrack/errors.hpp"
#include "vistrack/geometry.hpp"
#include "vistrack/metrics.hpp"
#include "vistrack/pipeline.hpp"
#include "vistrack/simulator.hpp"

namespace vistrack {
namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::array<double, 3> parse_triple(const std::string& text, const char* option) {
  std::array<double, 3> out{};
  std::size_t begin = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t comma = text.find(',', begin);
    if ((i < 2) == (comma == std::string::npos)) {
      throw UsageError(std::string(option) + " expects three comma-separated numbers, got '" +
                       text + "'");
    }
    const std::string_view field(text.data() + begin,
                                 (comma == std::string::npos ? text.size() : comma) - begin);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out[i]);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() ||
        !std::isfinite(out[i])) {
      throw UsageError(std::string(option) + ": '" + std::string(field) + "' is not a number");
    }
    begin = comma + 1;
  }
  return out;
}

CameraParams camera_from(const std::optional<std::string>& text) {
  CameraParams cam;
  if (text) {
    const auto c = parse_triple(*text, "--camera");
    cam.focal = c[0];
    cam.cx = c[1];
    cam.cy = c[2];
  }
  try {
    cam.model();
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--camera: ") + e.what());
  }
  return cam;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

fs::path meta_path(const fs::path& data_path) {
  return fs::path(data_path.string() + ".meta.json");
}

struct SimulateArgs {
  std::string scenario;
  int frames = 60;
  double pixel_noise = 1.0;
  std::uint64_t seed = 0;
  double z0 = kMidEndDepth;
  std::optional<std::string> camera;
  std::string out_truth;
  std::string out_obs;
};

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  ScenarioConfig cfg;
  CameraParams cam = camera_from(a.camera);
  try {
    cfg = preset(a.scenario, a.z0);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (a.frames < 1) {
    throw UsageError("--frames must be at least 1");
  }
  if (!(a.pixel_noise >= 0.0) || !std::isfinite(a.pixel_noise)) {
    throw UsageError("--pixel-noise must be finite and non-negative");
  }
  cfg.frames = a.frames;
  cfg.pixel_noise_std = a.pixel_noise;
  cfg.camera = cam.model();
  cfg.seed = {a.seed};

  GroundTruthTrack truth;
  try {
    truth = generate_truth(cfg);
  } catch (const BehindCameraError& e) {
    throw UsageError(e.what());
  }
  Rng rng(cfg.seed);
  const ObservationTrack obs = observe(truth, cfg.camera, cfg.pixel_noise_std, rng);

  write_truth(fs::path(a.out_truth), truth);
  write_observations(fs::path(a.out_obs), obs);

  nlohmann::json meta;
  meta["scenario"] = a.scenario;
  meta["start"] = nlohmann::json::array({cfg.start.x, cfg.start.y, cfg.start.z});
  meta["displacement"] = cfg.d;
  meta["frames"] = cfg.frames;
  meta["pixel_noise_std"] = cfg.pixel_noise_std;
  meta["seed"] = cfg.seed.value;
  meta["camera"] = nlohmann::json::array({cam.focal, cam.cx, cam.cy});
  meta["image_size"] = nlohmann::json::array({cam.image_width, cam.image_height});
  write_text(meta_path(a.out_obs), meta.dump(2) + "\n");

  out << "frames=" << truth.size() << '\n';
  return kExitOk;
}

struct TrackArgs {
  std::string filter;
  std::string obs;
  std::string corners;
  std::string config;
  std::string out;
};

int run_track(const TrackArgs& a, std::ostream& out) {
  if (a.obs.empty() == a.corners.empty()) {
    throw UsageError("track needs exactly one of --obs or --corners");
  }
  FilterKind kind{};
  try {
    kind = parse_filter_kind(a.filter);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const RunConfig cfg = load_run_config(a.config, kind);
  const ObservationTrack obs =
      a.corners.empty() ? read_observations(fs::path(a.obs)) : ingest_corners(fs::path(a.corners));
  const std::vector<EstimateRecord> est = run_tracker(obs, cfg);
  write_estimates(fs::path(a.out), est);
  write_text(meta_path(a.out), run_config_to_json(cfg));
  out << "frames=" << est.size() << '\n';
  return kExitOk;
}

struct CalibArgs {
  std::optional<std::string> camera;
  std::string board_center;
  double square_size = 4.0;
  int rows = 3;
  int cols = 3;
  std::string out;
};

int run_calib_check(const CalibArgs& a, std::ostream& out) {
  const CameraModel cam = camera_from(a.camera).model();
  const auto c = parse_triple(a.board_center, "--board-center");
  BoardSpec spec;
  spec.center = {c[0], c[1], c[2], 1.0};
  spec.square_size = a.square_size;
  spec.rows = a.rows;
  spec.cols = a.cols;
  std::vector<HomPoint> corners;
  try {
    corners = board_corners(spec);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  std::vector<Pixel> pixels;
  pixels.reserve(corners.size());
  for (const HomPoint& p : corners) {
    pixels.push_back(project(cam, p));
  }
  write_corners(fs::path(a.out), corners, pixels);
  out << "corners=" << corners.size() << '\n';
  return kExitOk;
}

struct EvalArgs {
  std::string est;
  std::string truth;
  std::optional<int> tail;
};

int run_eval(const EvalArgs& a, std::ostream& out) {
  const std::vector<EstimateRecord> est = read_estimates(fs::path(a.est));
  const GroundTruthTrack truth = read_truth(fs::path(a.truth));
  const int frames = static_cast<int>(truth.size());
  const int tail = a.tail.value_or(std::min(10, frames));
  const TrackingMetrics m = evaluate(est, truth, tail);
  out << "frames=" << m.frames << '\n'
      << "tail=" << m.tail << '\n'
      << "rmse_x=" << format_number(m.rmse[0]) << '\n'
      << "rmse_y=" << format_number(m.rmse[1]) << '\n'
      << "rmse_z=" << format_number(m.rmse[2]) << '\n'
      << "tail_mae_x=" << format_number(m.tail_mae[0]) << '\n'
      << "tail_mae_y=" << format_number(m.tail_mae[1]) << '\n'
      << "tail_mae_z=" << format_number(m.tail_mae[2]) << '\n';
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monocular 3D point tracking with Kalman and particle filters", "vistrack"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a ground-truth track and noisy pixels");
  simulate->add_option("--scenario", sim.scenario, "left36 or right30")->required();
  simulate->add_option("--frames", sim.frames, "Number of frames")->capture_default_str();
  simulate->add_option("--pixel-noise", sim.pixel_noise, "Pixel noise std (px)")
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--z0", sim.z0, "Mid-end depth (cm)")->capture_default_str();
  simulate->add_option("--camera", sim.camera, "F,CX,CY (default 500,320,240)");
  simulate->add_option("--out-truth", sim.out_truth, "Truth CSV path")->required();
  simulate->add_option("--out-obs", sim.out_obs, "Observation CSV path")->required();

  TrackArgs trk;
  auto* track = app.add_subcommand("track", "Run a filter over an observation track");
  track->add_option("--filter", trk.filter, "ekf or pf")->required();
  auto* obs_opt = track->add_option("--obs", trk.obs, "Observation CSV path (frame,u,v)");
  auto* corners_opt =
      track->add_option("--corners", trk.corners, "Chessboard corner CSV; tracks the 5th corner");
  obs_opt->excludes(corners_opt);
  track->add_option("--config", trk.config, "JSON run configuration")->required();
  track->add_option("--out", trk.out, "Estimate CSV path")->required();

  CalibArgs cal;
  auto* calib = app.add_subcommand("calib-check", "Project a virtual chessboard to pixels");
  calib->add_option("--camera", cal.camera, "F,CX,CY (default 500,320,240)");
  calib->add_option("--board-center", cal.board_center, "X,Y,Z in cm")->required();
  calib->add_option("--square-size", cal.square_size, "Square size in cm")->capture_default_str();
  calib->add_option("--rows", cal.rows, "Corner rows")->capture_default_str();
  calib->add_option("--cols", cal.cols, "Corner columns")->capture_default_str();
  calib->add_option("--out", cal.out, "Corner CSV path")->required();

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Compare estimates against ground truth");
  eval->add_option("--est", ev.est, "Estimate CSV path")->required();
  eval->add_option("--truth", ev.truth, "Truth CSV path")->required();
  eval->add_option("--tail", ev.tail, "Frames at the end for the tail MAE (default 10)");

  try {
    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(),
                                      args.end());
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(sim, out);
    }
    if (track->parsed()) {
      return run_track(trk, out);
    }
    if (calib->parsed()) {
      return run_calib_check(cal, out);
    }
    return run_eval(ev, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const BehindCameraError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DegeneratePointError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace vistrack
