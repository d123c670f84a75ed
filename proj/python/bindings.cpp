#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "vistrack/cli.hpp"
#include "vistrack/config.hpp"
#include "vistrack/csv_io.hpp"
#include "vistrack/errors.hpp"
#include "vistrack/geometry.hpp"
#include "vistrack/kalman.hpp"
#include "vistrack/metrics.hpp"
#include "vistrack/particle.hpp"
#include "vistrack/pipeline.hpp"
#include "vistrack/simulator.hpp"

namespace py = pybind11;
using namespace vistrack;

namespace {

void bind_errors(py::module_& m) {
  static py::exception<Error> base(m, "VistrackError", PyExc_RuntimeError);
  static py::exception<InvalidArgument> invalid(m, "InvalidArgument", base.ptr());
  static py::exception<DegeneratePointError> degenerate(m, "DegeneratePointError", base.ptr());
  static py::exception<BehindCameraError> behind(m, "BehindCameraError", base.ptr());
  static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
  static py::exception<FormatError> format(m, "FormatError", base.ptr());
  static py::exception<IoError> io(m, "IoError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (const InvalidArgument& e) {
      PyErr_SetString(invalid.ptr(), e.what());
    } catch (const DegeneratePointError& e) {
      PyErr_SetString(degenerate.ptr(), e.what());
    } catch (const BehindCameraError& e) {
      PyErr_SetString(behind.ptr(), e.what());
    } catch (const NumericalError& e) {
      PyErr_SetString(numerical.ptr(), e.what());
    } catch (const FormatError& e) {
      PyErr_SetString(format.ptr(), e.what());
    } catch (const IoError& e) {
      PyErr_SetString(io.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(base.ptr(), e.what());
    }
  });
}

void bind_geometry(py::module_& m) {
  py::class_<HomPoint>(m, "HomPoint")
      .def(py::init<>())
      .def(py::init<double, double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"),
           py::arg("w") = 1.0)
      .def_readwrite("x", &HomPoint::x)
      .def_readwrite("y", &HomPoint::y)
      .def_readwrite("z", &HomPoint::z)
      .def_readwrite("w", &HomPoint::w)
      .def("vec", &HomPoint::vec)
      .def("position", &HomPoint::position)
      .def(py::self == py::self)
      .def("__repr__", [](const HomPoint& p) {
        std::ostringstream s;
        s << "HomPoint(" << p.x << ", " << p.y << ", " << p.z << ", " << p.w << ")";
        return s.str();
      });

  py::class_<Pixel>(m, "Pixel")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("u"), py::arg("v"))
      .def_readwrite("u", &Pixel::u)
      .def_readwrite("v", &Pixel::v)
      .def(py::self == py::self)
      .def("__repr__", [](const Pixel& p) {
        std::ostringstream s;
        s << "Pixel(" << p.u << ", " << p.v << ")";
        return s.str();
      });

  py::class_<CameraModel>(m, "CameraModel")
      .def(py::init<const Mat34&, int, int>(), py::arg("projection"),
           py::arg("image_width") = 640, py::arg("image_height") = 480)
      .def_static("from_intrinsics", &CameraModel::from_intrinsics, py::arg("focal"),
                  py::arg("cx"), py::arg("cy"), py::arg("image_width") = 640,
                  py::arg("image_height") = 480)
      .def_static("default_camera", &CameraModel::default_camera)
      .def_property_readonly("projection", &CameraModel::projection)
      .def_property_readonly("image_width", &CameraModel::image_width)
      .def_property_readonly("image_height", &CameraModel::image_height);

  py::class_<BoardSpec>(m, "BoardSpec")
      .def(py::init<>())
      .def(py::init<HomPoint, double, int, int>(), py::arg("center"), py::arg("square_size"),
           py::arg("rows") = 3, py::arg("cols") = 3)
      .def_readwrite("center", &BoardSpec::center)
      .def_readwrite("square_size", &BoardSpec::square_size)
      .def_readwrite("rows", &BoardSpec::rows)
      .def_readwrite("cols", &BoardSpec::cols);

  m.def("normalize", &normalize);
  m.def("make_transition", &make_transition, py::arg("d"));
  m.def("apply_transition", &apply_transition);
  m.def("depth", &depth);
  m.def("project", &project);
  m.def("projection_jacobian", &projection_jacobian);
  m.def("board_corners", &board_corners);
}

void bind_filters(py::module_& m) {
  py::class_<RngSeed>(m, "RngSeed")
      .def(py::init<std::uint64_t>(), py::arg("value") = 0)
      .def_readwrite("value", &RngSeed::value);
  py::class_<Rng>(m, "Rng")
      .def(py::init([](std::uint64_t seed) { return Rng({seed}); }), py::arg("seed") = 0)
      .def("uniform", &Rng::uniform)
      .def("normal", &Rng::normal);

  py::class_<GaussianState>(m, "GaussianState")
      .def(py::init<>())
      .def_readwrite("mean", &GaussianState::mean)
      .def_readwrite("cov", &GaussianState::cov);
  py::class_<KalmanConfig>(m, "KalmanConfig")
      .def(py::init<>())
      .def_readwrite("transition", &KalmanConfig::transition)
      .def_readwrite("process_noise", &KalmanConfig::process_noise)
      .def_readwrite("pixel_noise", &KalmanConfig::pixel_noise)
      .def_readwrite("init_cov_scale", &KalmanConfig::init_cov_scale)
      .def("validate", &KalmanConfig::validate);
  m.def("kf_init", &kf_init);
  m.def("kf_predict", &kf_predict);
  m.def("kf_update", &kf_update);
  m.def("kf_step", &kf_step);

  py::class_<Particle>(m, "Particle")
      .def(py::init<HomPoint, double>(), py::arg("point"), py::arg("weight"))
      .def_readwrite("point", &Particle::point)
      .def_readwrite("weight", &Particle::weight);
  py::class_<ParticleSet>(m, "ParticleSet")
      .def(py::init<>())
      .def(py::init([](std::vector<Particle> p) { return ParticleSet{std::move(p)}; }))
      .def_readwrite("particles", &ParticleSet::particles)
      .def("__len__", &ParticleSet::size)
      .def("weight_sum", &ParticleSet::weight_sum)
      .def("weights", [](const ParticleSet& s) {
        Eigen::VectorXd w(static_cast<Eigen::Index>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i) {
          w[static_cast<Eigen::Index>(i)] = s.particles[i].weight;
        }
        return w;
      })
      .def("positions", [](const ParticleSet& s) {
        Eigen::MatrixXd p(static_cast<Eigen::Index>(s.size()), 3);
        for (std::size_t i = 0; i < s.size(); ++i) {
          p.row(static_cast<Eigen::Index>(i)) = s.particles[i].point.position().transpose();
        }
        return p;
      });
  py::class_<Range>(m, "Range")
      .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
      .def_readwrite("lo", &Range::lo)
      .def_readwrite("hi", &Range::hi);
  py::class_<TransitionNoise>(m, "TransitionNoise")
      .def(py::init<>())
      .def(py::init<Range, Range, Range>(), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("x", &TransitionNoise::x)
      .def_readwrite("y", &TransitionNoise::y)
      .def_readwrite("z", &TransitionNoise::z);
  py::enum_<Resampler>(m, "Resampler")
      .value("SYSTEMATIC", Resampler::kSystematic)
      .value("MULTINOMIAL", Resampler::kMultinomial);
  py::class_<ParticleStep>(m, "ParticleStep")
      .def_readonly("particles", &ParticleStep::particles)
      .def_readonly("estimate", &ParticleStep::estimate)
      .def_readonly("ess", &ParticleStep::ess);

  m.def("pf_init", &pf_init, py::arg("count"), py::arg("center"), py::arg("spread"),
        py::arg("rng"));
  m.def("pf_predict", &pf_predict);
  m.def("pf_weight", &pf_weight);
  m.def("observation_weight", &observation_weight);
  m.def("pf_resample_systematic", &pf_resample_systematic);
  m.def("pf_resample_multinomial", &pf_resample_multinomial);
  m.def("pf_estimate", &pf_estimate);
  m.def("pf_ess", &pf_ess);
  m.def("pf_step", &pf_step, py::arg("particles"), py::arg("z"), py::arg("cam"),
        py::arg("noise"), py::arg("rng"), py::arg("resampler") = Resampler::kSystematic);
}

void bind_interface(py::module_& m) {
  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("start", &ScenarioConfig::start)
      .def_readwrite("d", &ScenarioConfig::d)
      .def_readwrite("frames", &ScenarioConfig::frames)
      .def_readwrite("pixel_noise_std", &ScenarioConfig::pixel_noise_std)
      .def_readwrite("camera", &ScenarioConfig::camera)
      .def_readwrite("seed", &ScenarioConfig::seed);
  py::class_<TruthSample>(m, "TruthSample")
      .def_readonly("frame", &TruthSample::frame)
      .def_readonly("point", &TruthSample::point);
  py::class_<Observation>(m, "Observation")
      .def(py::init<int, Pixel>(), py::arg("frame"), py::arg("pixel"))
      .def_readonly("frame", &Observation::frame)
      .def_readonly("pixel", &Observation::pixel);
  m.def("preset", &preset, py::arg("name"), py::arg("z0") = kMidEndDepth);
  m.def("mid_end_point", &mid_end_point, py::arg("z0") = kMidEndDepth);
  m.def("generate_truth", &generate_truth);
  m.def("observe", &observe, py::arg("truth"), py::arg("cam"), py::arg("sigma"), py::arg("rng"));

  py::class_<EstimateRecord>(m, "EstimateRecord")
      .def_readonly("frame", &EstimateRecord::frame)
      .def_readonly("position", &EstimateRecord::position)
      .def_readonly("diagnostic", &EstimateRecord::diagnostic);
  py::class_<TrackingMetrics>(m, "TrackingMetrics")
      .def_readonly("frames", &TrackingMetrics::frames)
      .def_readonly("tail", &TrackingMetrics::tail)
      .def_readonly("rmse", &TrackingMetrics::rmse)
      .def_readonly("tail_mae", &TrackingMetrics::tail_mae);
  m.def("evaluate", &evaluate, py::arg("estimates"), py::arg("truth"), py::arg("tail"));
  m.def("reprojection_error", &reprojection_error);

  py::enum_<FilterKind>(m, "FilterKind").value("EKF", FilterKind::kEkf).value("PF", FilterKind::kPf);
  py::class_<RunConfig>(m, "RunConfig")
      .def_readonly("filter", &RunConfig::filter)
      .def_readonly("initial", &RunConfig::initial)
      .def_readonly("seed", &RunConfig::seed)
      .def_readonly("displacement", &RunConfig::displacement)
      .def_readonly("kalman", &RunConfig::kalman)
      .def("to_json", &run_config_to_json);
  m.def("parse_run_config",
        [](const std::string& text, const std::string& filter) {
          return parse_run_config(text, parse_filter_kind(filter));
        },
        py::arg("json_text"), py::arg("filter"));
  m.def("run_tracker", &run_tracker, py::arg("observations"), py::arg("config"));

  using fs_path = std::filesystem::path;
  m.def("read_observations", py::overload_cast<const fs_path&>(&read_observations));
  m.def("read_truth", py::overload_cast<const fs_path&>(&read_truth));
  m.def("read_estimates", py::overload_cast<const fs_path&>(&read_estimates));
  m.def("ingest_corners", py::overload_cast<const fs_path&>(&ingest_corners));
  m.def("write_observations",
        py::overload_cast<const fs_path&, const ObservationTrack&>(&write_observations));
  m.def("write_truth", py::overload_cast<const fs_path&, const GroundTruthTrack&>(&write_truth));
  m.def("write_estimates",
        py::overload_cast<const fs_path&, const std::vector<EstimateRecord>&>(&write_estimates));
  m.def("format_number", &format_number);

  m.def("cli_main",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "vistrack");
          std::ostringstream out, err;
          const int code = cli_main(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command line in-process; returns (exit_code, stdout, stderr).");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monocular 3D point tracking with Kalman and particle filters";
  bind_errors(m);
  bind_geometry(m);
  bind_filters(m);
  bind_interface(m);
}
