#include "vistrack/pipeline.hpp"

#include "vistrack/kalman.hpp"
#include "vistrack/particle.hpp"

namespace vistrack {

std::vector<EstimateRecord> run_ekf(const ObservationTrack& obs, const RunConfig& cfg) {
  cfg.validate();
  const CameraModel cam = cfg.camera.model();
  KalmanConfig kcfg = cfg.kalman;
  kcfg.transition = make_transition(cfg.displacement);

  std::vector<EstimateRecord> out;
  out.reserve(obs.size());
  GaussianState state = kf_init(cfg.initial, kcfg);
  for (std::size_t t = 0; t < obs.size(); ++t) {
    state = t == 0 ? kf_update(state, obs[t].pixel, cam, kcfg)
                   : kf_step(state, obs[t].pixel, cam, kcfg);
    out.push_back({obs[t].frame, state.mean.position(), state.cov.trace()});
  }
  return out;
}

std::vector<EstimateRecord> run_pf(const ObservationTrack& obs, const RunConfig& cfg) {
  cfg.validate();
  const CameraModel cam = cfg.camera.model();
  const ParticleConfig& pc = cfg.particle;
  Rng rng(cfg.seed);

  std::vector<EstimateRecord> out;
  out.reserve(obs.size());
  ParticleSet set = pf_init(pc.count, cfg.initial, pc.init_spread, rng);
  for (std::size_t t = 0; t < obs.size(); ++t) {
    if (t == 0) {
      const ParticleSet weighted = pf_weight(set, obs[t].pixel, cam);
      out.push_back({obs[t].frame, pf_estimate(weighted).position(), pf_ess(weighted)});
      set = pf_resample(weighted, pc.resampler, rng);
    } else {
      ParticleStep step = pf_step(set, obs[t].pixel, cam, pc.noise, rng, pc.resampler);
      out.push_back({obs[t].frame, step.estimate.position(), step.ess});
      set = std::move(step.particles);
    }
  }
  return out;
}

std::vector<EstimateRecord> run_tracker(const ObservationTrack& obs, const RunConfig& cfg) {
  return cfg.filter == FilterKind::kEkf ? run_ekf(obs, cfg) : run_pf(obs, cfg);
}

}  // namespace vistrack
