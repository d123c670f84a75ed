#pragma once

#include <vector>

#include "vistrack/config.hpp"
#include "vistrack/csv_io.hpp"
#include "vistrack/simulator.hpp"

namespace vistrack {

// Both filters start from cfg.initial and treat it as the prior for frame 0: frame 0 is a
// measurement update only, every later frame is predict then update.

/// Extended Kalman filter over the whole track; diagnostic = trace of the covariance.
std::vector<EstimateRecord> run_ekf(const ObservationTrack& obs, const RunConfig& cfg);

/// Particle filter over the whole track; diagnostic = ESS before resampling.
std::vector<EstimateRecord> run_pf(const ObservationTrack& obs, const RunConfig& cfg);

/// Dispatches on cfg.filter.
std::vector<EstimateRecord> run_tracker(const ObservationTrack& obs, const RunConfig& cfg);

}  // namespace vistrack
