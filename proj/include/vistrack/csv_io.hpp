#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "vistrack/simulator.hpp"

namespace vistrack {

/// One filter output row. `diagnostic` is the covariance trace (ekf) or the ESS (pf).
struct EstimateRecord {
  int frame = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double diagnostic = 0.0;
};

inline constexpr std::string_view kObservationHeader = "frame,u,v";
inline constexpr std::string_view kTruthHeader = "frame,x,y,z";
inline constexpr std::string_view kEstimateHeader = "frame,x,y,z,diag";
inline constexpr std::string_view kCornerHeader = "corner,x,y,z,u,v";

/// Shortest decimal that parses back to the same double ("99.5", not "99.500000").
std::string format_number(double value);

// Writers emit the header above, one row per record, LF line endings.
void write_observations(std::ostream& out, const ObservationTrack& track);
void write_truth(std::ostream& out, const GroundTruthTrack& track);
void write_estimates(std::ostream& out, const std::vector<EstimateRecord>& records);
/// calib-check output: 1-based corner index, world point and its projection.
void write_corners(std::ostream& out, const std::vector<HomPoint>& corners,
                   const std::vector<Pixel>& pixels);

void write_observations(const std::filesystem::path& path, const ObservationTrack& track);
void write_truth(const std::filesystem::path& path, const GroundTruthTrack& track);
void write_estimates(const std::filesystem::path& path,
                     const std::vector<EstimateRecord>& records);
void write_corners(const std::filesystem::path& path, const std::vector<HomPoint>& corners,
                   const std::vector<Pixel>& pixels);

// Readers require the exact header, finite numbers and frames 0, 1, 2, ... in order.
// Errors are FormatError with the offending line; `source` names the input in messages.
ObservationTrack read_observations(std::istream& in, std::string_view source = "<stream>");
GroundTruthTrack read_truth(std::istream& in, std::string_view source = "<stream>");
std::vector<EstimateRecord> read_estimates(std::istream& in, std::string_view source = "<stream>");

ObservationTrack read_observations(const std::filesystem::path& path);
GroundTruthTrack read_truth(const std::filesystem::path& path);
std::vector<EstimateRecord> read_estimates(const std::filesystem::path& path);

/// Chessboard corner rows `frame,u1,v1,...,u9,v9` (header line optional); keeps the 5th
/// (middle) corner of each row as that frame's observation.
ObservationTrack ingest_corners(std::istream& in, std::string_view source = "<stream>");
ObservationTrack ingest_corners(const std::filesystem::path& path);

inline constexpr int kBoardCorners = 9;
inline constexpr int kTrackedCorner = 5;

}  // namespace vistrack
