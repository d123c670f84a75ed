#include "vistrack/csv_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "vistrack/errors.hpp"

namespace vistrack {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    fields.push_back(trim(line.substr(begin, comma - begin)));
    if (comma == std::string_view::npos) {
      break;
    }
    begin = comma + 1;
  }
  return fields;
}

class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  // Next non-blank line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!trim(line).empty()) {
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(source_, line_no_, what);
  }

  std::size_t line_no() const { return line_no_; }

  double number(std::string_view field, const char* name) const {
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
      fail(std::string("field '") + name + "' is not a number: '" + std::string(field) + "'");
    }
    if (!std::isfinite(value)) {
      fail(std::string("field '") + name + "' is not finite");
    }
    return value;
  }

  int frame(std::string_view field) const {
    int value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
      fail("frame is not an integer: '" + std::string(field) + "'");
    }
    return value;
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

// Parses a headed CSV whose rows are `frame` followed by `width - 1` numbers.
template <typename Row>
std::vector<Row> read_table(std::istream& in, std::string_view source, std::string_view header,
                            Row (*make)(int, const std::vector<double>&)) {
  LineReader reader(in, source);
  std::string line;
  if (!reader.next(line)) {
    throw FormatError(std::string(source), 0, "file is empty");
  }
  if (trim(line) != header) {
    reader.fail("expected header '" + std::string(header) + "'");
  }
  const std::vector<std::string_view> names = split(header);
  std::vector<Row> rows;
  std::vector<double> values;
  while (reader.next(line)) {
    const std::vector<std::string_view> fields = split(line);
    if (fields.size() != names.size()) {
      reader.fail("expected " + std::to_string(names.size()) + " fields, found " +
                  std::to_string(fields.size()));
    }
    const int frame = reader.frame(fields[0]);
    if (frame != static_cast<int>(rows.size())) {
      reader.fail("frames must be consecutive from 0: expected " + std::to_string(rows.size()) +
                  ", found " + std::to_string(frame));
    }
    values.clear();
    for (std::size_t i = 1; i < fields.size(); ++i) {
      values.push_back(reader.number(fields[i], std::string(names[i]).c_str()));
    }
    rows.push_back(make(frame, values));
  }
  return rows;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

template <typename Data, typename Writer>
void write_file(const std::filesystem::path& path, const Data& data, Writer writer) {
  std::ofstream out = open_out(path);
  writer(out, data);
  finish(out, path);
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw Error("number formatting failed");
  }
  return {buf.data(), ptr};
}

void write_observations(std::ostream& out, const ObservationTrack& track) {
  out << kObservationHeader << '\n';
  for (const Observation& o : track) {
    out << o.frame << ',' << format_number(o.pixel.u) << ',' << format_number(o.pixel.v) << '\n';
  }
}

void write_truth(std::ostream& out, const GroundTruthTrack& track) {
  out << kTruthHeader << '\n';
  for (const TruthSample& s : track) {
    const Eigen::Vector3d p = s.point.position();
    out << s.frame << ',' << format_number(p[0]) << ',' << format_number(p[1]) << ','
        << format_number(p[2]) << '\n';
  }
}

void write_estimates(std::ostream& out, const std::vector<EstimateRecord>& records) {
  out << kEstimateHeader << '\n';
  for (const EstimateRecord& r : records) {
    out << r.frame << ',' << format_number(r.position[0]) << ',' << format_number(r.position[1])
        << ',' << format_number(r.position[2]) << ',' << format_number(r.diagnostic) << '\n';
  }
}

void write_corners(std::ostream& out, const std::vector<HomPoint>& corners,
                   const std::vector<Pixel>& pixels) {
  if (corners.size() != pixels.size()) {
    throw InvalidArgument("corner and pixel lists differ in length");
  }
  out << kCornerHeader << '\n';
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const Eigen::Vector3d p = corners[i].position();
    out << (i + 1) << ',' << format_number(p[0]) << ',' << format_number(p[1]) << ','
        << format_number(p[2]) << ',' << format_number(pixels[i].u) << ','
        << format_number(pixels[i].v) << '\n';
  }
}

void write_observations(const std::filesystem::path& path, const ObservationTrack& track) {
  write_file(path, track, [](std::ostream& o, const auto& d) { write_observations(o, d); });
}

void write_truth(const std::filesystem::path& path, const GroundTruthTrack& track) {
  write_file(path, track, [](std::ostream& o, const auto& d) { write_truth(o, d); });
}

void write_estimates(const std::filesystem::path& path,
                     const std::vector<EstimateRecord>& records) {
  write_file(path, records, [](std::ostream& o, const auto& d) { write_estimates(o, d); });
}

void write_corners(const std::filesystem::path& path, const std::vector<HomPoint>& corners,
                   const std::vector<Pixel>& pixels) {
  std::ofstream out = open_out(path);
  write_corners(out, corners, pixels);
  finish(out, path);
}

ObservationTrack read_observations(std::istream& in, std::string_view source) {
  return read_table<Observation>(in, source, kObservationHeader,
                                 [](int frame, const std::vector<double>& v) {
                                   return Observation{frame, {v[0], v[1]}};
                                 });
}

GroundTruthTrack read_truth(std::istream& in, std::string_view source) {
  return read_table<TruthSample>(in, source, kTruthHeader,
                                 [](int frame, const std::vector<double>& v) {
                                   return TruthSample{frame, {v[0], v[1], v[2], 1.0}};
                                 });
}

std::vector<EstimateRecord> read_estimates(std::istream& in, std::string_view source) {
  return read_table<EstimateRecord>(in, source, kEstimateHeader,
                                    [](int frame, const std::vector<double>& v) {
                                      return EstimateRecord{
                                          frame, Eigen::Vector3d(v[0], v[1], v[2]), v[3]};
                                    });
}

ObservationTrack read_observations(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_observations(in, path.string());
}

GroundTruthTrack read_truth(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_truth(in, path.string());
}

std::vector<EstimateRecord> read_estimates(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_estimates(in, path.string());
}

ObservationTrack ingest_corners(std::istream& in, std::string_view source) {
  constexpr std::size_t kFields = 1 + 2 * kBoardCorners;
  LineReader reader(in, source);
  ObservationTrack track;
  std::string line;
  bool first = true;
  while (reader.next(line)) {
    const std::vector<std::string_view> fields = split(line);
    if (first) {
      first = false;
      // Optional header: first field is a name rather than a frame number.
      int ignored = 0;
      const auto f = fields[0];
      if (std::from_chars(f.data(), f.data() + f.size(), ignored).ec != std::errc{}) {
        continue;
      }
    }
    if (fields.size() != kFields) {
      reader.fail("expected " + std::to_string(kFields) + " fields (frame + 9 corner pairs), found " +
                  std::to_string(fields.size()));
    }
    const int frame = reader.frame(fields[0]);
    if (frame != static_cast<int>(track.size())) {
      reader.fail("frames must be consecutive from 0: expected " + std::to_string(track.size()) +
                  ", found " + std::to_string(frame));
    }
    // Validate every corner even though only the middle one is kept.
    std::array<double, 2 * kBoardCorners> values{};
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string name = (i % 2 == 0 ? "u" : "v") + std::to_string(i / 2 + 1);
      values[i] = reader.number(fields[i + 1], name.c_str());
    }
    constexpr std::size_t kU = 2 * (kTrackedCorner - 1);
    track.push_back({frame, {values[kU], values[kU + 1]}});
  }
  if (track.empty() && reader.line_no() == 0) {
    throw FormatError(std::string(source), 0, "file is empty");
  }
  return track;
}

ObservationTrack ingest_corners(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return ingest_corners(in, path.string());
}

}  // namespace vistrack
