#pragma once

// File formats: isometries as [[a,b],[c,d]], cover files, point sets, verify
// reports, and CSV tables.  Floats are written with 17 significant digits so
// that files round-trip bit-exactly.

#include <string>
#include <vector>

#include <json.hpp>

#include "geocover/analytics.hpp"
#include "geocover/cover.hpp"

namespace geocover {

using Json = nlohmann::ordered_json;

/// "%.17g" rendering used for every float in JSON and CSV output.
std::string format_double(double v);

/// Pretty JSON with 2-space indent, LF line endings and 17-digit floats.
std::string dump_json(const Json& j);

Json isometry_to_json(const Isometry& g);
/// Integer-typed entries and exact_hint give an exact isometry; cover files
/// always pass the hint since only exact elements are written as integers.
Isometry isometry_from_json(const Json& j, bool exact_hint);

Json cover_to_json(const GeodesicCover& cover);
/// Rebuilds the surface group from the "surface" field.
GeodesicCover cover_from_json(const Json& j);

Json point_set_to_json(const PointSet& P);
PointSet point_set_from_json(const Json& j);

Json verify_report_to_json(const VerifyReport& r, const GeodesicCover& cover, std::uint64_t seed,
                           double tolerance);

struct CsvTable {
  std::vector<std::string> comments;  // written as "# ..." lines before the header
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& t);

CsvTable lattice_csv(const std::vector<LatticeRow>& rows);
CsvTable stats_csv(const DistanceStats& s);
CsvTable qp_csv(const std::vector<QpRow>& rows);
CsvTable equilateral_csv(const EquilateralReport& r);

Json stats_to_json(const DistanceStats& s);
Json equilateral_to_json(const EquilateralReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Parses "x,y" into a point.
UhpPoint parse_point(const std::string& s);

}  // namespace geocover
