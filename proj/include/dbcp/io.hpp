#pragma once

// Interchange formats and rendering: JSON for series, extended points,
// bifurcation records and validation certificates; full-precision branch CSV;
// a deterministic SVG bifurcation diagram; atomic file writes.
//
// All doubles in CSV go through "%.17g" and JSON numbers use the shortest
// round-tripping form, so write -> read -> write is byte-stable. Parse
// problems throw BadInput tagged "io".

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbcp/equilibria.hpp"
#include "dbcp/extended.hpp"
#include "dbcp/validation.hpp"
#include "json.hpp"

namespace dbcp {

// json::parse that reports malformed input as BadInput("io", ...).
nlohmann::json parse_json(const std::string& text);

// {"coeffs": [a_1, ...]} with an optional "n_sym" key.
nlohmann::json series_to_json(const CosineSeries& u, std::optional<int> n_sym = std::nullopt);
CosineSeries series_from_json(const nlohmann::json& j, std::optional<int>* n_sym = nullptr);

// [lo, hi]
nlohmann::json interval_to_json(const Interval& x);
Interval interval_from_json(const nlohmann::json& j);

// {"lambda", "n_sym", "u_coeffs_classA", "v_coeffs"}; u_coeffs_classA[i] is
// the coefficient of wave number (2i+1)*n_sym, v_coeffs[j] that of j+1.
nlohmann::json extended_point_to_json(const ExtendedPoint& w);
ExtendedPoint extended_point_from_json(const nlohmann::json& j);

// {"case": "a".."d", "kernel_class": "B"|"C", "n_even", "kernel_even_about_half"}
nlohmann::json scenario_to_json(const ScenarioRecord& s);
ScenarioRecord scenario_from_json(const nlohmann::json& j);

// Full record; non-finite shape diagnostics serialize as null.
nlohmann::json bifurcation_to_json(const BifurcationRecord& r);
BifurcationRecord bifurcation_from_json(const nlohmann::json& j);

// Versioned certificate ("schema": 1): inputs embedded, every certified
// scalar as a [lo, hi] pair, checks as named booleans. Timing data is
// optional because emitting it breaks byte-level reproducibility; when
// source_record is given it is embedded verbatim under inputs.record.
nlohmann::json certificate_to_json(const ValidationCertificate& cert,
                                   bool include_timings = false,
                                   const nlohmann::json* source_record = nullptr);

struct BranchMeta {
  double sigma = 0.0;
  int k = 0;      // primary mode index of the branch
  int n_sym = 0;  // symmetry group order used for detection
  int N = 0;      // coefficient columns
};

// "# key=value" metadata lines, a header row, then
// lambda,normX,stability_index,a_1..a_N at full precision.
std::string branch_to_csv(const std::vector<BranchSample>& branch, const BranchMeta& meta);
std::pair<std::vector<BranchSample>, BranchMeta> branch_from_csv(const std::string& text);

// 900x600 fixed-viewBox SVG, lambda on the abscissa, X-norm on the ordinate;
// one polyline per branch, bifurcation markers keyed by scenario case:
// (a) green cross, (d) red cross, (c) cyan dot, (b) magenta dot,
// inconclusive records a black open square. Byte-deterministic.
std::string diagram_svg(const std::vector<std::vector<BranchSample>>& branches,
                        const std::vector<BifurcationRecord>& records);

// temp file + rename in the destination directory.
void atomic_write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace dbcp
