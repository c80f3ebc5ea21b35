// Text renderers for results and analyses. All output is byte-deterministic.
#pragma once

#include <string>
#include <vector>

#include "ompconf/analysis.hpp"
#include "ompconf/result_model.hpp"

namespace ompconf {

// Fixed-width summary, one block per profile (ascending id), one line per
// (OpenMP version, language group):
//   gcc-11.2.0   4.5  C/C++    total=3 pass=2 (66.67%) compile_fail=1 runtime_fail=0 compile_pass=2
std::string report_summary(const std::vector<ResultSet>& sets);

// Records of all sets, concatenated in input order, as results.json bytes.
std::string report_json(const std::vector<ResultSet>& sets);

// Markdown table: Test Name | OMP Ver | one Pass/Fail column per version.
// Flakes go to a separate "Inconsistent (recovered)" table.
std::string report_regressions(const ResultMatrix& matrix, const RegressionReport& report);

// `version,pass,compile_fail,runtime_fail`, rows ascending by version key.
std::string report_series(std::vector<SeriesRow> series);

// Inverse of report_series for the version and count columns.
std::vector<SeriesRow> parse_series(const std::string& csv);

std::string report_coverage(const std::vector<CoverageStat>& stats);

std::string report_intersection(const IntersectionStat& stat);

}  // namespace ompconf
