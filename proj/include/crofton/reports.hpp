// crofton-lab: JSON and CSV emission for reports
#pragma once

#include <string>

#include "crofton/verify.hpp"

namespace crofton {

// Deterministic report block: every field is a pure function of
// (metric, scheme, seed). Timing lives in a separate "meta" block so two
// runs with the same config agree byte for byte on "report".
std::string report_json(const IdentityReport& r);
std::string report_json(const InequalityReport& r);
std::string report_json(const DeficitReport& r);
std::string report_json(const CharacterizationReport& r);

// The deterministic block alone (no meta); used by the byte-identity checks.
std::string report_block_json(const IdentityReport& r);
std::string report_block_json(const InequalityReport& r);
std::string report_block_json(const DeficitReport& r);
std::string report_block_json(const CharacterizationReport& r);

// One flat CSV row per report; header() gives the column names.
std::string report_csv_header();
std::string report_csv_row(const IdentityReport& r);

// Histogram CSVs: lengths.csv (bin_lo, bin_hi, count) and pair_hist.csv
// (interior_count, pairs).
std::string lengths_csv(const CharacterizationReport& r);
std::string pair_hist_csv(const CharacterizationReport& r);

}  // namespace crofton
