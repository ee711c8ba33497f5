// crofton-lab: report serialization
#include "crofton/reports.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>

#include <json.hpp>

namespace crofton {

namespace {

using json = nlohmann::ordered_json;

json scheme_block(const SchemeInfo& s) {
  json j;
  j["kind"] = s.kind;
  j["n_s"] = s.n_s;
  j["n_u"] = s.n_u;
  j["n"] = s.n;
  j["seed"] = s.seed;
  j["mc_stderr"] = s.mc_stderr;
  return j;
}

json base_block(const IdentityReport& r) {
  json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["abs_err"] = r.abs_err;
  j["rel_err"] = r.rel_err;
  j["scheme"] = scheme_block(r.scheme);
  return j;
}

std::string wrap_with_meta(json block, double elapsed_seconds) {
  json j;
  j["report"] = std::move(block);
  j["meta"]["elapsed_seconds"] = elapsed_seconds;
  j["meta"]["generated_at_unix"] = static_cast<long long>(std::time(nullptr));
  return j.dump(2) + "\n";
}

json char_block(const CharacterizationReport& r) {
  json j;
  j["name"] = "characterize";
  j["length_mean"] = r.length_mean;
  j["length_stddev"] = r.length_stddev;
  j["length_bin_edges"] = r.length_bin_edges;
  j["length_bin_counts"] = r.length_bin_counts;
  json hist = json::array();
  for (const auto& [count, pairs] : r.pair_count_histogram)
    hist.push_back({count, pairs});
  j["pair_count_histogram"] = hist;
  j["fraction_zero"] = r.fraction_zero;
  j["fraction_one"] = r.fraction_one;
  j["fraction_many"] = r.fraction_many;
  j["scheme"] = scheme_block(r.scheme);
  return j;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string report_block_json(const IdentityReport& r) {
  return base_block(r).dump(2) + "\n";
}

std::string report_block_json(const InequalityReport& r) {
  json j = base_block(r.base);
  j["satisfied"] = r.satisfied;
  j["hypothesis_fraction"] = r.hypothesis_fraction;
  j["implementation_alarm"] = r.implementation_alarm;
  return j.dump(2) + "\n";
}

std::string report_block_json(const DeficitReport& r) {
  json j = base_block(r.base);
  j["nonintersecting_fraction"] = r.nonintersecting_fraction;
  j["hypothesis_fraction"] = r.hypothesis_fraction;
  j["validity_warning"] = r.validity_warning;
  return j.dump(2) + "\n";
}

std::string report_block_json(const CharacterizationReport& r) {
  return char_block(r).dump(2) + "\n";
}

std::string report_json(const IdentityReport& r) {
  return wrap_with_meta(base_block(r), r.elapsed_seconds);
}

std::string report_json(const InequalityReport& r) {
  json j = base_block(r.base);
  j["satisfied"] = r.satisfied;
  j["hypothesis_fraction"] = r.hypothesis_fraction;
  j["implementation_alarm"] = r.implementation_alarm;
  return wrap_with_meta(std::move(j), r.base.elapsed_seconds);
}

std::string report_json(const DeficitReport& r) {
  json j = base_block(r.base);
  j["nonintersecting_fraction"] = r.nonintersecting_fraction;
  j["hypothesis_fraction"] = r.hypothesis_fraction;
  j["validity_warning"] = r.validity_warning;
  return wrap_with_meta(std::move(j), r.base.elapsed_seconds);
}

std::string report_json(const CharacterizationReport& r) {
  return wrap_with_meta(char_block(r), r.elapsed_seconds);
}

std::string report_csv_header() {
  return "name,lhs,rhs,abs_err,rel_err,kind,n_s,n_u,n,seed,mc_stderr\n";
}

std::string report_csv_row(const IdentityReport& r) {
  std::ostringstream os;
  os << r.name << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ','
     << fmt(r.abs_err) << ',' << fmt(r.rel_err) << ',' << r.scheme.kind << ','
     << r.scheme.n_s << ',' << r.scheme.n_u << ',' << r.scheme.n << ','
     << r.scheme.seed << ',' << fmt(r.scheme.mc_stderr) << '\n';
  return os.str();
}

std::string lengths_csv(const CharacterizationReport& r) {
  std::ostringstream os;
  os << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b + 1 < r.length_bin_edges.size(); ++b)
    os << fmt(r.length_bin_edges[b]) << ',' << fmt(r.length_bin_edges[b + 1])
       << ',' << r.length_bin_counts[b] << '\n';
  return os.str();
}

std::string pair_hist_csv(const CharacterizationReport& r) {
  std::ostringstream os;
  os << "interior_count,pairs\n";
  for (const auto& [count, pairs] : r.pair_count_histogram)
    os << count << ',' << pairs << '\n';
  return os.str();
}

}  // namespace crofton
