#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dust/coalescent.hpp"
#include "dust/limits.hpp"
#include "dust/subordinator.hpp"

namespace dust {

inline constexpr const char* kCsvVersionLine = "# dust-coalescent v1";

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// `r:count;r:count` in increasing r.
std::string format_sizes(const SizeCounts& counts);
SizeCounts parse_sizes(const std::string& text);

void write_run_stats_header(std::ostream& out);
void write_run_stats_row(std::ostream& out, const RunStats& st, std::uint64_t seed);

void write_path_csv(std::ostream& out, const SubordinatorPath& path);
void write_histogram_csv(std::ostream& out, const std::map<std::int64_t, double>& mass);

nlohmann::json to_json(const NormConstants& c);

/// {test, statistic, threshold, pass}
nlohmann::json verdict(const std::string& test, double statistic, double threshold, bool pass);

}  // namespace dust
