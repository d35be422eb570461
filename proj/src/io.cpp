#include "dust/io.hpp"

#include <charconv>
#include <cmath>

#include "dust/error.hpp"

namespace dust {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_sizes(const SizeCounts& counts) {
  std::string out;
  for (const auto& [r, c] : counts) {
    if (c == 0) continue;
    if (!out.empty()) out += ';';
    out += std::to_string(r) + ':' + std::to_string(c);
  }
  return out;
}

SizeCounts parse_sizes(const std::string& text) {
  SizeCounts out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw Error("bad size count entry '" + item + "'");
    out[std::stoll(item.substr(0, colon))] += std::stoll(item.substr(colon + 1));
    pos = end + 1;
  }
  return out;
}

void write_run_stats_header(std::ostream& out) {
  out << kCsvVersionLine << '\n' << "n,seed,tau,tau_star,X,X_star,K,K1,D,R,K_r\n";
}

void write_run_stats_row(std::ostream& out, const RunStats& st, std::uint64_t seed) {
  out << st.n << ',' << seed << ',' << format_double(st.tau) << ','
      << format_double(st.tau_star) << ',' << st.X << ',' << st.X_star << ',' << st.K << ','
      << st.K1() << ',' << st.D << ',' << st.R << ',' << format_sizes(st.K_r) << '\n';
}

void write_path_csv(std::ostream& out, const SubordinatorPath& path) {
  out << kCsvVersionLine << '\n' << "t,jump\n";
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    out << format_double(path.times[i]) << ',' << format_double(path.jumps[i]) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const std::map<std::int64_t, double>& mass) {
  out << kCsvVersionLine << '\n' << "m,mass\n";
  for (const auto& [m, w] : mass) out << m << ',' << format_double(w) << '\n';
}

nlohmann::json to_json(const NormConstants& c) {
  nlohmann::json j;
  j["regime"] = c.regime;
  j["n"] = c.n;
  j["a_n"] = c.a_n;
  j["b_n"] = c.b_n;
  j["reference"] = reference_name(c.reference);
  if (c.reference == Reference::Stable) j["stable_index"] = c.stable_index;
  return j;
}

nlohmann::json verdict(const std::string& test, double statistic, double threshold, bool pass) {
  return {{"test", test}, {"statistic", statistic}, {"threshold", threshold}, {"pass", pass}};
}

}  // namespace dust
