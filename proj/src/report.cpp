#include "relq/report.hpp"

#include <sstream>

namespace relq {

void LawReport::pass(const std::string& suite, const std::string& law) {
  results.push_back({suite, law, "pass", "", -1});
}

void LawReport::fail(const std::string& suite, const std::string& law,
                     const std::string& witness) {
  results.push_back({suite, law, "fail", witness, -1});
}

void LawReport::skip(const std::string& suite, const std::string& law,
                     const std::string& reason) {
  results.push_back({suite, law, "skip", reason, -1});
}

void LawReport::merge(const LawReport& other) {
  results.insert(results.end(), other.results.begin(), other.results.end());
}

bool LawReport::all_pass() const {
  for (const auto& r : results)
    if (r.status == "fail") return false;
  return true;
}

std::size_t LawReport::fail_count() const {
  std::size_t n = 0;
  for (const auto& r : results)
    if (r.status == "fail") ++n;
  return n;
}

const LawResult* LawReport::find(const std::string& law) const {
  for (const auto& r : results)
    if (r.law == law) return &r;
  return nullptr;
}

std::string escape_field(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

std::string LawReport::machine_lines(bool timings) const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << escape_field(r.suite) << '\t' << escape_field(r.law) << '\t'
       << r.status << '\t' << escape_field(r.witness) << '\t';
    if (timings && r.ms >= 0)
      os << r.ms;
    else
      os << '-';
    os << '\n';
  }
  return os.str();
}

std::string LawReport::human_summary() const {
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    if (r.status == "pass") ++passed;
    else if (r.status == "fail") ++failed;
    else ++skipped;
  }
  std::ostringstream os;
  os << passed << " passed, " << failed << " failed, " << skipped
     << " skipped";
  return os.str();
}

std::uint64_t checked_pow(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t lim = 1ull << 63;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < b; ++i) {
    if (a != 0 && r > lim / a) return lim;
    r *= a;
    if (r >= lim) return lim;
  }
  return r;
}

}  // namespace relq
