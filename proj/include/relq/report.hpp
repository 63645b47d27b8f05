#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace relq {

// Base error for everything this library refuses to do.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments: unknown names, malformed input files, mismatched operands.
struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error(what) {}
};

// Operands built over different quantale instances or with incompatible
// carriers. A distinct type so callers can tell it apart from other misuse.
struct MismatchError : UsageError {
  explicit MismatchError(const std::string& what) : UsageError(what) {}
};

// An enumeration would exceed the configured ceiling; `required` is the
// estimated number of cases the exhaustive route would have needed.
struct CapExceeded : Error {
  unsigned long long required;
  CapExceeded(const std::string& what, unsigned long long required)
      : Error(what), required(required) {}
};

// Outcome of one law check. `status` is "pass", "fail" or "skip";
// a failing law carries a witness, a skipped law carries the reason.
struct LawResult {
  std::string suite;
  std::string law;
  std::string status;
  std::string witness;
  long long ms = -1;
};

struct LawReport {
  std::vector<LawResult> results;

  void pass(const std::string& suite, const std::string& law);
  void fail(const std::string& suite, const std::string& law,
            const std::string& witness);
  void skip(const std::string& suite, const std::string& law,
            const std::string& reason);
  void merge(const LawReport& other);

  bool all_pass() const;          // skips do not count as failures
  std::size_t fail_count() const;
  const LawResult* find(const std::string& law) const;

  // One record per line: suite, law, status, witness, duration.
  // Durations are only emitted when `timings` is set, so that reports for a
  // fixed configuration and seed are byte-for-byte reproducible.
  std::string machine_lines(bool timings = false) const;
  std::string human_summary() const;
};

// Accumulates one law across many checked instances. The first failure
// is recorded immediately with its witness; on destruction the law is
// recorded as a pass if any instance ran, or as a skip if none did.
struct LawAccum {
  LawReport& rep;
  std::string suite;
  bool ok = true;
  bool ran = false;
  std::string law;
  LawAccum(LawReport& r, std::string suite, std::string law)
      : rep(r), suite(std::move(suite)), law(std::move(law)) {}
  void fail(const std::string& witness) {
    if (ok) rep.fail(suite, law, witness);
    ok = false;
  }
  void note_ran() { ran = true; }
  ~LawAccum() {
    if (ok && ran) rep.pass(suite, law);
    else if (ok) rep.skip(suite, law, "no feasible instance");
  }
};

struct CheckOptions {
  std::uint64_t cap = 1ull << 20;  // ceiling for exhaustive enumerations
  std::uint64_t seed = 17;
  int samples = 1000;              // sampled cases when exhaustion is capped
  bool timings = false;
};

// splitmix64; fixed here so sampled checks reproduce across platforms.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint32_t below(std::uint32_t n) {
    return n == 0 ? 0 : static_cast<std::uint32_t>(next() % n);
  }
};

// a^b with saturation at 2^63; used to decide enumeration feasibility.
std::uint64_t checked_pow(std::uint64_t a, std::uint64_t b);

std::string escape_field(const std::string& s);

}  // namespace relq
