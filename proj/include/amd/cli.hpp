#ifndef AMD_CLI_HPP
#define AMD_CLI_HPP

// Serialization and batch plumbing behind the amd command-line tool.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amd/factor.hpp"
#include "amd/sieve.hpp"

namespace amd {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

namespace exit_code {
inline constexpr int kDefinite = 0;
inline constexpr int kUsage = 1;
inline constexpr int kUnknown = 2;
inline constexpr int kAssertion = 3;
}  // namespace exit_code

struct CertificateParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SerializeOptions {
  /// Adds a "timestamp" field; off for byte-identical reruns.
  bool timestamp = false;
};

/// JSON document with fixed key order. Integers in trace rows are decimal
/// strings so arbitrarily large values survive any JSON reader.
std::string certificate_to_json(const Certificate& c, const SerializeOptions& options = {});
/// Inverse of certificate_to_json; ignores "timestamp" and "tool_version".
Certificate certificate_from_json(const std::string& text);

/// Per-cell record written by the conjecture sweep.
std::string conjecture_to_json(const ConjectureVerdict& v);

/// Inclusive integer range written "LO..HI" or a single value. LO > HI is an
/// empty range.
struct Range {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool empty() const { return lo > hi; }
  std::uint64_t size() const { return empty() ? 0 : hi - lo + 1; }
};

/// Throws std::invalid_argument on malformed text.
Range parse_range(const std::string& text);

struct SweepRow {
  std::uint64_t d = 0;
  unsigned k = 0;
  Verdict verdict = Verdict::Unknown;
  Method method = Method::None;
  std::optional<unsigned> witness;
  std::uint64_t runtime_ms = 0;
};

/// Header line plus one row per cell, sorted by (d, k).
void write_sweep_csv(std::ostream& os, std::vector<SweepRow> rows);

/// Runs task(0..count-1) on `jobs` threads (at least one). Tasks must write
/// only to their own slot; the first exception is rethrown after all workers
/// stop.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task);

}  // namespace amd

#endif  // AMD_CLI_HPP
