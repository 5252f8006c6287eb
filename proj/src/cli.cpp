#include "amd/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <ctime>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace amd {

using nlohmann::ordered_json;

namespace {

ordered_json row_to_json(const TraceRow& row) {
  ordered_json coeffs = ordered_json::array();
  for (const auto& c : row.coeffs) coeffs.push_back(c.get_str());
  return ordered_json{{"ell", row.ell}, {"coeffs", coeffs}, {"rhs", row.rhs.get_str()}};
}

Integer parse_integer(const ordered_json& j) {
  if (!j.is_string()) throw CertificateParseError("expected a decimal string");
  Integer value;
  if (value.set_str(j.get<std::string>(), 10) != 0) {
    throw CertificateParseError("bad integer '" + j.get<std::string>() + "'");
  }
  return value;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string certificate_to_json(const Certificate& c, const SerializeOptions& options) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["d"] = c.d;
  j["k"] = c.k;
  j["verdict"] = to_string(c.verdict);
  j["method"] = to_string(c.method);
  j["witness"] = c.witness ? ordered_json(*c.witness) : ordered_json(nullptr);
  j["ell_max"] = c.ell_max;
  j["trace_rows"] = ordered_json::array();
  for (const auto& row : c.trace_rows) j["trace_rows"].push_back(row_to_json(row));
  j["checked_i"] = ordered_json::array();
  for (const auto& cell : c.checked_i) {
    j["checked_i"].push_back(ordered_json{{"i", cell.i},
                                          {"predicted", cell.predicted_reducible},
                                          {"observed_degrees", cell.observed_degrees},
                                          {"primes_used", cell.primes_used},
                                          {"match", cell.match}});
  }
  j["assumptions"] = c.assumptions;
  j["tool_version"] = kToolVersion;
  if (options.timestamp) j["timestamp"] = utc_now();
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw CertificateParseError(e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw CertificateParseError("unsupported schema_version");
    }
    Certificate c;
    c.d = j.at("d").get<std::uint64_t>();
    c.k = j.at("k").get<unsigned>();
    auto verdict = parse_verdict(j.at("verdict").get<std::string>());
    auto method = parse_method(j.at("method").get<std::string>());
    if (!verdict || !method) throw CertificateParseError("unknown verdict or method");
    c.verdict = *verdict;
    c.method = *method;
    if (!j.at("witness").is_null()) c.witness = j.at("witness").get<unsigned>();
    c.ell_max = j.at("ell_max").get<unsigned>();
    for (const auto& row : j.at("trace_rows")) {
      TraceRow r;
      r.ell = row.at("ell").get<unsigned>();
      for (const auto& coeff : row.at("coeffs")) r.coeffs.push_back(parse_integer(coeff));
      r.rhs = parse_integer(row.at("rhs"));
      c.trace_rows.push_back(std::move(r));
    }
    for (const auto& cell : j.at("checked_i")) {
      CheckedCell cc;
      cc.i = cell.at("i").get<std::uint64_t>();
      cc.predicted_reducible = cell.at("predicted").get<bool>();
      cc.observed_degrees = cell.at("observed_degrees").get<std::vector<unsigned>>();
      cc.primes_used = cell.at("primes_used").get<std::vector<std::uint64_t>>();
      cc.match = cell.at("match").get<std::string>();
      c.checked_i.push_back(std::move(cc));
    }
    c.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    return c;
  } catch (const ordered_json::exception& e) {
    throw CertificateParseError(e.what());
  }
}

std::string conjecture_to_json(const ConjectureVerdict& v) {
  const FactorReport& r = v.observed;
  ordered_json j;
  j["i"] = v.i;
  j["k"] = v.k;
  j["degree"] = r.degree;
  j["verdict"] = to_string(r.verdict);
  j["factor_degrees"] = r.factor_degrees;
  j["certificate_kind"] = to_string(r.certificate_kind);
  j["primes_used"] = r.primes_used;
  j["readings"] = ordered_json::array();
  for (const auto& reading : v.readings) {
    j["readings"].push_back(ordered_json{{"reading", reading.reading},
                                         {"predicted_reducible", reading.predicted_reducible},
                                         {"match", to_string(reading.match)}});
  }
  j["match"] = to_string(v.match);
  j["in_checked_range"] = v.in_checked_range;
  // Coefficient lists, constant term first, so the product can be rechecked.
  j["factors"] = ordered_json::array();
  for (const auto& f : r.factors) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : f.coeffs()) coeffs.push_back(c.get_str());
    j["factors"].push_back(coeffs);
  }
  return j.dump() + "\n";
}

Range parse_range(const std::string& text) {
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
      throw std::invalid_argument("bad range '" + text + "': expected LO..HI");
    }
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("bad range '" + text + "': value out of range");
    }
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::uint64_t v = number(text);
    return {v, v};
  }
  return {number(text.substr(0, dots)), number(text.substr(dots + 2))};
}

void write_sweep_csv(std::ostream& os, std::vector<SweepRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.d, a.k) < std::tie(b.d, b.k);
  });
  os << "d,k,verdict,method,witness,runtime_ms\n";
  for (const auto& r : rows) {
    os << r.d << ',' << r.k << ',' << to_string(r.verdict) << ',' << to_string(r.method) << ',';
    if (r.witness) os << *r.witness;
    os << ',' << r.runtime_ms << '\n';
  }
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
  jobs = std::max(1u, jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= count) return;
      try {
        task(idx);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace amd
