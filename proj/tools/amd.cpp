// amd: certificates for (d,k)-digraphs with self-repeats, the cyclotomic
// factorization sweep, and the digraph oracle.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "amd/cli.hpp"
#include "amd/cyclotomic.hpp"
#include "amd/digraph.hpp"

namespace fs = std::filesystem;
using namespace amd;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Writes to `path`, or stdout when it is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Range checked_range(const std::string& text, std::uint64_t min_lo, const char* what) {
  Range r;
  try {
    r = parse_range(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!r.empty() && r.lo < min_lo) {
    throw UsageError(std::string(what) + " must be at least " + std::to_string(min_lo));
  }
  if (!r.empty() && r.hi > 100000) throw UsageError(std::string(what) + " range is too large");
  return r;
}

// decide ----------------------------------------------------------------------

int cmd_decide(std::uint64_t d, unsigned k, const std::string& out, bool timestamp) {
  if (d < 2 || k < 2) throw UsageError("decide needs d >= 2 and k >= 2");
  const Certificate c = decide(d, k);
  const auto problems = validate_certificate(c);
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "certificate check failed: " << p << '\n';
    return exit_code::kAssertion;
  }
  emit(out, certificate_to_json(c, {timestamp}));
  if (!out.empty()) {
    std::cout << "d=" << d << " k=" << k << ": " << to_string(c.verdict) << " ("
              << to_string(c.method) << ")\n";
  }
  return c.definite() ? exit_code::kDefinite : exit_code::kUnknown;
}

int cmd_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Certificate c;
  try {
    c = certificate_from_json(buf.str());
  } catch (const CertificateParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
  const auto problems = validate_certificate(c);
  for (const auto& p : problems) std::cout << "FAIL " << p << '\n';
  if (!problems.empty()) return exit_code::kAssertion;
  std::cout << "valid: d=" << c.d << " k=" << c.k << " " << to_string(c.verdict) << " ("
            << to_string(c.method) << ")\n";
  return c.definite() ? exit_code::kDefinite : exit_code::kUnknown;
}

// conjecture --------------------------------------------------------------------

std::string join(const std::vector<unsigned>& v, char sep) {
  std::string s;
  for (std::size_t t = 0; t < v.size(); ++t) s += (t ? std::string(1, sep) : "") + std::to_string(v[t]);
  return s;
}

int cmd_conjecture(const std::string& i_text, const std::string& k_text, const std::string& out_dir,
                   unsigned jobs, bool verbose) {
  const Range ir = checked_range(i_text, 3, "i");
  const Range kr = checked_range(k_text, 2, "k");
  std::vector<std::pair<std::uint64_t, unsigned>> cells;
  for (std::uint64_t i = ir.lo; !ir.empty() && i <= ir.hi; ++i) {
    for (std::uint64_t k = kr.lo; !kr.empty() && k <= kr.hi; ++k) cells.emplace_back(i, static_cast<unsigned>(k));
  }
  if (!out_dir.empty()) fs::create_directories(out_dir);

  std::vector<ConjectureVerdict> results(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t idx) {
    results[idx] = conjecture_verdict(cells[idx].first, cells[idx].second);
  });

  std::map<std::string, unsigned> counts{{"Consistent", 0}, {"Inconsistent", 0}, {"Unresolved", 0}};
  std::ostringstream summary;
  summary << "i,k,degree,verdict,factor_degrees,certificate_kind,match\n";
  for (const auto& v : results) {
    ++counts[to_string(v.match)];
    summary << v.i << ',' << v.k << ',' << v.observed.degree << ',' << to_string(v.observed.verdict)
            << ',' << join(v.observed.factor_degrees, ' ') << ','
            << to_string(v.observed.certificate_kind) << ',' << to_string(v.match) << '\n';
    if (!out_dir.empty()) {
      emit((fs::path(out_dir) / ("F_" + std::to_string(v.i) + "_" + std::to_string(v.k) + ".json")).string(),
           conjecture_to_json(v));
    }
    if (verbose || v.match == Match::Inconsistent) {
      std::cout << "F_{" << v.i << "," << v.k << "} degree " << v.observed.degree << ": "
                << to_string(v.observed.verdict) << " [" << join(v.observed.factor_degrees, ' ')
                << "] " << to_string(v.match) << '\n';
    }
  }
  if (!out_dir.empty()) emit((fs::path(out_dir) / "summary.csv").string(), summary.str());
  std::cout << "cells " << results.size() << "; Consistent " << counts["Consistent"]
            << "; Inconsistent " << counts["Inconsistent"] << "; Unresolved "
            << counts["Unresolved"] << '\n';
  // A cell contradicting every reading is a failed check, not an open verdict.
  return counts["Inconsistent"] == 0 ? exit_code::kDefinite : exit_code::kAssertion;
}

// sweep -------------------------------------------------------------------------

int cmd_sweep(const std::string& d_text, const std::string& k_text, const std::string& out,
              unsigned jobs, bool timing, bool no_cap) {
  const Range dr = checked_range(d_text, 2, "d");
  const Range kr = checked_range(k_text, 2, "k");
  if (!no_cap && ((!dr.empty() && dr.hi > 12) || (!kr.empty() && kr.hi > 300))) {
    throw UsageError("sweep is capped at d <= 12, k <= 300; pass --no-cap to exceed");
  }
  std::vector<SweepRow> rows;
  for (std::uint64_t d = dr.lo; !dr.empty() && d <= dr.hi; ++d) {
    for (std::uint64_t k = kr.lo; !kr.empty() && k <= kr.hi; ++k) {
      SweepRow row;
      row.d = d;
      row.k = static_cast<unsigned>(k);
      rows.push_back(row);
    }
  }
  parallel_for(rows.size(), jobs, [&](std::size_t idx) {
    auto& row = rows[idx];
    const auto start = std::chrono::steady_clock::now();
    const Certificate c = decide(row.d, row.k);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    row.verdict = c.verdict;
    row.method = c.method;
    row.witness = c.witness;
    row.runtime_ms = timing ? static_cast<std::uint64_t>(ms.count()) : 0;
  });
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(out, csv.str());
  std::size_t unknown = 0;
  for (const auto& r : rows) unknown += r.verdict == Verdict::Unknown;
  if (!out.empty()) std::cout << rows.size() << " cells, " << unknown << " Unknown\n";
  return unknown == 0 ? exit_code::kDefinite : exit_code::kUnknown;
}

// oracle ------------------------------------------------------------------------

DigraphFile load_digraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return read_digraph(in);
  } catch (const DigraphParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_oracle_gen(unsigned d, const std::string& out) {
  if (d < 2) throw UsageError("gen needs d >= 2");
  std::ostringstream os;
  write_digraph(os, line_digraph_file(d));
  emit(out, os.str());
  return exit_code::kDefinite;
}

int cmd_oracle_check(const std::string& path) {
  const DigraphFile file = load_digraph(path);
  MooreCheck check;
  try {
    check = verify_moore(file.graph, file.d, file.k);
  } catch (const OracleError& e) {
    std::cout << "FAIL " << e.what() << '\n';
    return exit_code::kAssertion;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::map<std::uint64_t, std::uint64_t> cycle_type;
  for (auto o : check.orders) ++cycle_type[o];
  std::cout << "(" << file.d << "," << file.k << ")-digraph of order " << file.graph.order()
            << "; self-repeats " << check.self_repeats.size() << "; repeat cycle type";
  for (const auto& [len, vertices] : cycle_type) std::cout << ' ' << len << ':' << vertices / len;
  std::cout << '\n';
  return exit_code::kDefinite;
}

int cmd_oracle_report(const std::string& path, unsigned max_ell) {
  const DigraphFile file = load_digraph(path);
  if (file.d < 2) throw UsageError("degree must be at least 2");
  BatteryOptions options;
  options.max_ell = max_ell;
  bool ok = true;
  for (const auto& line : run_battery(file.graph, file.d, file.k, options)) {
    std::cout << (line.passed ? "PASS " : "FAIL ") << line.name;
    if (!line.detail.empty()) std::cout << " (" << line.detail << ")";
    std::cout << '\n';
    ok = ok && line.passed;
  }
  return ok ? exit_code::kDefinite : exit_code::kAssertion;
}

// factor ------------------------------------------------------------------------

int cmd_factor(std::uint64_t i, unsigned k) {
  if (i < 1 || k < 1) throw UsageError("factor needs i >= 1 and k >= 1");
  const FactorReport r = factor_report(i, k);
  std::cout << "F_{" << i << "," << k << "} degree " << r.degree << ": " << to_string(r.verdict)
            << "\nfactor degrees: " << join(r.factor_degrees, ' ')
            << "\ncertificate: " << to_string(r.certificate_kind) << "\nprimes:";
  for (auto p : r.primes_used) std::cout << ' ' << p;
  std::cout << '\n';
  return r.verdict == FactorVerdict::Unresolved ? exit_code::kUnknown : exit_code::kDefinite;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certificates and checks for almost Moore digraphs with self-repeats"};
  app.require_subcommand(1);
  int status = exit_code::kDefinite;

  std::uint64_t d = 0, i = 0;
  unsigned k = 0, jobs = default_jobs(), max_ell = 4;
  std::string out, i_text, k_text, d_text, path;
  bool no_timestamp = false, verbose = false, no_timing = false, no_cap = false;

  auto* decide_cmd = app.add_subcommand("decide", "Decide existence for one (d,k) and emit a certificate");
  decide_cmd->add_option("d", d, "degree")->required();
  decide_cmd->add_option("k", k, "diameter")->required();
  decide_cmd->add_option("--out", out, "certificate file (default stdout)");
  decide_cmd->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

  auto* validate_cmd = app.add_subcommand("validate", "Recheck a certificate file");
  validate_cmd->add_option("file", path)->required();

  auto* conj_cmd = app.add_subcommand("conjecture", "Factor F_{i,k} over a grid and compare with the conjecture");
  conj_cmd->add_option("--i", i_text, "LO..HI")->required();
  conj_cmd->add_option("--k", k_text, "LO..HI")->required();
  conj_cmd->add_option("--out", out, "directory for per-cell reports");
  conj_cmd->add_option("--jobs", jobs, "worker threads");
  conj_cmd->add_flag("-v,--verbose", verbose, "print every cell");

  auto* sweep_cmd = app.add_subcommand("sweep", "Decide a (d,k) grid and write CSV");
  sweep_cmd->add_option("--d", d_text, "LO..HI")->required();
  sweep_cmd->add_option("--k", k_text, "LO..HI")->required();
  sweep_cmd->add_option("--out", out, "CSV file (default stdout)");
  sweep_cmd->add_option("--jobs", jobs, "worker threads");
  sweep_cmd->add_flag("--no-timing", no_timing, "write runtime_ms as 0 for byte-identical output");
  sweep_cmd->add_flag("--no-cap", no_cap, "allow d > 12 or k > 300");

  auto* oracle_cmd = app.add_subcommand("oracle", "Generate and check explicit digraphs");
  oracle_cmd->require_subcommand(1);
  auto* gen_cmd = oracle_cmd->add_subcommand("gen", "Line digraph of K_{d+1}, a (d,2)-digraph");
  unsigned gen_d = 0;
  gen_cmd->add_option("--d", gen_d, "degree")->required();
  gen_cmd->add_option("--out", out, "digraph file (default stdout)");
  auto* check_cmd = oracle_cmd->add_subcommand("check", "Verify the defining matrix equation");
  check_cmd->add_option("file", path)->required();
  auto* report_cmd = oracle_cmd->add_subcommand("report", "Run the full structural battery");
  report_cmd->add_option("file", path)->required();
  report_cmd->add_option("--max-ell", max_ell, "largest walk length for R-set counts");

  auto* factor_cmd = app.add_subcommand("factor", "Factor F_{i,k} = Phi_i(1 + x + ... + x^k)");
  factor_cmd->add_option("--i", i, "cyclotomic index")->required();
  factor_cmd->add_option("--k", k, "chain length")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::kUsage;
  }

  try {
    if (decide_cmd->parsed()) status = cmd_decide(d, k, out, !no_timestamp);
    else if (validate_cmd->parsed()) status = cmd_validate(path);
    else if (conj_cmd->parsed()) status = cmd_conjecture(i_text, k_text, out, jobs, verbose);
    else if (sweep_cmd->parsed()) status = cmd_sweep(d_text, k_text, out, jobs, !no_timing, no_cap);
    else if (gen_cmd->parsed()) status = cmd_oracle_gen(gen_d, out);
    else if (check_cmd->parsed()) status = cmd_oracle_check(path);
    else if (report_cmd->parsed()) status = cmd_oracle_report(path, max_ell);
    else if (factor_cmd->parsed()) status = cmd_factor(i, k);
  } catch (const UsageError& e) {
    std::cerr << "amd: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "amd: " << e.what() << '\n';
    return exit_code::kUsage;
  }
  return status;
}
