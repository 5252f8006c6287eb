#include "amd/digraph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace amd {

Digraph::Digraph(std::vector<std::vector<Vertex>> out) : out_(std::move(out)) {
  const std::size_t n = out_.size();
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = out_[v];
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("repeated arc at vertex " + std::to_string(v));
    }
    for (Vertex w : list) {
      if (w >= n) throw std::invalid_argument("arc target out of range at vertex " + std::to_string(v));
      if (w == v) throw std::invalid_argument("loop at vertex " + std::to_string(v));
    }
  }
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  const auto& list = out_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::vector<Vertex>> Digraph::in_lists() const {
  std::vector<std::vector<Vertex>> in(out_.size());
  for (Vertex u = 0; u < out_.size(); ++u) {
    for (Vertex w : out_[u]) in[w].push_back(u);
  }
  return in;
}

Digraph Digraph::induced(const std::vector<Vertex>& vertices) const {
  std::vector<int> index(out_.size(), -1);
  for (std::size_t t = 0; t < vertices.size(); ++t) index.at(vertices[t]) = static_cast<int>(t);
  std::vector<std::vector<Vertex>> out(vertices.size());
  for (std::size_t t = 0; t < vertices.size(); ++t) {
    for (Vertex w : out_[vertices[t]]) {
      if (index[w] >= 0) out[t].push_back(static_cast<Vertex>(index[w]));
    }
  }
  return Digraph(std::move(out));
}

// File format ---------------------------------------------------------------

DigraphFile read_digraph(std::istream& in) {
  DigraphFile file;
  std::string line;
  bool have_header = false;
  std::size_t n = 0;
  std::vector<std::vector<Vertex>> out;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (!have_header) file.comments.push_back(line);
      continue;
    }
    std::istringstream is(line);
    if (!have_header) {
      long long nn = -1, d = -1, k = -1;
      std::string extra;
      if (!(is >> nn >> d >> k) || (is >> extra) || nn < 0 || d < 0 || k < 0) {
        throw DigraphParseError("line " + std::to_string(line_no) + ": expected header 'n d k'");
      }
      n = static_cast<std::size_t>(nn);
      file.d = static_cast<unsigned>(d);
      file.k = static_cast<unsigned>(k);
      have_header = true;
      continue;
    }
    if (out.size() == n) {
      throw DigraphParseError("line " + std::to_string(line_no) + ": more than n adjacency lines");
    }
    std::vector<Vertex> list;
    std::string token;
    while (is >> token) {
      std::size_t used = 0;
      unsigned long value = 0;
      try {
        value = std::stoul(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size() || token[0] == '-') {
        throw DigraphParseError("line " + std::to_string(line_no) + ": bad vertex '" + token + "'");
      }
      list.push_back(static_cast<Vertex>(value));
    }
    if (!std::is_sorted(list.begin(), list.end())) {
      throw DigraphParseError("line " + std::to_string(line_no) + ": out-list not ascending");
    }
    out.push_back(std::move(list));
  }
  if (!have_header) throw DigraphParseError("missing header");
  // Blank lines are skipped, so a vertex with an empty out-list cannot be
  // written; such files come up short and are rejected here.
  if (out.size() != n) {
    throw DigraphParseError("expected " + std::to_string(n) + " adjacency lines, found " +
                            std::to_string(out.size()));
  }
  try {
    file.graph = Digraph(std::move(out));
  } catch (const std::invalid_argument& e) {
    throw DigraphParseError(e.what());
  }
  return file;
}

void write_digraph(std::ostream& os, const DigraphFile& file) {
  for (const auto& c : file.comments) os << c << '\n';
  os << file.graph.order() << ' ' << file.d << ' ' << file.k << '\n';
  for (const auto& list : file.graph.out_lists()) {
    for (std::size_t t = 0; t < list.size(); ++t) os << (t ? " " : "") << list[t];
    os << '\n';
  }
}

Digraph gen_line_digraph_complete(unsigned d) {
  if (d < 2) throw std::invalid_argument("line digraph construction needs d >= 2");
  const unsigned symbols = d + 1;
  auto index = [d](unsigned a, unsigned b) { return a * d + (b < a ? b : b - 1); };
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(d) * symbols);
  for (unsigned a = 0; a < symbols; ++a) {
    for (unsigned b = 0; b < symbols; ++b) {
      if (a == b) continue;
      for (unsigned c = 0; c < symbols; ++c) {
        if (c != b) out[index(a, b)].push_back(index(b, c));
      }
    }
  }
  return Digraph(std::move(out));
}

DigraphFile line_digraph_file(unsigned d) {
  DigraphFile file;
  file.graph = gen_line_digraph_complete(d);
  file.d = d;
  file.k = 2;
  file.comments = {
      "# line digraph of the complete digraph K_" + std::to_string(d + 1),
      "# vertex a*" + std::to_string(d) + " + (b < a ? b : b-1) is the arc (a,b), a != b",
  };
  return file;
}

// Matrices -------------------------------------------------------------------

std::string to_string(OracleFailure f) {
  switch (f) {
    case OracleFailure::NotDiregular: return "NotDiregular";
    case OracleFailure::OrderMismatch: return "OrderMismatch";
    case OracleFailure::NotAlmostMoore: return "NotAlmostMoore";
    case OracleFailure::AssertionFailed: return "AssertionFailed";
  }
  return "?";
}

Matrix adjacency_matrix(const Digraph& g) {
  const std::size_t n = g.order();
  Matrix a(n, std::vector<Integer>(n, Integer(0)));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex w : g.out(u)) a[u][w] = 1;
  }
  return a;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  Matrix c(n, std::vector<Integer>(m, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < b.size(); ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  }
  return c;
}

Integer trace(const Matrix& a) {
  Integer t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

// Moore check ------------------------------------------------------------------

MooreCheck verify_moore(const Digraph& g, unsigned d, unsigned k) {
  if (d < 2) throw std::invalid_argument("almost Moore digraphs need d >= 2");
  if (k < 1) throw std::invalid_argument("diameter must be positive");
  const std::size_t n = g.order();
  const auto in = g.in_lists();
  for (Vertex v = 0; v < n; ++v) {
    if (g.out(v).size() != d || in[v].size() != d) {
      throw OracleError(OracleFailure::NotDiregular,
                        "vertex " + std::to_string(v) + " has out-degree " +
                            std::to_string(g.out(v).size()) + " and in-degree " +
                            std::to_string(in[v].size()));
    }
  }
  std::uint64_t expected = 0, power = 1;
  for (unsigned t = 1; t <= k; ++t) {
    power *= d;
    expected += power;
  }
  if (n != expected) {
    throw OracleError(OracleFailure::OrderMismatch,
                      std::to_string(n) + " != " + std::to_string(expected));
  }

  const Matrix a = adjacency_matrix(g);
  Matrix sum(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) sum[i][i] = 1;
  Matrix power_m = sum;
  std::vector<Integer> traces;  // Tr(A^t), t = 1..k
  for (unsigned t = 1; t <= k; ++t) {
    power_m = mat_mul(power_m, a);
    traces.push_back(trace(power_m));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sum[i][j] += power_m[i][j];
    }
  }

  MooreCheck check;
  check.d = d;
  check.k = k;
  check.r.assign(n, 0);
  std::vector<bool> hit(n, false);
  for (Vertex i = 0; i < n; ++i) {
    int col = -1;
    for (Vertex j = 0; j < n; ++j) {
      const Integer residual = sum[i][j] - 1;
      if (residual == 0) continue;
      if (residual != 1 || col >= 0) {
        throw OracleError(OracleFailure::NotAlmostMoore,
                          "row " + std::to_string(i) + " of I + A + ... + A^k - J is not a unit vector");
      }
      col = static_cast<int>(j);
    }
    if (col < 0 || hit[col]) {
      throw OracleError(OracleFailure::NotAlmostMoore, "residual is not a permutation matrix");
    }
    hit[col] = true;
    check.r[i] = static_cast<Vertex>(col);
  }

  for (Vertex v = 0; v < n; ++v) {
    std::uint64_t ord = 1;
    for (Vertex w = check.r[v]; w != v; w = check.r[w]) ++ord;
    check.orders.push_back(ord);
    if (check.r[v] == v) check.self_repeats.push_back(v);
  }

  for (unsigned t = 1; t < k; ++t) {
    if (traces[t - 1] != 0) {
      throw OracleError(OracleFailure::AssertionFailed,
                        "Tr(A^" + std::to_string(t) + ") = " + traces[t - 1].get_str());
    }
  }
  if (traces[k - 1] != static_cast<unsigned long>(check.self_repeats.size())) {
    throw OracleError(OracleFailure::AssertionFailed, "Tr(A^k) != Tr(P)");
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex w : g.out(u)) {
      if (!g.has_arc(check.r[u], check.r[w])) {
        throw OracleError(OracleFailure::AssertionFailed,
                          "r is not an automorphism at arc " + std::to_string(u) + "->" +
                              std::to_string(w));
      }
    }
  }
  return check;
}

// H_alpha ------------------------------------------------------------------------

std::vector<Vertex> H_alpha_vertices(const MooreCheck& check, std::uint64_t alpha) {
  if (alpha <= 1) throw std::invalid_argument("alpha must exceed 1");
  std::vector<Vertex> out;
  for (Vertex v = 0; v < check.orders.size(); ++v) {
    std::uint64_t q = check.orders[v] / std::gcd(check.orders[v], alpha);
    if ((q & (q - 1)) == 0) out.push_back(v);
  }
  return out;
}

Digraph build_H_alpha(const Digraph& g, const MooreCheck& check, std::uint64_t alpha) {
  return g.induced(H_alpha_vertices(check, alpha));
}

void for_each_walk(const Digraph& g, Vertex from, unsigned max_len,
                   const std::function<void(const std::vector<Vertex>&)>& visit) {
  std::vector<Vertex> path{from};
  std::function<void()> extend = [&]() {
    if (path.size() > max_len) return;
    for (Vertex w : g.out(path.back())) {
      path.push_back(w);
      visit(path);
      extend();
      path.pop_back();
    }
  };
  extend();
}

bool check_rk_closed(const Digraph& g, const std::vector<Vertex>& h, const MooreCheck& check,
                     unsigned k) {
  std::vector<bool> in_h(g.order(), false);
  for (Vertex v : h) in_h.at(v) = true;
  for (Vertex v : h) {
    if (!in_h[check.r.at(v)]) return false;
  }
  bool closed = true;
  for (Vertex u : h) {
    for_each_walk(g, u, k, [&](const std::vector<Vertex>& walk) {
      const Vertex end = walk.back();
      if (end == u || !in_h[end]) return;
      for (Vertex w : walk) closed = closed && in_h[w];
    });
    if (!closed) return false;
  }
  return true;
}

std::vector<std::vector<int>> distances(const Digraph& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (Vertex s = 0; s < n; ++s) {
    std::deque<Vertex> queue{s};
    dist[s][s] = 0;
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      for (Vertex w : g.out(u)) {
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][u] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return dist;
}

SubdigraphReport check_subdigraph_theorem(const Digraph& g, const MooreCheck& check,
                                          std::uint64_t alpha) {
  SubdigraphReport report;
  report.alpha = alpha;
  report.vertices = H_alpha_vertices(check, alpha);
  const unsigned k = check.k;
  auto fail = [&](std::string msg) { report.failures.push_back(std::move(msg)); };
  if (!check_rk_closed(g, report.vertices, check, k)) fail("not (r,k)-closed");

  const Digraph h = g.induced(report.vertices);
  const auto in = h.in_lists();
  const bool cycle_shape = h.order() == k && std::all_of(in.begin(), in.end(), [](const auto& l) {
                             return l.size() == 1;
                           }) && [&] {
                             for (Vertex v = 0; v < h.order(); ++v) {
                               if (h.out(v).size() != 1) return false;
                             }
                             return true;
                           }();
  report.cycle_case = report.vertices == check.self_repeats && cycle_shape;
  if (report.cycle_case) {
    report.d_prime = 1;
    auto dist = distances(h);
    for (Vertex v = 0; v < h.order(); ++v) {
      for (Vertex w = 0; w < h.order(); ++w) {
        if (dist[v][w] < 0) fail("self-repeat subdigraph is not a single cycle");
        report.diameter = std::max(report.diameter, dist[v][w]);
      }
    }
    return report;
  }

  if (h.order() == 0) {
    fail("H_alpha is empty");
    return report;
  }
  const std::size_t dp = h.out(0).size();
  bool regular = true;
  for (Vertex v = 0; v < h.order(); ++v) {
    regular = regular && h.out(v).size() == dp && in[v].size() == dp;
  }
  report.d_prime = static_cast<unsigned>(dp);
  if (!regular) fail("not diregular");
  if (dp > check.d) fail("degree exceeds d");
  std::uint64_t expected = 0, power = 1;
  for (unsigned t = 1; t <= k; ++t) {
    power *= dp;
    expected += power;
  }
  if (h.order() != expected) {
    fail("order " + std::to_string(h.order()) + " != d' + ... + d'^k = " + std::to_string(expected));
  }
  auto dist = distances(h);
  for (Vertex v = 0; v < h.order(); ++v) {
    for (Vertex w = 0; w < h.order(); ++w) {
      if (dist[v][w] < 0) {
        report.diameter = -1;
        fail("not strongly connected");
        return report;
      }
      report.diameter = std::max(report.diameter, dist[v][w]);
    }
  }
  if (report.diameter != static_cast<int>(k)) fail("diameter " + std::to_string(report.diameter) + " != k");
  return report;
}

// In-neighbourhoods ---------------------------------------------------------------

std::string to_string(NeighborhoodCase c) {
  switch (c) {
    case NeighborhoodCase::I_i: return "I.i";
    case NeighborhoodCase::I_ii: return "I.ii";
    case NeighborhoodCase::II_i: return "II.i";
    case NeighborhoodCase::II_ii: return "II.ii";
    case NeighborhoodCase::Unclassified: return "unclassified";
  }
  return "?";
}

namespace {

InNeighborhoodProfile profile_with(const Digraph& g, const MooreCheck& check, Vertex v,
                                   const std::vector<std::vector<int>>& dist,
                                   const std::vector<std::vector<Vertex>>& in) {
  InNeighborhoodProfile p;
  p.v = v;
  p.out = g.out(v);
  const std::size_t n = g.order(), d = p.out.size();
  auto fail = [&](std::string msg) { p.failures.push_back(std::move(msg)); };
  auto label = [](std::size_t j) { return "j=" + std::to_string(j + 1); };

  for (Vertex vj : p.out) {
    std::vector<Vertex> t;
    for (Vertex w = 0; w < n; ++w) {
      if (dist[vj][w] >= 0 && dist[v][w] == dist[vj][w] + 1) t.push_back(w);
    }
    p.T_sets.push_back(std::move(t));
  }
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Vertex> back;
    for (Vertex z : in[v]) {
      if (std::binary_search(p.T_sets[j].begin(), p.T_sets[j].end(), z)) back.push_back(z);
    }
    p.n_counts.push_back(static_cast<unsigned>(back.size()));
    p.back_vertices.push_back(std::move(back));
    std::vector<Vertex> w1;
    for (Vertex w : in[p.out[0]]) {
      if (std::binary_search(p.T_sets[j].begin(), p.T_sets[j].end(), w)) w1.push_back(w);
    }
    p.W1_sets.push_back(std::move(w1));
  }

  // T-sets: disjoint except for at most one pair meeting exactly in {r(v)}.
  unsigned overlapping_pairs = 0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      std::vector<Vertex> common;
      std::set_intersection(p.T_sets[a].begin(), p.T_sets[a].end(), p.T_sets[b].begin(),
                            p.T_sets[b].end(), std::back_inserter(common));
      if (common.empty()) continue;
      ++overlapping_pairs;
      if (common != std::vector<Vertex>{check.r[v]}) {
        fail("T-sets of " + label(a) + " and " + label(b) + " meet outside {r(v)}");
      }
    }
  }
  if (overlapping_pairs > 1) fail("more than one pair of T-sets meets");

  std::vector<std::size_t> doubled;
  for (std::size_t j = 0; j < d; ++j) {
    const unsigned nj = p.n_counts[j];
    if (nj < 1 || nj > 2) fail("n(" + label(j) + ") = " + std::to_string(nj));
    if ((nj == 2) != (v == check.r[p.out[j]])) fail("n(j) = 2 <=> v = r(v_j) fails at " + label(j));
    if (nj == 2) doubled.push_back(j);
  }
  for (std::size_t j = 1; j < d; ++j) {
    const std::size_t w = p.W1_sets[j].size();
    if (w > 2) fail("|W_1(" + label(j) + ")| > 2");
    if (w == 0 && !(check.r[v] == v && check.r[p.out[j]] == p.out[j])) {
      fail("|W_1(" + label(j) + ")| = 0 without v and v_j self-repeats");
    }
  }
  if (!p.failures.empty()) return p;

  auto single = [&](std::size_t j) { return p.back_vertices[j].front(); };
  if (doubled.empty()) {
    std::set<Vertex> distinct;
    for (std::size_t j = 0; j < d; ++j) distinct.insert(single(j));
    if (distinct.size() != d) fail("case I with repeated v_{-j}");
    p.kind = check.r[v] == v ? NeighborhoodCase::I_i : NeighborhoodCase::I_ii;
    return p;
  }
  if (doubled.size() > 1) {
    fail("more than one j with n(j) = 2");
    return p;
  }
  const std::size_t h = doubled.front();
  unsigned equal_pairs = 0, hits_h = 0;
  for (std::size_t a = 0; a < d; ++a) {
    if (a == h) continue;
    for (std::size_t b = a + 1; b < d; ++b) {
      if (b != h && single(a) == single(b)) ++equal_pairs;
    }
    const auto& hv = p.back_vertices[h];
    if (std::find(hv.begin(), hv.end(), single(a)) != hv.end()) ++hits_h;
  }
  const bool case_i = equal_pairs == 1 && hits_h == 0;
  const bool case_ii = equal_pairs == 0 && hits_h == 1;
  if (case_i == case_ii) {
    fail("case II fits neither subcase (pairs " + std::to_string(equal_pairs) + ", shared " +
         std::to_string(hits_h) + ")");
    return p;
  }
  p.kind = case_i ? NeighborhoodCase::II_i : NeighborhoodCase::II_ii;
  return p;
}

}  // namespace

InNeighborhoodProfile profile_in_neighborhood(const Digraph& g, const MooreCheck& check,
                                              Vertex v) {
  return profile_with(g, check, v, distances(g), g.in_lists());
}

// Walk counts -----------------------------------------------------------------------

RSetCount r_set_size(const Digraph& g, const MooreCheck& check, unsigned ell, unsigned j) {
  if (ell < 1 || j < 1) throw std::invalid_argument("ell and j must be positive");
  const std::size_t n = g.order();
  RSetCount out;
  for (Vertex v = 0; v < n; ++v) {
    Vertex start = v;
    for (unsigned t = 0; t < j; ++t) start = check.r[start];
    std::uint64_t walks = 0;
    for_each_walk(g, start, ell, [&](const std::vector<Vertex>& walk) {
      if (walk.size() == ell + 1 && walk.back() == v) ++walks;
    });
    out.walk_count += walks;
    if (walks > 0) ++out.set_size;
  }
  // Tr(P^j A^ell) with P[v][r(v)] = 1, by explicit matrix products.
  Matrix p(n, std::vector<Integer>(n, Integer(0)));
  for (Vertex v = 0; v < n; ++v) p[v][check.r[v]] = 1;
  Matrix m(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  for (unsigned t = 0; t < j; ++t) m = mat_mul(m, p);
  const Matrix a = adjacency_matrix(g);
  for (unsigned t = 0; t < ell; ++t) m = mat_mul(m, a);
  out.trace = trace(m);
  return out;
}

std::vector<std::string> check_fixed_walks(const Digraph& g, const MooreCheck& check) {
  std::vector<std::string> violations;
  const std::size_t n = g.order();
  std::uint64_t period = 1;
  for (auto o : check.orders) period = std::lcm(period, o);
  std::vector<Vertex> phi(n);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::uint64_t m = 1; m <= period; ++m) {
    for (Vertex v = 0; v < n; ++v) phi[v] = check.r[phi[v]];
    std::vector<Vertex> phi2(n);
    for (Vertex v = 0; v < n; ++v) phi2[v] = phi[phi[v]];
    for (Vertex u = 0; u < n; ++u) {
      if (phi[u] != u) continue;
      for_each_walk(g, u, check.k, [&](const std::vector<Vertex>& walk) {
        const Vertex end = walk.back();
        if (end == u || phi[end] != end) return;
        for (Vertex w : walk) {
          if (phi2[w] != w) {
            violations.push_back("r^" + std::to_string(m) + ": walk " + std::to_string(u) + "->" +
                                 std::to_string(end) + " moves " + std::to_string(w));
            return;
          }
        }
      });
    }
  }
  return violations;
}

// Battery ------------------------------------------------------------------------------

std::vector<BatteryLine> run_battery(const Digraph& g, unsigned d, unsigned k,
                                     const BatteryOptions& options) {
  std::vector<BatteryLine> lines;
  MooreCheck check;
  try {
    check = verify_moore(g, d, k);
  } catch (const OracleError& e) {
    lines.push_back({"verify_moore", false, e.what()});
    return lines;
  }
  lines.push_back({"verify_moore", true,
                   "residual is a permutation; " + std::to_string(check.self_repeats.size()) +
                       " self-repeats"});
  lines.push_back({"trace identities", true, "Tr(A^l) = 0 for l < k, Tr(A^k) = Tr(P)"});
  lines.push_back({"r is an automorphism", true, ""});

  std::uint64_t max_order = 2;
  for (auto o : check.orders) max_order = std::max(max_order, o);
  for (std::uint64_t alpha = 2; alpha <= max_order; ++alpha) {
    // Self-repeats lie in every H_alpha, so an empty one means there are none
    // and the subdigraph statements have no content.
    if (H_alpha_vertices(check, alpha).empty()) {
      lines.push_back({"H_alpha alpha=" + std::to_string(alpha), true,
                       "not applicable: empty, no self-repeats"});
      continue;
    }
    const auto report = check_subdigraph_theorem(g, check, alpha);
    std::ostringstream detail;
    detail << "|H| = " << report.vertices.size() << ", d' = " << report.d_prime
           << ", diameter " << report.diameter << (report.cycle_case ? ", self-repeat cycle" : "");
    for (const auto& f : report.failures) detail << "; " << f;
    lines.push_back({"H_alpha alpha=" + std::to_string(alpha), report.passed(), detail.str()});
  }

  const auto dist = distances(g);
  const auto in = g.in_lists();
  std::map<std::string, unsigned> cases;
  std::string first_failure;
  bool profiles_ok = true;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto p = profile_with(g, check, v, dist, in);
    ++cases[to_string(p.kind)];
    if (!p.passed() || p.kind == NeighborhoodCase::Unclassified) {
      if (profiles_ok) first_failure = "v=" + std::to_string(v) + ": " + (p.failures.empty() ? "unclassified" : p.failures.front());
      profiles_ok = false;
    }
  }
  std::ostringstream case_detail;
  for (const auto& [name, count] : cases) case_detail << name << ": " << count << "  ";
  if (!profiles_ok) case_detail << first_failure;
  lines.push_back({"in-neighbourhood cases", profiles_ok, case_detail.str()});

  const auto fixed = check_fixed_walks(g, check);
  lines.push_back({"fixed vertices of r^m: walks fixed by r^2m", fixed.empty(),
                   fixed.empty() ? "" : fixed.front()});

  bool walks_ok = true, sets_ok = true;
  std::string walk_detail, set_detail;
  const unsigned n = static_cast<unsigned>(g.order());
  for (unsigned ell = 1; ell <= options.max_ell; ++ell) {
    for (unsigned j = 1; j <= n; ++j) {
      const auto c = r_set_size(g, check, ell, j);
      if (c.trace != static_cast<unsigned long>(c.walk_count) && walks_ok) {
        walks_ok = false;
        walk_detail = "l=" + std::to_string(ell) + " j=" + std::to_string(j);
      }
      if (c.trace != static_cast<unsigned long>(c.set_size) && sets_ok) {
        sets_ok = false;
        set_detail = "first mismatch l=" + std::to_string(ell) + " j=" + std::to_string(j) +
                     ": |R| = " + std::to_string(c.set_size) + ", trace = " + c.trace.get_str();
      }
    }
  }
  const std::string range = "l <= " + std::to_string(options.max_ell) + ", j <= " + std::to_string(n);
  lines.push_back({"walk count = Tr(P^j A^l)", walks_ok, walks_ok ? range : walk_detail});
  if (options.compare_set_size) {
    lines.push_back({"|R_{l,j}| = Tr(P^j A^l)", sets_ok, sets_ok ? range : set_detail});
  }

  // Emptiness of R_{l,j} for l (d-1) < k+1 needs m_1 = k and orders <= d-1.
  const bool qualifies = check.self_repeats.size() == k &&
                         std::all_of(check.orders.begin(), check.orders.end(),
                                     [&](std::uint64_t o) { return o <= d - 1; });
  if (qualifies) {
    bool empty_ok = true;
    for (unsigned ell = 1; ell * (d - 1) < k + 1; ++ell) {
      for (unsigned j = 1; j <= n; ++j) empty_ok = empty_ok && r_set_size(g, check, ell, j).set_size == 0;
    }
    lines.push_back({"R_{l,j} empty for l (d-1) < k+1", empty_ok, ""});
  } else {
    lines.push_back({"R_{l,j} empty for l (d-1) < k+1", true,
                     "not applicable: repeat structure is not (k, ..., m_{d-1}, 0, ...)"});
  }
  return lines;
}

}  // namespace amd
