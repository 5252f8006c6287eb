#ifndef AMD_DIGRAPH_HPP
#define AMD_DIGRAPH_HPP

// Explicit (d,2)-digraphs and exhaustive checks of the structural claims
// about their repeat permutation and the subdigraphs H_alpha.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amd/algebra.hpp"

namespace amd {

using Vertex = std::uint32_t;

/// Simple digraph: no loops, no repeated arcs, ascending out-lists.
class Digraph {
 public:
  Digraph() = default;
  /// Sorts each list; throws std::invalid_argument on loops, duplicate arcs
  /// or out-of-range indices.
  explicit Digraph(std::vector<std::vector<Vertex>> out);

  std::size_t order() const { return out_.size(); }
  const std::vector<Vertex>& out(Vertex v) const { return out_.at(v); }
  const std::vector<std::vector<Vertex>>& out_lists() const { return out_; }
  bool has_arc(Vertex u, Vertex v) const;
  std::vector<std::vector<Vertex>> in_lists() const;
  /// Subdigraph induced on `vertices` (ascending), relabelled 0..m-1 in that
  /// order.
  Digraph induced(const std::vector<Vertex>& vertices) const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::vector<std::vector<Vertex>> out_;
};

/// Contents of a digraph file: header "n d k", one out-list per line.
struct DigraphFile {
  Digraph graph;
  unsigned d = 0;
  unsigned k = 0;
  /// '#' lines preceding the header, kept so written files round-trip.
  std::vector<std::string> comments;

  friend bool operator==(const DigraphFile&, const DigraphFile&) = default;
};

struct DigraphParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DigraphFile read_digraph(std::istream& in);
void write_digraph(std::ostream& out, const DigraphFile& file);

/// Line digraph of the complete digraph K_{d+1}: vertex (a, b), a != b, has
/// index a*d + (b < a ? b : b - 1), and (a, b) -> (b, c) for every c != b.
Digraph gen_line_digraph_complete(unsigned d);
DigraphFile line_digraph_file(unsigned d);

enum class OracleFailure { NotDiregular, OrderMismatch, NotAlmostMoore, AssertionFailed };
std::string to_string(OracleFailure f);

struct OracleError : std::runtime_error {
  OracleError(OracleFailure kind, const std::string& what)
      : std::runtime_error(to_string(kind) + ": " + what), kind(kind) {}
  OracleFailure kind;
};

using Matrix = std::vector<std::vector<Integer>>;

Matrix adjacency_matrix(const Digraph& g);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Integer trace(const Matrix& a);

struct MooreCheck {
  unsigned d = 0;
  unsigned k = 0;
  std::vector<Vertex> r;              // repeat permutation: P[v][r(v)] = 1
  std::vector<std::uint64_t> orders;  // ord_r(v)
  std::vector<Vertex> self_repeats;   // fixed points of r
};

/// Requires d >= 2 (std::invalid_argument). Throws OracleError for
/// NotDiregular, OrderMismatch, NotAlmostMoore, and AssertionFailed when the
/// trace identities or the automorphism property fail.
MooreCheck verify_moore(const Digraph& g, unsigned d, unsigned k);

/// Vertices v with ord_r(v) | 2^t alpha for some t >= 0, ascending.
std::vector<Vertex> H_alpha_vertices(const MooreCheck& check, std::uint64_t alpha);
Digraph build_H_alpha(const Digraph& g, const MooreCheck& check, std::uint64_t alpha);

/// Calls `visit` on every walk of length 1..max_len starting at `from`.
void for_each_walk(const Digraph& g, Vertex from, unsigned max_len,
                   const std::function<void(const std::vector<Vertex>&)>& visit);

/// Every walk of length <= k between distinct vertices of `h` stays in `h`,
/// and r(h) is contained in h. `h` lists vertices of g, ascending.
bool check_rk_closed(const Digraph& g, const std::vector<Vertex>& h, const MooreCheck& check,
                     unsigned k);

/// All-pairs walk distances; -1 when unreachable.
std::vector<std::vector<int>> distances(const Digraph& g);

struct SubdigraphReport {
  std::uint64_t alpha = 0;
  std::vector<Vertex> vertices;
  bool cycle_case = false;  // H_alpha is the cycle of self-repeats
  unsigned d_prime = 0;
  int diameter = -1;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// For H_alpha other than the self-repeat cycle: diregular of some degree
/// d' <= d, order d' + ... + d'^k, diameter exactly k, (r,k)-closed.
SubdigraphReport check_subdigraph_theorem(const Digraph& g, const MooreCheck& check,
                                          std::uint64_t alpha);

enum class NeighborhoodCase { I_i, I_ii, II_i, II_ii, Unclassified };
std::string to_string(NeighborhoodCase c);

struct InNeighborhoodProfile {
  Vertex v = 0;
  std::vector<Vertex> out;                  // v_1..v_d
  std::vector<std::vector<Vertex>> T_sets;  // T(v_j)
  std::vector<unsigned> n_counts;           // n(j)
  /// In-neighbours of v inside T(v_j): v_{-j}, or v_{-j,1}, v_{-j,2}.
  std::vector<std::vector<Vertex>> back_vertices;
  std::vector<std::vector<Vertex>> W1_sets;  // W_1(j), tails w of arcs (w, v_1)
  NeighborhoodCase kind = NeighborhoodCase::Unclassified;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// T(v_j) = {w : dist(v_j, w) + 1 == dist(v, w)}.
InNeighborhoodProfile profile_in_neighborhood(const Digraph& g, const MooreCheck& check,
                                              Vertex v);

struct RSetCount {
  std::uint64_t set_size = 0;    // |{v : some walk r^j(v) -> v of length ell}|
  std::uint64_t walk_count = 0;  // those walks counted with multiplicity
  Integer trace;                 // Tr(P^j A^ell)
};

/// Path search and trace side by side; ell >= 1, j >= 1.
RSetCount r_set_size(const Digraph& g, const MooreCheck& check, unsigned ell, unsigned j);

/// For every phi = r^m and distinct phi-fixed u, v, every walk of length
/// <= k from u to v is fixed by phi^2. Returns the violations.
std::vector<std::string> check_fixed_walks(const Digraph& g, const MooreCheck& check);

/// One named pass/fail line per assertion of the full battery.
struct BatteryLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct BatteryOptions {
  unsigned max_ell = 4;
  /// |R_{ell,j}| as a set against the trace; the walk count is always
  /// compared.
  bool compare_set_size = true;
};

std::vector<BatteryLine> run_battery(const Digraph& g, unsigned d, unsigned k,
                                     const BatteryOptions& options = {});

}  // namespace amd

#endif  // AMD_DIGRAPH_HPP
