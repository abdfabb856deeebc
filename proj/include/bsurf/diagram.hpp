// Finite windows of ordered bi-infinite Bratteli diagrams.
//
// A window holds the levels V_lo..V_hi and the edge sets E_{lo+1}..E_hi.
// An edge of E_n runs from a vertex of V_{n-1} to a vertex of V_n.  The two
// partial orders are stored as dense ranks inside each fiber: r_rank orders
// the edges sharing a range, s_rank the edges sharing a source.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsurf/matrix.hpp"

namespace bsurf {

enum class Order { R, S };
enum class Step { Succ, Pred };
enum class Direction { Left, Right };
enum class Cmp { LT, EQ, GT, Incomparable };

std::string to_string(Cmp c);

struct Level {
  long index = 0;
  std::vector<std::string> vertices;
};

struct Edge {
  std::string id;
  int source = 0;  // index into V_{n-1}
  int range = 0;   // index into V_n
  int r_rank = 0;
  int s_rank = 0;
};

/// One level and the edge set that attaches it to the window.
/// For Direction::Right the edges form E_{hi+1}; for Left they form E_lo.
struct Extension {
  Level level;
  std::vector<Edge> edges;
};

class DiagramWindow;
using Generator = std::function<std::optional<Extension>(Direction, const DiagramWindow&)>;

class DiagramWindow {
 public:
  DiagramWindow() = default;
  explicit DiagramWindow(Level first);

  /// Appends E_{hi+1} and V_{hi+1}.
  void push_right(Level level, std::vector<Edge> edges);
  /// Prepends V_{lo-1} and E_lo.
  void push_left(Level level, std::vector<Edge> edges);

  void set_generator(Generator g) { generator_ = std::move(g); }
  bool has_generator() const { return static_cast<bool>(generator_); }
  /// Extends with the generator until [lo, hi] is covered; false if it cannot.
  bool ensure(long lo, long hi);

  bool empty() const { return levels_.empty(); }
  long lo() const { return lo_; }
  long hi() const { return lo_ + static_cast<long>(levels_.size()) - 1; }
  bool has_level(long n) const { return !empty() && n >= lo() && n <= hi(); }
  bool has_edges(long n) const { return !empty() && n > lo() && n <= hi(); }

  const Level& level(long n) const;
  const std::vector<Edge>& edges(long n) const;
  const Edge& edge(long n, int e) const { return edges(n)[static_cast<size_t>(e)]; }

  /// Edges of E_n with range v, ordered by r_rank.
  const std::vector<int>& r_fiber(long n, int v) const;
  /// Edges of E_n with source v, ordered by s_rank.
  const std::vector<int>& s_fiber(long n, int v) const;

  bool is_max(long n, int e, Order o) const;
  bool is_min(long n, int e, Order o) const;
  std::optional<int> neighbor(long n, int e, Order o, Step dir) const;
  int extreme_out(long n, int source, bool max) const;  // s-extreme edge leaving source
  int extreme_in(long n, int range, bool max) const;    // r-extreme edge entering range

  int vertex_index(long n, const std::string& name) const;  // -1 if absent
  int edge_index(long n, const std::string& id) const;      // -1 if absent
  const std::string& vertex_name(long n, int v) const { return level(n).vertices[static_cast<size_t>(v)]; }

  /// Largest |V_n| in the window.
  size_t max_rank() const;

 private:
  struct Slot {
    Level level;
    std::vector<Edge> edges;  // E_{index}; empty for the leftmost level
    std::vector<std::vector<int>> r_fibers, s_fibers_prev;  // by range in V_n, by source in V_{n-1}
    std::map<std::string, int> vertex_lookup, edge_lookup;
  };
  void index_slot(size_t i);

  long lo_ = 0;
  std::vector<Slot> levels_;
  Generator generator_;
};

struct FinitePath {
  long start = 0;         // m
  std::vector<int> edges;  // edge indices of E_{m+1}, ..., E_n
  long end() const { return start + static_cast<long>(edges.size()); }
  bool operator==(const FinitePath&) const = default;
};

int path_source(const DiagramWindow& w, const FinitePath& p);
int path_range(const DiagramWindow& w, const FinitePath& p);
bool composable(const DiagramWindow& w, const FinitePath& p);
std::string path_to_string(const DiagramWindow& w, const FinitePath& p);

struct Violation {
  std::string code;  // "rank collision", "rank gap", "r not surjective", ...
  long level;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_window(const DiagramWindow& w);

std::vector<FinitePath> finite_paths(const DiagramWindow& w, long m, long n,
                                     std::optional<int> src = std::nullopt,
                                     std::optional<int> rng = std::nullopt);

/// Number of paths in E_{m,n}, via the edge-matrix product.
Z path_count(const DiagramWindow& w, long m, long n);

Cmp compare_paths(const DiagramWindow& w, const FinitePath& p, const FinitePath& q, Order which);

std::optional<FinitePath> successor(const DiagramWindow& w, const FinitePath& p, Order which, Step dir);

/// Entry (j, i) counts edges from vertex i of V_{n-1} to vertex j of V_n.
IntMatrix edge_matrix(const DiagramWindow& w, long n);

/// E_n ... E_{m+1}, a |V_n| x |V_m| matrix.
IntMatrix composite_matrix(const DiagramWindow& w, long m, long n);

}  // namespace bsurf
