// Infinite paths as finite descriptors, the maps Delta_s / Delta_r and the
// singular-set scan.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsurf/diagram.hpp"

namespace bsurf {

enum class TailKind { SMax, SMin, RMax, RMin, Horizontal, Periodic };

std::string to_string(TailKind k);
TailKind parse_tail_kind(const std::string& s);

struct TailSpec {
  TailKind kind = TailKind::SMin;
  std::string symbol;              // Horizontal
  std::vector<std::string> cycle;  // Periodic: the edge at level n has id cycle[n mod L]
  bool operator==(const TailSpec&) const = default;
};

/// Left tail on levels <= core.start, core on (core.start, core.end()], right
/// tail beyond.  The core must contain at least one edge.
struct PathDescriptor {
  TailSpec left;
  FinitePath core;
  TailSpec right;
  bool operator==(const PathDescriptor&) const = default;
};

PathDescriptor make_path(TailKind left, FinitePath core, TailKind right);

/// Edge index of x at level n.  Throws InsufficientDepth outside the window
/// and Domain when a tail cannot be attached.
int edge_at(const DiagramWindow& w, const PathDescriptor& x, long n);
/// Realized edges on levels a..b.
std::vector<int> realize(const DiagramWindow& w, const PathDescriptor& x, long a, long b);
/// Realized path on (a, b] as a FinitePath starting at a.
FinitePath truncate(const DiagramWindow& w, const PathDescriptor& x, long a, long b);
/// Throws Domain when the tails do not attach or the core is not composable.
void check_descriptor(const DiagramWindow& w, const PathDescriptor& x);

/// Semantic equality on levels a..b.
bool same_on(const DiagramWindow& w, const PathDescriptor& x, const PathDescriptor& y, long a, long b);

std::string describe(const DiagramWindow& w, const PathDescriptor& x);

enum class TailClass { Max, Min, Neither };

/// Whether the right tail is eventually s-max / s-min (Order::S) or the left
/// tail eventually r-max / r-min (Order::R).  Horizontal and Periodic tails
/// are judged on the realized window.
TailClass tail_class(const DiagramWindow& w, const PathDescriptor& x, Order which);

/// n(x) for Order::S, m(x) for Order::R; nullopt when x is not in the
/// corresponding boundary.  Throws InsufficientDepth when the pivot scan runs
/// off the window.
std::optional<long> boundary_index(const DiagramWindow& w, const PathDescriptor& x, Order which);

/// Delta_s or Delta_r.  Throws Domain when x is not in the boundary.
PathDescriptor delta(const DiagramWindow& w, const PathDescriptor& x, Order which);

struct SigmaEntry {
  PathDescriptor path;
  long m = 0, n = 0;                 // m(x), n(x)
  std::string pivot_edge;            // id of x_m
  PathDescriptor sr, rs;             // Delta_s(Delta_r x), Delta_r(Delta_s x)
  bool singular = false;
};

struct SigmaReport {
  long depth = 0;
  std::vector<SigmaEntry> singular;     // sorted by pivot level, then edge id
  std::vector<SigmaEntry> regular;      // candidates with m >= n whose composites agree
  std::vector<std::string> inconclusive;
  std::vector<PathDescriptor> extremal;
  size_t shortcut_checked = 0;  // candidates with m < n whose composites were verified equal
  size_t shortcut_failures = 0;
  size_t max_fiber = 0;         // largest number of singular paths sharing a pivot edge
};

struct SigmaOptions {
  bool verify_shortcut = true;  // also enumerate some m < n paths and compare composites
  int shortcut_length = 2;      // right extensions of length 1..this
};

SigmaReport sigma_scan(const DiagramWindow& w, long depth, const SigmaOptions& opt = {});

/// The composites for one path; nullopt for the shortcut case m(x) < n(x).
std::optional<SigmaEntry> sigma_candidate(const DiagramWindow& w, const PathDescriptor& x);

enum class ExtremalFamily { SMax, SMin, RMax, RMin };
std::string to_string(ExtremalFamily f);

struct ExtremalPath {
  ExtremalFamily family;
  FinitePath truncation;                  // on (-depth, depth]
  std::optional<PathDescriptor> descriptor;
};

std::vector<ExtremalPath> extremal_paths(const DiagramWindow& w, long depth);

enum class Side { Plus, Minus };

std::optional<long> tail_equivalent(const DiagramWindow& w, const PathDescriptor& x, const PathDescriptor& y,
                                    Side side, long depth);

enum class Verdict { Certified, Violated, Inconclusive };
std::string to_string(Verdict v);

struct CertificateItem {
  std::string name;
  Verdict verdict;
  std::string detail;
};

struct CertificateReport {
  std::vector<CertificateItem> items;
  bool certified() const;
  bool violated() const;
};

CertificateReport standing_hypotheses_check(const DiagramWindow& w, long depth);

}  // namespace bsurf
