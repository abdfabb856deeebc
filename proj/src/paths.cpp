#include "bsurf/paths.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "bsurf/error.hpp"

namespace bsurf {

std::string to_string(TailKind k) {
  switch (k) {
    case TailKind::SMax: return "SMax";
    case TailKind::SMin: return "SMin";
    case TailKind::RMax: return "RMax";
    case TailKind::RMin: return "RMin";
    case TailKind::Horizontal: return "Horizontal";
    case TailKind::Periodic: return "Periodic";
  }
  return "?";
}

TailKind parse_tail_kind(const std::string& s) {
  for (TailKind k : {TailKind::SMax, TailKind::SMin, TailKind::RMax, TailKind::RMin, TailKind::Horizontal,
                     TailKind::Periodic})
    if (to_string(k) == s) return k;
  fail(ErrorKind::Usage, "unknown tail kind '" + s + "'");
}

std::string to_string(ExtremalFamily f) {
  switch (f) {
    case ExtremalFamily::SMax: return "s-max";
    case ExtremalFamily::SMin: return "s-min";
    case ExtremalFamily::RMax: return "r-max";
    case ExtremalFamily::RMin: return "r-min";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool CertificateReport::certified() const {
  return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.verdict == Verdict::Certified; });
}

bool CertificateReport::violated() const {
  return std::any_of(items.begin(), items.end(), [](const auto& i) { return i.verdict == Verdict::Violated; });
}

PathDescriptor make_path(TailKind left, FinitePath core, TailKind right) {
  return PathDescriptor{TailSpec{left, {}, {}}, std::move(core), TailSpec{right, {}, {}}};
}

namespace {

long mod(long a, long b) { return ((a % b) + b) % b; }

// Edge of E_k leaving vertex v of V_{k-1} under a right tail.
int right_step(const DiagramWindow& w, const TailSpec& t, long k, int v) {
  switch (t.kind) {
    case TailKind::SMax: return w.extreme_out(k, v, true);
    case TailKind::SMin: return w.extreme_out(k, v, false);
    case TailKind::Horizontal: {
      if (w.vertex_name(k - 1, v) != t.symbol)
        fail(ErrorKind::Domain, "horizontal tail '" + t.symbol + "' does not attach at level " + std::to_string(k - 1));
      int found = -1;
      for (int e : w.s_fiber(k, v))
        if (w.vertex_name(k, w.edge(k, e).range) == t.symbol) {
          if (found >= 0) fail(ErrorKind::Domain, "horizontal edge not unique at level " + std::to_string(k));
          found = e;
        }
      if (found < 0) fail(ErrorKind::Domain, "no horizontal edge for '" + t.symbol + "' at level " + std::to_string(k));
      return found;
    }
    case TailKind::Periodic: {
      if (t.cycle.empty()) fail(ErrorKind::Domain, "empty periodic cycle");
      const auto& id = t.cycle[static_cast<size_t>(mod(k, static_cast<long>(t.cycle.size())))];
      int e = w.edge_index(k, id);
      if (e < 0 || w.edge(k, e).source != v)
        fail(ErrorKind::Domain, "periodic tail edge '" + id + "' does not attach at level " + std::to_string(k));
      return e;
    }
    default: fail(ErrorKind::Domain, "tail kind " + to_string(t.kind) + " is not a right tail");
  }
}

// Edge of E_k entering vertex v of V_k under a left tail.
int left_step(const DiagramWindow& w, const TailSpec& t, long k, int v) {
  switch (t.kind) {
    case TailKind::RMax: return w.extreme_in(k, v, true);
    case TailKind::RMin: return w.extreme_in(k, v, false);
    case TailKind::Horizontal: {
      if (w.vertex_name(k, v) != t.symbol)
        fail(ErrorKind::Domain, "horizontal tail '" + t.symbol + "' does not attach at level " + std::to_string(k));
      int found = -1;
      for (int e : w.r_fiber(k, v))
        if (w.vertex_name(k - 1, w.edge(k, e).source) == t.symbol) {
          if (found >= 0) fail(ErrorKind::Domain, "horizontal edge not unique at level " + std::to_string(k));
          found = e;
        }
      if (found < 0) fail(ErrorKind::Domain, "no horizontal edge for '" + t.symbol + "' at level " + std::to_string(k));
      return found;
    }
    case TailKind::Periodic: {
      if (t.cycle.empty()) fail(ErrorKind::Domain, "empty periodic cycle");
      const auto& id = t.cycle[static_cast<size_t>(mod(k, static_cast<long>(t.cycle.size())))];
      int e = w.edge_index(k, id);
      if (e < 0 || w.edge(k, e).range != v)
        fail(ErrorKind::Domain, "periodic tail edge '" + id + "' does not attach at level " + std::to_string(k));
      return e;
    }
    default: fail(ErrorKind::Domain, "tail kind " + to_string(t.kind) + " is not a left tail");
  }
}

}  // namespace

std::vector<int> realize(const DiagramWindow& w, const PathDescriptor& x, long a, long b) {
  const FinitePath& c = x.core;
  if (c.edges.empty()) fail(ErrorKind::Domain, "descriptor core is empty");
  std::vector<int> out;
  if (a > b) return out;
  out.reserve(static_cast<size_t>(b - a + 1));
  // left part: levels a..min(b, c.start), computed backwards from the core
  if (a <= c.start) {
    long top = std::min(b, c.start);
    std::vector<int> left;
    int v = w.edge(c.start + 1, c.edges.front()).source;
    for (long k = c.start; k >= a; --k) {
      int e = left_step(w, x.left, k, v);
      if (k <= top) left.push_back(e);
      v = w.edge(k, e).source;
    }
    out.insert(out.end(), left.rbegin(), left.rend());
  }
  for (long k = std::max(a, c.start + 1); k <= std::min(b, c.end()); ++k)
    out.push_back(c.edges[static_cast<size_t>(k - c.start - 1)]);
  if (b > c.end()) {
    int v = w.edge(c.end(), c.edges.back()).range;
    for (long k = c.end() + 1; k <= b; ++k) {
      int e = right_step(w, x.right, k, v);
      if (k >= a) out.push_back(e);
      v = w.edge(k, e).range;
    }
  }
  return out;
}

int edge_at(const DiagramWindow& w, const PathDescriptor& x, long n) { return realize(w, x, n, n).front(); }

FinitePath truncate(const DiagramWindow& w, const PathDescriptor& x, long a, long b) {
  return FinitePath{a, realize(w, x, a + 1, b)};
}

void check_descriptor(const DiagramWindow& w, const PathDescriptor& x) {
  if (x.core.edges.empty()) fail(ErrorKind::Domain, "descriptor core is empty");
  if (!composable(w, x.core)) fail(ErrorKind::Domain, "descriptor core is not composable");
  // realize one step of each tail inside the window to check attachment
  if (w.has_edges(x.core.start)) realize(w, x, x.core.start, x.core.start);
  if (w.has_edges(x.core.end() + 1)) realize(w, x, x.core.end() + 1, x.core.end() + 1);
}

bool same_on(const DiagramWindow& w, const PathDescriptor& x, const PathDescriptor& y, long a, long b) {
  return realize(w, x, a, b) == realize(w, y, a, b);
}

std::string describe(const DiagramWindow& w, const PathDescriptor& x) {
  auto tail = [](const TailSpec& t) {
    if (t.kind == TailKind::Horizontal) return "H(" + t.symbol + ")";
    if (t.kind == TailKind::Periodic) {
      std::string s = "P(";
      for (size_t i = 0; i < t.cycle.size(); ++i) s += (i ? " " : "") + t.cycle[i];
      return s + ")";
    }
    return to_string(t.kind);
  };
  return tail(x.left) + " " + path_to_string(w, x.core) + " " + tail(x.right);
}

TailClass tail_class(const DiagramWindow& w, const PathDescriptor& x, Order which) {
  const TailSpec& t = which == Order::S ? x.right : x.left;
  if (which == Order::S) {
    if (t.kind == TailKind::SMax) return TailClass::Max;
    if (t.kind == TailKind::SMin) return TailClass::Min;
  } else {
    if (t.kind == TailKind::RMax) return TailClass::Max;
    if (t.kind == TailKind::RMin) return TailClass::Min;
  }
  if (t.kind != TailKind::Horizontal && t.kind != TailKind::Periodic)
    fail(ErrorKind::Domain, "tail kind " + to_string(t.kind) + " on the wrong side");
  long a = which == Order::S ? x.core.end() + 1 : w.lo() + 1;
  long b = which == Order::S ? w.hi() : x.core.start;
  if (a > b) fail(ErrorKind::InsufficientDepth, "no window levels to judge the tail");
  auto es = realize(w, x, a, b);
  bool all_max = true, all_min = true;
  for (long k = a; k <= b; ++k) {
    int e = es[static_cast<size_t>(k - a)];
    all_max = all_max && w.is_max(k, e, which);
    all_min = all_min && w.is_min(k, e, which);
  }
  if (all_max) return TailClass::Max;
  if (all_min) return TailClass::Min;
  return TailClass::Neither;
}

std::optional<long> boundary_index(const DiagramWindow& w, const PathDescriptor& x, Order which) {
  TailClass c = tail_class(w, x, which);
  if (c == TailClass::Neither) return std::nullopt;
  bool want_max = c == TailClass::Max;
  if (which == Order::S) {
    long top = x.core.end();
    long bottom = w.lo() + 1;
    auto es = realize(w, x, bottom, top);
    for (long k = top; k >= bottom; --k) {
      int e = es[static_cast<size_t>(k - bottom)];
      if (want_max ? !w.is_max(k, e, Order::S) : !w.is_min(k, e, Order::S)) return k;
    }
    fail(ErrorKind::InsufficientDepth, "s-pivot not found within the window");
  }
  long bottom = x.core.start + 1;
  long top = w.hi();
  auto es = realize(w, x, bottom, top);
  for (long k = bottom; k <= top; ++k) {
    int e = es[static_cast<size_t>(k - bottom)];
    if (want_max ? !w.is_max(k, e, Order::R) : !w.is_min(k, e, Order::R)) return k;
  }
  fail(ErrorKind::InsufficientDepth, "r-pivot not found within the window");
}

PathDescriptor delta(const DiagramWindow& w, const PathDescriptor& x, Order which) {
  auto piv = boundary_index(w, x, which);
  if (!piv) fail(ErrorKind::Domain, "path is not in the boundary (no pivot)");
  long n = *piv;
  bool up = tail_class(w, x, which) == TailClass::Max;
  int e = edge_at(w, x, n);
  auto nb = w.neighbor(n, e, which, up ? Step::Succ : Step::Pred);
  if (!nb) fail(ErrorKind::Domain, "pivot edge has no neighbor");
  PathDescriptor y = x;
  if (which == Order::S) {
    y.right = TailSpec{up ? TailKind::SMin : TailKind::SMax, {}, {}};
    if (n > x.core.start) {
      y.core.edges.resize(static_cast<size_t>(n - x.core.start));
      y.core.edges.back() = *nb;
    } else {
      y.core = FinitePath{n - 1, {*nb}};
    }
    return y;
  }
  y.left = TailSpec{up ? TailKind::RMin : TailKind::RMax, {}, {}};
  if (n <= x.core.end()) {
    std::vector<int> rest(x.core.edges.begin() + (n - x.core.start - 1), x.core.edges.end());
    rest.front() = *nb;
    y.core = FinitePath{n - 1, rest};
  } else {
    y.core = FinitePath{n - 1, {*nb}};
  }
  return y;
}

std::optional<SigmaEntry> sigma_candidate(const DiagramWindow& w, const PathDescriptor& x) {
  auto m = boundary_index(w, x, Order::R);
  auto n = boundary_index(w, x, Order::S);
  if (!m || !n) fail(ErrorKind::Domain, "path is not in the boundary");
  if (*m < *n) return std::nullopt;
  SigmaEntry s;
  s.path = x;
  s.m = *m;
  s.n = *n;
  s.pivot_edge = w.edge(*m, edge_at(w, x, *m)).id;
  s.sr = delta(w, delta(w, x, Order::R), Order::S);
  s.rs = delta(w, delta(w, x, Order::S), Order::R);
  s.singular = !same_on(w, s.sr, s.rs, w.lo() + 1, w.hi());
  return s;
}

namespace {

// Shortcut verification: m(x) < n(x) must give equal composites.
bool composites_agree(const DiagramWindow& w, const PathDescriptor& x) {
  auto a = delta(w, delta(w, x, Order::R), Order::S);
  auto b = delta(w, delta(w, x, Order::S), Order::R);
  return same_on(w, a, b, w.lo() + 1, w.hi());
}

}  // namespace

SigmaReport sigma_scan(const DiagramWindow& win, long depth, const SigmaOptions& opt) {
  constexpr long kMaxReach = 1024;
  DiagramWindow w = win;
  long margin = depth + 4;
  if (w.has_generator()) w.ensure(-depth - margin, depth + margin);
  if (!w.has_level(-depth) || !w.has_level(depth))
    fail(ErrorKind::InsufficientDepth, "window does not span [-depth, depth]");
  SigmaReport rep;
  rep.depth = depth;
  for (long m = std::max(-depth, w.lo() + 1); m <= depth; ++m) {
    const int edge_count = static_cast<int>(w.edges(m).size());
    for (int e = 0; e < edge_count; ++e) {
      for (TailKind L : {TailKind::RMax, TailKind::RMin}) {
        if (L == TailKind::RMax ? w.is_max(m, e, Order::R) : w.is_min(m, e, Order::R)) continue;
        for (TailKind R : {TailKind::SMax, TailKind::SMin}) {
          PathDescriptor x = make_path(L, FinitePath{m - 1, {e}}, R);
          std::optional<long> n;
          try {
            n = boundary_index(w, x, Order::S);
          } catch (const Error& err) {
            if (err.kind() != ErrorKind::InsufficientDepth) throw;
            continue;  // no s-pivot inside the window: n(x) is out of range
          }
          if (!n || *n < -depth) continue;
          // a pivot of a composite may lie past the margin; grow generated windows and retry
          for (long reach = margin;; reach *= 2) {
            try {
              auto entry = sigma_candidate(w, x);
              if (entry) (entry->singular ? rep.singular : rep.regular).push_back(*entry);
              break;
            } catch (const Error& err) {
              if (err.kind() != ErrorKind::InsufficientDepth) throw;
              if (!w.has_generator() || reach > kMaxReach) {
                rep.inconclusive.push_back(describe(w, x) + ": " + err.what());
                break;
              }
              w.ensure(-depth - 2 * reach, depth + 2 * reach);
            }
          }
        }
        if (!opt.verify_shortcut) continue;
        // paths L e q R with q a short right extension; only m < n cases are used
        std::function<void(FinitePath&)> extend = [&](FinitePath& core) {
          if (static_cast<int>(core.edges.size()) > opt.shortcut_length) return;
          if (core.edges.size() > 1) {
            for (TailKind R : {TailKind::SMax, TailKind::SMin}) {
              PathDescriptor x = make_path(L, core, R);
              try {
                auto n = boundary_index(w, x, Order::S);
                if (!n || *n <= m) continue;
                ++rep.shortcut_checked;
                if (!composites_agree(w, x)) ++rep.shortcut_failures;
              } catch (const Error& err) {
                if (err.kind() != ErrorKind::InsufficientDepth) throw;
              }
            }
          }
          long k = core.end() + 1;
          if (k > depth || !w.has_edges(k)) return;
          int v = w.edge(core.end(), core.edges.back()).range;
          for (int f : w.s_fiber(k, v)) {
            core.edges.push_back(f);
            extend(core);
            core.edges.pop_back();
          }
        };
        FinitePath core{m - 1, {e}};
        extend(core);
      }
    }
  }
  auto order = [&](const SigmaEntry& a, const SigmaEntry& b) {
    if (a.m != b.m) return a.m < b.m;
    if (a.pivot_edge != b.pivot_edge) return a.pivot_edge < b.pivot_edge;
    return describe(w, a.path) < describe(w, b.path);
  };
  std::sort(rep.singular.begin(), rep.singular.end(), order);
  std::sort(rep.regular.begin(), rep.regular.end(), order);
  std::map<std::pair<long, std::string>, size_t> fibers;
  for (const auto& s : rep.singular) rep.max_fiber = std::max(rep.max_fiber, ++fibers[{s.m, s.pivot_edge}]);
  for (const auto& ex : extremal_paths(w, depth))
    if (ex.descriptor) rep.extremal.push_back(*ex.descriptor);
  return rep;
}

namespace {

// Extremal paths over the whole window, as realized edge lists on lo+1..hi.
std::vector<std::pair<ExtremalFamily, std::vector<int>>> extremal_full(const DiagramWindow& w) {
  std::vector<std::pair<ExtremalFamily, std::vector<int>>> out;
  auto add = [&](ExtremalFamily f, std::vector<int> full) {
    for (const auto& o : out)
      if (o.first == f && o.second == full) return;
    out.emplace_back(f, std::move(full));
  };
  for (bool max : {true, false}) {
    for (int v = 0; v < static_cast<int>(w.level(w.lo()).vertices.size()); ++v) {
      std::vector<int> full;
      int cur = v;
      for (long k = w.lo() + 1; k <= w.hi(); ++k) {
        int e = w.extreme_out(k, cur, max);
        full.push_back(e);
        cur = w.edge(k, e).range;
      }
      add(max ? ExtremalFamily::SMax : ExtremalFamily::SMin, full);
    }
    for (int v = 0; v < static_cast<int>(w.level(w.hi()).vertices.size()); ++v) {
      std::vector<int> rev;
      int cur = v;
      for (long k = w.hi(); k > w.lo(); --k) {
        int e = w.extreme_in(k, cur, max);
        rev.push_back(e);
        cur = w.edge(k, e).source;
      }
      add(max ? ExtremalFamily::RMax : ExtremalFamily::RMin, std::vector<int>(rev.rbegin(), rev.rend()));
    }
  }
  return out;
}

}  // namespace

std::vector<ExtremalPath> extremal_paths(const DiagramWindow& win, long depth) {
  DiagramWindow w = win;
  if (w.has_generator()) w.ensure(-2 * depth - 2, 2 * depth + 2);
  long a = std::max(-depth, w.lo()), b = std::min(depth, w.hi());
  if (a >= b) fail(ErrorKind::InsufficientDepth, "window too small for extremal paths");
  std::vector<ExtremalPath> out;
  auto classify = [&](const std::vector<int>& full) -> std::optional<PathDescriptor> {
    // full covers levels lo+1..hi
    auto at = [&](long k) { return full[static_cast<size_t>(k - w.lo() - 1)]; };
    FinitePath t{a, {}};
    for (long k = a + 1; k <= b; ++k) t.edges.push_back(at(k));
    bool horizontal = true;
    std::string sym = w.vertex_name(a, w.edge(a + 1, t.edges.front()).source);
    for (long k = w.lo() + 1; k <= w.hi() && horizontal; ++k) {
      const Edge& e = w.edge(k, at(k));
      horizontal = w.vertex_name(k - 1, e.source) == sym && w.vertex_name(k, e.range) == sym;
    }
    if (horizontal) return PathDescriptor{{TailKind::Horizontal, sym, {}}, t, {TailKind::Horizontal, sym, {}}};
    auto all = [&](long lo, long hi, Order o, bool max) {
      for (long k = lo; k <= hi; ++k)
        if (max ? !w.is_max(k, at(k), o) : !w.is_min(k, at(k), o)) return false;
      return true;
    };
    std::optional<TailKind> left, right;
    if (all(w.lo() + 1, a, Order::R, true)) left = TailKind::RMax;
    else if (all(w.lo() + 1, a, Order::R, false)) left = TailKind::RMin;
    if (all(b + 1, w.hi(), Order::S, true)) right = TailKind::SMax;
    else if (all(b + 1, w.hi(), Order::S, false)) right = TailKind::SMin;
    if (!left || !right) return std::nullopt;
    return make_path(*left, t, *right);
  };
  for (auto& [f, full] : extremal_full(w)) {
    FinitePath t{a, {}};
    for (long k = a + 1; k <= b; ++k) t.edges.push_back(full[static_cast<size_t>(k - w.lo() - 1)]);
    bool dup = false;
    for (const auto& o : out) dup = dup || (o.family == f && o.truncation == t);
    if (!dup) out.push_back({f, t, classify(full)});
  }
  return out;
}

std::optional<long> tail_equivalent(const DiagramWindow& w, const PathDescriptor& x, const PathDescriptor& y,
                                    Side side, long depth) {
  long a = std::max(-depth, w.lo() + 1), b = std::min(depth, w.hi());
  auto rx = realize(w, x, a, b), ry = realize(w, y, a, b);
  if (side == Side::Plus) {
    for (long k = b; k >= a; --k)
      if (rx[static_cast<size_t>(k - a)] != ry[static_cast<size_t>(k - a)]) {
        if (k == b) return std::nullopt;
        return k;
      }
    return -depth;
  }
  for (long k = a; k <= b; ++k)
    if (rx[static_cast<size_t>(k - a)] != ry[static_cast<size_t>(k - a)]) {
      if (k == a) return std::nullopt;
      return k;
    }
  return depth;
}

namespace {

Z min_entry(const IntMatrix& m) {
  Z best = m(0, 0);
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) best = std::min(best, m(i, j));
  return best;
}

}  // namespace

CertificateReport standing_hypotheses_check(const DiagramWindow& win, long depth) {
  constexpr long kMaxReach = 1024;
  DiagramWindow w = win;
  long margin = 2 * depth + 4;
  if (w.has_generator()) w.ensure(-depth - margin, depth + margin);
  CertificateReport rep;
  rep.items.push_back({"finite rank", Verdict::Certified, "K = " + std::to_string(w.max_rank())});

  // strong simplicity: for each level m, spans [l, m] and [m, n] with >= 2 paths between all vertex pairs
  auto left_span = [&](long m) -> std::optional<long> {
    IntMatrix c = IntMatrix::identity(w.level(m).vertices.size());
    for (long k = m; k > w.lo(); --k) {
      c = c * edge_matrix(w, k);
      if (min_entry(c) >= 2) return k - 1;
    }
    return std::nullopt;
  };
  auto right_span = [&](long m) -> std::optional<long> {
    IntMatrix c = IntMatrix::identity(w.level(m).vertices.size());
    for (long k = m + 1; k <= w.hi(); ++k) {
      c = edge_matrix(w, k) * c;
      if (min_entry(c) >= 2) return k;
    }
    return std::nullopt;
  };
  Verdict simple = Verdict::Certified;
  std::string detail;
  long widest = 0;
  for (long m = std::max(-depth, w.lo() + 1); m <= std::min(depth, w.hi() - 1); ++m) {
    auto l = left_span(m);
    auto n = right_span(m);
    for (long reach = margin; (!l || !n) && w.has_generator() && reach <= kMaxReach; reach *= 2) {
      w.ensure(-depth - 2 * reach, depth + 2 * reach);
      l = left_span(m);
      n = right_span(m);
    }
    if (l && n) {
      widest = std::max(widest, std::max(m - *l, *n - m));
      continue;
    }
    simple = Verdict::Inconclusive;
    detail = "no certificate around level " + std::to_string(m) + " within the window";
  }
  if (simple == Verdict::Certified) detail = "connections within " + std::to_string(widest) + " levels";
  rep.items.push_back({"strong simplicity", simple, detail});

  // X^ext disjoint from the boundaries.  Paths are judged on an inner range
  // (a, b]; an s-extremal truncation counts only if its start at a is reached
  // by s-extremal chains from the outer left end (r-extremal: from the outer
  // right end), which discards truncations no infinite extremal path follows.
  if (w.has_generator()) w.ensure(std::min(w.lo(), -3 * margin), std::max(w.hi(), 3 * margin));
  long span = w.hi() - w.lo();
  long a = w.lo() + span / 3, b = w.hi() - span / 3;
  long quarter = std::max<long>(2, (b - a) / 4);
  Verdict disjoint = Verdict::Certified;
  std::string ddetail = "no extremal path is eventually extremal in the other order";
  auto reached_forward = [&](bool max) {
    std::vector<char> cur(w.level(w.lo()).vertices.size(), 1);
    for (long k = w.lo() + 1; k <= a; ++k) {
      std::vector<char> next(w.level(k).vertices.size(), 0);
      for (size_t v = 0; v < cur.size(); ++v)
        if (cur[v]) next[static_cast<size_t>(w.edge(k, w.extreme_out(k, static_cast<int>(v), max)).range)] = 1;
      cur = std::move(next);
    }
    return cur;
  };
  auto reached_backward = [&](bool max) {
    std::vector<char> cur(w.level(w.hi()).vertices.size(), 1);
    for (long k = w.hi(); k > b; --k) {
      std::vector<char> next(w.level(k - 1).vertices.size(), 0);
      for (size_t v = 0; v < cur.size(); ++v)
        if (cur[v]) next[static_cast<size_t>(w.edge(k, w.extreme_in(k, static_cast<int>(v), max)).source)] = 1;
      cur = std::move(next);
    }
    return cur;
  };
  // A path extremal on its whole range is in X^{r-ext} (resp. X^{s-ext}) and
  // not in the boundary.  A tail counts only when some edge in it is extremal
  // in a fiber of size >= 2.  full holds the edges on (lo, hi].
  enum class Membership { No, Yes, Unclear };
  auto boundary_of = [&](const std::vector<int>& full, long lo, long hi, Order o, long tail_len) {
    auto at = [&](long k) { return full[static_cast<size_t>(k - lo - 1)]; };
    bool whole_max = true, whole_min = true;
    for (long k = lo + 1; k <= hi; ++k) {
      whole_max = whole_max && w.is_max(k, at(k), o);
      whole_min = whole_min && w.is_min(k, at(k), o);
    }
    if (whole_max || whole_min) return Membership::No;
    Membership out = Membership::No;
    for (bool max : {true, false}) {
      bool tail = true, witness = false;
      for (long k = lo + 1; k <= hi; ++k) {
        bool in_tail = o == Order::S ? k > hi - tail_len : k <= lo + tail_len;
        if (!in_tail) continue;
        bool is_max = w.is_max(k, at(k), o), is_min = w.is_min(k, at(k), o);
        tail = tail && (max ? is_max : is_min);
        witness = witness || (max ? is_max && !is_min : is_min && !is_max);
      }
      if (tail && witness) return Membership::Yes;
      if (tail) out = Membership::Unclear;
    }
    return out;
  };
  // Continuations of an inner path by extremal chains from `reach` levels
  // further out; the path is refuted when no continuation keeps an extremal tail.
  auto refuted = [&](const std::vector<int>& inner, bool max, Order o) {
    if (!w.has_generator()) return false;
    for (long reach = margin; reach <= kMaxReach; reach *= 2) {
      if (!w.ensure(std::min(w.lo(), a - reach), std::max(w.hi(), b + reach))) return false;
      bool any = false;
      if (o == Order::S) {  // r-extremal path, continue to the right
        int target = w.edge(b, inner.back()).range;
        for (int u = 0; u < static_cast<int>(w.level(b + reach).vertices.size()) && !any; ++u) {
          std::vector<int> rev;
          int cur = u;
          for (long k = b + reach; k > b; --k) {
            rev.push_back(w.extreme_in(k, cur, max));
            cur = w.edge(k, rev.back()).source;
          }
          if (cur != target) continue;
          std::vector<int> full = inner;
          full.insert(full.end(), rev.rbegin(), rev.rend());
          any = boundary_of(full, a, b + reach, o, reach) != Membership::No;
        }
      } else {  // s-extremal path, continue to the left
        int target = w.edge(a + 1, inner.front()).source;
        for (int u = 0; u < static_cast<int>(w.level(a - reach).vertices.size()) && !any; ++u) {
          std::vector<int> full;
          int cur = u;
          for (long k = a - reach + 1; k <= a; ++k) {
            full.push_back(w.extreme_out(k, cur, max));
            cur = w.edge(k, full.back()).range;
          }
          if (cur != target) continue;
          full.insert(full.end(), inner.begin(), inner.end());
          any = boundary_of(full, a - reach, b, o, reach) != Membership::No;
        }
      }
      if (!any) return true;
    }
    return false;
  };
  std::string unclear;
  auto judge = [&](ExtremalFamily fam, const std::vector<int>& full, Order o) {
    auto m = boundary_of(full, a, b, o, quarter);
    if (m == Membership::No) return;
    bool max = fam == ExtremalFamily::SMax || fam == ExtremalFamily::RMax;
    if (refuted(full, max, o)) return;
    std::string text = to_string(fam) + " path " + path_to_string(w, FinitePath{a, full}) + " lies in the " +
                       (o == Order::S ? "s" : "r") + "-boundary";
    if (m == Membership::Yes) {
      disjoint = Verdict::Violated;
      ddetail = text;
    } else if (unclear.empty()) {
      unclear = to_string(fam) + " path at level " + std::to_string(a) + ": tail extremality rests on singleton fibers";
    }
  };
  for (bool max : {true, false}) {
    if (disjoint != Verdict::Certified) break;
    auto starts = reached_forward(max);
    for (size_t v = 0; v < starts.size() && disjoint == Verdict::Certified; ++v) {
      if (!starts[v]) continue;
      std::vector<int> full;
      int cur = static_cast<int>(v);
      for (long k = a + 1; k <= b; ++k) {
        full.push_back(w.extreme_out(k, cur, max));
        cur = w.edge(k, full.back()).range;
      }
      judge(max ? ExtremalFamily::SMax : ExtremalFamily::SMin, full, Order::R);
    }
    auto ends = reached_backward(max);
    for (size_t v = 0; v < ends.size() && disjoint == Verdict::Certified; ++v) {
      if (!ends[v]) continue;
      std::vector<int> rev;
      int cur = static_cast<int>(v);
      for (long k = b; k > a; --k) {
        rev.push_back(w.extreme_in(k, cur, max));
        cur = w.edge(k, rev.back()).source;
      }
      judge(max ? ExtremalFamily::RMax : ExtremalFamily::RMin, std::vector<int>(rev.rbegin(), rev.rend()), Order::S);
    }
  }
  if (disjoint == Verdict::Certified && !unclear.empty()) {
    disjoint = Verdict::Inconclusive;
    ddetail = unclear;
  }
  rep.items.push_back({"extremal disjointness", disjoint, ddetail});
  return rep;
}

}  // namespace bsurf
