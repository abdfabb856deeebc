#include "bsurf/diagram.hpp"

#include <algorithm>
#include <set>

#include "bsurf/error.hpp"

namespace bsurf {

std::string to_string(Cmp c) {
  switch (c) {
    case Cmp::LT: return "LT";
    case Cmp::EQ: return "EQ";
    case Cmp::GT: return "GT";
    case Cmp::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

DiagramWindow::DiagramWindow(Level first) {
  lo_ = first.index;
  levels_.push_back(Slot{std::move(first), {}, {}, {}, {}, {}});
  index_slot(0);
}

void DiagramWindow::index_slot(size_t i) {
  Slot& s = levels_[i];
  s.vertex_lookup.clear();
  s.edge_lookup.clear();
  for (size_t v = 0; v < s.level.vertices.size(); ++v) s.vertex_lookup.emplace(s.level.vertices[v], static_cast<int>(v));
  for (size_t e = 0; e < s.edges.size(); ++e) s.edge_lookup.emplace(s.edges[e].id, static_cast<int>(e));
  s.r_fibers.assign(s.level.vertices.size(), {});
  size_t prev = i == 0 ? 0 : levels_[i - 1].level.vertices.size();
  s.s_fibers_prev.assign(prev, {});
  for (size_t e = 0; e < s.edges.size(); ++e) {
    const Edge& ed = s.edges[e];
    if (ed.range >= 0 && static_cast<size_t>(ed.range) < s.r_fibers.size()) s.r_fibers[ed.range].push_back(static_cast<int>(e));
    if (ed.source >= 0 && static_cast<size_t>(ed.source) < prev) s.s_fibers_prev[ed.source].push_back(static_cast<int>(e));
  }
  auto by = [&](auto key) {
    return [&, key](int a, int b) {
      int ka = key(s.edges[a]), kb = key(s.edges[b]);
      return ka != kb ? ka < kb : a < b;
    };
  };
  for (auto& f : s.r_fibers) std::sort(f.begin(), f.end(), by([](const Edge& e) { return e.r_rank; }));
  for (auto& f : s.s_fibers_prev) std::sort(f.begin(), f.end(), by([](const Edge& e) { return e.s_rank; }));
}

void DiagramWindow::push_right(Level level, std::vector<Edge> edges) {
  if (empty()) fail(ErrorKind::Usage, "push_right on an empty window");
  level.index = hi() + 1;
  levels_.push_back(Slot{std::move(level), std::move(edges), {}, {}, {}, {}});
  index_slot(levels_.size() - 1);
}

void DiagramWindow::push_left(Level level, std::vector<Edge> edges) {
  if (empty()) fail(ErrorKind::Usage, "push_left on an empty window");
  level.index = lo_ - 1;
  levels_.front().edges = std::move(edges);
  levels_.insert(levels_.begin(), Slot{std::move(level), {}, {}, {}, {}, {}});
  --lo_;
  index_slot(0);
  index_slot(1);
}

bool DiagramWindow::ensure(long lo, long hi) {
  if (empty()) return false;
  bool ok = true;
  while (this->hi() < hi) {
    auto ext = generator_ ? generator_(Direction::Right, *this) : std::nullopt;
    if (!ext) {
      ok = false;
      break;
    }
    push_right(std::move(ext->level), std::move(ext->edges));
  }
  while (lo_ > lo) {
    auto ext = generator_ ? generator_(Direction::Left, *this) : std::nullopt;
    if (!ext) {
      ok = false;
      break;
    }
    push_left(std::move(ext->level), std::move(ext->edges));
  }
  return ok;
}

const Level& DiagramWindow::level(long n) const {
  if (!has_level(n)) fail(ErrorKind::InsufficientDepth, "level " + std::to_string(n) + " outside window");
  return levels_[static_cast<size_t>(n - lo_)].level;
}

const std::vector<Edge>& DiagramWindow::edges(long n) const {
  if (!has_edges(n)) fail(ErrorKind::InsufficientDepth, "edge set E_" + std::to_string(n) + " outside window");
  return levels_[static_cast<size_t>(n - lo_)].edges;
}

const std::vector<int>& DiagramWindow::r_fiber(long n, int v) const {
  edges(n);
  return levels_[static_cast<size_t>(n - lo_)].r_fibers.at(static_cast<size_t>(v));
}

const std::vector<int>& DiagramWindow::s_fiber(long n, int v) const {
  edges(n);
  return levels_[static_cast<size_t>(n - lo_)].s_fibers_prev.at(static_cast<size_t>(v));
}

bool DiagramWindow::is_max(long n, int e, Order o) const {
  const Edge& ed = edge(n, e);
  const auto& f = o == Order::R ? r_fiber(n, ed.range) : s_fiber(n, ed.source);
  return f.back() == e;
}

bool DiagramWindow::is_min(long n, int e, Order o) const {
  const Edge& ed = edge(n, e);
  const auto& f = o == Order::R ? r_fiber(n, ed.range) : s_fiber(n, ed.source);
  return f.front() == e;
}

std::optional<int> DiagramWindow::neighbor(long n, int e, Order o, Step dir) const {
  const Edge& ed = edge(n, e);
  const auto& f = o == Order::R ? r_fiber(n, ed.range) : s_fiber(n, ed.source);
  auto it = std::find(f.begin(), f.end(), e);
  if (dir == Step::Succ) {
    if (it + 1 == f.end()) return std::nullopt;
    return *(it + 1);
  }
  if (it == f.begin()) return std::nullopt;
  return *(it - 1);
}

int DiagramWindow::extreme_out(long n, int source, bool max) const {
  const auto& f = s_fiber(n, source);
  if (f.empty()) fail(ErrorKind::Domain, "vertex without outgoing edges at level " + std::to_string(n - 1));
  return max ? f.back() : f.front();
}

int DiagramWindow::extreme_in(long n, int range, bool max) const {
  const auto& f = r_fiber(n, range);
  if (f.empty()) fail(ErrorKind::Domain, "vertex without incoming edges at level " + std::to_string(n));
  return max ? f.back() : f.front();
}

int DiagramWindow::vertex_index(long n, const std::string& name) const {
  level(n);
  const auto& m = levels_[static_cast<size_t>(n - lo_)].vertex_lookup;
  auto it = m.find(name);
  return it == m.end() ? -1 : it->second;
}

int DiagramWindow::edge_index(long n, const std::string& id) const {
  edges(n);
  const auto& m = levels_[static_cast<size_t>(n - lo_)].edge_lookup;
  auto it = m.find(id);
  return it == m.end() ? -1 : it->second;
}

size_t DiagramWindow::max_rank() const {
  size_t k = 0;
  for (const auto& s : levels_) k = std::max(k, s.level.vertices.size());
  return k;
}

int path_source(const DiagramWindow& w, const FinitePath& p) {
  if (p.edges.empty()) fail(ErrorKind::Domain, "empty path has no source edge");
  return w.edge(p.start + 1, p.edges.front()).source;
}

int path_range(const DiagramWindow& w, const FinitePath& p) {
  if (p.edges.empty()) fail(ErrorKind::Domain, "empty path has no range edge");
  return w.edge(p.end(), p.edges.back()).range;
}

bool composable(const DiagramWindow& w, const FinitePath& p) {
  for (size_t i = 0; i + 1 < p.edges.size(); ++i) {
    long n = p.start + 1 + static_cast<long>(i);
    if (w.edge(n, p.edges[i]).range != w.edge(n + 1, p.edges[i + 1]).source) return false;
  }
  return true;
}

std::string path_to_string(const DiagramWindow& w, const FinitePath& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += ",";
    s += w.edge(p.start + 1 + static_cast<long>(i), p.edges[i]).id;
  }
  return s + ")@" + std::to_string(p.start);
}

ValidationReport validate_window(const DiagramWindow& w) {
  ValidationReport rep;
  if (w.empty()) {
    rep.violations.push_back({"empty window", 0, ""});
    return rep;
  }
  for (long n = w.lo(); n <= w.hi(); ++n) {
    const Level& lv = w.level(n);
    if (lv.vertices.empty()) rep.violations.push_back({"empty level", n, ""});
    std::set<std::string> seen;
    for (const auto& v : lv.vertices)
      if (!seen.insert(v).second) rep.violations.push_back({"duplicate vertex", n, v});
  }
  for (long n = w.lo() + 1; n <= w.hi(); ++n) {
    const auto& es = w.edges(n);
    size_t dv = w.level(n).vertices.size(), dp = w.level(n - 1).vertices.size();
    std::set<std::string> ids;
    bool endpoints_ok = true;
    for (const auto& e : es) {
      if (!ids.insert(e.id).second) rep.violations.push_back({"duplicate edge id", n, e.id});
      if (e.source < 0 || static_cast<size_t>(e.source) >= dp || e.range < 0 || static_cast<size_t>(e.range) >= dv) {
        rep.violations.push_back({"bad endpoint", n, e.id});
        endpoints_ok = false;
      }
    }
    if (!endpoints_ok) continue;
    auto check_ranks = [&](const std::vector<int>& fiber, bool r, const std::string& where) {
      std::vector<int> ranks;
      for (int e : fiber) ranks.push_back(r ? es[e].r_rank : es[e].s_rank);
      std::sort(ranks.begin(), ranks.end());
      for (size_t i = 0; i < ranks.size(); ++i) {
        if (i > 0 && ranks[i] == ranks[i - 1]) {
          rep.violations.push_back({"rank collision", n, std::string(r ? "r" : "s") + "-fiber of " + where});
          return;
        }
      }
      for (size_t i = 0; i < ranks.size(); ++i)
        if (ranks[i] != static_cast<int>(i)) {
          rep.violations.push_back({"rank gap", n, std::string(r ? "r" : "s") + "-fiber of " + where});
          return;
        }
    };
    for (size_t v = 0; v < dv; ++v) {
      const auto& f = w.r_fiber(n, static_cast<int>(v));
      if (f.empty()) rep.violations.push_back({"r not surjective", n, w.level(n).vertices[v]});
      check_ranks(f, true, w.level(n).vertices[v]);
    }
    for (size_t v = 0; v < dp; ++v) {
      const auto& f = w.s_fiber(n, static_cast<int>(v));
      if (f.empty()) rep.violations.push_back({"s not surjective", n - 1, w.level(n - 1).vertices[v]});
      check_ranks(f, false, w.level(n - 1).vertices[v]);
    }
  }
  return rep;
}

std::vector<FinitePath> finite_paths(const DiagramWindow& w, long m, long n, std::optional<int> src,
                                     std::optional<int> rng) {
  if (m >= n) fail(ErrorKind::Domain, "finite_paths needs m < n");
  if (!w.has_level(m) || !w.has_level(n)) fail(ErrorKind::InsufficientDepth, "finite_paths span outside window");
  std::vector<FinitePath> out;
  FinitePath cur{m, {}};
  std::function<void(long, int)> rec = [&](long k, int v) {
    if (k > n) {
      if (!rng || *rng == v) out.push_back(cur);
      return;
    }
    for (int e : w.s_fiber(k, v)) {
      cur.edges.push_back(e);
      rec(k + 1, w.edge(k, e).range);
      cur.edges.pop_back();
    }
  };
  size_t d = w.level(m).vertices.size();
  for (size_t v = 0; v < d; ++v)
    if (!src || *src == static_cast<int>(v)) rec(m + 1, static_cast<int>(v));
  return out;
}

Z path_count(const DiagramWindow& w, long m, long n) {
  IntMatrix c = composite_matrix(w, m, n);
  Z s = 0;
  for (size_t i = 0; i < c.rows(); ++i)
    for (size_t j = 0; j < c.cols(); ++j) s += c(i, j);
  return s;
}

Cmp compare_paths(const DiagramWindow& w, const FinitePath& p, const FinitePath& q, Order which) {
  if (p.start != q.start || p.edges.size() != q.edges.size() || p.edges.empty())
    fail(ErrorKind::Domain, "compare_paths needs paths with the same span");
  if (which == Order::S) {
    if (path_source(w, p) != path_source(w, q)) return Cmp::Incomparable;
    for (size_t i = 0; i < p.edges.size(); ++i) {
      if (p.edges[i] == q.edges[i]) continue;
      long n = p.start + 1 + static_cast<long>(i);
      int a = w.edge(n, p.edges[i]).s_rank, b = w.edge(n, q.edges[i]).s_rank;
      return a < b ? Cmp::LT : Cmp::GT;
    }
    return Cmp::EQ;
  }
  if (path_range(w, p) != path_range(w, q)) return Cmp::Incomparable;
  for (size_t i = p.edges.size(); i-- > 0;) {
    if (p.edges[i] == q.edges[i]) continue;
    long n = p.start + 1 + static_cast<long>(i);
    int a = w.edge(n, p.edges[i]).r_rank, b = w.edge(n, q.edges[i]).r_rank;
    return a < b ? Cmp::LT : Cmp::GT;
  }
  return Cmp::EQ;
}

std::optional<FinitePath> successor(const DiagramWindow& w, const FinitePath& p, Order which, Step dir) {
  if (p.edges.empty()) return std::nullopt;
  FinitePath q = p;
  size_t len = p.edges.size();
  auto level_of = [&](size_t i) { return p.start + 1 + static_cast<long>(i); };
  // After the pivot, fill with edges extremal in the opposite direction.
  bool fill_max = dir == Step::Pred;
  if (which == Order::S) {
    for (size_t i = len; i-- > 0;) {
      auto nb = w.neighbor(level_of(i), p.edges[i], Order::S, dir);
      if (!nb) continue;
      q.edges[i] = *nb;
      for (size_t j = i + 1; j < len; ++j) {
        int v = w.edge(level_of(j - 1), q.edges[j - 1]).range;
        q.edges[j] = w.extreme_out(level_of(j), v, fill_max);
      }
      return q;
    }
    return std::nullopt;
  }
  for (size_t i = 0; i < len; ++i) {
    auto nb = w.neighbor(level_of(i), p.edges[i], Order::R, dir);
    if (!nb) continue;
    q.edges[i] = *nb;
    for (size_t j = i; j-- > 0;) {
      int v = w.edge(level_of(j + 1), q.edges[j + 1]).source;
      q.edges[j] = w.extreme_in(level_of(j), v, fill_max);
    }
    return q;
  }
  return std::nullopt;
}

IntMatrix edge_matrix(const DiagramWindow& w, long n) {
  const auto& es = w.edges(n);
  IntMatrix m(w.level(n).vertices.size(), w.level(n - 1).vertices.size());
  for (const auto& e : es) m(static_cast<size_t>(e.range), static_cast<size_t>(e.source)) += 1;
  return m;
}

IntMatrix composite_matrix(const DiagramWindow& w, long m, long n) {
  if (m > n) fail(ErrorKind::Domain, "composite_matrix needs m <= n");
  IntMatrix c = IntMatrix::identity(w.level(m).vertices.size());
  for (long k = m + 1; k <= n; ++k) c = edge_matrix(w, k) * c;
  return c;
}

}  // namespace bsurf
