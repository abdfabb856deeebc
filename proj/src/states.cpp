#include "bsurf/states.hpp"

#include <algorithm>

#include "bsurf/error.hpp"

namespace bsurf {

void State::set(long n, QVec nu_r, QVec nu_s) { levels_[n] = {std::move(nu_r), std::move(nu_s)}; }

bool State::has(long n) const { return levels_.count(n) > 0 || static_cast<bool>(formula_); }

const std::pair<QVec, QVec>& State::get(long n) const {
  auto it = levels_.find(n);
  if (it != levels_.end()) return it->second;
  if (!formula_) fail(ErrorKind::InsufficientDepth, "state has no values at level " + std::to_string(n));
  return levels_.emplace(n, formula_(n)).first->second;
}

const QVec& State::nu_r(long n) const { return get(n).first; }
const QVec& State::nu_s(long n) const { return get(n).second; }

std::vector<long> State::stored_levels() const {
  std::vector<long> out;
  for (const auto& [n, _] : levels_) out.push_back(n);
  return out;
}

StateReport validate_state(const DiagramWindow& w, const State& st) {
  StateReport rep;
  bool zero = false;
  for (long n = w.lo(); n <= w.hi(); ++n) {
    size_t d = w.level(n).vertices.size();
    if (!st.has(n) || st.nu_r(n).size() != d || st.nu_s(n).size() != d)
      fail(ErrorKind::Domain, "state dimension mismatch at level " + std::to_string(n));
    Q inv = 0;
    for (size_t v = 0; v < d; ++v) {
      if (st.nu_r(n)[v] < 0 || st.nu_s(n)[v] < 0)
        rep.violations.push_back("negative value at level " + std::to_string(n) + " vertex " + w.level(n).vertices[v]);
      zero = zero || st.nu_r(n)[v] == 0 || st.nu_s(n)[v] == 0;
      inv += st.nu_r(n)[v] * st.nu_s(n)[v];
    }
    if (!rep.invariant) rep.invariant = inv;
    else if (*rep.invariant != inv)
      rep.violations.push_back("level invariant changes at level " + std::to_string(n) + ": " + to_string(inv) +
                               " != " + to_string(*rep.invariant));
  }
  for (long n = w.lo() + 1; n <= w.hi(); ++n) {
    const auto& es = w.edges(n);
    QVec r_sum(w.level(n).vertices.size(), Q(0)), s_sum(w.level(n - 1).vertices.size(), Q(0));
    for (const auto& e : es) {
      r_sum[e.range] += st.nu_r(n - 1)[e.source];
      s_sum[e.source] += st.nu_s(n)[e.range];
    }
    for (size_t v = 0; v < r_sum.size(); ++v)
      if (r_sum[v] != st.nu_r(n)[v])
        rep.violations.push_back("nu_r equation fails at level " + std::to_string(n) + " vertex " +
                                 w.level(n).vertices[v]);
    for (size_t v = 0; v < s_sum.size(); ++v)
      if (s_sum[v] != st.nu_s(n - 1)[v])
        rep.violations.push_back("nu_s equation fails at level " + std::to_string(n - 1) + " vertex " +
                                 w.level(n - 1).vertices[v]);
  }
  if (zero) rep.warnings.push_back("not faithful (some vertex has weight 0)");
  return rep;
}

Q cylinder_measure(const DiagramWindow& w, const State& st, const FinitePath& p, CylinderSides sides) {
  Q r = st.nu_r(p.start)[path_source(w, p)];
  Q s = st.nu_s(p.end())[path_range(w, p)];
  switch (sides) {
    case CylinderSides::Both: return r * s;
    case CylinderSides::Plus: return s;
    case CylinderSides::Minus: return r;
  }
  return 0;
}

namespace {

int vertex_at(const DiagramWindow& w, const PathDescriptor& x, long J) {
  if (w.has_edges(J + 1)) return w.edge(J + 1, edge_at(w, x, J + 1)).source;
  return w.edge(J, edge_at(w, x, J)).range;
}

// sum over e <_s x_j (same source) of nu_s(r(e)), edge at level j
Q s_below(const DiagramWindow& w, const State& st, long j, int e) {
  Q c = 0;
  for (int f : w.s_fiber(j, w.edge(j, e).source)) {
    if (f == e) break;
    c += st.nu_s(j)[w.edge(j, f).range];
  }
  return c;
}

Q r_below(const DiagramWindow& w, const State& st, long j, int e) {
  Q c = 0;
  for (int f : w.r_fiber(j, w.edge(j, e).range)) {
    if (f == e) break;
    c += st.nu_r(j - 1)[w.edge(j, f).source];
  }
  return c;
}

// Sum of a periodic contribution sequence, accepted only when the per-period
// sums form a geometric sequence with ratio in [0, 1) across the window.
Q geometric_tail(const std::vector<Q>& c, size_t period) {
  std::vector<Q> per;
  for (size_t i = 0; i + period <= c.size(); i += period) {
    Q s = 0;
    for (size_t j = i; j < i + period; ++j) s += c[j];
    per.push_back(s);
  }
  if (per.size() < 3) fail(ErrorKind::InsufficientDepth, "too few tail periods in the window");
  if (std::all_of(per.begin(), per.end(), [](const Q& q) { return q == 0; })) return 0;
  if (per[0] == 0) fail(ErrorKind::Domain, "unsupported tail: series is not geometric");
  Q ratio = per[1] / per[0];
  for (size_t i = 1; i < per.size(); ++i)
    if (per[i] != per[i - 1] * ratio) fail(ErrorKind::Domain, "unsupported tail: series is not geometric");
  if (ratio < 0 || ratio >= 1) fail(ErrorKind::Domain, "unsupported tail: ratio outside [0, 1)");
  return per[0] / (1 - ratio);
}

size_t tail_period(const TailSpec& t) { return t.kind == TailKind::Periodic ? t.cycle.size() : 1; }

}  // namespace

Q phi_plus(const DiagramWindow& w, const State& st, const PathDescriptor& x, long k) {
  long J = std::max(k, x.core.end());
  Q total = 0;
  if (J > k) {
    auto es = realize(w, x, k + 1, J);
    for (long j = k + 1; j <= J; ++j) total += s_below(w, st, j, es[static_cast<size_t>(j - k - 1)]);
  }
  switch (x.right.kind) {
    case TailKind::SMin: return total;
    case TailKind::SMax: return total + st.nu_s(J)[vertex_at(w, x, J)];
    case TailKind::Horizontal:
    case TailKind::Periodic: {
      std::vector<Q> c;
      auto es = realize(w, x, J + 1, w.hi());
      for (long j = J + 1; j <= w.hi(); ++j) c.push_back(s_below(w, st, j, es[static_cast<size_t>(j - J - 1)]));
      return total + geometric_tail(c, tail_period(x.right));
    }
    default: fail(ErrorKind::Domain, "right tail kind " + to_string(x.right.kind));
  }
}

Q phi_minus(const DiagramWindow& w, const State& st, const PathDescriptor& x, long k) {
  long J = std::min(k, x.core.start);
  Q total = 0;
  if (J < k) {
    auto es = realize(w, x, J + 1, k);
    for (long j = J + 1; j <= k; ++j) total += r_below(w, st, j, es[static_cast<size_t>(j - J - 1)]);
  }
  switch (x.left.kind) {
    case TailKind::RMin: return total;
    case TailKind::RMax: return total + st.nu_r(J)[vertex_at(w, x, J)];
    case TailKind::Horizontal:
    case TailKind::Periodic: {
      std::vector<Q> c;
      auto es = realize(w, x, w.lo() + 1, J);
      for (long j = J; j > w.lo(); --j) c.push_back(r_below(w, st, j, es[static_cast<size_t>(j - w.lo() - 1)]));
      return total + geometric_tail(c, tail_period(x.left));
    }
    default: fail(ErrorKind::Domain, "left tail kind " + to_string(x.left.kind));
  }
}

Q phi_tail(const DiagramWindow& w, const State& st, const PathDescriptor& x, const PathDescriptor& y) {
  long a = w.lo() + 1, b = w.hi();
  auto rx = realize(w, x, a, b), ry = realize(w, y, a, b);
  long N = a - 1;
  for (long k = b; k >= a; --k)
    if (rx[static_cast<size_t>(k - a)] != ry[static_cast<size_t>(k - a)]) {
      N = k;
      break;
    }
  if (N < a) return 0;
  if (N == b) fail(ErrorKind::Domain, "paths are not tail equivalent within the window");
  int ex = rx[static_cast<size_t>(N - a)], ey = ry[static_cast<size_t>(N - a)];
  auto oriented = [&](const PathDescriptor& lo_path, int lo_edge, const PathDescriptor& hi_path, int hi_edge) -> Q {
    Q above = st.nu_r(N - 1)[w.edge(N, lo_edge).source] - phi_minus(w, st, lo_path, N - 1);
    Q below = phi_minus(w, st, hi_path, N - 1);
    Q between = 0;
    bool inside = false;
    for (int f : w.r_fiber(N, w.edge(N, lo_edge).range)) {
      if (f == hi_edge) break;
      if (inside) between += st.nu_r(N - 1)[w.edge(N, f).source];
      if (f == lo_edge) inside = true;
    }
    return above + below + between;
  };
  if (w.edge(N, ex).r_rank < w.edge(N, ey).r_rank) return oriented(x, ex, y, ey);
  return -oriented(y, ey, x, ex);
}

namespace {

// Descriptor whose realization agrees with x up to level m and continues with p.
PathDescriptor left_join(const DiagramWindow& w, const PathDescriptor& x, const FinitePath& p) {
  long m = p.start;
  PathDescriptor out;
  out.left = x.left;
  out.right = TailSpec{TailKind::SMin, {}, {}};
  if (m <= x.core.start) {
    if (vertex_at(w, x, m) != path_source(w, p)) fail(ErrorKind::Domain, "left part does not reach s(p)");
    out.core = p;
    return out;
  }
  out.core = truncate(w, x, x.core.start, m);
  if (w.edge(m, out.core.edges.back()).range != path_source(w, p)) fail(ErrorKind::Domain, "left part does not reach s(p)");
  out.core.edges.insert(out.core.edges.end(), p.edges.begin(), p.edges.end());
  return out;
}

PathDescriptor right_join(const DiagramWindow& w, const FinitePath& p, const PathDescriptor& y) {
  long n = p.end();
  PathDescriptor out;
  out.left = TailSpec{TailKind::RMin, {}, {}};
  out.right = y.right;
  out.core = p;
  if (n >= y.core.end()) {
    if (vertex_at(w, y, n) != path_range(w, p)) fail(ErrorKind::Domain, "right part does not leave r(p)");
    return out;
  }
  auto rest = realize(w, y, n + 1, y.core.end());
  if (w.edge(n + 1, rest.front()).source != path_range(w, p)) fail(ErrorKind::Domain, "right part does not leave r(p)");
  out.core.edges.insert(out.core.edges.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

ShiftCheck phi_shift_check(const DiagramWindow& w, const State& st, const FinitePath& p, const PathDescriptor& x,
                           const PathDescriptor& y) {
  ShiftCheck c;
  long m = p.start, n = p.end();
  c.lhs_r = phi_minus(w, st, left_join(w, x, p), n);
  c.rhs_r = phi_minus(w, st, x, m);
  for (const auto& q : finite_paths(w, m, n, std::nullopt, path_range(w, p)))
    if (compare_paths(w, q, p, Order::R) == Cmp::LT) c.rhs_r += st.nu_r(m)[path_source(w, q)];
  c.lhs_s = phi_plus(w, st, right_join(w, p, y), m);
  c.rhs_s = phi_plus(w, st, y, n);
  for (const auto& q : finite_paths(w, m, n, path_source(w, p)))
    if (compare_paths(w, q, p, Order::S) == Cmp::LT) c.rhs_s += st.nu_s(n)[path_range(w, q)];
  return c;
}

void check_chart(const DiagramWindow& w, const ChartDatum& c) {
  auto need = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::Domain, std::string("chart datum: ") + what);
  };
  const auto& p = c.paths;
  switch (c.family) {
    case ChartFamily::SPair:
      need(p.size() == 2, "pair needs two paths");
      need(successor(w, p[0], Order::S, Step::Succ) == p[1], "p2 is not the s-successor of p1");
      break;
    case ChartFamily::RPair:
      need(p.size() == 2, "pair needs two paths");
      need(successor(w, p[0], Order::R, Step::Succ) == p[1], "p2 is not the r-successor of p1");
      break;
    case ChartFamily::Quad:
      need(p.size() == 4, "quad needs four paths");
      need(successor(w, p[0], Order::S, Step::Succ) == p[1], "p12 is not the s-successor of p11");
      need(successor(w, p[0], Order::R, Step::Succ) == p[2], "p21 is not the r-successor of p11");
      need(successor(w, p[2], Order::S, Step::Succ) == p[3], "p22 is not the s-successor of p21");
      need(successor(w, p[1], Order::R, Step::Succ) == p[3], "p22 is not the r-successor of p12");
      break;
  }
}

std::vector<ChartDatum> all_quads(const DiagramWindow& w, long m, long n) {
  std::vector<ChartDatum> out;
  for (const auto& p11 : finite_paths(w, m, n)) {
    auto p12 = successor(w, p11, Order::S, Step::Succ);
    auto p21 = successor(w, p11, Order::R, Step::Succ);
    if (!p12 || !p21) continue;
    auto p22 = successor(w, *p21, Order::S, Step::Succ);
    auto p22b = successor(w, *p12, Order::R, Step::Succ);
    if (!p22 || !p22b || !(*p22 == *p22b)) continue;
    out.push_back(ChartDatum{ChartFamily::Quad, {p11, *p12, *p21, *p22}});
  }
  return out;
}

namespace {

// Whether x_{(n, inf)} is the s-max (max = true) or s-min path.
bool right_is(const DiagramWindow& w, const PathDescriptor& x, long n, bool max) {
  long top = x.core.end();
  if (top > n) {
    auto es = realize(w, x, n + 1, top);
    for (long k = n + 1; k <= top; ++k)
      if (max ? !w.is_max(k, es[static_cast<size_t>(k - n - 1)], Order::S)
              : !w.is_min(k, es[static_cast<size_t>(k - n - 1)], Order::S))
        return false;
  }
  TailClass c = tail_class(w, x, Order::S);
  return max ? c == TailClass::Max : c == TailClass::Min;
}

bool left_is(const DiagramWindow& w, const PathDescriptor& x, long m, bool max) {
  long bottom = x.core.start + 1;
  if (bottom <= m) {
    auto es = realize(w, x, bottom, m);
    for (long k = bottom; k <= m; ++k)
      if (max ? !w.is_max(k, es[static_cast<size_t>(k - bottom)], Order::R)
              : !w.is_min(k, es[static_cast<size_t>(k - bottom)], Order::R))
        return false;
  }
  TailClass c = tail_class(w, x, Order::R);
  return max ? c == TailClass::Max : c == TailClass::Min;
}

}  // namespace

std::optional<int> chart_piece(const DiagramWindow& w, const ChartDatum& c, const PathDescriptor& x) {
  long m = c.paths.front().start, n = c.paths.front().end();
  FinitePath seg = truncate(w, x, m, n);
  for (size_t i = 0; i < c.paths.size(); ++i) {
    if (!(seg == c.paths[i])) continue;
    int piece = static_cast<int>(i);
    bool ok = true;
    switch (c.family) {
      case ChartFamily::SPair: ok = !right_is(w, x, n, piece == 1); break;
      case ChartFamily::RPair: ok = !left_is(w, x, m, piece == 1); break;
      case ChartFamily::Quad: {
        bool row2 = piece >= 2, col2 = piece % 2 == 1;
        ok = !left_is(w, x, m, row2) && !right_is(w, x, n, col2);
        break;
      }
    }
    if (ok) return piece;
  }
  return std::nullopt;
}

std::pair<Q, Q> psi_chart(const DiagramWindow& w, const State& st, const ChartDatum& c, const PathDescriptor& x) {
  auto piece = chart_piece(w, c, x);
  if (!piece) fail(ErrorKind::Domain, "path outside the chart domain");
  const FinitePath& p1 = c.paths.front();
  long m = p1.start, n = p1.end();
  switch (c.family) {
    case ChartFamily::SPair: {
      Q v = phi_plus(w, st, x, n);
      if (*piece == 0) v -= st.nu_s(n)[path_range(w, p1)];
      return {v, Q(0)};
    }
    case ChartFamily::RPair: {
      Q v = phi_minus(w, st, x, m);
      if (*piece == 0) v -= st.nu_r(m)[path_source(w, p1)];
      return {v, Q(0)};
    }
    case ChartFamily::Quad: {
      Q a = phi_minus(w, st, x, m), b = phi_plus(w, st, x, n);
      if (*piece < 2) a -= st.nu_r(m)[path_source(w, p1)];
      if (*piece % 2 == 0) b -= st.nu_s(n)[path_range(w, p1)];
      return {a, b};
    }
  }
  return {};
}

Q psi_s_alternate(const DiagramWindow& w, const State& st, const ChartDatum& c, const PathDescriptor& x) {
  if (c.family != ChartFamily::SPair) fail(ErrorKind::Domain, "alternate form is defined for S-pairs");
  if (!chart_piece(w, c, x)) fail(ErrorKind::Domain, "path outside the chart domain");
  const FinitePath& p1 = c.paths.front();
  Q v = phi_plus(w, st, x, p1.start);
  for (const auto& q : finite_paths(w, p1.start, p1.end(), path_source(w, p1))) {
    Cmp cmp = compare_paths(w, q, p1, Order::S);
    if (cmp == Cmp::LT || cmp == Cmp::EQ) v -= st.nu_s(p1.end())[path_range(w, q)];
  }
  return v;
}

std::optional<PathDescriptor> sample_in_piece(const DiagramWindow& w, const ChartDatum& c, int piece, int extra,
                                              std::mt19937_64& rng) {
  const FinitePath& P = c.paths.at(static_cast<size_t>(piece));
  for (int attempt = 0; attempt < 32; ++attempt) {
    long a = std::uniform_int_distribution<long>(0, extra)(rng);
    long b = std::uniform_int_distribution<long>(0, extra)(rng);
    a = std::min(a, P.start - w.lo() - 1);
    b = std::min(b, w.hi() - P.end() - 1);
    if (a < 0 || b < 0) return std::nullopt;
    std::vector<int> left;
    int v = path_source(w, P);
    for (long k = P.start; k > P.start - a; --k) {
      const auto& f = w.r_fiber(k, v);
      int e = f[std::uniform_int_distribution<size_t>(0, f.size() - 1)(rng)];
      left.push_back(e);
      v = w.edge(k, e).source;
    }
    FinitePath core{P.start - a, std::vector<int>(left.rbegin(), left.rend())};
    core.edges.insert(core.edges.end(), P.edges.begin(), P.edges.end());
    v = path_range(w, P);
    for (long k = P.end() + 1; k <= P.end() + b; ++k) {
      const auto& f = w.s_fiber(k, v);
      int e = f[std::uniform_int_distribution<size_t>(0, f.size() - 1)(rng)];
      core.edges.push_back(e);
      v = w.edge(k, e).range;
    }
    bool lmax = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    bool rmax = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    PathDescriptor x = make_path(lmax ? TailKind::RMax : TailKind::RMin, core, rmax ? TailKind::SMax : TailKind::SMin);
    auto got = chart_piece(w, c, x);
    if (got && *got == piece) return x;
  }
  return std::nullopt;
}

namespace {

bool restricts_to(const DiagramWindow& w, const FinitePath& big, const FinitePath& small) {
  if (small.start < big.start || small.end() > big.end()) return false;
  (void)w;
  for (size_t i = 0; i < small.edges.size(); ++i)
    if (big.edges[static_cast<size_t>(small.start - big.start) + i] != small.edges[i]) return false;
  return true;
}

FinitePath restrict(const FinitePath& big, long a, long b) {
  FinitePath out{a, {}};
  for (long k = a + 1; k <= b; ++k) out.edges.push_back(big.edges[static_cast<size_t>(k - big.start - 1)]);
  return out;
}

}  // namespace

TransitionResult chart_transition(const DiagramWindow& w, const State& st, const ChartDatum& p, const ChartDatum& q,
                                  int samples, unsigned long seed) {
  check_chart(w, p);
  check_chart(w, q);
  TransitionResult res;
  const FinitePath& p1 = p.paths.front();
  const FinitePath& q1 = q.paths.front();
  if (p1.start < q1.start || p1.end() > q1.end()) fail(ErrorKind::Domain, "p must be nested inside q");
  if (p.family == ChartFamily::RPair && q.family == ChartFamily::RPair &&
      classify_r_pair(w, st, p, q).index == 0)
    res.note = "hypothesis unmet";
  std::vector<int> pieces;
  for (size_t j = 0; j < q.paths.size(); ++j)
    for (const auto& pp : p.paths)
      if (restricts_to(w, q.paths[j], pp)) pieces.push_back(static_cast<int>(j));
  if (pieces.empty()) {
    if (res.note.empty()) res.note = "empty overlap";
    return res;
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    int piece = pieces[std::uniform_int_distribution<size_t>(0, pieces.size() - 1)(rng)];
    auto x = sample_in_piece(w, q, piece, 3, rng);
    if (!x || !chart_piece(w, p, *x)) continue;
    auto a = psi_chart(w, st, q, *x), b = psi_chart(w, st, p, *x);
    std::pair<Q, Q> d{a.first - b.first, a.second - b.second};
    ++res.samples;
    if (!res.constant) res.constant = d;
    else if (*res.constant != d && !res.violation)
      res.violation = describe(w, *x) + " gives (" + to_string(d.first) + ", " + to_string(d.second) + ")";
  }
  if (res.violation) res.constant.reset();
  if (res.samples == 0 && res.note.empty()) res.note = "empty overlap";
  return res;
}

PairCase classify_r_pair(const DiagramWindow& w, const State& st, const ChartDatum& p, const ChartDatum& q) {
  if (p.family != ChartFamily::RPair || q.family != ChartFamily::RPair)
    fail(ErrorKind::Domain, "classification is defined for R-pairs");
  const FinitePath &P1 = p.paths[0], &P2 = p.paths[1], &Q1 = q.paths[0], &Q2 = q.paths[1];
  long mp = P1.start, np = P1.end(), mq = Q1.start, nq = Q1.end();
  if (finite_paths(w, mp, np, std::nullopt, path_range(w, P1)).size() < 3) return {0, std::nullopt};
  FinitePath q1r = restrict(Q1, mp, np), q2r = restrict(Q2, mp, np);
  bool agree_right = restrict(Q1, np, nq) == restrict(Q2, np, nq) || np == nq;
  bool agree_mid = restrict(Q1, mp, nq) == restrict(Q2, mp, nq);
  Q nu_p1 = st.nu_r(mp)[path_source(w, P1)];
  Q nu_p2 = st.nu_r(mp)[path_source(w, P2)];
  if (q1r == P1 && q2r == P2 && agree_right) return {1, Q(0)};
  auto sum_side = [&](const FinitePath& Qi, bool above) {
    Q s = 0;
    if (mq == mp) return s;
    FinitePath low = restrict(Qi, mq, mp);
    for (const auto& r : finite_paths(w, mq, mp, std::nullopt, path_range(w, low))) {
      Cmp c = compare_paths(w, r, low, Order::R);
      if (above ? c == Cmp::GT : c == Cmp::LT) s += st.nu_r(mq)[path_source(w, r)];
    }
    return s;
  };
  if (agree_mid && q1r == P1) return {2, sum_side(Q1, true)};
  if (agree_mid && q1r == P2) return {3, -sum_side(Q2, false)};
  if (q2r == P1 && !(q1r == P1) && !(q1r == P2)) return {4, nu_p1};
  if (q1r == P2 && !(q2r == P1) && !(q2r == P2)) return {5, -nu_p2};
  return {-1, std::nullopt};
}

}  // namespace bsurf
