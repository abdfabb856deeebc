#include "bsurf/surface.hpp"

#include <algorithm>

#include "bsurf/error.hpp"

namespace bsurf {

TripleChain::TripleChain(TripleData t0) { cache_.emplace(0, std::move(t0)); }

const TripleData& TripleChain::at(long k) {
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  if (k > 0) {
    const TripleData& prev = at(k - 1);
    try {
      return cache_.emplace(k, rh_step(prev).after).first->second;
    } catch (const Error& e) {
      fail(ErrorKind::Hypothesis, "RH step " + std::to_string(k) + ": " + e.what());
    }
  }
  const TripleData& next = at(k + 1);
  try {
    return cache_.emplace(k, rv_step(next).after).first->second;
  } catch (const Error& e) {
    fail(ErrorKind::Hypothesis, "RV step " + std::to_string(k) + ": " + e.what());
  }
}

std::pair<std::vector<Edge>, LevelRecord> surface_level(TripleChain& chain, long k) {
  const TripleData& prev = chain.at(k - 1);
  const TripleData& cur = chain.at(k);
  LevelRecord rec;
  rec.level = k;
  rec.rule = k > 0 ? "RH" : "RV";
  rec.type = tau_type(prev.tau);
  rec.source = beta(prev.perm, rec.type);
  rec.range = alpha(prev.perm, 1 - rec.type);
  rec.matrix = psi_matrix(prev.perm, rec.type);
  try {
    auto back = rv_step(cur);
    rec.consistent = back.matrix.transpose() == rec.matrix && back.after == prev && rh_step(prev).after == cur;
  } catch (const Error&) {
    rec.consistent = false;
  }
  std::vector<Edge> es;
  const auto& names = prev.perm.alphabet;
  for (size_t a = 0; a < names.size(); ++a) {
    int s_rank = 0;
    if (static_cast<int>(a) == rec.source) s_rank = rec.type == 0 ? 1 : 0;
    es.push_back(Edge{names[a], static_cast<int>(a), static_cast<int>(a), 0, s_rank});
  }
  es.push_back(Edge{"*", rec.source, rec.range, 1, rec.type == 0 ? 0 : 1});
  return {es, rec};
}

SurfaceDiagram build(const TripleData& t, long m, long n) {
  if (m > n) fail(ErrorKind::Usage, "window needs m <= n");
  SurfaceDiagram sd;
  sd.chain = std::make_shared<TripleChain>(t);
  auto chain = sd.chain;
  std::vector<std::string> names = t.perm.alphabet;
  sd.window = DiagramWindow(Level{m, names});
  for (long k = m + 1; k <= n; ++k) {
    auto [es, rec] = surface_level(*chain, k);
    sd.window.push_right(Level{k, names}, es);
    sd.triple_log.push_back(std::move(rec));
  }
  sd.window.set_generator([chain, names](Direction dir, const DiagramWindow& w) -> std::optional<Extension> {
    try {
      if (dir == Direction::Right) {
        long k = w.hi() + 1;
        return Extension{Level{k, names}, surface_level(*chain, k).first};
      }
      return Extension{Level{w.lo() - 1, names}, surface_level(*chain, w.lo()).first};
    } catch (const Error&) {
      return std::nullopt;
    }
  });
  sd.state = State([chain](long k) {
    const TripleData& tk = chain->at(k);
    return std::make_pair(tk.lambda, tk.h());
  });
  sd.A0 = t.perm.at(0, 0);
  sd.A1 = t.perm.at(1, 0);
  return sd;
}

std::vector<PathDescriptor> horizontal_paths(const SurfaceDiagram& sd) {
  const auto& w = sd.window;
  if (w.lo() == w.hi()) fail(ErrorKind::InsufficientDepth, "window has no edges");
  std::vector<PathDescriptor> out;
  for (const auto& sym : sd.alphabet()) {
    TailSpec t{TailKind::Horizontal, sym, {}};
    out.push_back(PathDescriptor{t, FinitePath{w.lo(), {w.edge_index(w.lo() + 1, sym)}}, t});
  }
  return out;
}

bool horizontal_r_minimal(const SurfaceDiagram& sd) {
  const auto& w = sd.window;
  for (long k = w.lo() + 1; k <= w.hi(); ++k)
    for (const auto& e : w.edges(k)) {
      bool horizontal = e.source == e.range && e.id != "*";
      if (horizontal && e.r_rank != 0) return false;
      if (!horizontal && (e.r_rank != 1 || w.r_fiber(k, e.range).size() != 2)) return false;
    }
  return true;
}

namespace {

// Levels needed for the s-extreme path from every vertex of V_k to reach
// `target`; -1 when some path does not arrive inside the window.
long propagation_lag(const DiagramWindow& w, long k, int target, bool max) {
  long lag = 0;
  for (size_t v = 0; v < w.level(k).vertices.size(); ++v) {
    int u = static_cast<int>(v);
    long j = k;
    while (u != target) {
      if (j >= w.hi()) return -1;
      ++j;
      u = w.edge(j, w.extreme_out(j, u, max)).range;
    }
    lag = std::max(lag, j - k);
  }
  return lag;
}

std::vector<int> q_step(const DiagramWindow& w, long k, const std::vector<int>& V, bool max) {
  std::vector<int> out;
  for (const auto& e : w.edges(k)) {
    int idx = static_cast<int>(&e - w.edges(k).data());
    bool ext = max ? w.is_max(k, idx, Order::S) : w.is_min(k, idx, Order::S);
    if (ext && std::find(V.begin(), V.end(), e.range) != V.end() &&
        std::find(out.begin(), out.end(), e.source) == out.end())
      out.push_back(e.source);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> prefix(const std::vector<int>& row, size_t i) {
  std::vector<int> p(row.begin(), row.begin() + static_cast<long>(i));
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

SExtremeReport s_extreme_classes(const SurfaceDiagram& sd, long depth) {
  SExtremeReport rep;
  DiagramWindow w = sd.window;
  auto hp = horizontal_paths(sd);
  rep.smin_path = hp[static_cast<size_t>(sd.A0)];
  rep.smax_path = hp[static_cast<size_t>(sd.A1)];
  long lo = -depth, hi = depth;
  w.ensure(lo - 1, hi);
  for (long extra = 32; extra <= 1024; extra *= 2) {
    w.ensure(lo - 1, hi + extra);
    bool all = true;
    for (long k = lo; k <= hi && all; ++k)
      all = propagation_lag(w, k, sd.A0, false) >= 0 && propagation_lag(w, k, sd.A1, true) >= 0;
    if (all) break;
  }
  bool extremes = true, reached = true;
  for (long k = lo + 1; k <= w.hi(); ++k) {
    int h0 = w.edge_index(k, sd.alphabet()[static_cast<size_t>(sd.A0)]);
    int h1 = w.edge_index(k, sd.alphabet()[static_cast<size_t>(sd.A1)]);
    extremes = extremes && w.is_min(k, h0, Order::S) && w.is_max(k, h1, Order::S);
  }
  if (!extremes) rep.notes.push_back("horizontal edge at A0 not s-min or at A1 not s-max somewhere");
  for (long k = lo; k <= hi; ++k) {
    long a = propagation_lag(w, k, sd.A0, false), b = propagation_lag(w, k, sd.A1, true);
    if (a < 0 || b < 0) {
      reached = false;
      rep.notes.push_back("Q-propagation from level " + std::to_string(k) + " does not cover V within the window");
      break;
    }
    rep.max_lag_min = std::max(rep.max_lag_min, a);
    rep.max_lag_max = std::max(rep.max_lag_max, b);
  }
  for (long k = 1; k <= depth; ++k) {
    rep.fiber_hits_min += w.r_fiber(k, sd.A0).size() > 1;
    rep.fiber_hits_max += w.r_fiber(k, sd.A1).size() > 1;
  }
  for (long k = lo + 1; k <= hi; ++k) {
    const TripleData& cur = sd.chain->at(k);
    const TripleData& prev = sd.chain->at(k - 1);
    int type = tau_type(prev.tau);
    for (int eps = 0; eps < 2; ++eps) {
      bool max = eps == 1;
      auto row_now = cur.perm.row(eps), row_before = prev.perm.row(eps);
      int grow_sym = alpha(cur.perm, 1 - eps);
      for (size_t i = 1; i < cur.perm.d(); ++i) {
        auto V = prefix(row_now, i);
        auto got = q_step(w, k, V, max);
        bool must_grow = type == eps && std::find(V.begin(), V.end(), grow_sym) != V.end();
        bool ok = got == prefix(row_before, i + 1) || (!must_grow && got == prefix(row_before, i));
        if (!ok && rep.q_lemma) {
          rep.q_lemma = false;
          rep.notes.push_back("Q does not map the row-" + std::to_string(eps) + " prefix of length " +
                              std::to_string(i) + " to a prefix at level " + std::to_string(k));
        }
      }
    }
  }
  if (!extremes) rep.verdict = Verdict::Violated;
  else if (reached) rep.verdict = Verdict::Certified;
  if (rep.verdict == Verdict::Certified) rep.I = rep.J = 1;
  return rep;
}

FlatnessReport yz_order_check(const DiagramWindow& win, long depth) {
  FlatnessReport rep;
  DiagramWindow w = win;
  w.ensure(-depth - 1, depth + 64);  // grown below when ranges meet later
  auto split_fiber = [&](long n) -> std::pair<int, int> {
    for (size_t v = 0; v < w.level(n - 1).vertices.size(); ++v) {
      const auto& f = w.s_fiber(n, static_cast<int>(v));
      if (f.size() == 2) return {f[0], f[1]};
    }
    fail(ErrorKind::Domain, "level " + std::to_string(n) + " has no two-edge s-fiber");
  };
  auto compare = [&](long n, bool max) {
    auto [y0, z0] = split_fiber(n);
    auto [y1, z1] = split_fiber(n + 1);
    int e = max ? y0 : z0;    // x_n
    int f = max ? y1 : z1;    // x'_{n+1}
    int u = w.edge(n, e).range;
    int up = w.edge(n + 1, f).range;
    long i = n + 1;
    int ei = w.extreme_out(i, u, max);  // x_{n+1}
    int fi = f;
    std::string name = std::string(max ? "Y" : "Z") + "_" + std::to_string(n);
    while (true) {
      if (w.edge(i, ei).range == w.edge(i, fi).range) break;
      if (i >= w.hi() && (!w.has_generator() || w.hi() - depth >= 1024 || !w.ensure(w.lo(), 2 * w.hi()))) {
        ++rep.yz_inconclusive;
        rep.failures.push_back(name + ": ranges do not meet inside the window");
        return;
      }
      u = w.edge(i, ei).range;
      up = w.edge(i, fi).range;
      ++i;
      ei = w.extreme_out(i, u, max);
      fi = w.extreme_out(i, up, max);
    }
    ++rep.yz_checked;
    if (ei == fi || w.edge(i, ei).r_rank >= w.edge(i, fi).r_rank) {
      ++rep.yz_failures;
      rep.failures.push_back(name + " is not below " + (max ? "Y_" : "Z_") + std::to_string(n + 1) + " at level " +
                             std::to_string(i));
    }
  };
  for (long n = -depth; n < depth; ++n) {
    compare(n, true);
    compare(n, false);
  }
  return rep;
}

FlatnessReport verify_flatness(const SurfaceDiagram& sd, long depth) {
  FlatnessReport rep = yz_order_check(sd.window, depth);
  rep.sigma = sigma_scan(sd.window, depth);
  return rep;
}

CertificateReport verify_standard(const SurfaceDiagram& sd, long depth) {
  CertificateReport rep = standing_hypotheses_check(sd.window, depth);
  auto ext = s_extreme_classes(sd, depth);
  bool rmin = horizontal_r_minimal(sd);
  rep.items.push_back({"s-extreme classes are r-min", !rmin ? Verdict::Violated : ext.verdict,
                       "eventually s-min paths end on the horizontal path at " +
                           sd.alphabet()[static_cast<size_t>(sd.A0)] + ", eventually s-max paths at " +
                           sd.alphabet()[static_cast<size_t>(sd.A1)]});
  DiagramWindow w = sd.window;
  w.ensure(-depth - 1, depth + 256);
  Verdict v = Verdict::Certified;
  std::string detail = "a two-edge r-fiber at A0 and at A1 follows every level in [-depth, depth]";
  for (long n0 = -depth; n0 <= depth && v == Verdict::Certified; ++n0)
    for (int target : {sd.A0, sd.A1}) {
      bool found = false;
      for (long n = std::max(n0, w.lo() + 1); !found; ++n) {
        if (n > w.hi() && (w.hi() - depth >= 4096 || !w.ensure(w.lo(), 2 * w.hi()))) break;
        found = w.r_fiber(n, target).size() > 1;
      }
      if (!found) {
        v = Verdict::Inconclusive;
        detail = "no two-edge r-fiber at " + sd.alphabet()[static_cast<size_t>(target)] + " after level " +
                 std::to_string(n0) + " inside the window";
        break;
      }
    }
  rep.items.push_back({"T+(x_i) avoids r-max paths", v, detail});
  return rep;
}

DiagramWindow shifted(const DiagramWindow& w, long by) {
  DiagramWindow out(Level{w.lo() + by, w.level(w.lo()).vertices});
  for (long n = w.lo() + 1; n <= w.hi(); ++n) out.push_right(Level{n + by, w.level(n).vertices}, w.edges(n));
  return out;
}

}  // namespace bsurf
