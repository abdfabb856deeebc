#include "bsurf/induction.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "bsurf/error.hpp"

namespace bsurf {

std::string to_string(InductionDir d) { return d == InductionDir::RV ? "RV" : "RH"; }

int lambda_type(const PermutationPair& p, const QVec& lambda) {
  const Q& a0 = lambda[static_cast<size_t>(alpha(p, 0))];
  const Q& a1 = lambda[static_cast<size_t>(alpha(p, 1))];
  if (a0 == a1) fail(ErrorKind::Hypothesis, "Keane hypothesis violated: lambda_alpha(0) = lambda_alpha(1)");
  return a0 > a1 ? 0 : 1;
}

int tau_type(const QVec& tau) {
  Q s = sum(tau);
  if (s == 0) fail(ErrorKind::Hypothesis, "RH hypothesis violated: sum of tau is 0");
  return s > 0 ? 0 : 1;
}

namespace {

PermutationPair from_rows(const PermutationPair& like, const std::vector<int>& top, const std::vector<int>& bottom) {
  PermutationPair p = like;
  for (size_t i = 0; i < top.size(); ++i) {
    p.pi0[static_cast<size_t>(top[i])] = static_cast<int>(i);
    p.pi1[static_cast<size_t>(bottom[i])] = static_cast<int>(i);
  }
  return p;
}

// Moves the last entry of row to the slot right after `after`.
void move_last_after(std::vector<int>& row, int after) {
  int last = row.back();
  row.pop_back();
  auto it = std::find(row.begin(), row.end(), after);
  row.insert(it + 1, last);
}

void move_to_end(std::vector<int>& row, int sym) {
  row.erase(std::find(row.begin(), row.end(), sym));
  row.push_back(sym);
}

IntMatrix elementary(size_t d, int row, int col) {
  IntMatrix m = IntMatrix::identity(d);
  m(static_cast<size_t>(row), static_cast<size_t>(col)) = 1;
  return m;
}

}  // namespace

PermutationPair rv_permutation(const PermutationPair& p, int type) {
  auto top = p.row(0), bottom = p.row(1);
  if (type == 0) move_last_after(bottom, alpha(p, 0));
  else move_last_after(top, alpha(p, 1));
  return from_rows(p, top, bottom);
}

PermutationPair rh_permutation(const PermutationPair& p, int type) {
  auto top = p.row(0), bottom = p.row(1);
  if (type == 0) move_to_end(top, beta(p, 0));
  else move_to_end(bottom, beta(p, 1));
  return from_rows(p, top, bottom);
}

IntMatrix theta_matrix(const PermutationPair& p, int type) {
  return type == 0 ? elementary(p.d(), alpha(p, 1), alpha(p, 0)) : elementary(p.d(), alpha(p, 0), alpha(p, 1));
}

IntMatrix psi_matrix(const PermutationPair& p, int type) {
  return type == 0 ? elementary(p.d(), alpha(p, 1), beta(p, 0)) : elementary(p.d(), alpha(p, 0), beta(p, 1));
}

InductionStep rv_step(const TripleData& t) {
  InductionStep s;
  s.direction = InductionDir::RV;
  s.type = lambda_type(t.perm, t.lambda);
  s.winner = alpha(t.perm, s.type);
  s.loser = alpha(t.perm, 1 - s.type);
  s.matrix = theta_matrix(t.perm, s.type);
  s.before = t;
  s.after = t;
  s.after.perm = rv_permutation(t.perm, s.type);
  auto w = static_cast<size_t>(s.winner), l = static_cast<size_t>(s.loser);
  s.after.lambda[w] -= t.lambda[l];
  s.after.tau[w] -= t.tau[l];
  return s;
}

InductionStep rh_step(const TripleData& t) {
  InductionStep s;
  s.direction = InductionDir::RH;
  s.type = tau_type(t.tau);
  s.winner = alpha(t.perm, 1 - s.type);
  s.loser = beta(t.perm, s.type);
  s.matrix = psi_matrix(t.perm, s.type);
  s.before = t;
  s.after = t;
  s.after.perm = rh_permutation(t.perm, s.type);
  RatMatrix psi = to_rational(s.matrix);
  s.after.lambda = psi.apply(t.lambda);
  s.after.tau = psi.apply(t.tau);
  return s;
}

RenormStep renorm_step(const TripleData& t, Side side) {
  RenormStep r;
  TripleData scaled = t;
  if (side == Side::Plus) {
    QVec h = t.h();
    int eps = tau_type(t.tau);
    r.scale = 1 - h[static_cast<size_t>(alpha(t.perm, 1 - eps))] / sum(h);
    for (auto& x : scaled.lambda) x *= r.scale;
    for (auto& x : scaled.tau) x /= r.scale;
    r.step = rh_step(scaled);
  } else {
    int eps = lambda_type(t.perm, t.lambda);
    r.scale = 1 - t.lambda[static_cast<size_t>(alpha(t.perm, 1 - eps))] / sum(t.lambda);
    for (auto& x : scaled.lambda) x /= r.scale;
    for (auto& x : scaled.tau) x *= r.scale;
    r.step = rv_step(scaled);
  }
  return r;
}

std::pair<PermutationPair, QVec> renorm_plus_h(const PermutationPair& p, const QVec& h, int type) {
  Q scale = 1 - h[static_cast<size_t>(alpha(p, 1 - type))] / sum(h);
  QVec out = h;
  for (auto& x : out) x /= scale;
  out[static_cast<size_t>(beta(p, type))] -= out[static_cast<size_t>(alpha(p, 1 - type))];
  return {rh_permutation(p, type), out};
}

RauzyGraph rauzy_graph(const PermutationPair& p) {
  if (!irreducible(p)) fail(ErrorKind::Domain, "permutation is reducible");
  RauzyGraph g;
  std::map<std::vector<int>, size_t> seen;
  g.nodes.push_back(p);
  seen[p.monodromy()] = 0;
  for (size_t i = 0; i < g.nodes.size(); ++i)
    for (int type = 0; type < 2; ++type) {
      PermutationPair q = rv_permutation(g.nodes[i], type);
      auto [it, fresh] = seen.emplace(q.monodromy(), g.nodes.size());
      if (fresh) g.nodes.push_back(q);
      g.edges.push_back({i, it->second, type});
    }
  return g;
}

std::string rauzy_to_dot(const RauzyGraph& g) {
  std::string out = "digraph rauzy {\n";
  for (size_t i = 0; i < g.nodes.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + g.nodes[i].to_string() + "\"];\n";
  for (const auto& e : g.edges)
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"" + std::to_string(e.type) +
           "\"];\n";
  out += "}\n";
  return out;
}

namespace {

struct Dual {
  Q v, d;
};
Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
Dual operator/(const Dual& a, const Dual& b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

std::vector<Dual> preimage_dual(const PermutationPair& p, const std::vector<Dual>& h, int eps) {
  auto ae = static_cast<size_t>(alpha(p, eps)), ao = static_cast<size_t>(alpha(p, 1 - eps));
  Dual denom = Dual{Q(1), Q(0)} + h[ao];
  std::vector<Dual> out(h.size());
  for (size_t a = 0; a < h.size(); ++a) out[a] = (a == ae ? h[a] + h[ao] : h[a]) / denom;
  return out;
}

}  // namespace

std::pair<PermutationPair, QVec> density_preimage(const PermutationPair& p, const QVec& h, int eps) {
  std::vector<Dual> hd;
  for (const auto& x : h) hd.push_back({x, Q(0)});
  QVec out;
  for (const auto& x : preimage_dual(p, hd, eps)) out.push_back(x.v);
  return {rv_permutation(p, 1 - eps), out};
}

Q jacobian_closed_form(const PermutationPair& p, const QVec& h, int eps) {
  Q base = 1 + h[static_cast<size_t>(alpha(p, 1 - eps))];
  Q r = 1;
  for (size_t i = 0; i < p.d(); ++i) r /= base;
  return r;
}

Q jacobian_chart(const PermutationPair& p, const QVec& h, int eps) {
  size_t d = p.d(), last = d - 1;
  RatMatrix J(d - 1, d - 1);
  for (size_t j = 0; j < last; ++j) {
    std::vector<Dual> hd;
    for (size_t a = 0; a < d; ++a) hd.push_back({h[a], Q(a == j ? 1 : a == last ? -1 : 0)});
    auto out = preimage_dual(p, hd, eps);
    for (size_t i = 0; i < last; ++i) J(i, j) = out[i].d;
  }
  return determinant(J);
}

Q jacobian_full(const PermutationPair& p, const QVec& h, int eps) {
  size_t d = p.d();
  RatMatrix J(d, d);
  for (size_t j = 0; j < d; ++j) {
    std::vector<Dual> hd;
    for (size_t a = 0; a < d; ++a) hd.push_back({h[a], Q(a == j ? 1 : 0)});
    auto out = preimage_dual(p, hd, eps);
    for (size_t i = 0; i < d; ++i) J(i, j) = out[i].d;
  }
  return determinant(J);
}

Q density(const QVec& h) {
  Q r = 1;
  for (const auto& x : h) r /= x;
  return r;
}

DensitySample density_at(const PermutationPair& p, const QVec& h, bool with_jacobian) {
  DensitySample s;
  s.h = h;
  Q total = 0;
  s.preimages = true;
  for (int eps = 0; eps < 2; ++eps) {
    auto [pe, he] = density_preimage(p, h, eps);
    total += density(he) * jacobian_closed_form(p, h, eps);
    auto back = renorm_plus_h(pe, he, eps);
    s.preimages = s.preimages && sum(he) == 1 && back.first == p && back.second == h;
  }
  s.identity = total == density(h);
  if (with_jacobian)
    s.jacobian = jacobian_chart(p, h, 0) == jacobian_closed_form(p, h, 0) &&
                 jacobian_chart(p, h, 1) == jacobian_closed_form(p, h, 1);
  return s;
}

DensityReport density_identity_check(const PermutationPair& p, size_t samples, unsigned long seed,
                                     size_t jacobian_samples) {
  DensityReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(1, 1000);
  for (size_t k = 0; k < samples; ++k) {
    QVec h(p.d());
    Q total = 0;
    for (auto& x : h) {
      x = draw(rng);
      total += x;
    }
    for (auto& x : h) x /= total;
    bool jac = k < jacobian_samples;
    auto s = density_at(p, h, jac);
    rep.identity_holds += s.identity;
    rep.preimages_hold += s.preimages;
    rep.jacobian_checked += jac;
    rep.jacobian_matches += jac && s.jacobian;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

bool CompletenessReport::keane_certified() const {
  return !rv_failure && std::all_of(rv_wins.begin(), rv_wins.end(), [](long w) { return w > 0; });
}

bool CompletenessReport::rh_certified() const {
  return !rh_failure && std::all_of(rh_wins.begin(), rh_wins.end(), [](long w) { return w > 0; });
}

CompletenessReport completeness_check(const TripleData& t, long depth) {
  CompletenessReport rep;
  rep.depth = depth;
  rep.rv_wins.assign(t.perm.d(), 0);
  rep.rh_wins.assign(t.perm.d(), 0);
  TripleData cur = t;
  for (long k = 0; k < depth; ++k) {
    try {
      auto s = rv_step(cur);
      ++rep.rv_wins[static_cast<size_t>(s.winner)];
      cur = std::move(s.after);
    } catch (const Error& e) {
      rep.rv_failure = k;
      rep.rv_message = e.what();
      break;
    }
  }
  cur = t;
  for (long k = 0; k < depth; ++k) {
    try {
      auto s = rh_step(cur);
      ++rep.rh_wins[static_cast<size_t>(s.winner)];
      cur = std::move(s.after);
    } catch (const Error& e) {
      rep.rh_failure = k;
      rep.rh_message = e.what();
      break;
    }
  }
  return rep;
}

}  // namespace bsurf
