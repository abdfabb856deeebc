#include "bsurf/iet.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bsurf/error.hpp"

namespace bsurf {

int PermutationPair::at(int eps, int pos) const {
  const auto& r = row_pos(eps);
  for (size_t a = 0; a < r.size(); ++a)
    if (r[a] == pos) return static_cast<int>(a);
  fail(ErrorKind::Domain, "position out of range");
}

std::vector<int> PermutationPair::row(int eps) const {
  std::vector<int> out(d());
  const auto& r = row_pos(eps);
  for (size_t a = 0; a < d(); ++a) out[static_cast<size_t>(r[a])] = static_cast<int>(a);
  return out;
}

int PermutationPair::symbol_index(const std::string& s) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), s);
  return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

std::string PermutationPair::to_string() const {
  std::string out;
  for (int eps = 0; eps < 2; ++eps) {
    if (eps == 1) out += " /";
    for (int a : row(eps)) out += (out.empty() ? "" : " ") + alphabet[static_cast<size_t>(a)];
  }
  return out;
}

std::vector<int> PermutationPair::monodromy() const {
  std::vector<int> m(d());
  auto top = row(0);
  for (size_t i = 0; i < d(); ++i) m[i] = pi1[static_cast<size_t>(top[i])];
  return m;
}

PermutationPair make_permutation(const std::vector<std::string>& top, const std::vector<std::string>& bottom,
                                 bool allow_small) {
  if (top.size() != bottom.size()) fail(ErrorKind::Usage, "permutation rows differ in length");
  std::set<std::string> a(top.begin(), top.end()), b(bottom.begin(), bottom.end());
  if (a.size() != top.size() || a != b) fail(ErrorKind::Usage, "permutation rows must list the same symbols once each");
  if (top.empty()) fail(ErrorKind::Usage, "empty permutation");
  if (top.size() < 4 && !allow_small) fail(ErrorKind::Usage, "alphabet must have at least 4 symbols");
  PermutationPair p;
  p.alphabet.assign(a.begin(), a.end());
  p.pi0.resize(p.d());
  p.pi1.resize(p.d());
  for (size_t i = 0; i < top.size(); ++i) {
    p.pi0[static_cast<size_t>(p.symbol_index(top[i]))] = static_cast<int>(i);
    p.pi1[static_cast<size_t>(p.symbol_index(bottom[i]))] = static_cast<int>(i);
  }
  return p;
}

PermutationPair parse_permutation(const std::string& text, bool allow_small) {
  auto slash = text.find('/');
  if (slash == std::string::npos) fail(ErrorKind::Usage, "permutation must look like \"A B C D / D C B A\"");
  auto words = [](const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
  };
  return make_permutation(words(text.substr(0, slash)), words(text.substr(slash + 1)), allow_small);
}

bool irreducible(const PermutationPair& p) {
  auto m = p.monodromy();
  int mx = -1;
  for (size_t k = 0; k + 1 < p.d(); ++k) {
    mx = std::max(mx, m[k]);
    if (mx == static_cast<int>(k)) return false;
  }
  return true;
}

int alpha(const PermutationPair& p, int eps) { return p.at(eps, static_cast<int>(p.d()) - 1); }

int beta(const PermutationPair& p, int eps) {
  int pos = p.row_pos(eps)[static_cast<size_t>(alpha(p, 1 - eps))];
  if (pos + 1 >= static_cast<int>(p.d()))
    fail(ErrorKind::Domain, "beta(" + std::to_string(eps) + ") undefined: alpha(" + std::to_string(1 - eps) +
                                ") is last in row " + std::to_string(eps));
  return p.at(eps, pos + 1);
}

IntMatrix omega(const PermutationPair& p) {
  size_t d = p.d();
  IntMatrix o(d, d);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      if (p.pi1[a] > p.pi1[b] && p.pi0[a] < p.pi0[b]) o(a, b) = 1;
      else if (p.pi1[a] < p.pi1[b] && p.pi0[a] > p.pi0[b]) o(a, b) = -1;
    }
  return o;
}

bool in_cone(const PermutationPair& p, const QVec& tau) {
  if (tau.size() != p.d()) return false;
  for (int eps = 0; eps < 2; ++eps) {
    Q s = 0;
    auto r = p.row(eps);
    for (size_t k = 0; k + 1 < p.d(); ++k) {
      s += tau[static_cast<size_t>(r[k])];
      if (eps == 0 ? s <= 0 : s >= 0) return false;
    }
  }
  return true;
}

QVec TripleData::h() const {
  QVec out = to_rational(omega(perm)).apply(tau);
  for (auto& x : out) x = -x;
  return out;
}

TripleData make_triple(PermutationPair perm, QVec lambda, QVec tau) {
  if (lambda.size() != perm.d() || tau.size() != perm.d())
    fail(ErrorKind::Usage, "lambda and tau need " + std::to_string(perm.d()) + " entries");
  for (const auto& l : lambda)
    if (l <= 0) fail(ErrorKind::Domain, "lambda must be positive");
  if (!in_cone(perm, tau)) fail(ErrorKind::Domain, "tau is not in the cone T+");
  return TripleData{std::move(perm), std::move(lambda), std::move(tau)};
}

namespace {

QVec left_ends(const PermutationPair& p, const QVec& lambda, int eps) {
  QVec out(p.d());
  Q s = 0;
  for (int a : p.row(eps)) {
    out[static_cast<size_t>(a)] = s;
    s += lambda[static_cast<size_t>(a)];
  }
  return out;
}

}  // namespace

Q iet_apply(const PermutationPair& p, const QVec& lambda, const Q& x) {
  if (lambda.size() != p.d()) fail(ErrorKind::Usage, "lambda has the wrong length");
  if (x < 0 || x >= sum(lambda)) fail(ErrorKind::Domain, "x outside [0, |lambda|)");
  QVec top = left_ends(p, lambda, 0), bottom = left_ends(p, lambda, 1);
  for (size_t a = 0; a < p.d(); ++a)
    if (x >= top[a] && x < top[a] + lambda[a]) return x - top[a] + bottom[a];
  fail(ErrorKind::Domain, "x not covered");
}

CertificateReport keane_check(const PermutationPair& p, const QVec& lambda, long depth) {
  CertificateReport rep;
  QVec ends = left_ends(p, lambda, 0);
  std::vector<std::pair<Q, int>> targets;
  for (size_t g = 0; g < p.d(); ++g)
    if (p.pi0[g] != 0) targets.emplace_back(ends[g], static_cast<int>(g));
  for (size_t a = 0; a < p.d(); ++a) {
    Q x = ends[a];
    for (long m = 1; m <= depth; ++m) {
      x = iet_apply(p, lambda, x);
      for (const auto& [t, g] : targets)
        if (x == t) {
          rep.items.push_back({"keane", Verdict::Violated,
                               "f^" + std::to_string(m) + "(left end of I_" + p.alphabet[a] + ") = left end of I_" +
                                   p.alphabet[static_cast<size_t>(g)]});
          return rep;
        }
    }
  }
  rep.items.push_back({"keane", Verdict::Certified, "no endpoint collision for m <= " + std::to_string(depth)});
  return rep;
}

ZipperedRectangles zippered(const TripleData& t) {
  const auto& p = t.perm;
  if (!in_cone(p, t.tau)) fail(ErrorKind::Domain, "tau is not in the cone T+");
  QVec h = t.h();
  ZipperedRectangles z;
  std::vector<QVec> ends{left_ends(p, t.lambda, 0), left_ends(p, t.lambda, 1)};
  std::vector<QVec> tau_prefix(2, QVec(p.d()));
  for (int eps = 0; eps < 2; ++eps) {
    Q s = 0;
    for (int a : p.row(eps)) {
      s += t.tau[static_cast<size_t>(a)];
      tau_prefix[static_cast<size_t>(eps)][static_cast<size_t>(a)] = s;
    }
  }
  for (size_t a = 0; a < p.d(); ++a)
    for (int eps = 0; eps < 2; ++eps) {
      Q x0 = ends[static_cast<size_t>(eps)][a], x1 = x0 + t.lambda[a];
      if (eps == 0) z.rects.push_back({static_cast<int>(a), 0, x0, x1, Q(0), h[a]});
      else z.rects.push_back({static_cast<int>(a), 1, x0, x1, -h[a], Q(0)});
      Q tp = tau_prefix[static_cast<size_t>(eps)][a];
      if (eps == 0) z.zippers.push_back({static_cast<int>(a), 0, x1, Q(0), tp});
      else z.zippers.push_back({static_cast<int>(a), 1, x1, tp, Q(0)});
    }
  z.area = dot(t.lambda, h);
  return z;
}

}  // namespace bsurf
