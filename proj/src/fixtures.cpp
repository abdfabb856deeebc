#include "bsurf/fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace bsurf {

namespace {

Level single_level(long n) { return Level{n, {"v"}}; }

std::vector<Edge> digit_edges(int base) {
  std::vector<Edge> es;
  for (int k = 0; k < base; ++k) es.push_back(Edge{std::to_string(k), 0, 0, k, k});
  return es;
}

DiagramWindow digit_window(long lo, long hi, int base) {
  DiagramWindow w(single_level(lo));
  for (long n = lo + 1; n <= hi; ++n) w.push_right(single_level(n), digit_edges(base));
  w.set_generator([base](Direction dir, const DiagramWindow& cur) -> std::optional<Extension> {
    long n = dir == Direction::Right ? cur.hi() + 1 : cur.lo() - 1;
    return Extension{single_level(n), digit_edges(base)};
  });
  return w;
}

State power_state(long base) {
  return State([base](long n) {
    Q p = 1;
    for (long k = 0; k < std::abs(n); ++k) p *= base;
    if (n < 0) p = 1 / p;
    return std::make_pair(QVec{p}, QVec{1 / p});
  });
}

PathDescriptor digit_point(TailKind left, const std::string& edge, TailKind right, const DiagramWindow& w, long n) {
  FinitePath core{n - 1, {w.edge_index(n, edge)}};
  return make_path(left, core, right);
}

}  // namespace

DiagramWindow chamanara_window(long lo, long hi) { return digit_window(lo, hi, 2); }
State chamanara_state() { return power_state(2); }

PathDescriptor chamanara_w(const DiagramWindow& w, long n) {
  return digit_point(TailKind::RMin, "1", TailKind::SMin, w, n);
}
PathDescriptor chamanara_x(const DiagramWindow& w, long n) {
  return digit_point(TailKind::RMin, "0", TailKind::SMax, w, n);
}
PathDescriptor chamanara_y(const DiagramWindow& w, long n) {
  return digit_point(TailKind::RMax, "1", TailKind::SMin, w, n);
}
PathDescriptor chamanara_z(const DiagramWindow& w, long n) {
  return digit_point(TailKind::RMax, "0", TailKind::SMax, w, n);
}

DiagramWindow decimal_window(long lo, long hi) { return digit_window(lo, hi, 10); }
State decimal_state() { return power_state(10); }

DiagramWindow random_window(unsigned long seed, long levels, int max_vertices, int max_extra_edges) {
  std::mt19937_64 rng(seed);
  auto count = [&](int hi) { return std::uniform_int_distribution<int>(1, hi)(rng); };
  auto make_level = [&](long n) {
    Level l{n, {}};
    int k = count(max_vertices);
    for (int i = 0; i < k; ++i) l.vertices.push_back("v" + std::to_string(i));
    return l;
  };
  Level prev = make_level(0);
  DiagramWindow w(prev);
  for (long n = 1; n <= levels; ++n) {
    Level cur = make_level(n);
    int a = static_cast<int>(prev.vertices.size()), b = static_cast<int>(cur.vertices.size());
    std::vector<std::pair<int, int>> pairs;  // (source, range)
    for (int i = 0; i < std::max(a, b); ++i) pairs.emplace_back(i % a, i % b);
    int extra = std::uniform_int_distribution<int>(0, max_extra_edges)(rng);
    for (int i = 0; i < extra; ++i)
      pairs.emplace_back(std::uniform_int_distribution<int>(0, a - 1)(rng),
                         std::uniform_int_distribution<int>(0, b - 1)(rng));
    std::vector<Edge> es;
    for (size_t i = 0; i < pairs.size(); ++i)
      es.push_back(Edge{"e" + std::to_string(i), pairs[i].first, pairs[i].second, 0, 0});
    // random dense ranks inside each fiber
    std::vector<size_t> order(es.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> r_next(static_cast<size_t>(b), 0), s_next(static_cast<size_t>(a), 0);
    for (size_t i : order) es[i].r_rank = r_next[static_cast<size_t>(es[i].range)]++;
    std::shuffle(order.begin(), order.end(), rng);
    for (size_t i : order) es[i].s_rank = s_next[static_cast<size_t>(es[i].source)]++;
    w.push_right(cur, es);
    prev = cur;
  }
  return w;
}

PermutationPair h2_hyperelliptic() { return parse_permutation("A B C D / D C B A"); }
PermutationPair h2_second_class() { return parse_permutation("A B C D / B C D A"); }

namespace {

Z random_digits(std::mt19937_64& rng, int digits) {
  std::uniform_int_distribution<int> digit(0, 9);
  std::string s(1, static_cast<char>('1' + std::uniform_int_distribution<int>(0, 8)(rng)));
  for (int i = 1; i < digits; ++i) s += static_cast<char>('0' + digit(rng));
  return Z(s);
}

}  // namespace

TripleData random_triple(const PermutationPair& p, std::mt19937_64& rng, int digits) {
  Z den = random_digits(rng, digits);
  QVec lambda(p.d()), tau(p.d());
  auto draw = [&] {
    Q x(random_digits(rng, digits), den);
    x.canonicalize();
    return x;
  };
  for (auto& x : lambda) x = draw();
  for (;;) {
    for (auto& x : tau) {
      x = draw();
      if (rng() & 1) x = -x;
    }
    if (in_cone(p, tau)) break;
  }
  return make_triple(p, lambda, tau);
}

TripleData random_complete_triple(const PermutationPair& p, std::mt19937_64& rng, long depth, int digits) {
  for (;;) {
    TripleData t = random_triple(p, rng, digits);
    auto rep = completeness_check(t, depth);
    if (rep.keane_certified() && rep.rh_certified()) return t;
  }
}

}  // namespace bsurf
