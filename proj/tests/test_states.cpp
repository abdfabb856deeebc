// States, the expansion maps phi and the chart maps psi.
#include <random>

#include "bsurf/error.hpp"
#include "bsurf/fixtures.hpp"
#include "bsurf/surface.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsurf;
using namespace testing;

namespace {

Q pow_q(long base, long e) {
  Q p = 1;
  for (long k = 0; k < std::abs(e); ++k) p *= base;
  return e < 0 ? 1 / p : p;
}

FinitePath random_finite(const DiagramWindow& w, long m, long n, std::mt19937_64& rng) {
  auto all = finite_paths(w, m, n);
  return all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
}

// Paths of the Chamanara diagram with 1s exactly at the given entries (all in [a, b]).
PathDescriptor chamanara_with_ones(const std::vector<long>& ones, long a, long b) {
  FinitePath core{a - 1, {}};
  for (long k = a; k <= b; ++k) core.edges.push_back(std::find(ones.begin(), ones.end(), k) != ones.end() ? 1 : 0);
  return make_path(TailKind::RMin, core, TailKind::SMin);
}

}  // namespace

TEST_CASE("built-in states are valid with invariant 1") {
  auto ch = validate_state(chamanara_window(-6, 6), chamanara_state());
  CHECK(ch.ok());
  REQUIRE(ch.invariant);
  CHECK(*ch.invariant == 1);
  auto dec = validate_state(decimal_window(-3, 3), decimal_state());
  CHECK(dec.ok());
  REQUIRE(dec.invariant);
  CHECK(*dec.invariant == 1);
}

TEST_CASE("a perturbed state is rejected") {
  DiagramWindow w = chamanara_window(-3, 3);
  State st;
  for (long n = -3; n <= 3; ++n) st.set(n, {pow_q(2, n)}, {pow_q(2, -n)});
  st.set(1, {Q(3)}, {Q(1, 2)});
  CHECK_FALSE(validate_state(w, st).ok());
}

TEST_CASE("fixture states round-trip and validate") {
  for (const char* cls : {"h2_hyperelliptic", "h2_second_class"}) {
    CAPTURE(cls);
    DiagramWindow w = load_fixture_window(std::string(cls) + "_window.json");
    std::string text = read_file(fixture(std::string(cls) + "_state.json"));
    State st = state_from_json(text);
    CHECK(validate_state(w, st).ok());
    CHECK(state_to_json(st, w.lo(), w.hi()) == text);
  }
}

TEST_CASE("cylinder measures on the Chamanara diagram") {
  DiagramWindow w = chamanara_window(-4, 4);
  State st = chamanara_state();
  FinitePath p{-2, {0, 1, 1}};
  CHECK(cylinder_measure(w, st, p, CylinderSides::Both) == pow_q(2, -2 - 1));
  CHECK(cylinder_measure(w, st, p, CylinderSides::Minus) == pow_q(2, -2));
  CHECK(cylinder_measure(w, st, p, CylinderSides::Plus) == pow_q(2, -1));
}

TEST_CASE("decimal phi_plus is the base-10 expansion") {
  DiagramWindow w = decimal_window(-4, 6);
  State st = decimal_state();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    FinitePath core = random_finite(w, 0, 3, rng);
    bool smax = trial % 2;
    auto x = make_path(TailKind::RMin, core, smax ? TailKind::SMax : TailKind::SMin);
    Q expected = 0;
    for (size_t j = 0; j < 3; ++j) expected += Q(core.edges[j]) * pow_q(10, -static_cast<long>(j + 1));
    if (smax) expected += pow_q(10, -3);
    CHECK(phi_plus(w, st, x, 0) == expected);
    // phi_minus reads the digits leftwards with weight 10^(j-1).
    Q minus = 0;
    for (size_t j = 0; j < 3; ++j) minus += Q(core.edges[j]) * pow_q(10, static_cast<long>(j));
    CHECK(phi_minus(w, st, x, 3) == minus);
  }
}

TEST_CASE("phi_tail is the signed measure between tail-equivalent paths") {
  DiagramWindow w = chamanara_window(-12, 12);
  State st = chamanara_state();
  std::mt19937_64 rng(9);
  auto zero = chamanara_with_ones({}, -8, 8);
  CHECK(phi_tail(w, st, zero, chamanara_w(w, 0)) == Q(1, 2));
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<long> ones_a, ones_b;
    for (long k = -8; k <= 8; ++k) {
      if (rng() % 3 == 0) ones_a.push_back(k);
      if (rng() % 3 == 0) ones_b.push_back(k);
    }
    auto a = chamanara_with_ones(ones_a, -8, 8), b = chamanara_with_ones(ones_b, -8, 8);
    // Measure oracle: with r-min left tails, the paths in (a, b] are the
    // cylinders over the finite paths in [a, b) on (-9, 8] (Chamanara: 1 > 0 at the last difference).
    auto key = [](const std::vector<long>& ones) {
      Q v = 0;
      for (long k : ones) v += pow_q(2, k - 1);
      return v;
    };
    CHECK(phi_tail(w, st, zero, a) == key(ones_a));
    CHECK(phi_tail(w, st, a, b) == key(ones_b) - key(ones_a));
    CHECK(phi_tail(w, st, b, a) == -phi_tail(w, st, a, b));
  }
  auto one = make_path(TailKind::RMax, FinitePath{0, {1}}, TailKind::SMax);
  CHECK_THROWS_AS(phi_tail(w, st, zero, one), Error);
}

TEST_CASE("phi_tail on the ones class") {
  DiagramWindow w = chamanara_window(-12, 12);
  State st = chamanara_state();
  auto one = make_path(TailKind::RMax, FinitePath{0, {1}}, TailKind::SMax);
  for (long n = -3; n <= 3; ++n) CHECK(phi_tail(w, st, one, chamanara_z(w, n)) == -pow_q(2, n - 1));
}

TEST_CASE("shift identity for phi") {
  std::mt19937_64 rng(21);
  auto check_on = [&](const DiagramWindow& w, const State& st, long m, long n) {
    for (int trial = 0; trial < 60; ++trial) {
      FinitePath p = random_finite(w, m, n, rng);
      FinitePath left = random_finite(w, m - 2, m, rng);
      while (path_range(w, left) != path_source(w, p)) left = random_finite(w, m - 2, m, rng);
      FinitePath right = random_finite(w, n, n + 2, rng);
      while (path_source(w, right) != path_range(w, p)) right = random_finite(w, n, n + 2, rng);
      auto x = make_path(rng() % 2 ? TailKind::RMin : TailKind::RMax, left, TailKind::SMin);
      auto y = make_path(TailKind::RMin, right, rng() % 2 ? TailKind::SMin : TailKind::SMax);
      auto sc = phi_shift_check(w, st, p, x, y);
      CHECK(sc.holds());
    }
  };
  check_on(decimal_window(-6, 6), decimal_state(), -1, 1);
  check_on(chamanara_window(-8, 8), chamanara_state(), -2, 2);
  TripleData t = triple_from_json(read_file(fixture("h2_hyperelliptic_triple.json")));
  SurfaceDiagram sd = build(t, -8, 8);
  check_on(sd.window, sd.state, -1, 2);
}

TEST_CASE("chart JSON round-trip and validation") {
  DiagramWindow w = chamanara_window(-4, 4);
  auto quads = all_quads(w, -1, 1);
  REQUIRE_FALSE(quads.empty());
  for (const auto& c : quads) {
    ChartDatum back = chart_from_json(w, chart_to_json(w, c));
    CHECK(back.paths == c.paths);
    CHECK(back.family == c.family);
  }
  ChartDatum bad{ChartFamily::SPair, {FinitePath{0, {0}}, FinitePath{0, {0}}}};
  CHECK_THROWS_AS(check_chart(w, bad), Error);
}

TEST_CASE("sampled points land in their piece and S-pair forms agree") {
  TripleData t = triple_from_json(read_file(fixture("h2_hyperelliptic_triple.json")));
  SurfaceDiagram sd = build(t, -8, 8);
  const DiagramWindow& w = sd.window;
  std::mt19937_64 rng(3);
  size_t pairs = 0;
  for (const auto& p : finite_paths(w, -1, 1)) {
    auto q = successor(w, p, Order::S, Step::Succ);
    if (!q) continue;
    ChartDatum c{ChartFamily::SPair, {p, *q}};
    check_chart(w, c);
    ++pairs;
    for (int piece = 0; piece < 2; ++piece)
      for (int k = 0; k < 4; ++k) {
        auto x = sample_in_piece(w, c, piece, 2, rng);
        if (!x) continue;
        CHECK(chart_piece(w, c, *x) == piece);
        CHECK(psi_chart(w, sd.state, c, *x).first == psi_s_alternate(w, sd.state, c, *x));
      }
  }
  CHECK(pairs > 0);
  for (const auto& c : all_quads(w, -1, 1))
    for (int piece = 0; piece < 4; ++piece) {
      auto x = sample_in_piece(w, c, piece, 2, rng);
      if (x) CHECK(chart_piece(w, c, *x) == piece);
    }
}

TEST_CASE("chart transitions are constant on nested quads") {
  TripleData t = triple_from_json(read_file(fixture("h2_hyperelliptic_triple.json")));
  SurfaceDiagram sd = build(t, -8, 8);
  const DiagramWindow& w = sd.window;
  auto inner = all_quads(w, -3, 3), outer = all_quads(w, -5, 5);
  REQUIRE_FALSE(inner.empty());
  REQUIRE_FALSE(outer.empty());
  std::mt19937_64 rng(17);
  size_t evaluated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto& p = inner[rng() % inner.size()];
    const auto& q = outer[rng() % outer.size()];
    auto res = chart_transition(w, sd.state, p, q, 12, rng());
    CHECK_FALSE(res.violation);
    if (res.samples > 0) {
      CHECK(res.constant);
      ++evaluated;
    }
  }
  CHECK(evaluated >= 5);
  CHECK_THROWS_AS(chart_transition(w, sd.state, outer.front(), inner.front(), 4, 1), Error);
}
