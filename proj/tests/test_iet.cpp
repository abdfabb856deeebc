// Permutation pairs, the intersection form, interval exchanges and zippered rectangles.
#include <random>
#include <set>


#include "bsurf/error.hpp"
#include "bsurf/fixtures.hpp"
#include "doctest.h"

using namespace bsurf;

namespace {

int omega_oracle(const PermutationPair& p, int a, int b) {
  bool top = p.pi0[static_cast<size_t>(a)] < p.pi0[static_cast<size_t>(b)];
  bool bottom = p.pi1[static_cast<size_t>(a)] > p.pi1[static_cast<size_t>(b)];
  if (top && bottom) return 1;
  if (!top && !bottom && a != b) return -1;
  return 0;
}

}  // namespace

TEST_CASE("permutation parsing") {
  auto p = parse_permutation("A B C D / D C B A");
  CHECK(p.d() == 4);
  CHECK(p.to_string() == "A B C D / D C B A");
  CHECK(alpha(p, 0) == p.symbol_index("D"));
  CHECK(alpha(p, 1) == p.symbol_index("A"));
  CHECK(irreducible(p));
  CHECK_FALSE(irreducible(parse_permutation("A B C D / B A C D")));
  CHECK_THROWS_AS(parse_permutation("A B / B A"), Error);
  CHECK_NOTHROW(parse_permutation("A B / B A", true));
  CHECK_THROWS_AS(parse_permutation("A B C D / D C B E"), Error);
}

TEST_CASE("intersection form matches its definition and is antisymmetric") {
  for (const auto& p : {h2_hyperelliptic(), h2_second_class(), parse_permutation("A B C D E / E D C B A")}) {
    IntMatrix o = omega(p);
    for (int a = 0; a < static_cast<int>(p.d()); ++a)
      for (int b = 0; b < static_cast<int>(p.d()); ++b) {
        CHECK(o(a, b) == omega_oracle(p, a, b));
        CHECK(o(a, b) == -o(b, a));
      }
  }
}

TEST_CASE("heights are positive and area is lambda . h") {
  std::mt19937_64 rng(77);
  for (const auto& p : {h2_hyperelliptic(), h2_second_class()}) {
    for (int trial = 0; trial < 20; ++trial) {
      TripleData t = random_triple(p, rng, 12);
      CHECK(in_cone(p, t.tau));
      QVec h = t.h();
      for (const auto& v : h) CHECK(v > 0);
      ZipperedRectangles z = zippered(t);
      CHECK(z.area == t.area());
      // Upper (eps 0) and lower (eps 1) presentations each tile the surface.
      Q rect_area[2] = {0, 0};
      for (const auto& r : z.rects) {
        CHECK(r.x1 > r.x0);
        CHECK(r.y1 > r.y0);
        rect_area[r.eps] += (r.x1 - r.x0) * (r.y1 - r.y0);
      }
      Q expected = 0;
      for (size_t a = 0; a < p.d(); ++a) expected += t.lambda[a] * h[a];
      CHECK(t.area() == expected);
      CHECK(rect_area[0] == expected);
      CHECK(rect_area[1] == expected);
    }
  }
}

TEST_CASE("triples outside the cone are rejected") {
  auto p = h2_hyperelliptic();
  CHECK_THROWS_AS(make_triple(p, {1, 1, 1, 1}, {-1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(make_triple(p, {1, 0, 1, 1}, {1, 1, -1, -1}), Error);
}

TEST_CASE("the interval exchange permutes the subintervals") {
  auto p = h2_hyperelliptic();
  QVec lambda{Q(1, 3), Q(1, 5), Q(2, 7), Q(3, 11)};
  Q total = sum(lambda);
  std::set<Q> images;
  for (long k = 0; k < 200; ++k) {
    Q x(k * 37 % 10007, 10007);
    x.canonicalize();
    x *= total;
    Q y = iet_apply(p, lambda, x);
    CHECK(y >= 0);
    CHECK(y < total);
    images.insert(y);
  }
  CHECK(images.size() == 200);
  // The reversal sends 0 to the start of the last block of the bottom row.
  CHECK(iet_apply(p, lambda, 0) == total - lambda[0]);
}

TEST_CASE("Keane check finds a connection for commensurable lengths") {
  auto p = h2_hyperelliptic();
  auto rep = keane_check(p, {1, 1, 1, 1}, 10);
  CHECK(rep.violated());
  std::mt19937_64 rng(3);
  TripleData t = random_complete_triple(p, rng, 60, 40);
  CHECK(keane_check(p, t.lambda, 60).certified());
}
