// Delta maps, singular-set scan and descriptor handling on the Chamanara diagram.
#include <set>

#include "bsurf/error.hpp"
#include "bsurf/fixtures.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsurf;
using namespace testing;

namespace {

bool matches(const DiagramWindow& w, const PathDescriptor& x, char family, long n, long span) {
  return matches_special(w, x, family, n, span);
}

}  // namespace

TEST_CASE("special points realize their definitions") {
  DiagramWindow w = chamanara_window(-20, 20);
  for (long n = -3; n <= 3; ++n) {
    CHECK(matches(w, chamanara_w(w, n), 'w', n, 8));
    CHECK(matches(w, chamanara_x(w, n), 'x', n, 8));
    CHECK(matches(w, chamanara_y(w, n), 'y', n, 8));
    CHECK(matches(w, chamanara_z(w, n), 'z', n, 8));
  }
}

TEST_CASE("Delta table on the Chamanara diagram") {
  DiagramWindow w = chamanara_window(-20, 20);
  for (long n = -3; n <= 3; ++n) {
    CAPTURE(n);
    auto wn = chamanara_w(w, n), zn = chamanara_z(w, n);
    CHECK(matches(w, delta(w, wn, Order::S), 'x', n, 8));
    CHECK(matches(w, delta(w, wn, Order::R), 'y', n - 1, 8));
    CHECK(matches(w, delta(w, zn, Order::S), 'y', n, 8));
    CHECK(matches(w, delta(w, zn, Order::R), 'x', n - 1, 8));
    CHECK(matches(w, delta(w, delta(w, wn, Order::S), Order::R), 'z', n + 1, 8));
    CHECK(matches(w, delta(w, delta(w, wn, Order::R), Order::S), 'z', n - 1, 8));
  }
}

TEST_CASE("extremal paths are outside the boundaries") {
  DiagramWindow w = chamanara_window(-20, 20);
  auto ones = make_path(TailKind::RMax, FinitePath{0, {1}}, TailKind::SMax);
  auto zeros = make_path(TailKind::RMin, FinitePath{0, {0}}, TailKind::SMin);
  CHECK(tail_class(w, ones, Order::S) == TailClass::Max);
  CHECK(tail_class(w, zeros, Order::R) == TailClass::Min);
  CHECK_THROWS_AS(delta(w, ones, Order::S), Error);
  CHECK_THROWS_AS(delta(w, zeros, Order::R), Error);
}

TEST_CASE("sigma scan at depth 3 is the special family with pivots in range") {
  const long depth = 3;
  DiagramWindow w = chamanara_window(-depth - 8, depth + 8);
  auto rep = sigma_scan(w, depth);
  CHECK(rep.inconclusive.empty());
  DiagramWindow wide = chamanara_window(-40, 40);
  std::set<std::string> found;
  for (const auto& e : rep.singular) {
    std::string l = special_label(wide, e.path, depth);
    CAPTURE(describe(w, e.path));
    CHECK_FALSE(l.empty());
    CHECK(e.m >= -depth);
    CHECK(e.m <= depth);
    CHECK(e.n >= -depth);
    CHECK(e.n <= depth);
    found.insert(l);
  }
  std::set<std::string> expected;
  for (long n = -depth; n <= depth; ++n) {
    expected.insert("w" + std::to_string(n));
    expected.insert("z" + std::to_string(n));
    if (n < depth) {
      expected.insert("x" + std::to_string(n));
      expected.insert("y" + std::to_string(n));
    }
  }
  CHECK(found == expected);
  CHECK(rep.singular.size() == expected.size());
  CHECK(rep.shortcut_failures == 0);
}

TEST_CASE("semantic equality ignores descriptor shape") {
  DiagramWindow w = chamanara_window(-20, 20);
  auto a = make_path(TailKind::RMax, FinitePath{0, {0}}, TailKind::SMin);
  auto b = make_path(TailKind::RMax, FinitePath{-2, {1, 1, 0}}, TailKind::SMin);
  CHECK(same_on(w, a, b, -10, 10));
  CHECK(matches(w, a, 'y', 0, 8));
  CHECK_FALSE(same_on(w, a, chamanara_w(w, 0), -10, 10));
}

TEST_CASE("periodic and horizontal tails") {
  DiagramWindow w = chamanara_window(-20, 20);
  PathDescriptor x;
  x.left = TailSpec{TailKind::Periodic, "", {"0", "1"}};
  x.core = FinitePath{0, {0}};
  x.right = TailSpec{TailKind::Periodic, "", {"0", "1"}};
  CHECK_NOTHROW(check_descriptor(w, x));
  for (long k = -6; k <= 6; ++k)
    if (k != 1) CHECK(w.edge(k, edge_at(w, x, k)).id == std::to_string(((k % 2) + 2) % 2));
  CHECK(tail_class(w, x, Order::S) == TailClass::Neither);
  CHECK_THROWS_AS(edge_at(chamanara_window(-2, 2), make_path(TailKind::RMin, FinitePath{0, {0}}, TailKind::SMin), 5),
                  Error);
}

TEST_CASE("standing hypotheses on the Chamanara window") {
  DiagramWindow w = chamanara_window(-12, 12);
  auto rep = standing_hypotheses_check(w, 4);
  CHECK_FALSE(rep.violated());
}
