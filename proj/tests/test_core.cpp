// Rationals, matrices, diagram windows, order mechanics and JSON/DOT I/O.
#include <random>

#include "bsurf/error.hpp"
#include "bsurf/fixtures.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bsurf;
using namespace testing;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Q(1, 2));
  CHECK(parse_rational("-0.125") == Q(-1, 8));
  CHECK(parse_rational("7") == Q(7));
  CHECK(to_string(parse_rational("-2/4")) == "-1/2");
  CHECK(to_string(Q(5)) == "5");
  CHECK(parse_rational_list("1/2, 1/4,1/8") == QVec{Q(1, 2), Q(1, 4), Q(1, 8)});
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("determinant and Smith form agree with minor-based oracles") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-4, 4), dim(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    size_t r = static_cast<size_t>(dim(rng)), c = static_cast<size_t>(dim(rng));
    IntMatrix m(r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    if (r == c) CHECK(determinant(m) == leibniz_det(m));
    auto snf = smith_normal_form(m);
    CHECK(snf.diagonal == invariant_factors_oracle(m));
    IntMatrix d = snf.left * m * snf.right;
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) CHECK(d(i, j) == (i == j ? snf.diagonal[i] : Z(0)));
    CHECK(abs(determinant(snf.left)) == 1);
    CHECK(abs(determinant(snf.right)) == 1);
    for (size_t i = 1; i < snf.diagonal.size(); ++i)
      if (snf.diagonal[i - 1] != 0) CHECK(snf.diagonal[i] % snf.diagonal[i - 1] == 0);
    IntMatrix k = integer_kernel(m);
    CHECK(k.cols() == c - rank(m));
    IntMatrix mk = m * k;
    for (size_t i = 0; i < mk.rows(); ++i)
      for (size_t j = 0; j < mk.cols(); ++j) CHECK(mk(i, j) == 0);
  }
}

TEST_CASE("identity system has identity Smith form") {
  auto snf = smith_normal_form(IntMatrix::identity(3));
  CHECK(snf.diagonal == std::vector<Z>{1, 1, 1});
}

TEST_CASE("unimodular inverse") {
  IntMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 1;
  CHECK(unimodular_inverse(m) * m == IntMatrix::identity(2));
  m(1, 1) = 3;
  CHECK_THROWS_AS(unimodular_inverse(m), Error);
}

TEST_CASE("fixture windows validate and round-trip byte-identically") {
  for (const char* name : {"chamanara_window.json", "decimal_window.json", "h2_hyperelliptic_window.json",
                           "h2_second_class_window.json", "random_window_1.json", "random_window_2.json",
                           "random_window_3.json", "random_window_4.json"}) {
    CAPTURE(name);
    std::string text = read_file(fixture(name));
    DiagramWindow w = diagram_from_json(text);
    CHECK(validate_window(w).ok());
    CHECK(diagram_to_json(w) == text);
    CHECK(diagram_to_json(diagram_from_json(diagram_to_json(w))) == diagram_to_json(w));
  }
}

TEST_CASE("validation flags broken ranks") {
  DiagramWindow w(Level{0, {"v"}});
  w.push_right(Level{1, {"v"}}, {Edge{"a", 0, 0, 0, 0}, Edge{"b", 0, 0, 0, 0}});
  CHECK_FALSE(validate_window(w).ok());
}

TEST_CASE("malformed diagram JSON is a usage error") {
  try {
    diagram_from_json("{\"levels\": []}");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Usage);
  }
}

TEST_CASE("DOT export of the Chamanara window") {
  std::string dot = diagram_to_dot(chamanara_window(-2, 2));
  size_t ranks = 0, arrows = 0;
  for (size_t p = dot.find("rank=same"); p != std::string::npos; p = dot.find("rank=same", p + 1)) ++ranks;
  for (size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++arrows;
  CHECK(ranks == 5);
  CHECK(arrows == 8);
  CHECK(dot.find("label=\"0:0/0\"") != std::string::npos);
  CHECK_THROWS_AS(diagram_to_dot(DiagramWindow()), Error);
}

TEST_CASE("successor and predecessor follow the sorted-key oracle") {
  for (const char* name : {"random_window_1.json", "random_window_2.json", "random_window_3.json",
                           "random_window_4.json", "chamanara_window.json"}) {
    CAPTURE(name);
    DiagramWindow w = load_fixture_window(name);
    for (Order o : {Order::R, Order::S}) {
      for (auto& [group, paths] : sorted_groups(w, w.lo(), w.hi(), o)) {
        for (size_t i = 0; i < paths.size(); ++i) {
          auto next = successor(w, paths[i], o, Step::Succ);
          auto prev = successor(w, paths[i], o, Step::Pred);
          if (i + 1 < paths.size()) {
            REQUIRE(next);
            CHECK(*next == paths[i + 1]);
            CHECK(compare_paths(w, paths[i], *next, o) == Cmp::LT);
          } else {
            CHECK_FALSE(next);
          }
          if (i > 0) {
            REQUIRE(prev);
            CHECK(*prev == paths[i - 1]);
          } else {
            CHECK_FALSE(prev);
          }
        }
      }
    }
  }
}

TEST_CASE("path counts match enumeration") {
  DiagramWindow w = load_fixture_window("random_window_2.json");
  CHECK(path_count(w, w.lo(), w.hi()) == Z(static_cast<long>(finite_paths(w, w.lo(), w.hi()).size())));
  DiagramWindow d = decimal_window(0, 3);
  CHECK(path_count(d, 0, 3) == 1000);
}
