// Permutation pairs, the intersection form, interval exchanges and
// zippered rectangles.  Vectors are indexed by the alphabet order.
#pragma once

#include <string>
#include <vector>

#include "bsurf/matrix.hpp"
#include "bsurf/paths.hpp"

namespace bsurf {

struct PermutationPair {
  std::vector<std::string> alphabet;
  std::vector<int> pi0, pi1;  // 0-based position of each symbol in the top / bottom row

  size_t d() const { return alphabet.size(); }
  const std::vector<int>& row_pos(int eps) const { return eps == 0 ? pi0 : pi1; }
  /// Symbol index at 0-based position pos of row eps.
  int at(int eps, int pos) const;
  std::vector<int> row(int eps) const;
  int symbol_index(const std::string& s) const;  // -1 if absent
  /// "A B C D / D C B A"
  std::string to_string() const;
  /// pi1 o pi0^{-1} as a position map; equal monodromy means equal Rauzy class node.
  std::vector<int> monodromy() const;
  bool operator==(const PermutationPair&) const = default;
};

/// Parses "A B C D / D C B A".  The alphabet is the sorted set of symbols.
/// d < 4 is rejected unless allow_small.
PermutationPair parse_permutation(const std::string& text, bool allow_small = false);
PermutationPair make_permutation(const std::vector<std::string>& top, const std::vector<std::string>& bottom,
                                 bool allow_small = false);

bool irreducible(const PermutationPair& p);
/// alpha(eps): last symbol of row eps.
int alpha(const PermutationPair& p, int eps);
/// beta(eps): the symbol after alpha(1-eps) in row eps.  Throws Domain when
/// alpha(1-eps) is last in row eps.
int beta(const PermutationPair& p, int eps);

IntMatrix omega(const PermutationPair& p);

/// tau in T+_pi.
bool in_cone(const PermutationPair& p, const QVec& tau);

struct TripleData {
  PermutationPair perm;
  QVec lambda, tau;
  QVec h() const;  // -Omega tau
  Q area() const { return dot(lambda, h()); }
  bool operator==(const TripleData&) const = default;
};

/// Validates lambda > 0 and tau in T+_pi; throws Domain otherwise.
TripleData make_triple(PermutationPair perm, QVec lambda, QVec tau);

/// Image of x in [0, |lambda|) under the interval exchange of (pi, lambda).
Q iet_apply(const PermutationPair& p, const QVec& lambda, const Q& x);

/// Checks f^m(left end of I_a) != left end of I_g for 1 <= m <= depth and
/// all a, g with g not first in the top row.
CertificateReport keane_check(const PermutationPair& p, const QVec& lambda, long depth);

struct Rectangle {
  int symbol;
  int eps;           // 0: above the axis, 1: below
  Q x0, x1, y0, y1;  // base interval and vertical extent
};

struct Zipper {
  int symbol;
  int eps;
  Q x, y0, y1;  // vertical segment {x} x [y0, y1]
};

struct ZipperedRectangles {
  std::vector<Rectangle> rects;  // (symbol, eps) in alphabet order, eps 0 then 1
  std::vector<Zipper> zippers;
  Q area;
};

ZipperedRectangles zippered(const TripleData& t);

}  // namespace bsurf
