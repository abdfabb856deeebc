// Shared helpers and independent oracles for the unit tests.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "bsurf/diagram.hpp"
#include "bsurf/io.hpp"

namespace testing {

using namespace bsurf;

inline std::string fixture(const std::string& name) { return std::string(BSURF_FIXTURES) + "/" + name; }

inline DiagramWindow load_fixture_window(const std::string& name) {
  return diagram_from_json(read_file(fixture(name)));
}

/// Leibniz determinant.
inline Z leibniz_det(const IntMatrix& m) {
  size_t n = m.rows();
  std::vector<size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Z total = 0;
  do {
    int inversions = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    Z term = inversions % 2 ? -1 : 1;
    for (size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// gcd of all k x k minors.
inline Z minor_gcd(const IntMatrix& m, size_t k) {
  Z g = 0;
  std::vector<bool> rsel(m.rows(), false), csel(m.cols(), false);
  std::fill(rsel.end() - static_cast<long>(k), rsel.end(), true);
  do {
    std::fill(csel.begin(), csel.end(), false);
    std::fill(csel.end() - static_cast<long>(k), csel.end(), true);
    do {
      IntMatrix sub(k, k);
      size_t r = 0;
      for (size_t i = 0; i < m.rows(); ++i) {
        if (!rsel[i]) continue;
        size_t c = 0;
        for (size_t j = 0; j < m.cols(); ++j)
          if (csel[j]) sub(r, c++) = m(i, j);
        ++r;
      }
      Z d = leibniz_det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (std::next_permutation(csel.begin(), csel.end()));
  } while (std::next_permutation(rsel.begin(), rsel.end()));
  return g;
}

/// Invariant factors from determinantal divisors.
inline std::vector<Z> invariant_factors_oracle(const IntMatrix& m) {
  std::vector<Z> out;
  Z prev = 1;
  for (size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Z g = minor_gcd(m, k);
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// All finite paths on (m, n] sorted by the given order, grouped by range
/// (R) or source (S).  Sorting keys: reversed r_rank sequence for R, the
/// s_rank sequence for S.
inline std::map<int, std::vector<FinitePath>> sorted_groups(const DiagramWindow& w, long m, long n, Order o) {
  std::map<int, std::vector<std::pair<std::vector<int>, FinitePath>>> keyed;
  for (const auto& p : finite_paths(w, m, n)) {
    std::vector<int> key;
    for (size_t i = 0; i < p.edges.size(); ++i) {
      const Edge& e = w.edge(m + 1 + static_cast<long>(i), p.edges[i]);
      key.push_back(o == Order::R ? e.r_rank : e.s_rank);
    }
    if (o == Order::R) std::reverse(key.begin(), key.end());
    int group = o == Order::R ? path_range(w, p) : path_source(w, p);
    keyed[group].emplace_back(key, p);
  }
  std::map<int, std::vector<FinitePath>> out;
  for (auto& [g, v] : keyed) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, p] : v) out[g].push_back(p);
  }
  return out;
}

/// Digit of a Chamanara special point at entry k, read off the definitions:
/// w^n has a single 1 at n, z^n a single 0 at n, x^n is 0 up to n then 1,
/// y^n is 1 up to n then 0.
inline int special_digit(char family, long n, long k) {
  switch (family) {
    case 'w': return k == n ? 1 : 0;
    case 'x': return k <= n ? 0 : 1;
    case 'y': return k <= n ? 1 : 0;
    case 'z': return k == n ? 0 : 1;
  }
  return -1;
}

inline bool matches_special(const DiagramWindow& w, const PathDescriptor& x, char family, long n, long span) {
  for (long k = n - span; k <= n + span; ++k)
    if (w.edge(k, edge_at(w, x, k)).id != std::to_string(special_digit(family, n, k))) return false;
  return true;
}

/// Label of x as a special point with index in [-r - 1, r + 1], or "".
inline std::string special_label(const DiagramWindow& w, const PathDescriptor& x, long r) {
  for (char f : {'w', 'x', 'y', 'z'})
    for (long n = -r - 1; n <= r + 1; ++n)
      if (matches_special(w, x, f, n, r + 6)) return std::string(1, f) + std::to_string(n);
  return "";
}

}  // namespace testing
