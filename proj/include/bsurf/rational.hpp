// Exact arithmetic used throughout the library.
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace bsurf {

using Q = mpq_class;
using Z = mpz_class;
using QVec = std::vector<Q>;

/// Parses "p/q", "p" or a finite decimal such as "0.125". Throws UsageError.
Q parse_rational(std::string_view text);

/// Parses a comma-separated list of rationals.
QVec parse_rational_list(std::string_view text);

/// Canonical "p/q" form ("p" when q = 1).
std::string to_string(const Q& q);
std::string to_string(const Z& z);
std::string to_string(const QVec& v);

/// Float rendering for display columns only.
double approx(const Q& q);

Q sum(const QVec& v);
Q dot(const QVec& a, const QVec& b);

}  // namespace bsurf
