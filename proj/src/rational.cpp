#include "bsurf/rational.hpp"

#include <cctype>

#include "bsurf/error.hpp"

namespace bsurf {

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool is_integer_literal(const std::string& s) {
  size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Z parse_integer(const std::string& s, std::string_view whole) {
  if (!is_integer_literal(s)) fail(ErrorKind::Usage, "not a rational: '" + std::string(whole) + "'");
  return Z(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Q parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) fail(ErrorKind::Usage, "empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Z num = parse_integer(trim(s.substr(0, slash)), text);
    Z den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) fail(ErrorKind::Usage, "zero denominator in '" + s + "'");
    Q q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fail(ErrorKind::Usage, "not a rational: '" + s + "'");
    Z num = parse_integer(ip + fp, text);
    Z den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    Q q(neg ? Z(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Q(parse_integer(s, text));
}

QVec parse_rational_list(std::string_view text) {
  QVec out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Q& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Z& z) { return z.get_str(); }

std::string to_string(const QVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s;
}

double approx(const Q& q) { return q.get_d(); }

Q sum(const QVec& v) {
  Q s = 0;
  for (const auto& x : v) s += x;
  return s;
}

Q dot(const QVec& a, const QVec& b) {
  Q s = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace bsurf
