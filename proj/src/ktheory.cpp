#include "bsurf/ktheory.hpp"

#include <sstream>

#include "bsurf/error.hpp"

namespace bsurf {

size_t InductiveSystem::dim(long n) const {
  if (n < start || n > end()) fail(ErrorKind::Usage, "stage " + std::to_string(n) + " outside the system");
  if (maps.empty()) return 0;
  if (n == end()) return maps.back().rows();
  return maps[static_cast<size_t>(n - start)].cols();
}

InductiveSystem system_from_window(const DiagramWindow& w) {
  InductiveSystem s;
  s.start = w.lo();
  for (long n = w.lo() + 1; n <= w.hi(); ++n) s.maps.push_back(edge_matrix(w, n));
  return s;
}

std::string StageReport::cokernel() const {
  std::string out;
  for (const auto& t : torsion) out += (out.empty() ? "" : " + ") + ("Z/" + to_string(t));
  if (free_rank > 0) out += (out.empty() ? "" : " + ") + (free_rank == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank));
  return out.empty() ? "0" : out;
}

StageReport k0_stage(const InductiveSystem& sys, long m, long n) {
  if (m > n || m < sys.start || n > sys.end()) fail(ErrorKind::Usage, "stage range outside the system");
  StageReport r;
  r.m = m;
  r.n = n;
  r.composite = IntMatrix::identity(sys.dim(m));
  for (long k = m; k < n; ++k) r.composite = sys.maps[static_cast<size_t>(k - sys.start)] * r.composite;
  r.snf = smith_normal_form(r.composite);
  for (const auto& x : r.snf.diagonal) {
    if (x != 0) ++r.rank;
    if (x > 1) r.torsion.push_back(x);
  }
  r.free_rank = r.composite.rows() - r.rank;
  r.unimodular = r.composite.rows() == r.composite.cols() && abs(determinant(r.composite)) == 1;
  return r;
}

std::string Classification::text() const {
  switch (kind) {
    case K0Kind::Free: return d == 1 ? "Z" : "Z^" + std::to_string(d);
    case K0Kind::Localization: return "Z[1/" + to_string(k) + "]";
    case K0Kind::Report: break;
  }
  std::ostringstream out;
  out << "system report: dims";
  for (auto x : dims) out << ' ' << x;
  out << "; stage ranks";
  for (auto x : stage_ranks) out << ' ' << x;
  out << "; rational rank " << rational_rank << " (finite prefix)";
  return out.str();
}

Classification k0_classify(const InductiveSystem& sys) {
  Classification c;
  for (long n = sys.start; n <= sys.end(); ++n) c.dims.push_back(sys.dim(n));
  for (const auto& m : sys.maps) c.stage_ranks.push_back(rank(m));
  if (sys.maps.empty()) {
    c.kind = K0Kind::Free;
    c.d = 0;
    return c;
  }
  c.rational_rank = k0_stage(sys, sys.start, sys.end()).rank;
  // Z^d only for determinant +1 maps; a determinant -1 system is left as a report
  bool unimodular = true, stationary_scalar = true;
  for (const auto& m : sys.maps) {
    unimodular = unimodular && m.rows() == m.cols() && determinant(m) == 1;
    stationary_scalar = stationary_scalar && m.rows() == 1 && m.cols() == 1 && m == sys.maps.front();
  }
  if (unimodular) {
    c.kind = K0Kind::Free;
    c.d = sys.maps.front().cols();
  } else if (stationary_scalar && sys.maps.front()(0, 0) >= 2) {
    c.kind = K0Kind::Localization;
    c.k = sys.maps.front()(0, 0);
  }
  return c;
}

std::vector<std::pair<long, long>> parse_star(const std::string& text) {
  std::vector<std::pair<long, long>> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    auto colon = item.find(':');
    if (colon == std::string::npos) fail(ErrorKind::Usage, "star entries look like i:j");
    try {
      out.emplace_back(std::stol(item.substr(0, colon)), std::stol(item.substr(colon + 1)));
    } catch (const std::exception&) {
      fail(ErrorKind::Usage, "bad star entry '" + item + "'");
    }
  }
  return out;
}

SequenceReport theta_sequence(const ThetaData& td) {
  if (td.I < 1 || td.J < 1) fail(ErrorKind::Usage, "I and J must be positive");
  auto dim = static_cast<size_t>(td.I + td.J);
  for (auto [i, j] : td.star)
    if (i < 1 || i > td.I || j <= td.I || j > td.I + td.J)
      fail(ErrorKind::Usage, "star pair " + std::to_string(i) + ":" + std::to_string(j) + " out of range");
  SequenceReport r;
  r.theta = IntMatrix(dim, td.star.size());
  for (size_t c = 0; c < td.star.size(); ++c) {
    r.theta(static_cast<size_t>(td.star[c].first - 1), c) = 1;
    r.theta(static_cast<size_t>(td.star[c].second - 1), c) = 1;
  }
  r.sigma = IntMatrix(1, dim);
  for (size_t i = 0; i < dim; ++i) r.sigma(0, i) = static_cast<long>(i) < td.I ? 1 : -1;
  IntMatrix st = r.sigma * r.theta;
  r.sigma_theta_zero = st == IntMatrix(1, td.star.size());
  r.kernel = integer_kernel(r.theta);
  auto snf = smith_normal_form(r.theta);
  size_t rk = 0;
  for (const auto& x : snf.diagonal) {
    if (x != 0) ++rk;
    if (x > 1) r.coker_torsion.push_back(x);
  }
  r.coker_free_rank = dim - rk;
  r.exact_middle = r.sigma_theta_zero && rk == dim - 1 && r.coker_torsion.empty();
  r.i_star_iso = td.I == 1 || td.J == 1;
  return r;
}

Q state_pairing(const State& st, long n, const std::vector<Z>& cls) {
  const QVec& nu = st.nu_s(n);
  if (nu.size() != cls.size()) fail(ErrorKind::Usage, "class dimension does not match the state");
  Q r = 0;
  for (size_t v = 0; v < cls.size(); ++v) r += nu[v] * Q(cls[v]);
  return r;
}

std::pair<Q, Q> pairing_compatibility(const DiagramWindow& w, const State& st, long n, const std::vector<Z>& cls) {
  return {state_pairing(st, n, cls), state_pairing(st, n + 1, edge_matrix(w, n + 1).apply(cls))};
}

}  // namespace bsurf
