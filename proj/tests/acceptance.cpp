// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "bsurf/fixtures.hpp"
#include "bsurf/ktheory.hpp"
#include "bsurf/surface.hpp"
#include "support.hpp"

using namespace bsurf;
using namespace testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

Q pow2(long e) {
  Q p = 1;
  for (long k = 0; k < std::abs(e); ++k) p *= 2;
  return e < 0 ? 1 / p : p;
}

const std::vector<PermutationPair>& classes() {
  static const std::vector<PermutationPair> c{h2_hyperelliptic(), h2_second_class()};
  return c;
}

TripleData load_triple(const std::string& cls) { return triple_from_json(read_file(fixture(cls + "_triple.json"))); }

Outcome crit_inverse_law() {
  Outcome o;
  std::mt19937_64 rng(1001);
  for (const auto& p : classes())
    for (int k = 0; k < 100; ++k) {
      TripleData t = random_triple(p, rng);
      o.require(rh_step(rv_step(t).after).after == t, "P(R(t)) != t for " + p.to_string());
      o.require(rv_step(rh_step(t).after).after == t, "R(P(t)) != t for " + p.to_string());
    }
  o.detail = o.pass ? "200 triples" : o.detail;
  return o;
}

Outcome crit_density() {
  Outcome o;
  for (const auto& p : classes()) {
    auto rep = density_identity_check(p, 1000, 2002, 20);
    o.require(rep.identity_holds == 1000, "identity fails on " + p.to_string());
    o.require(rep.preimages_hold == 1000, "preimages fail on " + p.to_string());
    o.require(rep.jacobian_checked == 20 && rep.jacobian_matches == 20, "Jacobian mismatch on " + p.to_string());
  }
  if (o.pass) o.detail = "1000 points and 20 Jacobians per class";
  return o;
}

Outcome crit_chamanara() {
  Outcome o;
  DiagramWindow w = chamanara_window(-40, 40);
  for (long n = -3; n <= 3; ++n) {
    auto wn = chamanara_w(w, n), zn = chamanara_z(w, n);
    std::string at = " at n = " + std::to_string(n);
    o.require(matches_special(w, delta(w, wn, Order::S), 'x', n, 8), "Ds(w^n) != x^n" + at);
    o.require(matches_special(w, delta(w, wn, Order::R), 'y', n - 1, 8), "Dr(w^n) != y^(n-1)" + at);
    o.require(matches_special(w, delta(w, zn, Order::S), 'y', n, 8), "Ds(z^n) != y^n" + at);
    o.require(matches_special(w, delta(w, zn, Order::R), 'x', n - 1, 8), "Dr(z^n) != x^(n-1)" + at);
  }
  DiagramWindow sw = chamanara_window(-11, 11);
  auto sig = sigma_scan(sw, 3);
  std::set<std::string> found, expected;
  for (const auto& e : sig.singular) {
    std::string l = special_label(w, e.path, 3);
    o.require(!l.empty(), "unexpected singular path " + describe(sw, e.path));
    o.require(e.m >= -3 && e.m <= 3 && e.n >= -3 && e.n <= 3, "pivot out of range");
    found.insert(l);
  }
  for (long n = -3; n <= 3; ++n) {
    expected.insert("w" + std::to_string(n));
    expected.insert("z" + std::to_string(n));
    if (n < 3) {
      expected.insert("x" + std::to_string(n));
      expected.insert("y" + std::to_string(n));
    }
  }
  o.require(sig.inconclusive.empty(), "inconclusive sigma candidates");
  o.require(found == expected && sig.singular.size() == expected.size(), "singular set is not the special family");
  State st = chamanara_state();
  auto sr = validate_state(sw, st);
  o.require(sr.ok() && sr.invariant && *sr.invariant == 1, "state invalid or invariant != 1");
  o.require(k0_classify(system_from_window(sw)).text() == "Z[1/2]", "K0 is not Z[1/2]");
  for (long n = -3; n <= 3; ++n) o.require(state_pairing(st, n, {Z(1)}) == pow2(-n), "pairing != 2^-n");
  if (o.pass) o.detail = std::to_string(found.size()) + " singular paths";
  return o;
}

Outcome crit_flatness() {
  Outcome o;
  std::mt19937_64 rng(4004);
  for (const auto& p : classes())
    for (int k = 0; k < 10; ++k) {
      TripleData t = random_complete_triple(p, rng, 100);
      auto cr = completeness_check(t, 100);
      o.require(cr.keane_certified() && cr.rh_certified(), "no depth-100 certificate");
      SurfaceDiagram sd = build(t, -6, 6);
      auto fl = verify_flatness(sd, 6);
      o.require(fl.sigma_empty(), "sigma_scan not empty on " + p.to_string());
      o.require(fl.yz_ok(), "Y/Z check fails on " + p.to_string());
    }
  if (o.pass) o.detail = "20 triples";
  return o;
}

Outcome crit_surface_structure() {
  Outcome o;
  for (const std::string cls : {"h2_hyperelliptic", "h2_second_class"}) {
    SurfaceDiagram sd = build(load_triple(cls), -6, 6);
    o.require(horizontal_r_minimal(sd), cls + ": horizontal paths are not r-min");
    auto se = s_extreme_classes(sd, 6);
    o.require(se.verdict == Verdict::Certified && se.I == 1 && se.J == 1, cls + ": I, J != 1");
    o.require(standing_hypotheses_check(sd.window, 6).certified(), cls + ": standing hypotheses not certified");
    o.require(verify_standard(sd, 6).certified(), cls + ": standard-diagram checks not certified");
    for (long n = sd.window.lo() + 1; n <= sd.window.hi(); ++n)
      o.require(abs(determinant(edge_matrix(sd.window, n))) == 1, cls + ": connecting matrix not unimodular");
    auto k0 = k0_classify(system_from_window(sd.window));
    o.require(k0.kind == K0Kind::Free && k0.d == 4, cls + ": stage K0 is not Z^4");
    ThetaData td{se.I, se.J, {}};
    for (long i = 1; i <= td.I; ++i)
      for (long j = td.I + 1; j <= td.I + td.J; ++j) td.star.emplace_back(i, j);
    auto seq = theta_sequence(td);
    o.require(seq.exact_middle && seq.i_star_iso, cls + ": i_* is not an isomorphism");
  }
  if (o.pass) o.detail = "both fixture triples";
  return o;
}

Outcome crit_conservation() {
  Outcome o;
  std::mt19937_64 rng(6006);
  for (const auto& p : classes()) {
    TripleData t = random_complete_triple(p, rng, 100);
    Q area = t.area();
    TripleData cur = t;
    for (int k = 0; k < 50; ++k) {
      bool rv = rng() % 2;
      auto s = rv ? rv_step(cur) : rh_step(cur);
      const TripleData& a = s.after;
      o.require(a.area() == area && dot(a.lambda, a.h()) == area, "area changes at step " + std::to_string(k));
      auto forward = rv ? s : rv_step(a);  // the RV step whose Theta relates the two forms
      const TripleData& from = rv ? s.before : a;
      const TripleData& to = rv ? a : s.before;
      o.require(forward.after == to, "RV step does not invert the RH step");
      IntMatrix th = forward.matrix;
      o.require(th * omega(from.perm) * th.transpose() == omega(to.perm), "Theta Omega Theta^T != Omega'");
      cur = a;
    }
    Q hs = sum(t.h());
    TripleData norm = t;
    for (auto& v : norm.tau) v /= hs;
    o.require(sum(norm.h()) == 1, "normalization failed");
    for (int k = 0; k < 50; ++k) {
      norm = renorm_step(norm, Side::Plus).step.after;
      o.require(sum(norm.h()) == 1, "|h| != 1 after renormalized step " + std::to_string(k));
    }
  }
  if (o.pass) o.detail = "50 mixed and 50 renormalized steps per class";
  return o;
}

Outcome crit_phi_charts() {
  Outcome o;
  std::mt19937_64 rng(7007);
  DiagramWindow dw = decimal_window(-6, 8);
  State ds = decimal_state();
  auto dpaths = finite_paths(dw, 0, 4);
  for (int k = 0; k < 100; ++k) {
    const FinitePath& core = dpaths[rng() % dpaths.size()];
    bool smax = rng() % 2;
    auto x = make_path(TailKind::RMin, core, smax ? TailKind::SMax : TailKind::SMin);
    Q expected = smax ? Q(1, 10000) : Q(0);
    Q place = 1;
    for (int d : core.edges) {
      place /= 10;
      expected += d * place;
    }
    o.require(phi_plus(dw, ds, x, 0) == expected, "decimal phi_plus differs from the expansion");
  }
  SurfaceDiagram sd = build(load_triple("h2_hyperelliptic"), -8, 8);
  const DiagramWindow& w = sd.window;
  auto pick = [&](long m, long n) {
    auto all = finite_paths(w, m, n);
    return all[rng() % all.size()];
  };
  for (int k = 0; k < 100; ++k) {
    FinitePath p = pick(-1, 2);
    FinitePath left = pick(-3, -1);
    while (path_range(w, left) != path_source(w, p)) left = pick(-3, -1);
    FinitePath right = pick(2, 4);
    while (path_source(w, right) != path_range(w, p)) right = pick(2, 4);
    auto x = make_path(rng() % 2 ? TailKind::RMin : TailKind::RMax, left, TailKind::SMin);
    auto y = make_path(TailKind::RMin, right, rng() % 2 ? TailKind::SMin : TailKind::SMax);
    o.require(phi_shift_check(w, sd.state, p, x, y).holds(), "phi shift identity fails");
  }
  // Overlapping quad pairs p inside q.
  struct Span {
    long m, n;
    std::vector<ChartDatum> quads;
  };
  std::vector<Span> spans;
  for (long m = -5; m <= -1; ++m)
    for (long n = 1; n <= 5; ++n) spans.push_back({m, n, all_quads(w, m, n)});
  int pairs = 0;
  for (int attempt = 0; attempt < 20000 && pairs < 50; ++attempt) {
    const Span& a = spans[rng() % spans.size()];
    const Span& b = spans[rng() % spans.size()];
    if (a.quads.empty() || b.quads.empty() || b.m > a.m || b.n < a.n) continue;
    const ChartDatum& p = a.quads[rng() % a.quads.size()];
    const ChartDatum& q = b.quads[rng() % b.quads.size()];
    auto res = chart_transition(w, sd.state, p, q, 10, rng());
    if (res.samples == 0) continue;
    ++pairs;
    o.require(res.constant && !res.violation, "chart transition not constant: " + res.violation.value_or(""));
  }
  o.require(pairs == 50, "only " + std::to_string(pairs) + " overlapping quad pairs found");
  if (o.pass) o.detail = "100 expansions, 100 shifts, 50 quad pairs";
  return o;
}

Outcome crit_successor_round_trip() {
  Outcome o;
  size_t checked = 0;
  for (const char* name : {"chamanara_window.json", "decimal_window.json", "h2_hyperelliptic_window.json",
                           "h2_second_class_window.json", "random_window_1.json", "random_window_2.json",
                           "random_window_3.json", "random_window_4.json"}) {
    DiagramWindow w = load_fixture_window(name);
    for (long m = w.lo(); m < w.hi(); ++m)
      for (long n = m + 1; n <= w.hi(); ++n) {
        if (path_count(w, m, n) > 10000) continue;
        auto all = finite_paths(w, m, n);
        for (Order ord : {Order::R, Order::S}) {
          for (const auto& p : all) {
            auto s = successor(w, p, ord, Step::Succ);
            if (!s) continue;
            ++checked;
            o.require(successor(w, *s, ord, Step::Pred) == p, std::string(name) + ": pred(succ(p)) != p");
            o.require(compare_paths(w, p, *s, ord) == Cmp::LT, std::string(name) + ": succ(p) is not above p");
            for (const auto& z : all)
              if (compare_paths(w, p, z, ord) == Cmp::LT && compare_paths(w, z, *s, ord) == Cmp::LT)
                o.require(false, std::string(name) + ": a path lies strictly between p and succ(p)");
          }
          for (const auto& p : all) {
            auto s = successor(w, p, ord, Step::Pred);
            if (s) o.require(successor(w, *s, ord, Step::Succ) == p, std::string(name) + ": succ(pred(p)) != p");
          }
        }
      }
  }
  if (o.pass) o.detail = std::to_string(checked) + " successor pairs";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget;  // seconds; 0 means no time bound
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "inverse law P R = R P = Id", 5, crit_inverse_law},
      {2, "density identity and Jacobian", 10, crit_density},
      {3, "Chamanara diagram", 0, crit_chamanara},
      {4, "flatness of surface diagrams", 0, crit_flatness},
      {5, "surface diagram structure", 0, crit_surface_structure},
      {6, "conservation along induction", 0, crit_conservation},
      {7, "expansion maps and chart transitions", 0, crit_phi_charts},
      {8, "successor/predecessor round trip", 0, crit_successor_round_trip},
  };
  int failures = 0;
  for (const auto& c : all) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && secs >= c.budget) {
      o.pass = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget)) + " s budget)";
    }
    std::ostringstream t;
    t << std::fixed << std::setprecision(2) << secs;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << t.str()
              << " s] " << o.detail << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
