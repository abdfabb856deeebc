#include "bsurf/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "CLI11.hpp"
#include "bsurf/error.hpp"
#include "bsurf/fixtures.hpp"
#include "bsurf/io.hpp"
#include "bsurf/ktheory.hpp"
#include "bsurf/surface.hpp"
#include "json.hpp"

namespace bsurf {

namespace {

using ojson = nlohmann::ordered_json;

class Table {
 public:
  explicit Table(std::vector<std::string> head) : head_(std::move(head)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string render() const {
    std::vector<size_t> width(head_.size(), 0);
    auto measure = [&](const std::vector<std::string>& r) {
      for (size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
    };
    measure(head_);
    for (const auto& r : rows_) measure(r);
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        if (i + 1 < r.size()) s += std::string(width[i] - display_width(r[i]) + 2, ' ');
      }
      os << s << "\n";
    };
    line(head_);
    for (const auto& r : rows_) line(r);
    return os.str();
  }

 private:
  // counts UTF-8 code points
  static size_t display_width(const std::string& s) {
    return static_cast<size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  }
  std::vector<std::string> head_;
  std::vector<std::vector<std::string>> rows_;
};

struct Output {
  bool json = false;
  ojson doc = ojson::object();
  std::ostringstream text;
  int code = 0;
};

std::string approx_text(const Q& q) {
  std::ostringstream os;
  os.precision(6);
  os << "≈" << approx(q);
  return os.str();
}

ojson rationals(const QVec& v) {
  ojson a = ojson::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

ojson matrix_json(const IntMatrix& m) {
  ojson a = ojson::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    a.push_back(row);
  }
  return a;
}

ojson certificate_json(const CertificateReport& r) {
  ojson a = ojson::array();
  for (const auto& it : r.items) a.push_back({{"name", it.name}, {"verdict", to_string(it.verdict)}, {"detail", it.detail}});
  return a;
}

void certificate_table(Output& o, const CertificateReport& r) {
  Table t({"item", "verdict", "detail"});
  for (const auto& it : r.items) t.add({it.name, to_string(it.verdict), it.detail});
  o.text << t.render();
}

DiagramWindow load_window(const std::string& source, long depth) {
  long reach = depth + 8;
  if (source == "chamanara") return chamanara_window(-reach, reach);
  if (source == "decimal") return decimal_window(0, std::max<long>(depth, 1));
  return diagram_from_json(read_file(source));
}

State load_state(const std::string& source) {
  if (source == "chamanara") return chamanara_state();
  if (source == "decimal") return decimal_state();
  return state_from_json(read_file(source));
}

struct TripleArgs {
  std::string pi, lambda, tau, file;
  void add(CLI::App* app) {
    app->add_option("--pi", pi, "permutation pair, e.g. \"A B C D / D C B A\"");
    app->add_option("--lambda", lambda, "comma-separated rational lengths");
    app->add_option("--tau", tau, "comma-separated rational suspension data");
    app->add_option("--triple", file, "triple JSON file (replaces --pi/--lambda/--tau)");
  }
  TripleData triple() const {
    if (!file.empty()) return triple_from_json(read_file(file));
    if (pi.empty() || lambda.empty() || tau.empty()) fail(ErrorKind::Usage, "give --triple or all of --pi, --lambda, --tau");
    return make_triple(parse_permutation(pi), parse_rational_list(lambda), parse_rational_list(tau));
  }
};

std::string matrix_label(const IntMatrix& m, const PermutationPair& p) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return "I+E[" + p.alphabet[i] + "," + p.alphabet[j] + "]";
  return "I";
}

// ---- induct ----------------------------------------------------------------

void cmd_induct(Output& o, const TripleArgs& ta, bool rh, long steps, bool renorm) {
  TripleData cur = ta.triple();
  Q area0 = cur.area();
  Table t({"step", "type", "winner", "loser", "matrix", "pi", "area", "|lambda|", "|h|"});
  ojson js = ojson::array();
  for (long k = 1; k <= steps; ++k) {
    InductionStep s;
    Q scale = 1;
    try {
      if (renorm) {
        auto r = renorm_step(cur, rh ? Side::Plus : Side::Minus);
        s = r.step;
        scale = r.scale;
      } else {
        s = rh ? rh_step(cur) : rv_step(cur);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Hypothesis) throw;
      o.text << t.render() << "stopped before step " << k << ": " << e.what() << "\n";
      o.doc["stopped"] = {{"step", k}, {"message", e.what()}};
      o.code = 1;
      o.doc["steps"] = js;
      return;
    }
    const auto& p = s.before.perm;
    bool area_ok = renorm || s.after.area() == area0;
    t.add({std::to_string(k), std::to_string(s.type), p.alphabet[static_cast<size_t>(s.winner)],
           p.alphabet[static_cast<size_t>(s.loser)], matrix_label(s.matrix, p), s.after.perm.to_string(),
           area_ok ? "conserved" : "CHANGED", approx_text(sum(s.after.lambda)), approx_text(sum(s.after.h()))});
    ojson step{{"step", k},
               {"direction", to_string(s.direction)},
               {"type", s.type},
               {"winner", p.alphabet[static_cast<size_t>(s.winner)]},
               {"loser", p.alphabet[static_cast<size_t>(s.loser)]},
               {"matrix", matrix_json(s.matrix)},
               {"pi", s.after.perm.to_string()},
               {"lambda", rationals(s.after.lambda)},
               {"tau", rationals(s.after.tau)},
               {"area", to_string(s.after.area())}};
    if (renorm) step["scale"] = to_string(scale);
    js.push_back(step);
    if (!area_ok) o.code = 1;
    cur = s.after;
  }
  o.doc["steps"] = js;
  o.text << t.render();
}

// ---- diagram -----------------------------------------------------------------

void cmd_diagram_build(Output& o, const TripleArgs& ta, const std::vector<long>& window, const std::string& out,
                       const std::string& state_out) {
  if (window.size() != 2 || window[0] >= window[1]) fail(ErrorKind::Usage, "--window takes two levels m < n");
  SurfaceDiagram sd = build(ta.triple(), window[0], window[1]);
  if (!out.empty()) write_file(out, diagram_to_json(sd.window));
  if (!state_out.empty()) write_file(state_out, state_to_json(sd.state, window[0], window[1]));
  Table t({"level", "rule", "type", "edge *", "consistent"});
  ojson log = ojson::array();
  const auto& alph = sd.alphabet();
  for (const auto& r : sd.triple_log) {
    std::string e = alph[static_cast<size_t>(r.source)] + " -> " + alph[static_cast<size_t>(r.range)];
    t.add({std::to_string(r.level), r.rule, std::to_string(r.type), e, r.consistent ? "yes" : "NO"});
    log.push_back({{"level", r.level}, {"rule", r.rule}, {"type", r.type}, {"source", alph[static_cast<size_t>(r.source)]},
                   {"range", alph[static_cast<size_t>(r.range)]}, {"consistent", r.consistent}});
    if (!r.consistent) o.code = 1;
  }
  o.doc["window"] = {window[0], window[1]};
  o.doc["A0"] = alph[static_cast<size_t>(sd.A0)];
  o.doc["A1"] = alph[static_cast<size_t>(sd.A1)];
  o.doc["levels"] = log;
  if (!out.empty()) o.doc["out"] = out;
  o.text << "A0 = " << alph[static_cast<size_t>(sd.A0)] << ", A1 = " << alph[static_cast<size_t>(sd.A1)] << "\n"
         << t.render();
  if (!out.empty()) o.text << "wrote " << out << "\n";
}

void cmd_diagram_check(Output& o, const std::string& in, const std::string& state, long depth) {
  DiagramWindow w = load_window(in, depth);
  auto v = validate_window(w);
  ojson vs = ojson::array();
  for (const auto& x : v.violations) vs.push_back({{"code", x.code}, {"level", x.level}, {"detail", x.detail}});
  o.doc["window"] = {w.lo(), w.hi()};
  o.doc["violations"] = vs;
  o.text << "window [" << w.lo() << ", " << w.hi() << "]: " << (v.ok() ? "valid" : "INVALID") << "\n";
  for (const auto& x : v.violations) o.text << "  " << x.code << " at level " << x.level << ": " << x.detail << "\n";
  if (!v.ok()) {
    o.code = 1;
    return;
  }
  if (w.has_level(-depth) && w.has_level(depth)) {
    auto std_rep = standing_hypotheses_check(w, depth);
    o.doc["standing"] = certificate_json(std_rep);
    certificate_table(o, std_rep);
    if (std_rep.violated()) o.code = 1;
  } else {
    o.text << "standing hypotheses skipped: window does not span [-" << depth << ", " << depth << "]\n";
    o.doc["standing"] = nullptr;
  }
  if (!state.empty()) {
    auto sr = validate_state(w, load_state(state));
    o.doc["state"] = {{"violations", sr.violations}, {"warnings", sr.warnings},
                      {"invariant", sr.invariant ? ojson(to_string(*sr.invariant)) : ojson(nullptr)}};
    o.text << "state: " << (sr.ok() ? "valid" : "INVALID");
    if (sr.invariant) o.text << ", level invariant " << to_string(*sr.invariant);
    o.text << "\n";
    for (const auto& s : sr.violations) o.text << "  " << s << "\n";
    for (const auto& s : sr.warnings) o.text << "  warning: " << s << "\n";
    if (!sr.ok()) o.code = 1;
  }
}

// ---- paths sigma ---------------------------------------------------------------

// Names a path of the Chamanara window as w^n, x^n, y^n or z^n by comparing
// realized edges on the whole window.
std::string chamanara_label(const DiagramWindow& w, const PathDescriptor& x) {
  using Maker = PathDescriptor (*)(const DiagramWindow&, long);
  const std::pair<const char*, Maker> families[] = {
      {"w", chamanara_w}, {"x", chamanara_x}, {"y", chamanara_y}, {"z", chamanara_z}};
  for (long n = w.lo() + 2; n < w.hi(); ++n)
    for (const auto& [name, make] : families)
      if (same_on(w, x, make(w, n), w.lo() + 1, w.hi())) return std::string(name) + "^" + std::to_string(n);
  return "";
}

void sigma_report(Output& o, const DiagramWindow& w, const SigmaReport& r, bool label) {
  Table t({label ? "name" : "path", "m", "n", "pivot", "Ds Dr x", "Dr Ds x"});
  ojson js = ojson::array();
  for (const auto& e : r.singular) {
    std::string name = label ? chamanara_label(w, e.path) : describe(w, e.path);
    if (name.empty()) name = describe(w, e.path);
    std::string sr = label ? chamanara_label(w, e.sr) : "", rs = label ? chamanara_label(w, e.rs) : "";
    if (sr.empty()) sr = describe(w, e.sr);
    if (rs.empty()) rs = describe(w, e.rs);
    t.add({name, std::to_string(e.m), std::to_string(e.n), e.pivot_edge, sr, rs});
    js.push_back({{"path", describe(w, e.path)}, {"m", e.m}, {"n", e.n}, {"pivot", e.pivot_edge}, {"sr", describe(w, e.sr)},
                  {"rs", describe(w, e.rs)}});
  }
  o.doc["depth"] = r.depth;
  o.doc["singular"] = js;
  o.doc["regular"] = r.regular.size();
  o.doc["inconclusive"] = r.inconclusive;
  o.doc["shortcut_checked"] = r.shortcut_checked;
  o.doc["shortcut_failures"] = r.shortcut_failures;
  o.doc["max_fiber"] = r.max_fiber;
  if (!r.singular.empty()) o.text << t.render();
  o.text << "singular " << r.singular.size() << ", regular " << r.regular.size() << ", inconclusive "
         << r.inconclusive.size() << ", shortcut composites checked " << r.shortcut_checked << " (failures "
         << r.shortcut_failures << ")\n";
  for (const auto& s : r.inconclusive) o.text << "  inconclusive: " << s << "\n";
  if (r.shortcut_failures > 0) o.code = 1;
}

// ---- phi / charts --------------------------------------------------------------------

void cmd_phi(Output& o, const std::string& in, const std::string& state, const std::string& path,
             std::optional<long> level) {
  DiagramWindow w = load_window(in, default_depth());
  State st = load_state(state);
  PathDescriptor x = path_from_json(w, json_argument(path));
  long kp = level.value_or(x.core.start), km = level.value_or(x.core.end());
  Q plus = phi_plus(w, st, x, kp), minus = phi_minus(w, st, x, km);
  o.doc["path"] = describe(w, x);
  o.doc["phi_plus"] = {{"level", kp}, {"value", to_string(plus)}};
  o.doc["phi_minus"] = {{"level", km}, {"value", to_string(minus)}};
  Table t({"map", "level", "value", ""});
  t.add({"phi+", std::to_string(kp), to_string(plus), approx_text(plus)});
  t.add({"phi-", std::to_string(km), to_string(minus), approx_text(minus)});
  o.text << describe(w, x) << "\n" << t.render();
}

void cmd_chart_transition(Output& o, const std::string& in, const std::string& state, const std::string& p,
                          const std::string& q, int samples, unsigned long seed) {
  DiagramWindow w = load_window(in, default_depth());
  State st = load_state(state);
  ChartDatum cp = chart_from_json(w, json_argument(p)), cq = chart_from_json(w, json_argument(q));
  auto r = chart_transition(w, st, cp, cq, samples, seed);
  o.doc["samples"] = r.samples;
  o.doc["constant"] = r.constant ? ojson::array({to_string(r.constant->first), to_string(r.constant->second)})
                                 : ojson(nullptr);
  o.doc["violation"] = r.violation ? ojson(*r.violation) : ojson(nullptr);
  o.doc["note"] = r.note;
  o.text << "samples " << r.samples << "\n";
  if (r.constant)
    o.text << "constant offset (" << to_string(r.constant->first) << ", " << to_string(r.constant->second) << ")\n";
  if (r.violation) {
    o.text << "VIOLATION: " << *r.violation << "\n";
    o.code = 1;
  }
  if (!r.note.empty()) o.text << "note: " << r.note << "\n";
}

// ---- keane / density / rauzy -------------------------------------------------------------

void cmd_keane(Output& o, const TripleArgs& ta, long depth) {
  PermutationPair p;
  QVec lambda;
  std::optional<TripleData> t;
  if (!ta.file.empty() || !ta.tau.empty()) {
    t = ta.triple();
    p = t->perm;
    lambda = t->lambda;
  } else {
    if (ta.pi.empty() || ta.lambda.empty()) fail(ErrorKind::Usage, "give --pi and --lambda (or --triple)");
    p = parse_permutation(ta.pi);
    lambda = parse_rational_list(ta.lambda);
    if (lambda.size() != p.d()) fail(ErrorKind::Usage, "lambda has the wrong length");
    for (const auto& x : lambda)
      if (x <= 0) fail(ErrorKind::Domain, "lambda must be positive");
  }
  auto rep = keane_check(p, lambda, depth);
  if (t) {
    auto c = completeness_check(*t, depth);
    auto wins = [&](const std::vector<long>& v) {
      std::string s;
      for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + p.alphabet[i] + ":" + std::to_string(v[i]);
      return s;
    };
    rep.items.push_back({"RV run", c.keane_certified() ? Verdict::Certified : c.rv_failure ? Verdict::Violated : Verdict::Inconclusive,
                         c.rv_failure ? "fails at step " + std::to_string(*c.rv_failure) + ": " + c.rv_message
                                      : "winners " + wins(c.rv_wins)});
    rep.items.push_back({"RH run", c.rh_certified() ? Verdict::Certified : c.rh_failure ? Verdict::Violated : Verdict::Inconclusive,
                         c.rh_failure ? "fails at step " + std::to_string(*c.rh_failure) + ": " + c.rh_message
                                      : "winners " + wins(c.rh_wins)});
  }
  o.doc["depth"] = depth;
  o.doc["items"] = certificate_json(rep);
  certificate_table(o, rep);
  if (rep.violated()) o.code = 1;
}

void cmd_density(Output& o, const std::string& pi, size_t samples, unsigned long seed, size_t jac) {
  auto p = parse_permutation(pi);
  auto r = density_identity_check(p, samples, seed, jac);
  o.doc["samples"] = r.samples.size();
  o.doc["identity_holds"] = r.identity_holds;
  o.doc["preimages_hold"] = r.preimages_hold;
  o.doc["jacobian_checked"] = r.jacobian_checked;
  o.doc["jacobian_matches"] = r.jacobian_matches;
  o.text << "identity holds at " << r.identity_holds << "/" << r.samples.size() << " samples\n"
         << "preimages map back at " << r.preimages_hold << "/" << r.samples.size() << " samples\n"
         << "closed-form Jacobian matches at " << r.jacobian_matches << "/" << r.jacobian_checked << " samples\n";
  if (r.identity_holds != r.samples.size() || r.preimages_hold != r.samples.size() ||
      r.jacobian_matches != r.jacobian_checked)
    o.code = 1;
}

void cmd_rauzy(Output& o, const std::string& pi, const std::string& out) {
  auto g = rauzy_graph(parse_permutation(pi));
  if (!out.empty()) write_file(out, rauzy_to_dot(g));
  Table t({"node", "permutation", "type 0", "type 1"});
  std::vector<std::string> next0(g.nodes.size()), next1(g.nodes.size());
  for (const auto& a : g.edges) (a.type == 0 ? next0 : next1)[a.from] = std::to_string(a.to);
  ojson nodes = ojson::array(), edges = ojson::array();
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    t.add({std::to_string(i), g.nodes[i].to_string(), next0[i], next1[i]});
    nodes.push_back(g.nodes[i].to_string());
  }
  for (const auto& a : g.edges) edges.push_back({{"from", a.from}, {"to", a.to}, {"type", a.type}});
  o.doc["nodes"] = nodes;
  o.doc["edges"] = edges;
  o.text << "nodes " << g.nodes.size() << ", edges " << g.edges.size() << "\n" << t.render();
  if (!out.empty()) o.text << "wrote " << out << "\n";
}

// ---- k-theory ---------------------------------------------------------------------------

void cmd_k0(Output& o, const std::string& in, long from, long to) {
  DiagramWindow w = load_window(in, std::max(std::abs(from), std::abs(to)));
  if (in == "chamanara" || in == "decimal") w.ensure(from, to);
  auto sys = system_from_window(w);
  auto r = k0_stage(sys, from, to);
  std::vector<std::string> diag;
  for (const auto& x : r.snf.diagonal) diag.push_back(to_string(x));
  o.doc["from"] = from;
  o.doc["to"] = to;
  o.doc["composite"] = matrix_json(r.composite);
  o.doc["invariant_factors"] = diag;
  o.doc["rank"] = r.rank;
  o.doc["cokernel"] = r.cokernel();
  o.doc["unimodular"] = r.unimodular;
  o.text << "composite E[" << from << ", " << to << "]:\n" << render(r.composite) << "\ninvariant factors:";
  for (const auto& d : diag) o.text << " " << d;
  o.text << "\nrank " << r.rank << ", cokernel " << r.cokernel() << ", unimodular " << (r.unimodular ? "yes" : "no")
         << "\n";
}

void cmd_k0_classify(Output& o, const std::string& in) {
  DiagramWindow w = load_window(in, default_depth());
  auto c = k0_classify(system_from_window(w));
  o.doc["group"] = c.text();
  o.doc["rational_rank"] = c.rational_rank;
  o.text << "K0 = " << c.text() << "\n";
}

void cmd_theta(Output& o, long I, long J, const std::string& star) {
  ThetaData td{I, J, parse_star(star)};
  auto r = theta_sequence(td);
  std::vector<std::string> tors;
  for (const auto& x : r.coker_torsion) tors.push_back(to_string(x));
  o.doc["theta"] = matrix_json(r.theta);
  o.doc["sigma"] = matrix_json(r.sigma);
  o.doc["kernel"] = matrix_json(r.kernel);
  o.doc["coker_torsion"] = tors;
  o.doc["coker_free_rank"] = r.coker_free_rank;
  o.doc["sigma_theta_zero"] = r.sigma_theta_zero;
  o.doc["exact_middle"] = r.exact_middle;
  o.doc["i_star_iso"] = r.i_star_iso;
  o.text << "theta:\n" << render(r.theta) << "\nsigma:\n" << render(r.sigma) << "\n";
  o.text << "ker theta: rank " << r.kernel.cols() << "\n";
  if (r.kernel.cols() > 0) o.text << render(r.kernel) << "\n";
  o.text << "coker theta: free rank " << r.coker_free_rank << ", torsion";
  if (tors.empty()) o.text << " none";
  for (const auto& t : tors) o.text << " Z/" << t;
  o.text << "\nsigma o theta = 0: " << (r.sigma_theta_zero ? "yes" : "NO") << "\nexact at the middle: "
         << (r.exact_middle ? "yes" : "no") << "\ni_* isomorphism (I = 1 or J = 1): " << (r.i_star_iso ? "yes" : "no")
         << "\n";
  if (!r.sigma_theta_zero) o.code = 1;
}

// ---- chamanara ------------------------------------------------------------------------------

void cmd_chamanara(Output& o, long depth) {
  DiagramWindow w = chamanara_window(-depth - 8, depth + 8);
  auto sig = sigma_scan(w, depth);
  o.text << "singular set at depth " << depth << ":\n";
  Output sub;
  sigma_report(sub, w, sig, true);
  o.text << sub.text.str();
  o.doc["sigma"] = sub.doc;

  Table dt({"n", "Ds(w^n)", "Dr(w^n)", "Ds(z^n)", "Dr(z^n)"});
  ojson deltas = ojson::array();
  for (long n = -depth; n <= depth; ++n) {
    auto lab = [&](const PathDescriptor& x) {
      auto s = chamanara_label(w, x);
      return s.empty() ? describe(w, x) : s;
    };
    auto wn = chamanara_w(w, n), zn = chamanara_z(w, n);
    std::vector<std::string> row{std::to_string(n), lab(delta(w, wn, Order::S)), lab(delta(w, wn, Order::R)),
                                 lab(delta(w, zn, Order::S)), lab(delta(w, zn, Order::R))};
    deltas.push_back({{"n", n}, {"Ds_w", row[1]}, {"Dr_w", row[2]}, {"Ds_z", row[3]}, {"Dr_z", row[4]}});
    dt.add(row);
  }
  o.text << "\n" << dt.render();
  o.doc["delta"] = deltas;

  State st = chamanara_state();
  auto sr = validate_state(w, st);
  auto k0 = k0_classify(system_from_window(w));
  o.text << "\nstate (2^n, 2^-n): " << (sr.ok() ? "valid" : "INVALID");
  if (sr.invariant) o.text << ", level invariant " << to_string(*sr.invariant);
  o.text << "\nK0 = " << k0.text() << "\n";
  Table pt({"n", "<nu_s, [a_pp]>"});
  ojson pairs = ojson::array();
  for (long n = -depth; n <= depth; ++n) {
    Q v = state_pairing(st, n, {Z(1)});
    pt.add({std::to_string(n), to_string(v)});
    pairs.push_back({{"n", n}, {"value", to_string(v)}});
  }
  o.text << "\npairing with a_{p,p}, p in E_{m,n}:\n" << pt.render();
  o.doc["state_valid"] = sr.ok();
  o.doc["invariant"] = sr.invariant ? ojson(to_string(*sr.invariant)) : ojson(nullptr);
  o.doc["k0"] = k0.text();
  o.doc["pairing"] = pairs;
  if (!sr.ok()) o.code = 1;
}

}  // namespace

long default_depth(long fallback) {
  if (const char* env = std::getenv("BSURF_DEPTH_DEFAULT")) {
    try {
      long v = std::stol(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bsurf: ordered bi-infinite Bratteli diagrams and translation surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string emit = "table";
  app.add_option("--emit", emit, "report format")->check(CLI::IsMember({"table", "json"}));
  long depth = default_depth();
  Output o;
  std::function<void()> action;

  TripleArgs ta;
  // induct
  auto* induct = app.add_subcommand("induct", "run RV (R) or RH (P) induction steps");
  std::string dir;
  long steps = 10;
  bool renorm = false;
  induct->add_option("direction", dir, "rv or rh")->required()->check(CLI::IsMember({"rv", "rh"}));
  ta.add(induct);
  induct->add_option("--steps", steps, "number of steps")->check(CLI::PositiveNumber);
  induct->add_flag("--renorm", renorm, "renormalize (Plus for rh, Minus for rv)");
  induct->callback([&] { action = [&] { cmd_induct(o, ta, dir == "rh", steps, renorm); }; });

  // diagram
  auto* diagram = app.add_subcommand("diagram", "build or check a diagram");
  diagram->require_subcommand(1);
  auto* dbuild = diagram->add_subcommand("build", "surface diagram of a triple");
  std::vector<long> window{-3, 3};
  std::string out_path, state_out, in_path, state_path;
  ta.add(dbuild);
  dbuild->add_option("--window", window, "levels m n")->expected(2);
  dbuild->add_option("--out", out_path, "diagram JSON output");
  dbuild->add_option("--state-out", state_out, "state JSON output");
  dbuild->callback([&] { action = [&] { cmd_diagram_build(o, ta, window, out_path, state_out); }; });
  auto* dcheck = diagram->add_subcommand("check", "validate a diagram and its standing hypotheses");
  dcheck->add_option("--in", in_path, "diagram JSON, or chamanara / decimal")->required();
  dcheck->add_option("--state", state_path, "state JSON, or chamanara / decimal");
  dcheck->add_option("--depth", depth, "certificate depth")->check(CLI::PositiveNumber);
  dcheck->callback([&] { action = [&] { cmd_diagram_check(o, in_path, state_path, depth); }; });
  auto* ddot = diagram->add_subcommand("dot", "export a diagram as DOT");
  ddot->add_option("--in", in_path, "diagram JSON, or chamanara / decimal")->required();
  ddot->add_option("--out", out_path, "DOT output")->required();
  ddot->callback([&] {
    action = [&] {
      DiagramWindow w = load_window(in_path, depth);
      write_file(out_path, diagram_to_dot(w));
      o.doc["out"] = out_path;
      o.text << "wrote " << out_path << "\n";
    };
  });

  // paths
  auto* paths = app.add_subcommand("paths", "path-space reports");
  paths->require_subcommand(1);
  auto* sigma = paths->add_subcommand("sigma", "scan for the singular set");
  sigma->add_option("--in", in_path, "diagram JSON, or chamanara / decimal")->required();
  sigma->add_option("--depth", depth, "scan depth")->check(CLI::PositiveNumber);
  sigma->callback([&] {
    action = [&] {
      DiagramWindow w = load_window(in_path, depth);
      sigma_report(o, w, sigma_scan(w, depth), in_path == "chamanara");
    };
  });

  // phi
  auto* phi = app.add_subcommand("phi", "expansion maps of a path");
  std::string path_arg;
  std::optional<long> level;
  phi->add_option("--in", in_path, "diagram JSON, or chamanara / decimal")->required();
  phi->add_option("--state", state_path, "state JSON, or chamanara / decimal")->required();
  phi->add_option("--path", path_arg, "path JSON (file or inline)")->required();
  phi->add_option("--level", level, "level k");
  phi->callback([&] { action = [&] { cmd_phi(o, in_path, state_path, path_arg, level); }; });

  // charts
  auto* charts = app.add_subcommand("charts", "surface charts");
  charts->require_subcommand(1);
  auto* trans = charts->add_subcommand("transition", "check a chart transition on sampled points");
  std::string p_arg, q_arg;
  int samples = 50;
  unsigned long seed = 0;
  trans->add_option("--in", in_path, "diagram JSON, or chamanara / decimal")->required();
  trans->add_option("--state", state_path, "state JSON, or chamanara / decimal")->required();
  trans->add_option("--p", p_arg, "chart JSON (file or inline)")->required();
  trans->add_option("--q", q_arg, "chart JSON (file or inline)")->required();
  trans->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
  trans->add_option("--seed", seed, "random seed")->required();
  trans->callback([&] { action = [&] { cmd_chart_transition(o, in_path, state_path, p_arg, q_arg, samples, seed); }; });

  // keane
  auto* keane = app.add_subcommand("keane", "Keane and RH-completeness certificates to a depth");
  ta.add(keane);
  keane->add_option("--depth", depth, "orbit / induction depth")->check(CLI::PositiveNumber);
  keane->callback([&] { action = [&] { cmd_keane(o, ta, depth); }; });

  // density-check
  auto* density = app.add_subcommand("density-check", "invariant density identity at random points");
  std::string pi;
  size_t nsamples = 100, jac = 20;
  density->add_option("--pi", pi, "permutation pair")->required();
  density->add_option("--samples", nsamples, "sample count")->check(CLI::PositiveNumber);
  density->add_option("--seed", seed, "random seed")->required();
  density->add_option("--jacobian", jac, "samples with the brute-force Jacobian");
  density->callback([&] { action = [&] { cmd_density(o, pi, nsamples, seed, jac); }; });

  // rauzy-graph
  auto* rauzy = app.add_subcommand("rauzy-graph", "Rauzy class of a permutation pair");
  rauzy->add_option("--pi", pi, "permutation pair")->required();
  rauzy->add_option("--out", out_path, "DOT output");
  rauzy->callback([&] { action = [&] { cmd_rauzy(o, pi, out_path); }; });

  // k0
  auto* k0 = app.add_subcommand("k0", "K0 stage reports");
  long from = 0, to = 0;
  k0->add_option("--in", in_path, "diagram JSON, or chamanara / decimal");
  k0->add_option("--from", from, "first stage");
  k0->add_option("--to", to, "last stage");
  auto* classify = k0->add_subcommand("classify", "classify the direct limit");
  classify->add_option("--in", in_path, "diagram JSON, or chamanara / decimal")->required();
  classify->callback([&] { action = [&] { cmd_k0_classify(o, in_path); }; });
  k0->callback([&] {
    if (!action) {
      if (in_path.empty() || k0->count("--from") == 0 || k0->count("--to") == 0)
        throw CLI::RequiredError("k0 needs --in, --from and --to (or the classify subcommand)");
      action = [&] { cmd_k0(o, in_path, from, to); };
    }
  });

  // theta
  auto* theta = app.add_subcommand("theta", "the theta / sigma sequence");
  long I = 1, J = 1;
  std::string star;
  theta->add_option("--I", I, "I")->required()->check(CLI::PositiveNumber);
  theta->add_option("--J", J, "J")->required()->check(CLI::PositiveNumber);
  theta->add_option("--star", star, "pairs i:j, comma separated")->required();
  theta->callback([&] { action = [&] { cmd_theta(o, I, J, star); }; });

  // chamanara
  auto* cha = app.add_subcommand("chamanara", "the Chamanara diagram");
  bool demo = false;
  cha->add_flag("--demo", demo, "print the singular set, Delta table, state and K0");
  cha->add_option("--depth", depth, "depth")->check(CLI::PositiveNumber);
  cha->add_option("--out", out_path, "write the window [-depth, depth] as JSON");
  cha->callback([&] {
    action = [&] {
      if (!demo && out_path.empty()) fail(ErrorKind::Usage, "chamanara needs --demo or --out");
      if (!out_path.empty()) {
        write_file(out_path, diagram_to_json(chamanara_window(-depth, depth)));
        o.text << "wrote " << out_path << "\n";
      }
      if (demo) cmd_chamanara(o, depth);
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  o.json = emit == "json";
  try {
    if (!action) throw CLI::RequiredError("a subcommand");
    action();
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Usage) {
      err << "usage error: " << e.what() << "\n";
      return 2;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (o.json)
    out << o.doc.dump(2) << "\n";
  else
    out << o.text.str();
  return o.code;
}

}  // namespace bsurf
