#include "bsurf/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "bsurf/error.hpp"
#include "json.hpp"

namespace bsurf {

using ojson = nlohmann::ordered_json;

std::string diagram_to_json(const DiagramWindow& w) {
  ojson j;
  j["levels"] = ojson::array();
  j["edges"] = ojson::array();
  for (long n = w.lo(); n <= w.hi(); ++n) {
    ojson lv;
    lv["index"] = n;
    lv["vertices"] = w.level(n).vertices;
    j["levels"].push_back(lv);
  }
  for (long n = w.lo() + 1; n <= w.hi(); ++n)
    for (const auto& e : w.edges(n)) {
      ojson je;
      je["level"] = n;
      je["id"] = e.id;
      je["source"] = w.vertex_name(n - 1, e.source);
      je["range"] = w.vertex_name(n, e.range);
      je["r_rank"] = e.r_rank;
      je["s_rank"] = e.s_rank;
      j["edges"].push_back(je);
    }
  return j.dump(2) + "\n";
}

DiagramWindow diagram_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Usage, std::string("diagram JSON: ") + e.what());
  }
  try {
    std::map<long, Level> levels;
    for (const auto& lv : j.at("levels")) {
      Level l{lv.at("index").get<long>(), lv.at("vertices").get<std::vector<std::string>>()};
      if (!levels.emplace(l.index, l).second) fail(ErrorKind::Usage, "duplicate level index");
    }
    if (levels.empty()) fail(ErrorKind::Usage, "diagram JSON has no levels");
    long lo = levels.begin()->first, hi = levels.rbegin()->first;
    if (static_cast<long>(levels.size()) != hi - lo + 1) fail(ErrorKind::Usage, "level indices are not contiguous");
    std::map<long, std::vector<Edge>> edges;
    auto find_vertex = [&](long n, const std::string& name) {
      const auto& vs = levels.at(n).vertices;
      for (size_t i = 0; i < vs.size(); ++i)
        if (vs[i] == name) return static_cast<int>(i);
      fail(ErrorKind::Usage, "unknown vertex '" + name + "' at level " + std::to_string(n));
    };
    for (const auto& je : j.at("edges")) {
      long n = je.at("level").get<long>();
      if (n <= lo || n > hi) fail(ErrorKind::Usage, "edge level " + std::to_string(n) + " outside levels");
      Edge e;
      e.id = je.at("id").get<std::string>();
      e.source = find_vertex(n - 1, je.at("source").get<std::string>());
      e.range = find_vertex(n, je.at("range").get<std::string>());
      e.r_rank = je.at("r_rank").get<int>();
      e.s_rank = je.at("s_rank").get<int>();
      edges[n].push_back(e);
    }
    DiagramWindow w(levels.at(lo));
    for (long n = lo + 1; n <= hi; ++n) w.push_right(levels.at(n), edges[n]);
    return w;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::Usage, std::string("diagram JSON: ") + e.what());
  }
}

namespace {

ojson parse_json(const std::string& text, const std::string& what) {
  try {
    return ojson::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Usage, what + " JSON: " + e.what());
  }
}

ojson rationals(const QVec& v) {
  ojson a = ojson::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

QVec rationals_from(const ojson& a) {
  QVec v;
  for (const auto& x : a) v.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
  return v;
}

ojson finite_path_json(const DiagramWindow& w, const FinitePath& p) {
  ojson j;
  j["start"] = p.start;
  j["edges"] = ojson::array();
  for (size_t i = 0; i < p.edges.size(); ++i) j["edges"].push_back(w.edge(p.start + 1 + static_cast<long>(i), p.edges[i]).id);
  return j;
}

FinitePath finite_path_from(const DiagramWindow& w, const ojson& j) {
  FinitePath p{j.at("start").get<long>(), {}};
  long n = p.start;
  for (const auto& id : j.at("edges")) {
    ++n;
    int e = w.edge_index(n, id.get<std::string>());
    if (e < 0) fail(ErrorKind::Usage, "unknown edge '" + id.get<std::string>() + "' at level " + std::to_string(n));
    p.edges.push_back(e);
  }
  return p;
}

ojson tail_json(const TailSpec& t) {
  ojson j;
  j["kind"] = to_string(t.kind);
  if (t.kind == TailKind::Horizontal) j["symbol"] = t.symbol;
  if (t.kind == TailKind::Periodic) j["cycle"] = t.cycle;
  return j;
}

TailSpec tail_from(const ojson& j) {
  TailSpec t;
  t.kind = parse_tail_kind(j.at("kind").get<std::string>());
  if (t.kind == TailKind::Horizontal) t.symbol = j.at("symbol").get<std::string>();
  if (t.kind == TailKind::Periodic) t.cycle = j.at("cycle").get<std::vector<std::string>>();
  return t;
}

template <class F>
auto guarded(const std::string& what, F f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::Usage, what + " JSON: " + e.what());
  }
}

}  // namespace

std::string path_to_json(const DiagramWindow& w, const PathDescriptor& x) {
  ojson j;
  j["left"] = tail_json(x.left);
  j["core"] = finite_path_json(w, x.core);
  j["right"] = tail_json(x.right);
  return j.dump() + "\n";
}

PathDescriptor path_from_json(const DiagramWindow& w, const std::string& text) {
  ojson j = parse_json(text, "path");
  return guarded("path", [&] {
    PathDescriptor x;
    x.left = tail_from(j.at("left"));
    x.core = finite_path_from(w, j.at("core"));
    x.right = tail_from(j.at("right"));
    check_descriptor(w, x);
    return x;
  });
}

std::string state_to_json(const State& st, long lo, long hi) {
  ojson j;
  j["levels"] = ojson::array();
  for (long n = lo; n <= hi; ++n) {
    ojson lv;
    lv["index"] = n;
    lv["nu_r"] = rationals(st.nu_r(n));
    lv["nu_s"] = rationals(st.nu_s(n));
    j["levels"].push_back(lv);
  }
  return j.dump(2) + "\n";
}

State state_from_json(const std::string& text) {
  ojson j = parse_json(text, "state");
  return guarded("state", [&] {
    State st;
    for (const auto& lv : j.at("levels"))
      st.set(lv.at("index").get<long>(), rationals_from(lv.at("nu_r")), rationals_from(lv.at("nu_s")));
    return st;
  });
}

std::string triple_to_json(const TripleData& t) {
  ojson j;
  j["pi"] = t.perm.to_string();
  j["lambda"] = rationals(t.lambda);
  j["tau"] = rationals(t.tau);
  return j.dump(2) + "\n";
}

TripleData triple_from_json(const std::string& text) {
  ojson j = parse_json(text, "triple");
  return guarded("triple", [&] {
    return make_triple(parse_permutation(j.at("pi").get<std::string>()), rationals_from(j.at("lambda")),
                       rationals_from(j.at("tau")));
  });
}

std::string chart_to_json(const DiagramWindow& w, const ChartDatum& c) {
  ojson j;
  j["family"] = c.family == ChartFamily::Quad ? "Quad" : c.family == ChartFamily::SPair ? "SPair" : "RPair";
  j["paths"] = ojson::array();
  for (const auto& p : c.paths) j["paths"].push_back(finite_path_json(w, p));
  return j.dump() + "\n";
}

ChartDatum chart_from_json(const DiagramWindow& w, const std::string& text) {
  ojson j = parse_json(text, "chart");
  return guarded("chart", [&] {
    ChartDatum c;
    auto fam = j.at("family").get<std::string>();
    if (fam == "Quad") c.family = ChartFamily::Quad;
    else if (fam == "SPair") c.family = ChartFamily::SPair;
    else if (fam == "RPair") c.family = ChartFamily::RPair;
    else fail(ErrorKind::Usage, "chart family must be Quad, SPair or RPair");
    for (const auto& p : j.at("paths")) c.paths.push_back(finite_path_from(w, p));
    if (c.paths.size() != (c.family == ChartFamily::Quad ? 4u : 2u))
      fail(ErrorKind::Usage, "wrong number of chart paths for " + fam);
    check_chart(w, c);
    return c;
  });
}

std::string json_argument(const std::string& text) {
  auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return text;
  return read_file(text);
}

std::string diagram_to_dot(const DiagramWindow& w) {
  if (w.empty()) fail(ErrorKind::Usage, "cannot export an empty window");
  std::ostringstream os;
  auto node = [](long n, const std::string& v) { return "\"" + std::to_string(n) + ":" + v + "\""; };
  os << "digraph bratteli {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (long n = w.lo(); n <= w.hi(); ++n) {
    os << "  { rank=same;";
    for (const auto& v : w.level(n).vertices) os << " " << node(n, v) << " [label=\"" << v << "\"];";
    os << " }\n";
  }
  for (long n = w.lo() + 1; n <= w.hi(); ++n)
    for (const auto& e : w.edges(n))
      os << "  " << node(n - 1, w.vertex_name(n - 1, e.source)) << " -> " << node(n, w.vertex_name(n, e.range))
         << " [label=\"" << e.id << ":" << e.r_rank << "/" << e.s_rank << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Usage, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Usage, "cannot write '" + path + "'");
  out << text;
}

}  // namespace bsurf
