// JSON and DOT serialization.
#pragma once

#include <string>

#include "bsurf/iet.hpp"
#include "bsurf/states.hpp"

namespace bsurf {

std::string diagram_to_json(const DiagramWindow& w);
/// Parses the diagram JSON schema; throws Usage on malformed input.
DiagramWindow diagram_from_json(const std::string& text);

/// {"left":{"kind":"RMax"},"core":{"start":n,"edges":["id",...]},"right":{"kind":"Horizontal","symbol":"A"}}
std::string path_to_json(const DiagramWindow& w, const PathDescriptor& x);
PathDescriptor path_from_json(const DiagramWindow& w, const std::string& text);

/// {"levels":[{"index":n,"nu_r":["p/q",...],"nu_s":[...]}]} over [lo, hi].
std::string state_to_json(const State& st, long lo, long hi);
State state_from_json(const std::string& text);

/// {"pi":"A B C D / D C B A","lambda":["p/q",...],"tau":[...]}
std::string triple_to_json(const TripleData& t);
TripleData triple_from_json(const std::string& text);

/// {"family":"Quad","paths":[{"start":n,"edges":[...]},...]}
std::string chart_to_json(const DiagramWindow& w, const ChartDatum& c);
ChartDatum chart_from_json(const DiagramWindow& w, const std::string& text);

/// Inline JSON when text starts with '{', otherwise a file name.
std::string json_argument(const std::string& text);

std::string diagram_to_dot(const DiagramWindow& w);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace bsurf
