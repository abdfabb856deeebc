// Regenerates the JSON files under fixtures/ from fixed seeds.
#include <iostream>
#include <random>

#include "bsurf/fixtures.hpp"
#include "bsurf/io.hpp"
#include "bsurf/surface.hpp"

using namespace bsurf;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <fixtures-dir>\n";
    return 2;
  }
  std::string dir = argv[1];
  auto out = [&](const std::string& name, const std::string& text) { write_file(dir + "/" + name, text); };

  DiagramWindow cha = chamanara_window(-3, 3);
  out("chamanara_window.json", diagram_to_json(cha));
  out("chamanara_state.json", state_to_json(chamanara_state(), -3, 3));
  out("decimal_window.json", diagram_to_json(decimal_window(0, 3)));

  struct Named {
    std::string name;
    PermutationPair perm;
    unsigned long seed;
  };
  for (const auto& [name, perm, seed] : {Named{"h2_hyperelliptic", h2_hyperelliptic(), 200},
                                         Named{"h2_second_class", h2_second_class(), 201}}) {
    std::mt19937_64 rng(seed);
    TripleData t = random_complete_triple(perm, rng, 200);
    out(name + "_triple.json", triple_to_json(t));
    SurfaceDiagram sd = build(t, -3, 3);
    out(name + "_window.json", diagram_to_json(sd.window));
    out(name + "_state.json", state_to_json(sd.state, -3, 3));
  }
  for (unsigned long seed = 1; seed <= 4; ++seed)
    out("random_window_" + std::to_string(seed) + ".json", diagram_to_json(random_window(seed, 4, 3, 3)));
  return 0;
}
