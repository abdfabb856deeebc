// Built-in example diagrams: the Chamanara diagram, the decimal diagram and
// seeded random windows.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "bsurf/induction.hpp"
#include "bsurf/states.hpp"

namespace bsurf {

/// One vertex per level, edges "0" < "1" in both orders, with a generator.
DiagramWindow chamanara_window(long lo, long hi);
/// nu_r(v_n) = 2^n, nu_s(v_n) = 2^-n.
State chamanara_state();

/// Chamanara special points: w^n, x^n, y^n, z^n.
PathDescriptor chamanara_w(const DiagramWindow& w, long n);
PathDescriptor chamanara_x(const DiagramWindow& w, long n);
PathDescriptor chamanara_y(const DiagramWindow& w, long n);
PathDescriptor chamanara_z(const DiagramWindow& w, long n);

/// One vertex per level, edges "0".."9" ordered by digit in both orders.
DiagramWindow decimal_window(long lo, long hi);
/// nu_r(v_n) = 10^n, nu_s(v_n) = 10^-n.
State decimal_state();

/// Valid ordered window on [0, levels] with 1..max_vertices vertices per level.
DiagramWindow random_window(unsigned long seed, long levels, int max_vertices, int max_extra_edges);

/// The two Rauzy classes of irreducible pairs on four symbols:
/// "A B C D / D C B A" (7 nodes) and "A B C D / B C D A" (6 nodes).
PermutationPair h2_hyperelliptic();
PermutationPair h2_second_class();

/// Random triple on p with entries k / D, D a random integer of `digits`
/// decimal digits; tau is resampled until it lies in the cone.
TripleData random_triple(const PermutationPair& p, std::mt19937_64& rng, int digits = 60);

/// First random triple (from rng) whose RV and RH runs both reach `depth`
/// with every symbol winning.
TripleData random_complete_triple(const PermutationPair& p, std::mt19937_64& rng, long depth, int digits = 60);

}  // namespace bsurf
