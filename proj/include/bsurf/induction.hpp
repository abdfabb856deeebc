// Rauzy-Veech induction R, its inverse RH induction P, renormalization,
// Rauzy graphs and the invariant density of the RH renormalization map.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsurf/iet.hpp"

namespace bsurf {

enum class InductionDir { RV, RH };
std::string to_string(InductionDir d);

/// Throws Hypothesis("Keane hypothesis violated") when the two last lengths agree.
int lambda_type(const PermutationPair& p, const QVec& lambda);
/// Throws Hypothesis("RH hypothesis violated") when sum(tau) = 0.
int tau_type(const QVec& tau);

PermutationPair rv_permutation(const PermutationPair& p, int type);
PermutationPair rh_permutation(const PermutationPair& p, int type);
IntMatrix theta_matrix(const PermutationPair& p, int type);
IntMatrix psi_matrix(const PermutationPair& p, int type);

struct InductionStep {
  InductionDir direction = InductionDir::RV;
  int type = 0;
  int winner = 0;  // RV: alpha(type); RH: the tau-winner alpha(1 - type)
  int loser = 0;   // RV: alpha(1 - type); RH: beta(type), whose height shrinks
  IntMatrix matrix;  // Theta for RV, Psi for RH
  TripleData before, after;
};

InductionStep rv_step(const TripleData& t);
InductionStep rh_step(const TripleData& t);

struct RenormStep {
  InductionStep step;
  Q scale;  // exp(-t_R^+) for Plus, exp(-t_R^-) for Minus
};

/// Plus: rescale (lambda, tau) -> (scale lambda, tau / scale) and apply P, keeping |h|.
/// Minus: rescale (lambda / scale, scale tau) and apply R, keeping |lambda|.
RenormStep renorm_step(const TripleData& t, Side side);

/// The RH renormalization map on (pi, h) with |h| = 1 for a given tau-type.
std::pair<PermutationPair, QVec> renorm_plus_h(const PermutationPair& p, const QVec& h, int type);

struct RauzyGraph {
  std::vector<PermutationPair> nodes;  // one representative per class, in discovery order
  struct Arrow {
    size_t from, to;
    int type;
  };
  std::vector<Arrow> edges;
};

RauzyGraph rauzy_graph(const PermutationPair& p);
std::string rauzy_to_dot(const RauzyGraph& g);

/// The preimage (pi^eps, h^eps) of (pi, h) under the RH renormalization map.
std::pair<PermutationPair, QVec> density_preimage(const PermutationPair& p, const QVec& h, int eps);
/// Closed form (1 + h_{alpha(1-eps)})^{-d}.
Q jacobian_closed_form(const PermutationPair& p, const QVec& h, int eps);
/// Jacobian determinant of h -> h^eps on the simplex chart (last alphabet
/// coordinate dropped), from exact forward-mode derivatives.
Q jacobian_chart(const PermutationPair& p, const QVec& h, int eps);
/// Determinant of the full d x d matrix of partial derivatives.
Q jacobian_full(const PermutationPair& p, const QVec& h, int eps);
/// prod_a 1 / h_a
Q density(const QVec& h);

struct DensitySample {
  QVec h;
  bool identity = false;   // D(F0) |J0| + D(F1) |J1| = D
  bool preimages = false;  // |h^eps| = 1 and the RH renormalization maps each preimage back
  bool jacobian = false;   // chart determinant = closed form, for both eps
};

struct DensityReport {
  std::vector<DensitySample> samples;
  size_t identity_holds = 0, preimages_hold = 0, jacobian_checked = 0, jacobian_matches = 0;
};

/// Random rational points on the simplex; the Jacobian comparison is run on
/// the first jacobian_samples of them.
DensityReport density_identity_check(const PermutationPair& p, size_t samples, unsigned long seed,
                                     size_t jacobian_samples = 20);
DensitySample density_at(const PermutationPair& p, const QVec& h, bool with_jacobian);

struct CompletenessReport {
  long depth = 0;
  std::vector<long> rv_wins, rh_wins;  // per symbol
  std::optional<long> rv_failure, rh_failure;  // step index where the hypothesis failed
  std::string rv_message, rh_message;
  bool keane_certified() const;
  bool rh_certified() const;
};

CompletenessReport completeness_check(const TripleData& t, long depth);

}  // namespace bsurf
