// The ordered bi-infinite diagram of a zippered-rectangle triple, its
// canonical state, and checks of its structural properties.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bsurf/induction.hpp"
#include "bsurf/states.hpp"

namespace bsurf {

/// Lazily computed orbit t_k: t_0 the input, t_k = P(t_{k-1}) for k > 0,
/// t_k = R(t_{k+1}) for k < 0.  Throws Hypothesis when a step is undefined.
class TripleChain {
 public:
  explicit TripleChain(TripleData t0);
  const TripleData& at(long k);

 private:
  std::map<long, TripleData> cache_;
};

/// How the edge set E_k was produced.
struct LevelRecord {
  long level = 0;
  std::string rule;  // "RH" for k > 0 (P-step of t_{k-1}), "RV" for k <= 0 (R-step of t_k)
  int type = 0;      // tau-type of t_{k-1}
  int source = 0, range = 0;  // endpoints of the non-horizontal edge
  IntMatrix matrix;
  bool consistent = true;  // for RV levels: Psi(t_{k-1}) = Theta(t_k)^T and P(t_{k-1}) = t_k
};

struct SurfaceDiagram {
  DiagramWindow window;
  State state;
  std::vector<LevelRecord> triple_log;  // one per edge level of the initial window
  std::shared_ptr<TripleChain> chain;
  int A0 = 0, A1 = 0;  // first symbols of the two rows
  const std::vector<std::string>& alphabet() const { return window.level(window.lo()).vertices; }
};

/// Window [m, n] (m <= 0 <= n is not required) with a generator that keeps
/// following the induction chain in both directions.
SurfaceDiagram build(const TripleData& t, long m, long n);

/// Edge set E_k and its record, computed from t_{k-1}.
std::pair<std::vector<Edge>, LevelRecord> surface_level(TripleChain& chain, long k);

/// The |A| horizontal paths.
std::vector<PathDescriptor> horizontal_paths(const SurfaceDiagram& sd);
/// Every horizontal edge of the window has r_rank 0 and every
/// non-horizontal edge sits in a fiber of size 2 with r_rank 1.
bool horizontal_r_minimal(const SurfaceDiagram& sd);

struct SExtremeReport {
  PathDescriptor smin_path, smax_path;  // horizontal at A0 / A1
  Verdict verdict = Verdict::Inconclusive;
  long max_lag_min = 0, max_lag_max = 0;  // levels needed for Q-propagation to cover V
  size_t fiber_hits_min = 0, fiber_hits_max = 0;  // levels with |r^-1{A0}| > 1 (resp. A1) in (0, depth]
  bool q_lemma = true;  // Q maps row prefixes to row prefixes, growing as predicted
  std::vector<std::string> notes;
  long I = 0, J = 0;
};

SExtremeReport s_extreme_classes(const SurfaceDiagram& sd, long depth);

struct FlatnessReport {
  SigmaReport sigma;
  size_t yz_checked = 0, yz_failures = 0, yz_inconclusive = 0;
  std::vector<std::string> failures;
  bool sigma_empty() const { return sigma.singular.empty() && sigma.inconclusive.empty(); }
  bool yz_ok() const { return yz_failures == 0 && yz_inconclusive == 0 && yz_checked > 0; }
};

FlatnessReport verify_flatness(const SurfaceDiagram& sd, long depth);

/// Y_n <=_r Y_{n+1} and Z_n <=_r Z_{n+1} for n in [-depth, depth), on any
/// window whose levels carry a single two-edge s-fiber.
FlatnessReport yz_order_check(const DiagramWindow& w, long depth);

CertificateReport verify_standard(const SurfaceDiagram& sd, long depth);

/// Relabels level n as n + by.
DiagramWindow shifted(const DiagramWindow& w, long by);

}  // namespace bsurf
