// States, cylinder measures, the expansion maps phi and the chart maps psi.
#pragma once

#include <functional>
#include <random>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsurf/paths.hpp"

namespace bsurf {

class State {
 public:
  using Formula = std::function<std::pair<QVec, QVec>(long)>;

  State() = default;
  explicit State(Formula f) : formula_(std::move(f)) {}

  void set(long n, QVec nu_r, QVec nu_s);
  bool has(long n) const;
  const QVec& nu_r(long n) const;
  const QVec& nu_s(long n) const;
  std::vector<long> stored_levels() const;

 private:
  const std::pair<QVec, QVec>& get(long n) const;
  mutable std::map<long, std::pair<QVec, QVec>> levels_;
  Formula formula_;
};

struct StateReport {
  std::vector<std::string> violations;  // failed equations, with level and vertex
  std::vector<std::string> warnings;    // e.g. "not faithful"
  std::optional<Q> invariant;           // common value of sum_v nu_r(v) nu_s(v)
  bool ok() const { return violations.empty(); }
};

StateReport validate_state(const DiagramWindow& w, const State& st);

enum class CylinderSides { Both, Plus, Minus };  // X^- p X^+, p X^+, X^- p

Q cylinder_measure(const DiagramWindow& w, const State& st, const FinitePath& p, CylinderSides sides);

/// phi^v_s of the one-sided path x_{(k, inf)}, where v is the source of x_{k+1}.
/// The core of x is read from level k on; only the right tail is used beyond it.
Q phi_plus(const DiagramWindow& w, const State& st, const PathDescriptor& x, long k);
/// phi^v_r of x_{(-inf, k]}, where v is the range of x_k.
Q phi_minus(const DiagramWindow& w, const State& st, const PathDescriptor& x, long k);

/// Signed nu_r-measure of the set of paths z in the T+ class of x with
/// x <_r z <=_r y (negative when y <_r x).  Throws Domain unless x and y are
/// tail equivalent on the window.
Q phi_tail(const DiagramWindow& w, const State& st, const PathDescriptor& x, const PathDescriptor& y);

struct ShiftCheck {
  Q lhs_r, rhs_r;  // phi^{r(p)}_r(x p) and phi^{s(p)}_r(x) + sum_{q <_r p} nu_r(s(q))
  Q lhs_s, rhs_s;  // phi^{s(p)}_s(p y) and phi^{r(p)}_s(y) + sum_{q <_s p} nu_s(r(q))
  bool holds() const { return lhs_r == rhs_r && lhs_s == rhs_s; }
};

/// x supplies the left part (levels <= p.start) and y the right part (> p.end()).
ShiftCheck phi_shift_check(const DiagramWindow& w, const State& st, const FinitePath& p, const PathDescriptor& x,
                           const PathDescriptor& y);

enum class ChartFamily { SPair, RPair, Quad };

struct ChartDatum {
  ChartFamily family = ChartFamily::Quad;
  // SPair/RPair use paths[0], paths[1]; Quad uses p11, p12, p21, p22 in that order.
  std::vector<FinitePath> paths;
};

/// Throws Domain when the successor relations fail.
void check_chart(const DiagramWindow& w, const ChartDatum& c);

/// Quads on E_{m,n}.
std::vector<ChartDatum> all_quads(const DiagramWindow& w, long m, long n);

/// Index of the piece containing x (0..1 for pairs, 0..3 = 11,12,21,22 for quads), or nullopt.
std::optional<int> chart_piece(const DiagramWindow& w, const ChartDatum& c, const PathDescriptor& x);

/// psi for pairs returns (value, 0); for quads the pair.  Throws Domain when x is outside the domain.
std::pair<Q, Q> psi_chart(const DiagramWindow& w, const State& st, const ChartDatum& c, const PathDescriptor& x);

/// Alternate S-pair form: phi^{s(p1)}_s(x_(m,inf)) - sum_{q <=_s p1} nu_s(r(q)).
Q psi_s_alternate(const DiagramWindow& w, const State& st, const ChartDatum& c, const PathDescriptor& x);

struct TransitionResult {
  size_t samples = 0;                    // points of the overlap that were evaluated
  std::optional<std::pair<Q, Q>> constant;
  std::optional<std::string> violation;  // description when two samples disagree
  std::string note;                      // e.g. "empty overlap", "hypothesis unmet"
};

/// Samples points of V(p) & V(q) and checks that psi^q - psi^p is constant.
TransitionResult chart_transition(const DiagramWindow& w, const State& st, const ChartDatum& p,
                                  const ChartDatum& q, int samples, unsigned long seed);

/// Case of the R-pair refinement lemma for p on [-m, m] and q on [-n, n]:
/// 1..5, 0 for "hypothesis unmet" (fewer than three paths with the common
/// range), -1 when the domains do not meet.  predicted holds psi^q - psi^p.
struct PairCase {
  int index = 0;
  std::optional<Q> predicted;
};
PairCase classify_r_pair(const DiagramWindow& w, const State& st, const ChartDatum& p, const ChartDatum& q);

/// Random point of the piece `piece` of c, with random extensions of up to
/// `extra` levels on each side and random extremal tails.
std::optional<PathDescriptor> sample_in_piece(const DiagramWindow& w, const ChartDatum& c, int piece, int extra,
                                              std::mt19937_64& rng);

}  // namespace bsurf
