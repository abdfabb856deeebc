// K0 of the diagram algebras as direct limits of integer matrices, and the
// theta/sigma exact-sequence bookkeeping.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bsurf/states.hpp"

namespace bsurf {

struct InductiveSystem {
  long start = 0;               // index of the first stage
  std::vector<IntMatrix> maps;  // maps[i]: stage start+i -> stage start+i+1
  long end() const { return start + static_cast<long>(maps.size()); }
  size_t dim(long n) const;
};

/// E_{lo+1}, ..., E_hi of the window.
InductiveSystem system_from_window(const DiagramWindow& w);

struct StageReport {
  long m = 0, n = 0;
  IntMatrix composite;  // E_n ... E_{m+1}
  SNFResult snf;
  size_t rank = 0;
  std::vector<Z> torsion;  // invariant factors > 1 of the cokernel
  size_t free_rank = 0;    // rank of the cokernel's free part
  bool unimodular = false;
  std::string cokernel() const;
};

StageReport k0_stage(const InductiveSystem& sys, long m, long n);

enum class K0Kind { Free, Localization, Report };

struct Classification {
  K0Kind kind = K0Kind::Report;
  size_t d = 0;  // Free: Z^d
  Z k = 0;       // Localization: Z[1/k]
  size_t rational_rank = 0;  // rank of the full composite, a finite-prefix value
  std::vector<size_t> dims, stage_ranks;
  std::string text() const;
};

Classification k0_classify(const InductiveSystem& sys);

struct ThetaData {
  long I = 1, J = 1;
  std::vector<std::pair<long, long>> star;  // (i, j), 1 <= i <= I < j <= I + J
};

/// Parses "1:2,1:3".
std::vector<std::pair<long, long>> parse_star(const std::string& text);

struct SequenceReport {
  IntMatrix theta, sigma;
  IntMatrix kernel;  // columns span ker theta
  std::vector<Z> coker_torsion;
  size_t coker_free_rank = 0;
  bool sigma_theta_zero = false;
  bool exact_middle = false;  // im theta = ker sigma
  bool i_star_iso = false;    // I = 1 or J = 1
};

SequenceReport theta_sequence(const ThetaData& td);

/// <nu_s at level n, class>.
Q state_pairing(const State& st, long n, const std::vector<Z>& cls);
/// Pairing of cls at stage n and of E_{n+1} cls at stage n + 1.
std::pair<Q, Q> pairing_compatibility(const DiagramWindow& w, const State& st, long n, const std::vector<Z>& cls);

}  // namespace bsurf
