#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbaf/core.hpp"
#include "qbaf/engine.hpp"
#include "qbaf/semantics.hpp"

// Seeded benchmark generators and experiment drivers. Everything here is a
// pure function of its parameters and seed, with bit-identical output across
// platforms (see SplitMix64 below).

namespace qbaf {

// SplitMix64 (Steele, Lea & Flood 2014): a 64-bit counter-based generator with
// a fixed, platform-independent stream. Used instead of <random> distributions
// because the standard leaves distribution algorithms implementation-defined,
// which would break cross-platform reproducibility of seeded runs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() %
                                 static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1));
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Derived independent stream; deterministic in the parent state.
  SplitMix64 split() { return SplitMix64(next_u64()); }

 private:
  std::uint64_t state_;
};

// One goal argument g attacked by n+2 sources a1..a{n+2} and supported by n
// sources s1..sn, with attacker mass minus supporter mass exactly 2. Built by
// augmentation: the size-0 base has both attacker strengths pinned at 1 (the
// only assignment reaching mass 2), and each growth step draws one strength u
// and adds a supporter and an attacker that both carry u, so the mass gap is
// preserved exactly and smaller ladders from the same seed are prefixes of
// larger ones. force_unit_tau pins every strength to 1 instead (the mass gap
// is then (n+2) - n = 2 as well).
Qbaf gen_ladder(int n, std::uint64_t seed, bool force_unit_tau = false);

// Random acyclic framework: n in [30,100], edge density in [0.1,0.3] over the
// n(n-1)/2 forward pairs of a random order, attack/support ratio in [0.4,0.8].
Qbaf gen_random_acyclic(std::uint64_t seed);

// Random directed framework over n(n-1) ordered pairs (no self-loops), each
// present with probability `density` and labeled attack or support uniformly.
Qbaf gen_random_cyclic(int n, double density, std::uint64_t seed);

// Framework in which every argument lies on at most one cycle: a single
// directed cycle of length 2..min(6,n) plus pendant arguments wired strictly
// as ancestors (edges toward the cycle) or descendants (edges away from it),
// so no second cycle can form. Requires n >= 2.
Qbaf gen_one_cycle(int n, std::uint64_t seed);

// Small acyclic frameworks for the postulate suite: 4..10 arguments, forward
// edges, initial strengths drawn from a mixture of U[0,1] (70%) and the point
// masses 0, 1/2, 1 (10% each). The atoms matter: several principle failures
// only materialize at boundary strengths, and continuous sampling alone would
// miss them with probability one.
std::vector<Qbaf> gen_postulate_frameworks(int count, std::uint64_t seed);

struct ExperimentRow {
  std::string framework_id;
  std::string semantics;  // family text form, e.g. "mqe"
  std::string q;          // "sum" or "max"
  double gamma = 1.0;
  int n = 0;
  std::string metric;
  double value = 0.0;
  double runtime_ms = 0.0;
};

// Mean goal distance |rho(g) - tau_g| over per_n ladders for each n and each
// semantics. One row per (semantics, n). Deterministic; runtime_ms = 0.
std::vector<ExperimentRow> exp_distance_vs_n(const std::vector<SemanticsSpec>& specs,
                                             const std::vector<int>& ns, int per_n,
                                             std::uint64_t seed, bool force_unit_tau = false);

// Mean per-argument distance |rho(x) - tau_x| for each gamma, averaged over a
// fixed dataset: "ladders" (sizes 1,2,5,10,100, ten each) or "random_acyclic"
// (thirty frameworks). One row per gamma. Deterministic; runtime_ms = 0.
std::vector<ExperimentRow> exp_gamma_sweep(Family family, QSel qsel,
                                           const std::vector<double>& gammas,
                                           const std::string& dataset, std::uint64_t seed);

// Convergence fraction, mean iterations, and mean wall time per (size, spec)
// over per_size random cyclic frameworks with expected in-degree 2.
std::vector<ExperimentRow> exp_runtime_convergence(const std::vector<int>& sizes, int per_size,
                                                   const std::vector<SemanticsSpec>& specs,
                                                   const SolveConfig& cfg, std::uint64_t seed);

// CSV with header framework_id,semantics,q,gamma,n,metric,value,runtime_ms.
std::string rows_csv(const std::vector<ExperimentRow>& rows);

}  // namespace qbaf
