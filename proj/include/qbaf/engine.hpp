#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbaf/core.hpp"
#include "qbaf/semantics.hpp"

// Evaluation engine: a single forward pass for acyclic frameworks, synchronous
// fixed-point iteration with convergence and oscillation diagnostics for the
// general case, and a damped (explicit Euler) continuous mode.

namespace qbaf {

enum class SolveMode { AcyclicAuto, Discrete, Continuous };
enum class SolveStatus { Converged, MaxIterExceeded, OscillationDetected };

std::string status_name(SolveStatus s);  // "converged" | "max_iter_exceeded" | "oscillation_detected"

struct SolveConfig {
  SolveMode mode = SolveMode::AcyclicAuto;
  double epsilon = 1e-6;  // max-norm convergence threshold, > 0
  int max_iter = 10000;   // >= 1
  double step_h = 0.05;   // Euler step size, in (0, 1]; h = 1 reproduces discrete
  bool record_trajectory = false;
};

struct SolveResult {
  StrengthVector strengths;
  SolveStatus status = SolveStatus::Converged;
  int iterations = 0;
  double residual = 0.0;  // max-norm of the last update difference
  // States visited, starting with the initial strengths; filled only when
  // requested in the config.
  std::vector<StrengthVector> trajectory;
  std::optional<int> oscillation_period;
};

// Single forward pass in topological order: every argument is updated once,
// after all of its parents. Throws std::invalid_argument on cyclic input.
StrengthVector solve_acyclic(const Qbaf& q, const SemanticsSpec& spec);

// Synchronous iteration from the initial strengths. Stops when the max-norm
// step difference drops below epsilon (Converged), when a periodic repetition
// with period >= 2 is detected over the recent window (OscillationDetected,
// with the smallest such period), or after max_iter updates (MaxIterExceeded).
SolveResult solve_iterative(const Qbaf& q, const SemanticsSpec& spec, const SolveConfig& cfg);

// Damped iteration s <- s + h * (update(s) - s). The convergence test uses the
// undamped residual ||update(s) - s||, so Converged means the same thing in
// both modes, and step_h = 1 reproduces solve_iterative exactly.
SolveResult solve_continuous(const Qbaf& q, const SemanticsSpec& spec, const SolveConfig& cfg);

// Mode dispatch: AcyclicAuto uses the forward pass when the framework is
// acyclic and the discrete iteration otherwise; the other modes force their
// respective solver.
SolveResult solve(const Qbaf& q, const SemanticsSpec& spec, const SolveConfig& cfg);

// Largest gamma with a contraction guarantee for the clamp families on this
// framework: with d the maximum in-degree, 2/(3d) under q=sum and 1/d under
// q=max; +infinity when d = 0.
double convergence_bound(const Qbaf& q, QSel qsel);

// Smallest period p >= 1 such that the trajectory tail repeats with period p
// over at least 3p consecutive states (pointwise within tol). A constant tail
// gives 1; std::nullopt when no periodic tail exists.
std::optional<int> detect_oscillation(const std::vector<StrengthVector>& trajectory, double tol);

// CSV rendering of a trajectory: header "iteration,<ids...>" followed by one
// row per state, values with 17 significant digits.
std::string trajectory_csv(const Qbaf& q, const std::vector<StrengthVector>& trajectory);

}  // namespace qbaf
