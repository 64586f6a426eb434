#include "qbaf/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <stdexcept>

namespace qbaf {

namespace {

void check_config(const SolveConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(cfg.step_h > 0.0) || cfg.step_h > 1.0)
    throw std::invalid_argument("step size must be in (0, 1]");
}

StrengthVector initial_strengths(const Qbaf& q) {
  StrengthVector v;
  v.reserve(q.size());
  for (const Argument& a : q.arguments()) v.push_back(a.tau);
  return v;
}

bool states_match(const StrengthVector& a, const StrengthVector& b, double tol) {
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// Smallest p in [p_min, p_max] such that the last 3p states of `window` repeat
// with period p, each pair matching pointwise within tol.
std::optional<int> smallest_period(const std::deque<StrengthVector>& window, double tol,
                                   int p_min, int p_max) {
  const int len = static_cast<int>(window.size());
  for (int p = p_min; p <= p_max; ++p) {
    if (3 * p > len) break;
    bool ok = true;
    for (int offset = 0; ok && offset < 2 * p; ++offset) {
      const StrengthVector& recent = window[len - 1 - offset];
      const StrengthVector& earlier = window[len - 1 - offset - p];
      ok = states_match(recent, earlier, tol);
    }
    if (ok) return p;
  }
  return std::nullopt;
}

constexpr int kWindowCapacity = 64;

// Shared loop for the discrete and damped modes. `damping` = 1 steps straight
// to the update image; smaller values blend. The convergence and oscillation
// tests always use the undamped residual / the recurrence of visited states.
SolveResult run_iteration(const Qbaf& q, const SemanticsSpec& spec, const SolveConfig& cfg,
                          double damping) {
  check_config(cfg);
  const int n = q.size();
  SolveResult result;
  result.strengths = initial_strengths(q);
  if (cfg.record_trajectory) result.trajectory.push_back(result.strengths);

  // Recurrence tolerance: visited states move by damping * residual per step,
  // so the damped mode scales the tolerance accordingly; otherwise slow smooth
  // convergence would alias as a short period.
  const double recurrence_tol = cfg.epsilon * damping;
  std::deque<StrengthVector> window;
  window.push_back(result.strengths);

  StrengthVector image(n, 0.0);
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    double residual = 0.0;
    for (int a = 0; a < n; ++a) {
      image[a] = update(spec, q, result.strengths, a);
      residual = std::max(residual, std::abs(image[a] - result.strengths[a]));
    }
    if (damping == 1.0) {
      result.strengths = image;
    } else {
      for (int a = 0; a < n; ++a)
        result.strengths[a] += damping * (image[a] - result.strengths[a]);
    }
    result.iterations = iter;
    result.residual = residual;
    if (cfg.record_trajectory) result.trajectory.push_back(result.strengths);

    if (residual < cfg.epsilon) {
      result.status = SolveStatus::Converged;
      return result;
    }

    window.push_back(result.strengths);
    if (static_cast<int>(window.size()) > kWindowCapacity) window.pop_front();
    if (auto period = smallest_period(window, recurrence_tol, 2, kWindowCapacity / 3)) {
      result.status = SolveStatus::OscillationDetected;
      result.oscillation_period = period;
      return result;
    }
  }
  result.status = SolveStatus::MaxIterExceeded;
  return result;
}

}  // namespace

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterExceeded: return "max_iter_exceeded";
    case SolveStatus::OscillationDetected: return "oscillation_detected";
  }
  return "?";
}

StrengthVector solve_acyclic(const Qbaf& q, const SemanticsSpec& spec) {
  GraphInfo info = analyze_graph(q);
  if (!info.acyclic) throw std::invalid_argument("framework is cyclic");
  StrengthVector v = initial_strengths(q);
  for (int a : info.topo_order) v[a] = update(spec, q, v, a);
  return v;
}

SolveResult solve_iterative(const Qbaf& q, const SemanticsSpec& spec, const SolveConfig& cfg) {
  return run_iteration(q, spec, cfg, 1.0);
}

SolveResult solve_continuous(const Qbaf& q, const SemanticsSpec& spec, const SolveConfig& cfg) {
  return run_iteration(q, spec, cfg, cfg.step_h);
}

SolveResult solve(const Qbaf& q, const SemanticsSpec& spec, const SolveConfig& cfg) {
  check_config(cfg);
  switch (cfg.mode) {
    case SolveMode::Discrete:
      return solve_iterative(q, spec, cfg);
    case SolveMode::Continuous:
      return solve_continuous(q, spec, cfg);
    case SolveMode::AcyclicAuto:
      break;
  }
  if (analyze_graph(q).acyclic) {
    SolveResult result;
    StrengthVector initial = initial_strengths(q);
    result.strengths = solve_acyclic(q, spec);
    result.status = SolveStatus::Converged;
    result.iterations = 1;
    result.residual = 0.0;
    if (cfg.record_trajectory) {
      result.trajectory.push_back(std::move(initial));
      result.trajectory.push_back(result.strengths);
    }
    return result;
  }
  return solve_iterative(q, spec, cfg);
}

double convergence_bound(const Qbaf& q, QSel qsel) {
  int d = analyze_graph(q).max_in_degree;
  if (d == 0) return std::numeric_limits<double>::infinity();
  return qsel == QSel::Sum ? 2.0 / (3.0 * d) : 1.0 / d;
}

std::optional<int> detect_oscillation(const std::vector<StrengthVector>& trajectory, double tol) {
  std::deque<StrengthVector> window(trajectory.begin(), trajectory.end());
  const int p_max = static_cast<int>(window.size()) / 3;
  return smallest_period(window, tol, 1, p_max);
}

std::string trajectory_csv(const Qbaf& q, const std::vector<StrengthVector>& trajectory) {
  std::string out = "iteration";
  for (const Argument& a : q.arguments()) {
    out += ',';
    out += a.id;
  }
  out += '\n';
  char buf[64];
  for (size_t row = 0; row < trajectory.size(); ++row) {
    out += std::to_string(row);
    for (double v : trajectory[row]) {
      std::snprintf(buf, sizeof(buf), ",%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace qbaf
