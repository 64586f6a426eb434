#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qbaf/core.hpp"
#include "qbaf/engine.hpp"
#include "qbaf/genbench.hpp"
#include "qbaf/semantics.hpp"

using namespace qbaf;
using doctest::Approx;

namespace {

Qbaf load(const std::string& name) {
  std::ifstream in(std::string(QBAF_TEST_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_qbaf(ss.str());
}

SemanticsSpec spec_of(const std::string& text) { return parse_semantics_spec(text); }

}  // namespace

TEST_CASE("forward pass on the goal framework across families") {
  Qbaf q = load("goal.json");
  int g = q.index_of("g");

  StrengthVector v = solve_acyclic(q, spec_of("qen"));
  CHECK(v[g] == Approx(0.367647058824).epsilon(1e-9));
  // Parentless arguments keep their initial strength.
  CHECK(v[q.index_of("a1")] == 0.9);
  CHECK(v[q.index_of("s1")] == 0.1);

  CHECK(solve_acyclic(q, spec_of("dfq"))[g] == Approx(0.19).epsilon(1e-9));
  CHECK(solve_acyclic(q, spec_of("reb"))[g] == Approx(0.411490446).epsilon(1e-8));
  CHECK(solve_acyclic(q, spec_of("mlp"))[g] == Approx(0.354343693774).epsilon(1e-9));

  // The smooth clamp moves even parentless arguments, but never by more than
  // half its approximation gap.
  StrengthVector smooth = solve_acyclic(q, spec_of("ddrl"));
  CHECK(std::abs(smooth[q.index_of("a1")] - 0.9) <= std::log(2.0) / 200.0);
}

TEST_CASE("forward pass rejects cyclic input") {
  CHECK_THROWS_AS(solve_acyclic(load("twocycle.json"), spec_of("qen")), std::invalid_argument);
}

TEST_CASE("automatic mode takes the forward pass on acyclic frameworks") {
  Qbaf q = load("goal.json");
  SolveConfig cfg;
  cfg.record_trajectory = true;
  SolveResult r = solve(q, spec_of("qen"), cfg);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.iterations == 1);
  CHECK(r.residual == 0.0);
  CHECK(r.strengths == solve_acyclic(q, spec_of("qen")));
  REQUIRE(r.trajectory.size() == 2);
  CHECK(r.trajectory[0] == StrengthVector{0.5, 0.9, 0.1, 0.2});
  CHECK(r.trajectory[1] == r.strengths);
}

TEST_CASE("iteration converges on the mutual-attack pair") {
  // Under the max denominator each argument sees s' = 1 - s/2: fixed point 2/3.
  Qbaf q = load("twocycle.json");
  SolveConfig cfg;
  cfg.epsilon = 1e-9;
  SolveResult r = solve_iterative(q, spec_of("drl:q=max"), cfg);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.strengths[0] == Approx(2.0 / 3.0).epsilon(1e-7));
  CHECK(r.strengths[1] == Approx(2.0 / 3.0).epsilon(1e-7));
  CHECK(r.residual < 1e-9);
}

TEST_CASE("iteration flags the period-2 orbit of the saturated pair") {
  Qbaf q = load("oscillator.json");
  SolveConfig cfg;
  cfg.record_trajectory = true;
  SolveResult r = solve_iterative(q, spec_of("drl"), cfg);
  CHECK(r.status == SolveStatus::OscillationDetected);
  REQUIRE(r.oscillation_period.has_value());
  CHECK(*r.oscillation_period == 2);
  // (1,1) -> (0,0) -> (1,1): the recurrence needs six states, so detection
  // lands on iteration 5.
  CHECK(r.iterations == 5);
  CHECK(r.strengths == StrengthVector{0.0, 0.0});
  CHECK(r.trajectory.size() == static_cast<size_t>(r.iterations) + 1);
  CHECK(r.trajectory.back() == r.strengths);
}

TEST_CASE("damped mode settles the same pair at the midpoint") {
  Qbaf q = load("oscillator.json");
  SolveConfig cfg;
  SolveResult r = solve_continuous(q, spec_of("ddrl"), cfg);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.strengths[0] == Approx(0.5).epsilon(1e-4));
  CHECK(r.strengths[1] == Approx(0.5).epsilon(1e-4));
  CHECK(r.iterations < 200);
}

TEST_CASE("unit step damping reproduces the discrete iteration exactly") {
  Qbaf q = gen_random_cyclic(12, 0.2, 5);
  SolveConfig cfg;
  cfg.epsilon = 1e-9;
  cfg.max_iter = 50;
  cfg.record_trajectory = true;
  SolveConfig unit = cfg;
  unit.step_h = 1.0;
  for (const char* text : {"mqe", "drl:gamma=0.6", "ddrl:gamma=0.6"}) {
    CAPTURE(text);
    SolveResult a = solve_iterative(q, spec_of(text), cfg);
    SolveResult b = solve_continuous(q, spec_of(text), unit);
    CHECK(a.status == b.status);
    CHECK(a.iterations == b.iterations);
    CHECK(a.strengths == b.strengths);
    CHECK(a.trajectory == b.trajectory);
  }
}

TEST_CASE("all three solvers agree on acyclic frameworks") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    CAPTURE(seed);
    Qbaf q = gen_random_acyclic(seed);
    for (const char* text : {"qen", "mqe:q=max", "ddrl:gamma=0.8"}) {
      CAPTURE(text);
      StrengthVector direct = solve_acyclic(q, spec_of(text));

      SolveConfig cfg;
      cfg.mode = SolveMode::Discrete;
      cfg.epsilon = 1e-10;
      SolveResult iter = solve(q, spec_of(text), cfg);
      CHECK(iter.status == SolveStatus::Converged);

      SolveConfig euler = cfg;
      euler.mode = SolveMode::Continuous;
      euler.epsilon = 1e-8;
      euler.max_iter = 100000;
      SolveResult damped = solve(q, spec_of(text), euler);
      CHECK(damped.status == SolveStatus::Converged);

      for (int i = 0; i < q.size(); ++i) {
        CHECK(iter.strengths[i] == Approx(direct[i]).epsilon(1e-9));
        CHECK(damped.strengths[i] == Approx(direct[i]).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("iterated strengths stay inside the unit interval") {
  for (std::uint64_t seed : {11, 12, 13}) {
    Qbaf q = gen_random_cyclic(15, 0.25, seed);
    for (const char* text : {"dfq", "reb", "qen", "mlp", "mqe", "drl:gamma=2", "ddrl:gamma=2"}) {
      CAPTURE(seed);
      CAPTURE(text);
      SolveConfig cfg;
      cfg.max_iter = 60;
      cfg.record_trajectory = true;
      SolveResult r = solve_iterative(q, spec_of(text), cfg);
      for (const StrengthVector& state : r.trajectory)
        for (double v : state) {
          CHECK(v >= 0.0);
          CHECK(v <= 1.0);
        }
    }
  }
}

TEST_CASE("a mixed-role pair under doubled aggregate weight orbits with period 4") {
  // One attacker-supporter pair whose loop gain reaches 1 in the unsaturated
  // zone; the exact clamp repeats after a short transient, the smooth clamp
  // after a long spiral. A regression anchor: the general fixed-point claim
  // for single-cycle frameworks breaks exactly here.
  Qbaf q({{"x1", 0.4324654219382347}, {"x2", 0.9415550990159188}},
         {{"x1", "x2"}}, {{"x2", "x1"}});

  SolveConfig cfg;
  SolveResult exact = solve_iterative(q, spec_of("drl:gamma=2"), cfg);
  CHECK(exact.status == SolveStatus::OscillationDetected);
  REQUIRE(exact.oscillation_period.has_value());
  CHECK(*exact.oscillation_period == 4);
  CHECK(exact.iterations <= 20);

  SolveResult capped = solve_iterative(q, spec_of("ddrl:gamma=2"), cfg);
  CHECK(capped.status == SolveStatus::MaxIterExceeded);

  SolveConfig longer = cfg;
  longer.max_iter = 30000;
  SolveResult smooth = solve_iterative(q, spec_of("ddrl:gamma=2"), longer);
  CHECK(smooth.status == SolveStatus::OscillationDetected);
  REQUIRE(smooth.oscillation_period.has_value());
  CHECK(*smooth.oscillation_period == 4);
}

TEST_CASE("oscillation detection on synthetic trajectories") {
  auto states = [](std::initializer_list<double> xs) {
    std::vector<StrengthVector> out;
    for (double x : xs) out.push_back({x});
    return out;
  };
  CHECK(detect_oscillation(states({0.5, 0.5, 0.5, 0.5, 0.5, 0.5}), 1e-9) == 1);
  CHECK(detect_oscillation(states({0, 1, 0, 1, 0, 1}), 1e-9) == 2);
  CHECK(detect_oscillation(states({0.1, 0.4, 0.7, 0.1, 0.4, 0.7, 0.1, 0.4, 0.7}), 1e-9) == 3);
  CHECK(!detect_oscillation(states({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}), 1e-9).has_value());
  CHECK(!detect_oscillation(states({0, 1, 0, 1, 0}), 1e-9).has_value());  // under 3 periods
  CHECK(!detect_oscillation(states({}), 1e-9).has_value());
  // Within tolerance, a slightly perturbed alternation still counts.
  CHECK(detect_oscillation(states({0.0, 1.0, 1e-12, 1.0, 0.0, 1.0}), 1e-9) == 2);
  CHECK(!detect_oscillation(states({0.0, 1.0, 0.01, 1.0, 0.0, 1.0}), 1e-9).has_value());
}

TEST_CASE("trajectory rendering") {
  Qbaf q = load("oscillator.json");
  SolveConfig cfg;
  cfg.record_trajectory = true;
  SolveResult r = solve_iterative(q, spec_of("drl"), cfg);
  std::string csv = trajectory_csv(q, r.trajectory);
  CHECK(csv.rfind("iteration,a,b\n", 0) == 0);
  CHECK(csv.find("\n0,1,1\n") != std::string::npos);
  CHECK(csv.find("\n1,0,0\n") != std::string::npos);
  // One line per state plus the header.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.trajectory.size()) + 1);
}

TEST_CASE("contraction thresholds from the maximum in-degree") {
  CHECK(convergence_bound(load("goal.json"), QSel::Sum) == Approx(2.0 / 9.0).epsilon(1e-12));
  CHECK(convergence_bound(load("goal.json"), QSel::Max) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(convergence_bound(load("twocycle.json"), QSel::Sum) == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(convergence_bound(load("twocycle.json"), QSel::Max) == Approx(1.0).epsilon(1e-12));
  CHECK(convergence_bound(load("oscillator.json"), QSel::Sum) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(convergence_bound(load("oscillator.json"), QSel::Max) == Approx(0.5).epsilon(1e-12));
  CHECK(std::isinf(convergence_bound(load("empty.json"), QSel::Sum)));
}

TEST_CASE("solver configuration validation") {
  Qbaf q = load("twocycle.json");
  SolveConfig cfg;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(solve(q, spec_of("mqe"), cfg), std::invalid_argument);
  cfg = SolveConfig{};
  cfg.max_iter = 0;
  CHECK_THROWS_AS(solve(q, spec_of("mqe"), cfg), std::invalid_argument);
  cfg = SolveConfig{};
  cfg.step_h = 0.0;
  CHECK_THROWS_AS(solve_continuous(q, spec_of("mqe"), cfg), std::invalid_argument);
  cfg.step_h = 1.5;
  CHECK_THROWS_AS(solve_continuous(q, spec_of("mqe"), cfg), std::invalid_argument);
}
