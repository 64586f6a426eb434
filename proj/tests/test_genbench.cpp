#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "qbaf/core.hpp"
#include "qbaf/engine.hpp"
#include "qbaf/genbench.hpp"
#include "qbaf/semantics.hpp"

using namespace qbaf;
using doctest::Approx;

TEST_CASE("the counter generator matches its published reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next_u64() == 0x06C45D188009454Full);
}

TEST_CASE("counter generator helpers stay in range") {
  SplitMix64 rng(987);
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) {
    double d = rng.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
    int v = rng.uniform_int(3, 7);
    CHECK(v >= 3);
    CHECK(v <= 7);
    seen.insert(v);
  }
  // Every value of a five-element range shows up over a thousand draws.
  CHECK(seen.size() == 5);

  SplitMix64 a(55), b(55);
  SplitMix64 da = a.split(), db = b.split();
  CHECK(da.next_u64() == db.next_u64());
}

TEST_CASE("ladder frameworks have the fixed shape and exact mass gap") {
  for (std::uint64_t seed : {0, 3, 9}) {
    for (int n : {0, 1, 5, 10, 100}) {
      CAPTURE(seed);
      CAPTURE(n);
      Qbaf q = gen_ladder(n, seed);
      CHECK(q.size() == 1 + (n + 2) + n);
      CHECK(static_cast<int>(q.attacks().size()) == n + 2);
      CHECK(static_cast<int>(q.supports().size()) == n);
      // The first two attackers are pinned at full strength; attacker i+2
      // mirrors supporter i exactly, so attacker mass minus supporter mass
      // stays 2 regardless of n.
      CHECK(q.argument(q.index_of("a1")).tau == 1.0);
      CHECK(q.argument(q.index_of("a2")).tau == 1.0);
      for (int i = 1; i <= n; ++i)
        CHECK(q.argument(q.index_of("a" + std::to_string(i + 2))).tau ==
              q.argument(q.index_of("s" + std::to_string(i))).tau);

      StrengthVector taus;
      for (const Argument& a : q.arguments()) taus.push_back(a.tau);
      SumAggregate agg = aggregate_sum(q, taus, q.index_of("g"));
      CHECK(std::abs(agg.alpha + 2.0) <= 1e-12);
    }
  }
}

TEST_CASE("growing a ladder preserves the smaller one") {
  Qbaf small = gen_ladder(3, 77);
  Qbaf big = gen_ladder(8, 77);
  for (const Argument& a : small.arguments()) {
    CAPTURE(a.id);
    REQUIRE(big.has(a.id));
    CHECK(big.argument(big.index_of(a.id)).tau == a.tau);
  }
}

TEST_CASE("ladders are deterministic and can pin all strengths to one") {
  CHECK(gen_ladder(7, 9) == gen_ladder(7, 9));
  Qbaf forced = gen_ladder(4, 123, true);
  for (const Argument& a : forced.arguments()) CHECK(a.tau == 1.0);
  Qbaf base = gen_ladder(0, 5, true);
  CHECK(base.size() == 3);
  CHECK(base.attacks().size() == 2);
  CHECK(base.supports().empty());
}

TEST_CASE("random acyclic frameworks satisfy their advertised ranges") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    Qbaf q = gen_random_acyclic(seed);
    CHECK(q.size() >= 30);
    CHECK(q.size() <= 100);
    for (const Argument& a : q.arguments()) {
      CHECK(a.tau >= 0.0);
      CHECK(a.tau <= 1.0);
    }
    CHECK(analyze_graph(q).acyclic);
  }
  CHECK(gen_random_acyclic(4) == gen_random_acyclic(4));
}

TEST_CASE("random cyclic frameworks cover ordered pairs without self loops") {
  Qbaf q = gen_random_cyclic(10, 0.3, 21);
  CHECK(q.size() == 10);
  CHECK(gen_random_cyclic(10, 0.3, 21) == q);
  for (const auto& [from, to] : q.attacks()) CHECK(from != to);
  for (const auto& [from, to] : q.supports()) CHECK(from != to);

  Qbaf full = gen_random_cyclic(6, 1.0, 2);
  CHECK(full.attacks().size() + full.supports().size() == 6 * 5);
  Qbaf none = gen_random_cyclic(6, 0.0, 2);
  CHECK(none.attacks().empty());
  CHECK(none.supports().empty());

  CHECK_THROWS_AS(gen_random_cyclic(1, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_cyclic(5, 1.5, 0), std::invalid_argument);
}

TEST_CASE("single-cycle frameworks have exactly one simple cycle") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (int n : {2, 5, 12, 20}) {
      CAPTURE(seed);
      CAPTURE(n);
      Qbaf q = gen_one_cycle(n, seed);
      CHECK(q.size() == n);
      GraphInfo info = analyze_graph(q);
      CHECK(!info.acyclic);
      CHECK(info.at_most_one_cycle);
      int nontrivial = 0;
      for (const auto& comp : info.sccs)
        if (comp.size() >= 2) ++nontrivial;
      CHECK(nontrivial == 1);
    }
  }
  CHECK(gen_one_cycle(9, 3) == gen_one_cycle(9, 3));
}

TEST_CASE("postulate sample frameworks are small, acyclic, and atom-rich") {
  std::vector<Qbaf> sample = gen_postulate_frameworks(60, 42);
  REQUIRE(sample.size() == 60);
  bool saw_zero = false, saw_half = false, saw_one = false, saw_interior = false;
  for (const Qbaf& q : sample) {
    CHECK(q.size() >= 4);
    CHECK(q.size() <= 10);
    CHECK(analyze_graph(q).acyclic);
    for (const Argument& a : q.arguments()) {
      if (a.tau == 0.0) saw_zero = true;
      else if (a.tau == 0.5) saw_half = true;
      else if (a.tau == 1.0) saw_one = true;
      else saw_interior = true;
    }
  }
  CHECK(saw_zero);
  CHECK(saw_half);
  CHECK(saw_one);
  CHECK(saw_interior);
}

TEST_CASE("goal-distance experiment on pinned ladders matches closed forms") {
  std::vector<SemanticsSpec> specs = parse_semantics_list("mqe,qen");
  auto rows = exp_distance_vs_n(specs, {1, 2, 5}, 2, 3, true);
  REQUIRE(rows.size() == 6);
  // Ordered by semantics, then size; every pinned ladder is identical, so the
  // means equal the single-framework values: 4/((n+1)^2+4) for the normalized
  // family, constant 0.8 for the plain quadratic-energy one.
  CHECK(rows[0].semantics == "mqe");
  CHECK(rows[0].n == 1);
  CHECK(rows[0].value == Approx(0.5).epsilon(1e-12));
  CHECK(rows[1].value == Approx(4.0 / 13.0).epsilon(1e-12));
  CHECK(rows[2].value == Approx(0.1).epsilon(1e-12));
  for (int i = 3; i < 6; ++i) {
    CHECK(rows[i].semantics == "qen");
    CHECK(rows[i].value == Approx(0.8).epsilon(1e-12));
  }
  for (const auto& r : rows) {
    CHECK(r.framework_id == "ladders");
    CHECK(r.metric == "mean_goal_distance");
    CHECK(r.runtime_ms == 0.0);
  }
}

TEST_CASE("aggregate-weight sweep is monotone and anchored at zero") {
  auto rows = exp_gamma_sweep(Family::Drl, QSel::Sum, {0.0, 0.5, 1.0, 2.0}, "ladders", 5);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].value == 0.0);  // zero weight leaves every strength in place
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].value >= rows[i - 1].value);
  for (const auto& r : rows) {
    CHECK(r.framework_id == "ladders");
    CHECK(r.metric == "mean_distance");
  }

  auto smooth = exp_gamma_sweep(Family::Ddrl, QSel::Sum, {0.0}, "ladders", 5);
  CHECK(smooth[0].value <= std::log(2.0) / 100.0);

  auto acyclic_rows = exp_gamma_sweep(Family::Ddrl, QSel::Max, {0.0, 1.0}, "random_acyclic", 5);
  CHECK(acyclic_rows.size() == 2);

  CHECK_THROWS_AS(exp_gamma_sweep(Family::Qen, QSel::Sum, {1.0}, "ladders", 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(exp_gamma_sweep(Family::Drl, QSel::Sum, {4.0}, "ladders", 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(exp_gamma_sweep(Family::Drl, QSel::Sum, {1.0}, "bogus", 5),
                  std::invalid_argument);
}

TEST_CASE("runtime experiment reports convergence fractions and iteration means") {
  std::vector<SemanticsSpec> specs = parse_semantics_list("mqe,ddrl");
  SolveConfig cfg;
  cfg.epsilon = 1e-4;
  auto rows = exp_runtime_convergence({30}, 4, specs, cfg, 11);
  REQUIRE(rows.size() == 4);
  for (size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].framework_id == "cyclic_n30");
    CHECK(rows[i].metric == "converged_fraction");
    CHECK(rows[i].value == 1.0);
    CHECK(rows[i].runtime_ms >= 0.0);
    CHECK(rows[i + 1].metric == "mean_iterations");
    CHECK(rows[i + 1].value > 0.0);
  }
}

TEST_CASE("experiment rows render as a fixed-header CSV") {
  std::vector<SemanticsSpec> specs = parse_semantics_list("mqe");
  auto rows = exp_distance_vs_n(specs, {1, 2}, 2, 3, true);
  std::string csv = rows_csv(rows);
  CHECK(csv.rfind("framework_id,semantics,q,gamma,n,metric,value,runtime_ms\n", 0) == 0);
  CHECK(csv.find("ladders,mqe,sum,1,1,mean_goal_distance,0.5,0.000\n") != std::string::npos);
  // Seventeen significant digits, so the exact double for 4/13 survives a
  // round trip through the text form.
  CHECK(csv.find("ladders,mqe,sum,1,2,mean_goal_distance,0.30769230769230771,0.000\n") !=
        std::string::npos);
}
