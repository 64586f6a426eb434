#include "qbaf/postulates.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "qbaf/engine.hpp"
#include "qbaf/genbench.hpp"

namespace qbaf {

namespace {

constexpr double kEqTol = 1e-9;      // equality comparisons and strictness margin
constexpr double kExactTol = 1e-12;  // "exactly equal" premise matching
// Premise margins: mass differences below these are treated as ties. They keep
// quadratically-flattened responses (notably the normalized-energy family near
// a balanced aggregate, whose guaranteed strength gap at mass difference m
// scales like m^4) safely above the strictness margin, while every genuine
// Table-style failure involves gaps orders of magnitude larger.
constexpr double kMassMargin = 0.1;
// Strict ordering clauses apply only when both compared strengths are interior:
// hard-saturated responses (clamped at 0/1) legitimately tie.
constexpr double kInteriorLo = 0.02;
constexpr double kInteriorHi = 0.98;
// Constructed probe arguments draw their initial strength from this interior
// band so boundary rules of individual families do not mask the comparison.
constexpr double kProbeTauLo = 0.05;
constexpr double kProbeTauHi = 0.95;
constexpr double kOpenLow = 0.05;   // open-mindedness target for the attack probe
constexpr double kOpenHigh = 0.95;  // and for the support probe
constexpr int kOpenMaxProbes = 64;

struct Parts {
  std::vector<Argument> args;
  std::vector<IdPair> attacks;
  std::vector<IdPair> supports;
};

Parts parts_of(const Qbaf& q) {
  Parts p;
  p.args = q.arguments();
  for (const auto& [from, to] : q.attacks())
    p.attacks.emplace_back(q.argument(from).id, q.argument(to).id);
  for (const auto& [from, to] : q.supports())
    p.supports.emplace_back(q.argument(from).id, q.argument(to).id);
  return p;
}

// A sink to be appended to a framework: it has incoming edges only, so adding
// it never changes the strengths of existing arguments.
struct Sink {
  std::string id;
  double tau = 0.5;
  std::vector<std::string> attackers;
  std::vector<std::string> supporters;
};

Qbaf with_sinks(const Qbaf& q, const std::vector<Sink>& sinks) {
  Parts p = parts_of(q);
  for (const Sink& s : sinks) {
    p.args.push_back({s.id, s.tau});
    for (const std::string& a : s.attackers) p.attacks.emplace_back(a, s.id);
    for (const std::string& a : s.supporters) p.supports.emplace_back(a, s.id);
  }
  return Qbaf(std::move(p.args), p.attacks, p.supports);
}

double solved_strength(const Qbaf& q, const SemanticsSpec& spec, const std::string& id) {
  return solve_acyclic(q, spec)[q.index_of(id)];
}

// Stability comparisons use a wider tolerance for the smooth-clamp family:
// its clamp only approximates the identity on [-1,1], so a parentless
// argument's strength deviates from tau by up to ln(2)/(2k) near the
// boundaries. That approximation slack is not a principle failure.
double stability_tol(const SemanticsSpec& spec) {
  return spec.family == Family::Ddrl ? 4e-3 : kEqTol;
}

std::vector<int> sample_distinct(SplitMix64& rng, int n, int count,
                                 const std::set<int>& exclude = {}) {
  std::vector<int> picked;
  if (count <= 0) return picked;
  std::set<int> used(exclude);
  for (int attempts = 0; attempts < 64 && static_cast<int>(picked.size()) < count; ++attempts) {
    int c = rng.uniform_int(0, n - 1);
    if (used.insert(c).second) picked.push_back(c);
  }
  return picked;
}

std::vector<std::string> ids_of(const Qbaf& q, const std::vector<int>& idxs) {
  std::vector<std::string> out;
  for (int i : idxs) out.push_back(q.argument(i).id);
  return out;
}

double mass_of(const StrengthVector& base, const std::vector<int>& idxs) {
  double m = 0.0;
  for (int i : idxs) m += base[i];
  return m;
}

std::optional<int> find_strength_atom(const Qbaf& q, const StrengthVector& base, double value) {
  for (int i = 0; i < q.size(); ++i)
    if (std::abs(base[i] - value) <= kExactTol) return i;
  return std::nullopt;
}

struct Ctx {
  const SemanticsSpec& spec;
  const Qbaf& frame;
  const StrengthVector& base;
  SplitMix64& rng;
  PostulateReport& report;
};

void add_violation(Ctx& ctx, Qbaf witness, std::vector<std::string> ids,
                   std::vector<double> observed, std::string detail) {
  ctx.report.violations.push_back(
      {std::move(witness), std::move(ids), std::move(observed), std::move(detail)});
}

// ---- Anonymity: an id-relabeled, reordered copy yields the same strengths
// under the relabeling.

void check_anonymity(Ctx& ctx) {
  const int n = ctx.frame.size();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[ctx.rng.uniform_int(0, i)]);

  std::vector<std::string> new_id(n);
  for (int pos = 0; pos < n; ++pos) new_id[perm[pos]] = "n" + std::to_string(pos + 1);

  Parts p;
  for (int pos = 0; pos < n; ++pos) {
    int orig = perm[pos];
    p.args.push_back({new_id[orig], ctx.frame.argument(orig).tau});
  }
  for (const auto& [from, to] : ctx.frame.attacks()) p.attacks.emplace_back(new_id[from], new_id[to]);
  for (const auto& [from, to] : ctx.frame.supports())
    p.supports.emplace_back(new_id[from], new_id[to]);
  Qbaf relabeled(std::move(p.args), p.attacks, p.supports);
  StrengthVector solved = solve_acyclic(relabeled, ctx.spec);

  for (int i = 0; i < n; ++i) {
    double got = solved[relabeled.index_of(new_id[i])];
    if (std::abs(got - ctx.base[i]) > kEqTol)
      add_violation(ctx, relabeled, {new_id[i]}, {got, ctx.base[i]}, "relabel");
  }
}

// ---- Independence: a disjoint union preserves each side's strengths.

void check_independence(Ctx& ctx, const Qbaf& other, const StrengthVector& other_base) {
  Parts p;
  auto absorb = [&p](const Qbaf& q, const std::string& prefix) {
    for (const Argument& a : q.arguments()) p.args.push_back({prefix + a.id, a.tau});
    for (const auto& [from, to] : q.attacks())
      p.attacks.emplace_back(prefix + q.argument(from).id, prefix + q.argument(to).id);
    for (const auto& [from, to] : q.supports())
      p.supports.emplace_back(prefix + q.argument(from).id, prefix + q.argument(to).id);
  };
  absorb(ctx.frame, "l_");
  absorb(other, "r_");
  Qbaf combined(std::move(p.args), p.attacks, p.supports);
  StrengthVector solved = solve_acyclic(combined, ctx.spec);

  auto compare_side = [&](const Qbaf& q, const StrengthVector& expect, const std::string& prefix) {
    for (int i = 0; i < q.size(); ++i) {
      std::string id = prefix + q.argument(i).id;
      double got = solved[combined.index_of(id)];
      if (std::abs(got - expect[i]) > kEqTol)
        add_violation(ctx, combined, {id}, {got, expect[i]}, "union");
    }
  };
  compare_side(ctx.frame, ctx.base, "l_");
  compare_side(other, other_base, "r_");
}

// ---- Directionality: a new edge out of `a` leaves everything not reachable
// from `a` unchanged.

void check_directionality(Ctx& ctx) {
  const int n = ctx.frame.size();
  if (n < 2) return;
  std::set<std::pair<int, int>> att(ctx.frame.attacks().begin(), ctx.frame.attacks().end());
  std::set<std::pair<int, int>> sup(ctx.frame.supports().begin(), ctx.frame.supports().end());

  for (int attempt = 0; attempt < 10; ++attempt) {
    int i = ctx.rng.uniform_int(0, n - 2);
    int j = ctx.rng.uniform_int(i + 1, n - 1);  // document-forward keeps it acyclic
    bool attack = ctx.rng.bernoulli(0.5);
    if (attack ? att.count({i, j}) : sup.count({i, j})) continue;

    Parts p = parts_of(ctx.frame);
    const std::string& from = ctx.frame.argument(i).id;
    const std::string& to = ctx.frame.argument(j).id;
    (attack ? p.attacks : p.supports).emplace_back(from, to);
    Qbaf extended(std::move(p.args), p.attacks, p.supports);
    StrengthVector solved = solve_acyclic(extended, ctx.spec);

    // Arguments reachable from i in the extended graph.
    std::vector<std::vector<int>> succ(n);
    for (const auto& [f, t] : extended.attacks()) succ[f].push_back(t);
    for (const auto& [f, t] : extended.supports()) succ[f].push_back(t);
    std::vector<char> reach(n, 0);
    std::vector<int> queue{i};
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int w : succ[v])
        if (!reach[w]) {
          reach[w] = 1;
          queue.push_back(w);
        }
    }
    for (int x = 0; x < n; ++x) {
      if (reach[x]) continue;
      if (std::abs(solved[x] - ctx.base[x]) > kEqTol)
        add_violation(ctx, extended, {ctx.frame.argument(x).id}, {solved[x], ctx.base[x]},
                      "added " + std::string(attack ? "attack" : "support") + " " + from + "->" + to);
    }
    return;
  }
}

// ---- Equivalence: equal tau and equal parent strength multisets (per
// relation) force equal strength.

void check_equivalence(Ctx& ctx) {
  const int n = ctx.frame.size();
  std::vector<Sink> sinks;
  double tau = ctx.rng.uniform(kProbeTauLo, kProbeTauHi);

  std::vector<int> att = sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 2));
  std::vector<int> sup = sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 2));
  sinks.push_back({"eq_a", tau, ids_of(ctx.frame, att), ids_of(ctx.frame, sup)});
  sinks.push_back({"eq_b", tau, ids_of(ctx.frame, att), ids_of(ctx.frame, sup)});

  // Distinct parents with exactly equal strengths, when the frame offers them.
  bool pair_case = false;
  double tau2 = ctx.rng.uniform(kProbeTauLo, kProbeTauHi);
  for (int u = 0; u < n && !pair_case; ++u)
    for (int v = u + 1; v < n && !pair_case; ++v)
      if (std::abs(ctx.base[u] - ctx.base[v]) <= kExactTol) {
        sinks.push_back({"eq_c", tau2, {ctx.frame.argument(u).id}, {}});
        sinks.push_back({"eq_d", tau2, {ctx.frame.argument(v).id}, {}});
        pair_case = true;
      }

  Qbaf derived = with_sinks(ctx.frame, sinks);
  StrengthVector solved = solve_acyclic(derived, ctx.spec);
  double a = solved[derived.index_of("eq_a")];
  double b = solved[derived.index_of("eq_b")];
  if (std::abs(a - b) > kEqTol)
    add_violation(ctx, derived, {"eq_a", "eq_b"}, {a, b}, "same_parents");
  if (pair_case) {
    double c = solved[derived.index_of("eq_c")];
    double d = solved[derived.index_of("eq_d")];
    if (std::abs(c - d) > kEqTol)
      add_violation(ctx, derived, {"eq_c", "eq_d"}, {c, d}, "equal_strength_parents");
  }
}

// ---- Stability: no parents implies strength equals initial strength.

void check_stability(Ctx& ctx) {
  double tol = stability_tol(ctx.spec);
  for (int i = 0; i < ctx.frame.size(); ++i) {
    if (!ctx.frame.attackers_of(i).empty() || !ctx.frame.supporters_of(i).empty()) continue;
    double tau = ctx.frame.argument(i).tau;
    if (std::abs(ctx.base[i] - tau) > tol)
      add_violation(ctx, ctx.frame, {ctx.frame.argument(i).id}, {ctx.base[i], tau}, "source");
  }
}

// ---- Neutrality: a parent of final strength exactly 0 has no effect.

void check_neutrality(Ctx& ctx) {
  auto zero = find_strength_atom(ctx.frame, ctx.base, 0.0);
  if (!zero) return;  // the family admits no strength-0 argument here; nothing to test
  const int n = ctx.frame.size();
  std::set<int> excl{*zero};
  std::vector<int> att = sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 2), excl);
  std::vector<int> sup = sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 2), excl);
  double tau = ctx.rng.uniform(kProbeTauLo, kProbeTauHi);
  std::string zid = ctx.frame.argument(*zero).id;

  Sink t1{"ne_t1", tau, ids_of(ctx.frame, att), ids_of(ctx.frame, sup)};
  Sink t2 = t1;
  t2.id = "ne_t2";
  t2.attackers.push_back(zid);
  Sink t3 = t1;
  t3.id = "ne_t3";
  t3.supporters.push_back(zid);

  Qbaf derived = with_sinks(ctx.frame, {t1, t2, t3});
  StrengthVector solved = solve_acyclic(derived, ctx.spec);
  double r1 = solved[derived.index_of("ne_t1")];
  double r2 = solved[derived.index_of("ne_t2")];
  double r3 = solved[derived.index_of("ne_t3")];
  if (std::abs(r2 - r1) > kEqTol)
    add_violation(ctx, derived, {"ne_t2", "ne_t1"}, {r2, r1}, "zero_attacker");
  if (std::abs(r3 - r1) > kEqTol)
    add_violation(ctx, derived, {"ne_t3", "ne_t1"}, {r3, r1}, "zero_supporter");
}

// ---- Monotonicity: with equal tau, a target attacked by (a strength-subset)
// and supported by (a strength-superset) is at least as strong; strictly
// stronger when the premise gap is interior and carries real mass.

void check_monotonicity(Ctx& ctx) {
  const int n = ctx.frame.size();
  for (int round = 0; round < 3; ++round) {
    std::vector<int> shared_att = sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 2));
    std::vector<int> shared_sup = sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 2));

    // Saturation enrichment: a strength-1 argument placed on both sides of the
    // shared parent set exercises product-style saturation.
    if (auto one = find_strength_atom(ctx.frame, ctx.base, 1.0); one && ctx.rng.bernoulli(0.5)) {
      if (std::find(shared_att.begin(), shared_att.end(), *one) == shared_att.end())
        shared_att.push_back(*one);
      if (std::find(shared_sup.begin(), shared_sup.end(), *one) == shared_sup.end())
        shared_sup.push_back(*one);
    }

    std::set<int> att_excl(shared_att.begin(), shared_att.end());
    std::set<int> sup_excl(shared_sup.begin(), shared_sup.end());
    std::vector<int> extra_att =
        sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 2), att_excl);
    std::vector<int> extra_sup =
        sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 2), sup_excl);
    if (extra_att.empty() && extra_sup.empty()) continue;

    double tau = ctx.rng.uniform(kProbeTauLo, kProbeTauHi);
    Sink a{"mo_a", tau, ids_of(ctx.frame, shared_att), ids_of(ctx.frame, shared_sup)};
    for (int e : extra_sup) a.supporters.push_back(ctx.frame.argument(e).id);
    Sink b{"mo_b", tau, ids_of(ctx.frame, shared_att), ids_of(ctx.frame, shared_sup)};
    for (int e : extra_att) b.attackers.push_back(ctx.frame.argument(e).id);

    Qbaf derived = with_sinks(ctx.frame, {a, b});
    StrengthVector solved = solve_acyclic(derived, ctx.spec);
    double ra = solved[derived.index_of("mo_a")];
    double rb = solved[derived.index_of("mo_b")];

    if (ra < rb - kEqTol) {
      add_violation(ctx, derived, {"mo_a", "mo_b"}, {ra, rb}, "nonstrict");
      continue;
    }
    double gap_mass = mass_of(ctx.base, extra_att) + mass_of(ctx.base, extra_sup);
    bool interior = ra >= kInteriorLo && ra <= kInteriorHi && rb >= kInteriorLo && rb <= kInteriorHi;
    if (gap_mass >= kMassMargin && interior && !(ra > rb + kEqTol))
      add_violation(ctx, derived, {"mo_a", "mo_b"}, {ra, rb}, "strict");
  }
}

// ---- Reinforcement: exchanging one attacker for a weaker one and one
// supporter for a stronger one cannot decrease the strength; with interior
// values and real margins it must increase it.

void check_reinforcement(Ctx& ctx) {
  const int n = ctx.frame.size();
  if (n < 4) return;
  for (int round = 0; round < 3; ++round) {
    std::vector<int> shared_att = sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 1));
    std::vector<int> shared_sup = sample_distinct(ctx.rng, n, ctx.rng.uniform_int(0, 1));
    if (auto one = find_strength_atom(ctx.frame, ctx.base, 1.0); one && ctx.rng.bernoulli(0.5)) {
      shared_att.assign(1, *one);
      shared_sup.assign(1, *one);
    }

    std::set<int> att_excl(shared_att.begin(), shared_att.end());
    std::set<int> sup_excl(shared_sup.begin(), shared_sup.end());
    std::vector<int> att_pair = sample_distinct(ctx.rng, n, 2, att_excl);
    std::vector<int> sup_pair = sample_distinct(ctx.rng, n, 2, sup_excl);
    if (att_pair.size() < 2 || sup_pair.size() < 2) continue;

    // Target a gets the weaker attacker and the stronger supporter.
    int x_a = att_pair[0], x_b = att_pair[1];
    if (ctx.base[x_a] > ctx.base[x_b]) std::swap(x_a, x_b);
    int y_a = sup_pair[0], y_b = sup_pair[1];
    if (ctx.base[y_a] < ctx.base[y_b]) std::swap(y_a, y_b);

    double tau = ctx.rng.uniform(kProbeTauLo, kProbeTauHi);
    Sink a{"re_a", tau, ids_of(ctx.frame, shared_att), ids_of(ctx.frame, shared_sup)};
    a.attackers.push_back(ctx.frame.argument(x_a).id);
    a.supporters.push_back(ctx.frame.argument(y_a).id);
    Sink b{"re_b", tau, ids_of(ctx.frame, shared_att), ids_of(ctx.frame, shared_sup)};
    b.attackers.push_back(ctx.frame.argument(x_b).id);
    b.supporters.push_back(ctx.frame.argument(y_b).id);

    Qbaf derived = with_sinks(ctx.frame, {a, b});
    StrengthVector solved = solve_acyclic(derived, ctx.spec);
    double ra = solved[derived.index_of("re_a")];
    double rb = solved[derived.index_of("re_b")];

    if (ra < rb - kEqTol) {
      add_violation(ctx, derived, {"re_a", "re_b"}, {ra, rb}, "nonstrict");
      continue;
    }
    bool margin = ctx.base[x_b] - ctx.base[x_a] >= kMassMargin &&
                  ctx.base[y_a] - ctx.base[y_b] >= kMassMargin;
    bool interior = ra >= kInteriorLo && ra <= kInteriorHi && rb >= kInteriorLo && rb <= kInteriorHi;
    if (margin && interior && !(ra > rb + kEqTol))
      add_violation(ctx, derived, {"re_a", "re_b"}, {ra, rb}, "strict");
  }
}

// ---- Weakening / Strengthening: an interior-tau argument whose attacker mass
// clearly outweighs its supporter mass must end below tau (dually above).

void check_weight_direction(Ctx& ctx, bool weakening) {
  auto premise_holds = [&](double plus, double minus, double tau) {
    if (tau < kProbeTauLo || tau > kProbeTauHi) return false;
    return weakening ? plus <= minus - kMassMargin : minus <= plus - kMassMargin;
  };
  const char* label = weakening ? "weakening" : "strengthening";

  // Existing arguments first.
  for (int i = 0; i < ctx.frame.size(); ++i) {
    if (ctx.frame.attackers_of(i).empty() && ctx.frame.supporters_of(i).empty()) continue;
    SumAggregate agg = aggregate_sum(ctx.frame, ctx.base, i);
    double tau = ctx.frame.argument(i).tau;
    if (!premise_holds(agg.alpha_plus, agg.alpha_minus, tau)) continue;
    bool violated = weakening ? !(ctx.base[i] < tau - kEqTol) : !(ctx.base[i] > tau + kEqTol);
    if (violated)
      add_violation(ctx, ctx.frame, {ctx.frame.argument(i).id}, {ctx.base[i], tau}, label);
  }

  // Constructed sinks, biased toward the tested side, occasionally forcing a
  // strength-1 argument into both roles to exercise saturation.
  const int n = ctx.frame.size();
  for (int round = 0; round < 2; ++round) {
    int heavy = ctx.rng.uniform_int(1, 3);
    int light = ctx.rng.uniform_int(0, 2);
    std::vector<int> att = sample_distinct(ctx.rng, n, weakening ? heavy : light);
    std::vector<int> sup =
        sample_distinct(ctx.rng, n, weakening ? light : heavy, {att.begin(), att.end()});
    if (auto one = find_strength_atom(ctx.frame, ctx.base, 1.0); one && ctx.rng.bernoulli(0.5)) {
      if (std::find(att.begin(), att.end(), *one) == att.end()) att.push_back(*one);
      if (std::find(sup.begin(), sup.end(), *one) == sup.end()) sup.push_back(*one);
    }
    double plus = mass_of(ctx.base, sup);
    double minus = mass_of(ctx.base, att);
    double tau = ctx.rng.uniform(kProbeTauLo, kProbeTauHi);
    if (!premise_holds(plus, minus, tau)) continue;

    Qbaf derived = with_sinks(ctx.frame, {{"ws_t", tau, ids_of(ctx.frame, att), ids_of(ctx.frame, sup)}});
    double got = solved_strength(derived, ctx.spec, "ws_t");
    bool violated = weakening ? !(got < tau - kEqTol) : !(got > tau + kEqTol);
    if (violated) add_violation(ctx, derived, {"ws_t"}, {got, tau}, label);
  }
}

// ---- Duality: a mirror of x (roles of its parents swapped, parent strengths
// kept, initial strength complemented) must land on the complemented strength.

void check_duality(Ctx& ctx) {
  std::vector<Sink> sinks;
  for (int i = 0; i < ctx.frame.size(); ++i) {
    Sink m;
    m.id = "du_" + ctx.frame.argument(i).id;
    m.tau = 1.0 - ctx.frame.argument(i).tau;
    for (int s : ctx.frame.supporters_of(i)) m.attackers.push_back(ctx.frame.argument(s).id);
    for (int a : ctx.frame.attackers_of(i)) m.supporters.push_back(ctx.frame.argument(a).id);
    sinks.push_back(std::move(m));
  }
  Qbaf derived = with_sinks(ctx.frame, sinks);
  StrengthVector solved = solve_acyclic(derived, ctx.spec);
  for (int i = 0; i < ctx.frame.size(); ++i) {
    const std::string& id = ctx.frame.argument(i).id;
    double mirror = solved[derived.index_of("du_" + id)];
    double expect = 1.0 - solved[derived.index_of(id)];
    if (std::abs(mirror - expect) > kEqTol)
      add_violation(ctx, derived, {id, "du_" + id}, {mirror, expect}, "mirror");
  }
}

// ---- Open-mindedness: enough fresh strength-1 attackers drive any argument
// below 0.05; fresh strength-1 supporters drive it above 0.95.

Qbaf with_probes(const Qbaf& q, const std::string& target, int m, bool attack) {
  Parts p = parts_of(q);
  for (int i = 0; i < m; ++i) {
    std::string id = "om" + std::to_string(i + 1);
    p.args.push_back({id, 1.0});
    (attack ? p.attacks : p.supports).emplace_back(id, target);
  }
  return Qbaf(std::move(p.args), p.attacks, p.supports);
}

void check_open_mindedness(Ctx& ctx) {
  for (int i = 0; i < ctx.frame.size(); ++i) {
    const std::string& id = ctx.frame.argument(i).id;
    for (bool attack : {true, false}) {
      bool reached = false;
      double last = 0.0;
      for (int m = 1; m <= kOpenMaxProbes && !reached; m *= 2) {
        Qbaf probed = with_probes(ctx.frame, id, m, attack);
        last = solved_strength(probed, ctx.spec, id);
        reached = attack ? last < kOpenLow : last > kOpenHigh;
      }
      if (!reached) {
        Qbaf witness = with_probes(ctx.frame, id, kOpenMaxProbes, attack);
        add_violation(ctx, witness, {id}, {last, attack ? kOpenLow : kOpenHigh},
                      attack ? "attack_probe" : "support_probe");
      }
    }
  }
}

}  // namespace

std::string principle_name(Principle p) {
  switch (p) {
    case Principle::Anonymity: return "anonymity";
    case Principle::Independence: return "independence";
    case Principle::Directionality: return "directionality";
    case Principle::Equivalence: return "equivalence";
    case Principle::Stability: return "stability";
    case Principle::Neutrality: return "neutrality";
    case Principle::Monotonicity: return "monotonicity";
    case Principle::Reinforcement: return "reinforcement";
    case Principle::Weakening: return "weakening";
    case Principle::Strengthening: return "strengthening";
    case Principle::Duality: return "duality";
    case Principle::OpenMindedness: return "open_mindedness";
  }
  return "?";
}

std::string principle_code(Principle p) {
  switch (p) {
    case Principle::Anonymity: return "An";
    case Principle::Independence: return "In";
    case Principle::Directionality: return "Di";
    case Principle::Equivalence: return "Eq";
    case Principle::Stability: return "Stb";
    case Principle::Neutrality: return "Ne";
    case Principle::Monotonicity: return "Mo";
    case Principle::Reinforcement: return "Re";
    case Principle::Weakening: return "We";
    case Principle::Strengthening: return "Str";
    case Principle::Duality: return "Du";
    case Principle::OpenMindedness: return "Op";
  }
  return "?";
}

Principle principle_from_name(const std::string& name) {
  for (Principle p : kAllPrinciples)
    if (principle_name(p) == name) return p;
  throw std::invalid_argument("unknown principle \"" + name + "\"");
}

PostulateReport check_principle(Principle principle, const SemanticsSpec& spec,
                                const std::vector<Qbaf>& sample) {
  PostulateReport report;
  report.principle = principle;
  report.semantics = spec;

  std::vector<StrengthVector> bases;
  bases.reserve(sample.size());
  for (const Qbaf& q : sample) {
    if (!analyze_graph(q).acyclic)
      throw std::invalid_argument("postulate sample contains a cyclic framework");
    bases.push_back(solve_acyclic(q, spec));
  }

  for (size_t i = 0; i < sample.size(); ++i) {
    // Fixed per-(framework, principle) stream so reports are reproducible.
    SplitMix64 rng(0xA11CE5EEDull ^ (static_cast<std::uint64_t>(i) << 8) ^
                   static_cast<std::uint64_t>(principle));
    Ctx ctx{spec, sample[i], bases[i], rng, report};
    switch (principle) {
      case Principle::Anonymity: check_anonymity(ctx); break;
      case Principle::Independence: {
        size_t j = (i + 1) % sample.size();
        check_independence(ctx, sample[j], bases[j]);
        break;
      }
      case Principle::Directionality: check_directionality(ctx); break;
      case Principle::Equivalence: check_equivalence(ctx); break;
      case Principle::Stability: check_stability(ctx); break;
      case Principle::Neutrality: check_neutrality(ctx); break;
      case Principle::Monotonicity: check_monotonicity(ctx); break;
      case Principle::Reinforcement: check_reinforcement(ctx); break;
      case Principle::Weakening: check_weight_direction(ctx, true); break;
      case Principle::Strengthening: check_weight_direction(ctx, false); break;
      case Principle::Duality: check_duality(ctx); break;
      case Principle::OpenMindedness: check_open_mindedness(ctx); break;
    }
    ++report.trials;
  }
  return report;
}

std::vector<PostulateReport> run_postulate_suite(const SemanticsSpec& spec, int n_frameworks,
                                                 std::uint64_t seed) {
  if (n_frameworks < 1) throw std::invalid_argument("n_frameworks must be >= 1");
  std::vector<Qbaf> sample = gen_postulate_frameworks(n_frameworks, seed);
  std::vector<PostulateReport> reports;
  for (Principle p : kAllPrinciples) reports.push_back(check_principle(p, spec, sample));
  return reports;
}

bool recheck_violation(Principle principle, const SemanticsSpec& spec, const Violation& v) {
  const Qbaf& w = v.witness;
  StrengthVector solved = solve_acyclic(w, spec);
  auto rho = [&](const std::string& id) { return solved[w.index_of(id)]; };
  switch (principle) {
    case Principle::Anonymity:
    case Principle::Independence:
    case Principle::Directionality:
      // The reference value cannot be re-derived from the witness alone; it is
      // carried in observed[1].
      return std::abs(rho(v.argument_ids[0]) - v.observed[1]) > kEqTol;
    case Principle::Equivalence:
    case Principle::Neutrality:
      return std::abs(rho(v.argument_ids[0]) - rho(v.argument_ids[1])) > kEqTol;
    case Principle::Stability: {
      const std::string& id = v.argument_ids[0];
      return std::abs(rho(id) - w.argument(w.index_of(id)).tau) > stability_tol(spec);
    }
    case Principle::Monotonicity:
    case Principle::Reinforcement: {
      double a = rho(v.argument_ids[0]);
      double b = rho(v.argument_ids[1]);
      return v.detail == "strict" ? !(a > b + kEqTol) : a < b - kEqTol;
    }
    case Principle::Weakening: {
      const std::string& id = v.argument_ids[0];
      return !(rho(id) < w.argument(w.index_of(id)).tau - kEqTol);
    }
    case Principle::Strengthening: {
      const std::string& id = v.argument_ids[0];
      return !(rho(id) > w.argument(w.index_of(id)).tau + kEqTol);
    }
    case Principle::Duality:
      return std::abs(rho(v.argument_ids[1]) - (1.0 - rho(v.argument_ids[0]))) > kEqTol;
    case Principle::OpenMindedness: {
      double got = rho(v.argument_ids[0]);
      return v.detail == "attack_probe" ? !(got < kOpenLow) : !(got > kOpenHigh);
    }
  }
  return false;
}

std::string reports_json(const std::vector<PostulateReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const PostulateReport& r : reports) {
    nlohmann::ordered_json jr;
    jr["principle"] = principle_name(r.principle);
    jr["semantics"] = format_semantics_spec(r.semantics);
    jr["trials"] = r.trials;
    jr["passed"] = r.passed();
    nlohmann::ordered_json jv = nlohmann::ordered_json::array();
    for (const Violation& v : r.violations) {
      nlohmann::ordered_json one;
      one["framework"] = nlohmann::ordered_json::parse(serialize_qbaf(v.witness));
      one["argument_ids"] = v.argument_ids;
      one["observed"] = v.observed;
      one["detail"] = v.detail;
      jv.push_back(std::move(one));
    }
    jr["violations"] = std::move(jv);
    arr.push_back(std::move(jr));
  }
  return arr.dump(2) + "\n";
}

std::string render_matrix(const std::vector<PostulateReport>& reports, bool color) {
  std::string header, row;
  for (const PostulateReport& r : reports) {
    std::string code = principle_code(r.principle);
    header += code + std::string(4 - code.size(), ' ');
    std::string mark = r.passed() ? "✓" : "✗";
    if (color) mark = (r.passed() ? "\x1b[32m" : "\x1b[31m") + mark + "\x1b[0m";
    row += mark + "   ";
  }
  while (!header.empty() && header.back() == ' ') header.pop_back();
  while (!row.empty() && row.back() == ' ') row.pop_back();
  return header + "\n" + row + "\n";
}

}  // namespace qbaf
