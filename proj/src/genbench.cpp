#include "qbaf/genbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace qbaf {

namespace {

std::string padded_id(int index, int n) {
  int width = 1;
  for (int v = n; v >= 10; v /= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "x%0*d", width, index + 1);
  return buf;
}

double mixture_tau(SplitMix64& rng) {
  double r = rng.next_double();
  if (r < 0.7) return rng.next_double();
  if (r < 0.8) return 0.0;
  if (r < 0.9) return 0.5;
  return 1.0;
}

}  // namespace

Qbaf gen_ladder(int n, std::uint64_t seed, bool force_unit_tau) {
  if (n < 0) throw std::invalid_argument("supporter count must be >= 0");
  SplitMix64 rng(seed);
  double tau_g = rng.next_double();
  std::vector<double> shared(n);
  for (double& u : shared) u = rng.next_double();

  std::vector<Argument> args;
  args.push_back({"g", force_unit_tau ? 1.0 : tau_g});
  std::vector<IdPair> attacks, supports;
  for (int i = 0; i < n + 2; ++i) {
    double tau = i < 2 ? 1.0 : shared[i - 2];
    args.push_back({"a" + std::to_string(i + 1), force_unit_tau ? 1.0 : tau});
    attacks.emplace_back("a" + std::to_string(i + 1), "g");
  }
  for (int i = 0; i < n; ++i) {
    args.push_back({"s" + std::to_string(i + 1), force_unit_tau ? 1.0 : shared[i]});
    supports.emplace_back("s" + std::to_string(i + 1), "g");
  }
  return Qbaf(std::move(args), attacks, supports);
}

Qbaf gen_random_acyclic(std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int n = rng.uniform_int(30, 100);
  const double density = rng.uniform(0.1, 0.3);
  const double ratio = rng.uniform(0.4, 0.8);
  const double p_attack = ratio / (1.0 + ratio);

  std::vector<Argument> args;
  for (int i = 0; i < n; ++i) args.push_back({padded_id(i, n), rng.next_double()});

  // Edges point forward along a random order, so the result is acyclic while
  // document order stays independent of depth.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);

  std::vector<IdPair> attacks, supports;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!rng.bernoulli(density)) continue;
      const std::string& from = args[perm[i]].id;
      const std::string& to = args[perm[j]].id;
      (rng.bernoulli(p_attack) ? attacks : supports).emplace_back(from, to);
    }
  return Qbaf(std::move(args), attacks, supports);
}

Qbaf gen_random_cyclic(int n, double density, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("argument count must be >= 2");
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("density must be in [0, 1]");
  SplitMix64 rng(seed);
  std::vector<Argument> args;
  for (int i = 0; i < n; ++i) args.push_back({padded_id(i, n), rng.next_double()});
  std::vector<IdPair> attacks, supports;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !rng.bernoulli(density)) continue;
      (rng.bernoulli(0.5) ? attacks : supports).emplace_back(args[i].id, args[j].id);
    }
  return Qbaf(std::move(args), attacks, supports);
}

Qbaf gen_one_cycle(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("argument count must be >= 2");
  SplitMix64 rng(seed);
  const int cycle_len = rng.uniform_int(2, std::min(6, n));
  std::vector<Argument> args;
  for (int i = 0; i < n; ++i) args.push_back({padded_id(i, n), rng.next_double()});
  std::vector<IdPair> attacks, supports;
  auto add_edge = [&](int from, int to) {
    (rng.bernoulli(0.5) ? attacks : supports).emplace_back(args[from].id, args[to].id);
  };
  for (int i = 0; i < cycle_len; ++i) add_edge(i, (i + 1) % cycle_len);

  // Pendants attach as pure ancestors (all edges point toward the cycle or to
  // earlier ancestors) or pure descendants (all edges point away), so the only
  // cycle in the graph stays the constructed one.
  std::vector<int> ancestors, descendants;
  for (int p = cycle_len; p < n; ++p) {
    bool ancestor = rng.bernoulli(0.5);
    const std::vector<int>& peers = ancestor ? ancestors : descendants;
    const int edges = rng.uniform_int(1, 2);
    int first_other = -1;
    for (int e = 0; e < edges; ++e) {
      int span = cycle_len + static_cast<int>(peers.size());
      int pick = rng.uniform_int(0, span - 1);
      int other = pick < cycle_len ? pick : peers[pick - cycle_len];
      if (other == first_other) continue;  // avoid duplicate edges on the same pair
      first_other = other;
      if (ancestor)
        add_edge(p, other);
      else
        add_edge(other, p);
    }
    (ancestor ? ancestors : descendants).push_back(p);
  }
  return Qbaf(std::move(args), attacks, supports);
}

std::vector<Qbaf> gen_postulate_frameworks(int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  SplitMix64 master(seed);
  std::vector<Qbaf> out;
  out.reserve(count);
  for (int f = 0; f < count; ++f) {
    SplitMix64 rng = master.split();
    const int n = rng.uniform_int(4, 10);
    const double density = rng.uniform(0.2, 0.5);
    const double p_attack = rng.uniform(0.4, 0.7);
    std::vector<Argument> args;
    for (int i = 0; i < n; ++i)
      args.push_back({std::string(1, static_cast<char>('a' + i)), mixture_tau(rng)});
    std::vector<IdPair> attacks, supports;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (!rng.bernoulli(density)) continue;
        (rng.bernoulli(p_attack) ? attacks : supports).emplace_back(args[i].id, args[j].id);
      }
    out.emplace_back(std::move(args), attacks, supports);
  }
  return out;
}

namespace {

std::string qsel_name(QSel q) { return q == QSel::Sum ? "sum" : "max"; }

double goal_distance(const Qbaf& ladder, const SemanticsSpec& spec) {
  StrengthVector v = solve_acyclic(ladder, spec);
  int g = ladder.index_of("g");
  return std::abs(v[g] - ladder.argument(g).tau);
}

double mean_argument_distance(const Qbaf& q, const SemanticsSpec& spec) {
  StrengthVector v = solve_acyclic(q, spec);
  double total = 0.0;
  for (int i = 0; i < q.size(); ++i) total += std::abs(v[i] - q.argument(i).tau);
  return q.size() == 0 ? 0.0 : total / q.size();
}

}  // namespace

std::vector<ExperimentRow> exp_distance_vs_n(const std::vector<SemanticsSpec>& specs,
                                             const std::vector<int>& ns, int per_n,
                                             std::uint64_t seed, bool force_unit_tau) {
  if (ns.empty()) throw std::invalid_argument("size list must be nonempty");
  if (per_n < 1) throw std::invalid_argument("per_n must be >= 1");
  SplitMix64 master(seed);
  // One seed per ladder line; each line is evaluated at every n by augmenting
  // the same ladder, so the per-size means are nested, not independent.
  std::vector<std::uint64_t> ladder_seeds(per_n);
  for (auto& s : ladder_seeds) s = master.next_u64();

  std::vector<ExperimentRow> rows;
  for (const SemanticsSpec& spec : specs)
    for (int n : ns) {
      double total = 0.0;
      for (std::uint64_t ls : ladder_seeds)
        total += goal_distance(gen_ladder(n, ls, force_unit_tau), spec);
      ExperimentRow row;
      row.framework_id = "ladders";
      row.semantics = family_name(spec.family);
      row.q = qsel_name(spec.q);
      row.gamma = spec.gamma;
      row.n = n;
      row.metric = "mean_goal_distance";
      row.value = total / per_n;
      rows.push_back(std::move(row));
    }
  return rows;
}

std::vector<ExperimentRow> exp_gamma_sweep(Family family, QSel qsel,
                                           const std::vector<double>& gammas,
                                           const std::string& dataset, std::uint64_t seed) {
  if (family != Family::Drl && family != Family::Ddrl)
    throw std::invalid_argument("gamma sweep applies to the clamp families only");
  for (double g : gammas)
    if (!(g >= 0.0 && g <= 3.0)) throw std::invalid_argument("gamma values must be in [0, 3]");

  SplitMix64 master(seed);
  std::vector<Qbaf> frameworks;
  if (dataset == "ladders") {
    for (int size : {1, 2, 5, 10, 100})
      for (int i = 0; i < 10; ++i) frameworks.push_back(gen_ladder(size, master.next_u64()));
  } else if (dataset == "random_acyclic") {
    for (int i = 0; i < 30; ++i) frameworks.push_back(gen_random_acyclic(master.next_u64()));
  } else {
    throw std::invalid_argument("dataset must be ladders or random_acyclic");
  }

  std::vector<ExperimentRow> rows;
  for (double gamma : gammas) {
    SemanticsSpec spec;
    spec.family = family;
    spec.q = qsel;
    spec.gamma = gamma;
    double total = 0.0;
    for (const Qbaf& q : frameworks) total += mean_argument_distance(q, spec);
    ExperimentRow row;
    row.framework_id = dataset;
    row.semantics = family_name(family);
    row.q = qsel_name(qsel);
    row.gamma = gamma;
    row.n = static_cast<int>(frameworks.size());
    row.metric = "mean_distance";
    row.value = total / frameworks.size();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ExperimentRow> exp_runtime_convergence(const std::vector<int>& sizes, int per_size,
                                                   const std::vector<SemanticsSpec>& specs,
                                                   const SolveConfig& cfg, std::uint64_t seed) {
  if (sizes.empty()) throw std::invalid_argument("size list must be nonempty");
  if (per_size < 1) throw std::invalid_argument("per_size must be >= 1");
  SplitMix64 master(seed);
  std::vector<ExperimentRow> rows;
  for (int size : sizes) {
    // Same frameworks for every spec at this size; expected in-degree 2.
    std::vector<std::uint64_t> fw_seeds(per_size);
    for (auto& s : fw_seeds) s = master.next_u64();
    const double density = 2.0 / (size - 1);
    for (const SemanticsSpec& spec : specs) {
      int converged = 0;
      double iter_total = 0.0;
      double ms_total = 0.0;
      for (std::uint64_t fs : fw_seeds) {
        Qbaf q = gen_random_cyclic(size, std::min(1.0, density), fs);
        auto t0 = std::chrono::steady_clock::now();
        SolveResult r = solve_iterative(q, spec, cfg);
        auto t1 = std::chrono::steady_clock::now();
        ms_total += std::chrono::duration<double, std::milli>(t1 - t0).count();
        iter_total += r.iterations;
        if (r.status == SolveStatus::Converged) ++converged;
      }
      ExperimentRow frac;
      frac.framework_id = "cyclic_n" + std::to_string(size);
      frac.semantics = family_name(spec.family);
      frac.q = qsel_name(spec.q);
      frac.gamma = spec.gamma;
      frac.n = size;
      frac.metric = "converged_fraction";
      frac.value = static_cast<double>(converged) / per_size;
      frac.runtime_ms = ms_total / per_size;
      rows.push_back(frac);

      ExperimentRow iters = frac;
      iters.metric = "mean_iterations";
      iters.value = iter_total / per_size;
      iters.runtime_ms = 0.0;
      rows.push_back(std::move(iters));
    }
  }
  return rows;
}

std::string rows_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "framework_id,semantics,q,gamma,n,metric,value,runtime_ms\n";
  char buf[256];
  for (const ExperimentRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%s,%g,%d,%s,%.17g,%.3f\n", r.framework_id.c_str(),
                  r.semantics.c_str(), r.q.c_str(), r.gamma, r.n, r.metric.c_str(), r.value,
                  r.runtime_ms);
    out += buf;
  }
  return out;
}

}  // namespace qbaf
