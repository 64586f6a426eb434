#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qbaf/core.hpp"
#include "qbaf/semantics.hpp"

// Executable checkers for twelve principles of gradual semantics. Each checker
// evaluates its principle's predicate over a sample of acyclic frameworks,
// constructing derived frameworks (relabelings, unions, probe arguments, twin
// sinks) as needed, and returns self-contained violation witnesses.

namespace qbaf {

enum class Principle {
  Anonymity,
  Independence,
  Directionality,
  Equivalence,
  Stability,
  Neutrality,
  Monotonicity,
  Reinforcement,
  Weakening,
  Strengthening,
  Duality,
  OpenMindedness,
};

inline constexpr std::array<Principle, 12> kAllPrinciples = {
    Principle::Anonymity,     Principle::Independence,  Principle::Directionality,
    Principle::Equivalence,   Principle::Stability,     Principle::Neutrality,
    Principle::Monotonicity,  Principle::Reinforcement, Principle::Weakening,
    Principle::Strengthening, Principle::Duality,       Principle::OpenMindedness,
};

std::string principle_name(Principle p);  // "anonymity" ... "open_mindedness"
std::string principle_code(Principle p);  // "An" ... "Op" (matrix column headers)
Principle principle_from_name(const std::string& name);  // throws std::invalid_argument

struct Violation {
  // A framework that reproduces the violation when solved on its own.
  Qbaf witness;
  // The arguments the predicate compared, in predicate-specific order.
  std::vector<std::string> argument_ids;
  // The observed values backing the verdict (strengths, expected references).
  std::vector<double> observed;
  // Which clause or probe failed, e.g. "strict", "attack_probe".
  std::string detail;
};

struct PostulateReport {
  Principle principle = Principle::Anonymity;
  SemanticsSpec semantics;
  int trials = 0;
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

// Evaluates one principle over the sample. Every sampled framework must be
// acyclic (throws std::invalid_argument otherwise); evaluation uses the exact
// single-pass solver. Deterministic in (principle, spec, sample).
PostulateReport check_principle(Principle principle, const SemanticsSpec& spec,
                                const std::vector<Qbaf>& sample);

// Samples n_frameworks small acyclic frameworks from the seed and runs all
// twelve principles, in declaration order. Deterministic in (spec, n, seed).
std::vector<PostulateReport> run_postulate_suite(const SemanticsSpec& spec, int n_frameworks,
                                                 std::uint64_t seed);

// Re-evaluates a stored witness in isolation; true if it still violates.
bool recheck_violation(Principle principle, const SemanticsSpec& spec, const Violation& v);

// JSON array of reports, including witnesses.
std::string reports_json(const std::vector<PostulateReport>& reports);

// Two-line check/cross matrix: a header of principle codes and a row of marks.
// ANSI color when `color` is set.
std::string render_matrix(const std::vector<PostulateReport>& reports, bool color);

}  // namespace qbaf
