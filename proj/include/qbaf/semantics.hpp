#pragma once

#include <string>
#include <vector>

#include "qbaf/core.hpp"

// Gradual semantics: aggregation of parent strengths and the influence
// functions of the seven supported families. Every family is modular, i.e. the
// new strength of an argument depends only on its initial strength and an
// aggregate of its parents' current strengths.
//
// Families and their text encodings:
//   dfq   product aggregation, piecewise-linear influence
//   reb   sum aggregation, exponential-damping influence
//   qen   sum aggregation, quadratic-energy influence
//   mlp   sum aggregation, logistic influence
//   mqe   normalized sum aggregation, quadratic-energy influence
//   drl   normalized sum aggregation, hard unit clamp
//   ddrl  normalized sum aggregation, smooth unit clamp (sharpness k)

namespace qbaf {

enum class Family { Dfq, Reb, Qen, Mlp, Mqe, Drl, Ddrl };
enum class QSel { Sum, Max };  // normalization denominator selector
enum class Clamp { Exact, Differentiable };

struct SemanticsSpec {
  Family family = Family::Ddrl;
  QSel q = QSel::Sum;
  double gamma = 1.0;  // aggregate weight for drl/ddrl, >= 0
  double k = 100.0;    // smooth-clamp sharpness for ddrl, >= 1

  bool operator==(const SemanticsSpec&) const = default;
};

// Current strengths, indexed like Qbaf::arguments().
using StrengthVector = std::vector<double>;

std::string family_name(Family f);
// Parses "dfq" | "reb" | "qen" | "mlp" | "mqe" | "drl" | "ddrl", optionally
// followed by ":" and comma-separated parameters q=sum|max, gamma=<real>=0>,
// k=<real>=1>. Throws std::invalid_argument on unknown families, unknown
// parameter keys, or out-of-range values.
SemanticsSpec parse_semantics_spec(const std::string& text);
// Canonical text form, parseable by parse_semantics_spec. Parameters are
// emitted only for families they affect.
std::string format_semantics_spec(const SemanticsSpec& spec);
// Parses a comma-separated list of specs; a token containing '=' continues the
// parameter list of the preceding family token, so "drl,gamma=2,mqe" is the
// two specs drl:gamma=2 and mqe.
std::vector<SemanticsSpec> parse_semantics_list(const std::string& text);

struct SumAggregate {
  double alpha = 0.0;        // supporter mass minus attacker mass
  double alpha_plus = 0.0;   // supporter mass
  double alpha_minus = 0.0;  // attacker mass
};

// Sum aggregation of the parents of argument `a` under strengths `s`.
SumAggregate aggregate_sum(const Qbaf& q, const StrengthVector& s, int a);
// Product aggregation: prod_attackers (1 - strength) - prod_supporters
// (1 - strength); empty products are 1, so no parents gives 0.
double aggregate_prod(const Qbaf& q, const StrengthVector& s, int a);

// Normalized aggregate: 0 when both masses vanish, otherwise
// alpha * |alpha| / denom with denom = alpha_plus + alpha_minus (Sum) or
// max(alpha_plus, alpha_minus) (Max). Requires alpha_plus, alpha_minus >= 0
// and alpha consistent with them to 1e-12; throws std::invalid_argument.
double delta_q(double alpha, double alpha_plus, double alpha_minus, QSel q);

// Hard clamp of z to [-1, 1].
double drelu(double z);
// Smooth strictly increasing approximation of drelu with range (-1, 1):
// (1/k) * [softplus(k(z+1)) - softplus(k(z-1))] - 1. Odd in z; pointwise gap
// to drelu is at most ln(2)/k, attained at z = +-1.
double ddrelu(double z, double k);
// Derivative of ddrelu in z: sigmoid(k(z+1)) - sigmoid(k(z-1)).
double ddrelu_grad(double z, double k);

// Influence functions. tau is the argument's initial strength; the second
// parameter is the family's aggregate.
double update_dfq(double tau, double pi);
double update_reb(double tau, double alpha);
double update_qen(double tau, double alpha);
double update_mlp(double tau, double alpha);
double update_mqe(double tau, double delta);
double update_drl(double tau, double delta, double gamma,
                  Clamp clamp = Clamp::Exact, double k = 100.0);

// One synchronous update of argument `a` under `spec`, reading parent
// strengths from `s`.
double update(const SemanticsSpec& spec, const Qbaf& q, const StrengthVector& s, int a);

}  // namespace qbaf
