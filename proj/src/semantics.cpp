#include "qbaf/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qbaf {

namespace {

double softplus(double x) {
  // max(x,0) + log1p(exp(-|x|)) never overflows and keeps full precision on
  // both tails.
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid value for " + key + ": \"" + value + "\"");
  }
  if (pos != value.size() || !std::isfinite(v))
    throw std::invalid_argument("invalid value for " + key + ": \"" + value + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

void apply_param(SemanticsSpec& spec, const std::string& token) {
  size_t eq = token.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("expected key=value parameter, got \"" + token + "\"");
  std::string key = trimmed(token.substr(0, eq));
  std::string value = trimmed(token.substr(eq + 1));
  if (key == "q") {
    if (value == "sum")
      spec.q = QSel::Sum;
    else if (value == "max")
      spec.q = QSel::Max;
    else
      throw std::invalid_argument("q must be sum or max, got \"" + value + "\"");
  } else if (key == "gamma") {
    spec.gamma = parse_real(key, value);
    if (spec.gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  } else if (key == "k") {
    spec.k = parse_real(key, value);
    if (spec.k < 1.0) throw std::invalid_argument("k must be >= 1");
  } else {
    throw std::invalid_argument("unknown semantics parameter \"" + key + "\"");
  }
}

Family family_from_name(const std::string& name) {
  if (name == "dfq") return Family::Dfq;
  if (name == "reb") return Family::Reb;
  if (name == "qen") return Family::Qen;
  if (name == "mlp") return Family::Mlp;
  if (name == "mqe") return Family::Mqe;
  if (name == "drl") return Family::Drl;
  if (name == "ddrl") return Family::Ddrl;
  throw std::invalid_argument("unknown semantics family \"" + name + "\"");
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Dfq: return "dfq";
    case Family::Reb: return "reb";
    case Family::Qen: return "qen";
    case Family::Mlp: return "mlp";
    case Family::Mqe: return "mqe";
    case Family::Drl: return "drl";
    case Family::Ddrl: return "ddrl";
  }
  return "?";
}

SemanticsSpec parse_semantics_spec(const std::string& text) {
  std::string body = trimmed(text);
  SemanticsSpec spec;
  size_t colon = body.find(':');
  spec.family = family_from_name(trimmed(body.substr(0, colon)));
  if (colon != std::string::npos) {
    for (const std::string& tok : split(body.substr(colon + 1), ',')) {
      std::string t = trimmed(tok);
      if (t.empty()) throw std::invalid_argument("empty semantics parameter");
      apply_param(spec, t);
    }
  }
  return spec;
}

std::string format_semantics_spec(const SemanticsSpec& spec) {
  std::string out = family_name(spec.family);
  std::vector<std::string> params;
  switch (spec.family) {
    case Family::Dfq:
    case Family::Reb:
    case Family::Qen:
    case Family::Mlp:
      break;
    case Family::Mqe:
      params.push_back("q=" + std::string(spec.q == QSel::Sum ? "sum" : "max"));
      break;
    case Family::Drl:
      params.push_back("q=" + std::string(spec.q == QSel::Sum ? "sum" : "max"));
      params.push_back("gamma=" + format_real(spec.gamma));
      break;
    case Family::Ddrl:
      params.push_back("q=" + std::string(spec.q == QSel::Sum ? "sum" : "max"));
      params.push_back("gamma=" + format_real(spec.gamma));
      params.push_back("k=" + format_real(spec.k));
      break;
  }
  for (size_t i = 0; i < params.size(); ++i)
    out += (i == 0 ? ":" : ",") + params[i];
  return out;
}

std::vector<SemanticsSpec> parse_semantics_list(const std::string& text) {
  std::vector<SemanticsSpec> specs;
  for (const std::string& raw : split(text, ',')) {
    std::string tok = trimmed(raw);
    if (tok.empty()) throw std::invalid_argument("empty semantics token");
    if (tok.find('=') != std::string::npos && tok.find(':') == std::string::npos) {
      if (specs.empty())
        throw std::invalid_argument("parameter \"" + tok + "\" precedes any family");
      apply_param(specs.back(), tok);
    } else {
      specs.push_back(parse_semantics_spec(tok));
    }
  }
  if (specs.empty()) throw std::invalid_argument("empty semantics list");
  return specs;
}

SumAggregate aggregate_sum(const Qbaf& q, const StrengthVector& s, int a) {
  SumAggregate agg;
  for (int p : q.supporters_of(a)) agg.alpha_plus += s[p];
  for (int p : q.attackers_of(a)) agg.alpha_minus += s[p];
  agg.alpha = agg.alpha_plus - agg.alpha_minus;
  return agg;
}

double aggregate_prod(const Qbaf& q, const StrengthVector& s, int a) {
  double att = 1.0, sup = 1.0;
  for (int p : q.attackers_of(a)) att *= 1.0 - s[p];
  for (int p : q.supporters_of(a)) sup *= 1.0 - s[p];
  return att - sup;
}

double delta_q(double alpha, double alpha_plus, double alpha_minus, QSel q) {
  if (alpha_plus < 0.0 || alpha_minus < 0.0)
    throw std::invalid_argument("aggregate masses must be nonnegative");
  if (std::abs(alpha - (alpha_plus - alpha_minus)) > 1e-12)
    throw std::invalid_argument("alpha inconsistent with its mass decomposition");
  if (alpha_plus == 0.0 && alpha_minus == 0.0) return 0.0;
  double denom = q == QSel::Sum ? alpha_plus + alpha_minus : std::max(alpha_plus, alpha_minus);
  return alpha * std::abs(alpha) / denom;
}

double drelu(double z) { return std::max(-1.0, std::min(1.0, z)); }

double ddrelu(double z, double k) {
  double c = (softplus(k * (z + 1.0)) - softplus(k * (z - 1.0))) / k - 1.0;
  // The exact range is the open interval (-1, 1), but once both softplus
  // calls hit their linear regime the subtraction can land an ulp outside it.
  return std::clamp(c, -1.0, 1.0);
}

double ddrelu_grad(double z, double k) {
  return sigmoid(k * (z + 1.0)) - sigmoid(k * (z - 1.0));
}

double update_dfq(double tau, double pi) {
  if (pi <= 0.0) return tau * (1.0 + pi);
  return tau * (1.0 - pi) + pi;
}

double update_reb(double tau, double alpha) {
  return 1.0 - (1.0 - tau * tau) / (1.0 + tau * std::exp(alpha));
}

double update_qen(double tau, double alpha) {
  double energy = alpha * alpha / (1.0 + alpha * alpha);
  if (alpha <= 0.0) return (1.0 - energy) * tau;
  return energy + (1.0 - energy) * tau;
}

double update_mlp(double tau, double alpha) {
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  return sigmoid(std::log(tau / (1.0 - tau)) + alpha);
}

double update_mqe(double tau, double delta) {
  double energy = delta * delta / (1.0 + delta * delta);
  if (delta <= 0.0) return (1.0 - energy) * tau;
  return energy + (1.0 - energy) * tau;
}

double update_drl(double tau, double delta, double gamma, Clamp clamp, double k) {
  double z = (2.0 * tau - 1.0) + gamma * delta;
  double clamped = clamp == Clamp::Exact ? drelu(z) : ddrelu(z, k);
  return (clamped + 1.0) / 2.0;
}

double update(const SemanticsSpec& spec, const Qbaf& q, const StrengthVector& s, int a) {
  double tau = q.argument(a).tau;
  double rho;
  switch (spec.family) {
    case Family::Dfq:
      rho = update_dfq(tau, aggregate_prod(q, s, a));
      break;
    case Family::Reb:
      rho = update_reb(tau, aggregate_sum(q, s, a).alpha);
      break;
    case Family::Qen:
      rho = update_qen(tau, aggregate_sum(q, s, a).alpha);
      break;
    case Family::Mlp:
      rho = update_mlp(tau, aggregate_sum(q, s, a).alpha);
      break;
    case Family::Mqe: {
      SumAggregate agg = aggregate_sum(q, s, a);
      rho = update_mqe(tau, delta_q(agg.alpha, agg.alpha_plus, agg.alpha_minus, spec.q));
      break;
    }
    case Family::Drl:
    case Family::Ddrl: {
      SumAggregate agg = aggregate_sum(q, s, a);
      double delta = delta_q(agg.alpha, agg.alpha_plus, agg.alpha_minus, spec.q);
      Clamp clamp = spec.family == Family::Drl ? Clamp::Exact : Clamp::Differentiable;
      rho = update_drl(tau, delta, spec.gamma, clamp, spec.k);
      break;
    }
    default:
      throw std::logic_error("unhandled family");
  }
  // Every influence maps into [0,1]; rounding at the formula level may stray
  // an ulp outside, which would leak out of range through iteration.
  return std::clamp(rho, 0.0, 1.0);
}

}  // namespace qbaf
