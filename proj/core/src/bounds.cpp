#include "itbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <utility>
#include <vector>

#include "itbounds/errors.hpp"

namespace itb {
namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kTwoLn2 = 1.3862943611198906;

struct KahanSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

std::function<double(double)> make_gamma_eval(const CheckNodeDistribution& gamma) {
  if (gamma.gamma_coeffs.empty()) {
    throw InvalidArgument("check-node distribution has no coefficients");
  }
  std::vector<std::pair<int, double>> coeffs(gamma.gamma_coeffs.begin(),
                                             gamma.gamma_coeffs.end());
  return [coeffs](double x) {
    double s = 0.0;
    for (const auto& [k, c] : coeffs) s += c * std::pow(x, k);
    return s;
  };
}

// Shared series engine. next_g must yield g_1, g_2, ... on successive calls,
// nonincreasing with limit g_limit; gamma_eval must be nondecreasing on [0,1].
// The bracket after P summed terms is
//   [S + Gamma(g_limit) * T_P,  S + Gamma(g_{P+1}) * T_P],
// T_P = 2 ln 2 - sum_{p<=P} 1/(p(2p-1)), valid by monotonicity.
SeriesResult series_core(const std::function<double()>& next_g, double g_limit,
                         const std::function<double(double)>& gamma_eval,
                         const SeriesControl& ctrl) {
  if (!(ctrl.tail_tol > 0.0)) throw InvalidArgument("series tail_tol must be positive");
  if (ctrl.max_terms < 1) throw InvalidArgument("series max_terms must be at least 1");
  const double gamma_limit = gamma_eval(std::clamp(g_limit, 0.0, 1.0));
  KahanSum sum;
  KahanSum harmonic;
  double g = std::clamp(next_g(), 0.0, 1.0);
  long terms = 0;
  for (;;) {
    ++terms;
    const double denom = static_cast<double>(terms) * (2.0 * terms - 1.0);
    sum.add(gamma_eval(g) / denom);
    harmonic.add(1.0 / denom);
    const double remaining = std::max(kTwoLn2 - harmonic.s, 0.0);
    const double g_next = std::clamp(next_g(), 0.0, 1.0);
    const double hi = gamma_eval(g_next) * remaining;
    const double lo = gamma_limit * remaining;
    const double width = std::max(hi - lo, 0.0);
    if (width <= ctrl.tail_tol) {
      return {sum.s + 0.5 * (hi + lo), terms, width};
    }
    if (terms >= ctrl.max_terms) {
      if (ctrl.error_on_unreached_tail) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "series tail width %.3e still above tail_tol %.3e after %ld terms",
                      width, ctrl.tail_tol, terms);
        throw TruncationError(msg, width);
      }
      return {sum.s + 0.5 * (hi + lo), terms, width};
    }
    g = g_next;
  }
}

SeriesResult channel_series(const MbiosChannel& ch,
                            const std::function<double(double)>& gamma_eval,
                            const SeriesControl& ctrl, const QuadratureConfig& q,
                            double moment_scale = 1.0) {
  auto seq = moment_sequence(ch, q);
  return series_core([&seq, moment_scale] { return moment_scale * seq->next(); },
                     moment_scale * seq->limit(), gamma_eval, ctrl);
}

SeriesResult quantized_series(double crossover, double moment_scale,
                              const std::function<double(double)>& gamma_eval,
                              const SeriesControl& ctrl) {
  const double base = 1.0 - 2.0 * crossover;
  const double ratio = base * base;
  double cur = moment_scale;
  return series_core([&cur, ratio]() mutable { return cur *= ratio; },
                     ratio == 1.0 ? moment_scale : 0.0, gamma_eval, ctrl);
}

void check_rate_domain(double rate) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw InvalidArgument("rate must lie in (0,1)");
  }
}

}  // namespace

double h2(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("h2 argument must lie in [0,1]");
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -(x * std::log2(x) + (1.0 - x) * std::log2(1.0 - x));
}

double h2_inverse(double y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw InvalidArgument("h2_inverse argument must lie in [0,1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (h2(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SeriesResult series_sum(MomentSequence& gp, const CheckNodeDistribution& gamma,
                        const SeriesControl& ctrl) {
  return series_core([&gp] { return gp.next(); }, gp.limit(), make_gamma_eval(gamma),
                     ctrl);
}

SeriesResult series_sum(const std::function<double(long)>& gp,
                        const CheckNodeDistribution& gamma, const SeriesControl& ctrl,
                        double gp_limit) {
  long p = 0;
  return series_core([&gp, &p] { return gp(++p); }, gp_limit, make_gamma_eval(gamma),
                     ctrl);
}

BoundReport rate_bound_from_series(double capacity_used, const SeriesResult& s) {
  BoundReport r;
  r.capacity_used = capacity_used;
  r.series_terms_used = s.terms;
  r.tail_bound = s.tail;
  const double s_lo = s.sum - 0.5 * s.tail;
  const double s_hi = s.sum + 0.5 * s.tail;
  const double d_lo = 1.0 - s_hi / kTwoLn2;
  const double d_hi = 1.0 - s_lo / kTwoLn2;
  if (d_lo < 1e-12) {
    // Denominator vanishes only when every g_p is 1, a perfect channel.
    r.value = 1.0;
    r.value_halfwidth = 0.0;
    return r;
  }
  const double v_lo = 1.0 - (1.0 - capacity_used) / d_lo;
  const double v_hi = 1.0 - (1.0 - capacity_used) / d_hi;
  r.value = 0.5 * (v_lo + v_hi);
  r.value_halfwidth = 0.5 * (v_hi - v_lo);
  return r;
}

BoundReport entropy_lower_bound(const MbiosChannel& ch, double rate,
                                const CheckNodeDistribution& gamma,
                                const SeriesControl& ctrl, const QuadratureConfig& q) {
  check_rate_domain(rate);
  const double cap = capacity(ch, q);
  const SeriesResult s = channel_series(ch, make_gamma_eval(gamma), ctrl, q);
  BoundReport r;
  r.capacity_used = cap;
  r.series_terms_used = s.terms;
  r.tail_bound = s.tail;
  r.value = 1.0 - cap - (1.0 - rate) * (1.0 - s.sum / kTwoLn2);
  r.value_halfwidth = (1.0 - rate) * 0.5 * s.tail / kTwoLn2;
  r.vacuous = r.value <= 0.0;
  return r;
}

BoundReport rate_upper_bound(const MbiosChannel& ch, const CheckNodeDistribution& gamma,
                             const SeriesControl& ctrl, const QuadratureConfig& q) {
  const double cap = capacity(ch, q);
  const SeriesResult s = channel_series(ch, make_gamma_eval(gamma), ctrl, q);
  return rate_bound_from_series(cap, s);
}

double ber_lower_bound(const MbiosChannel& ch, double rate,
                       const CheckNodeDistribution& gamma, const SeriesControl& ctrl,
                       const QuadratureConfig& q) {
  check_rate_domain(rate);
  const double cap = capacity(ch, q);
  const SeriesResult s = channel_series(ch, make_gamma_eval(gamma), ctrl, q);
  const double rhs =
      1.0 - cap / rate + (1.0 - rate) / (rate * kTwoLn2) * s.sum;
  return h2_inverse(std::clamp(rhs, 0.0, 1.0));
}

BoundReport two_level_rate_bound(const MbiosChannel& ch,
                                 const CheckNodeDistribution& gamma,
                                 const SeriesControl& ctrl, const QuadratureConfig& q) {
  const double w = hard_decision_crossover(ch);
  const double cap = capacity(ch, q);
  const SeriesResult s = quantized_series(w, 1.0, make_gamma_eval(gamma), ctrl);
  return rate_bound_from_series(cap, s);
}

BoundReport punctured_rate_upper_bound(const MbiosChannel& ch, const DegreePair& dp,
                                       const PuncturingPattern& pat,
                                       const SeriesControl& ctrl,
                                       const QuadratureConfig& q) {
  const PunctureFractions fr = puncture_fractions(dp, pat);
  const double cap_bar = (1.0 - fr.node_fraction) * capacity(ch, q);
  const SeriesResult s = channel_series(ch, make_gamma_eval(check_node_distribution(dp)),
                                        ctrl, q, 1.0 - fr.edge_fraction);
  return rate_bound_from_series(cap_bar, s);
}

BoundReport punctured_two_level_rate_bound(const MbiosChannel& ch, const DegreePair& dp,
                                           const PuncturingPattern& pat,
                                           const SeriesControl& ctrl,
                                           const QuadratureConfig& q) {
  const PunctureFractions fr = puncture_fractions(dp, pat);
  const double w = hard_decision_crossover(ch);
  const double cap_bar = (1.0 - fr.node_fraction) * capacity(ch, q);
  const SeriesResult s = quantized_series(w, 1.0 - fr.edge_fraction,
                                          make_gamma_eval(check_node_distribution(dp)),
                                          ctrl);
  return rate_bound_from_series(cap_bar, s);
}

double avg_degree_lower_bound(const MbiosChannel& ch, double eps_gap,
                              const SeriesControl& ctrl, const QuadratureConfig& q) {
  if (!(eps_gap > 0.0 && eps_gap < 1.0)) {
    throw InvalidArgument("eps_gap must lie in (0,1)");
  }
  const double cap = capacity(ch, q);
  const double target = (1.0 - eps_gap) * cap;
  if (!(target > 0.0 && target < 1.0)) {
    throw InvalidArgument("target rate (1 - eps_gap) * capacity must lie in (0,1)");
  }
  const auto bound_at = [&](double a) {
    const auto gamma_eval = [a](double x) {
      return x > 0.0 ? std::exp(a * std::log(x)) : 0.0;
    };
    return rate_bound_from_series(cap, channel_series(ch, gamma_eval, ctrl, q)).value;
  };
  double lo = 2.0;
  if (bound_at(lo) >= target) return lo;
  double hi = 10000.0;
  if (bound_at(hi) < target) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "no average check degree up to %g meets rate %.6f on this channel",
                  hi, target);
    throw UnboundedRequirementError(msg);
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (bound_at(mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace itb
