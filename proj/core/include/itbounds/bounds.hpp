#pragma once

#include <functional>

#include "itbounds/channels.hpp"
#include "itbounds/ensembles.hpp"

namespace itb {

// Controls truncation of the bound series. The truncation is certified: the
// reported sum is the midpoint of a two-sided bracket whose width must fall
// below tail_tol. When error_on_unreached_tail is false, exhausting max_terms
// returns the widest bracket reached instead of throwing; callers must then
// honor the reported tail themselves.
struct SeriesControl {
  double tail_tol = 1e-10;
  long max_terms = 1000000;
  bool error_on_unreached_tail = true;
};

struct SeriesResult {
  double sum = 0.0;   // bracket midpoint; true sum within tail/2 of this
  long terms = 0;
  double tail = 0.0;  // full bracket width
};

struct BoundReport {
  double value = 0.0;
  long series_terms_used = 0;
  double tail_bound = 0.0;
  double capacity_used = 0.0;
  double value_halfwidth = 0.0;  // certified half-width of value from the series bracket
  bool vacuous = false;          // entropy bound only: value <= 0
};

double h2(double x);
double h2_inverse(double y);

// Sum over p >= 1 of Gamma(g_p)/(p(2p-1)) with a certified two-sided tail
// bracket built from the monotonicity of g_p and sum 1/(p(2p-1)) = 2 ln 2.
SeriesResult series_sum(MomentSequence& gp, const CheckNodeDistribution& gamma,
                        const SeriesControl& ctrl = {});

// Same, with g_p supplied as a function of p (1-based) converging to gp_limit.
SeriesResult series_sum(const std::function<double(long)>& gp,
                        const CheckNodeDistribution& gamma,
                        const SeriesControl& ctrl = {}, double gp_limit = 0.0);

// Assembles the achievable-rate bound 1 - (1 - capacity)/(1 - s/(2 ln 2))
// from an already computed series, carrying the bracket into the value.
BoundReport rate_bound_from_series(double capacity_used, const SeriesResult& s);

// Conditional-entropy lower bound per channel use:
// 1 - C - (1 - R)(1 - s/(2 ln 2)). Negative values are returned unclamped
// with the vacuous flag set.
BoundReport entropy_lower_bound(const MbiosChannel& ch, double rate,
                                const CheckNodeDistribution& gamma,
                                const SeriesControl& ctrl = {},
                                const QuadratureConfig& q = {});

BoundReport rate_upper_bound(const MbiosChannel& ch,
                             const CheckNodeDistribution& gamma,
                             const SeriesControl& ctrl = {},
                             const QuadratureConfig& q = {});

// Bit-error-probability lower bound under ML decoding, in [0, 1/2].
double ber_lower_bound(const MbiosChannel& ch, double rate,
                       const CheckNodeDistribution& gamma,
                       const SeriesControl& ctrl = {},
                       const QuadratureConfig& q = {});

// Rate bound after two-level LLR quantization: the series sees the
// hard-decision BSC moments while the capacity term keeps the true channel.
BoundReport two_level_rate_bound(const MbiosChannel& ch,
                                 const CheckNodeDistribution& gamma,
                                 const SeriesControl& ctrl = {},
                                 const QuadratureConfig& q = {});

// Parallel-channel rate bound for a punctured ensemble: node-averaged
// capacity, edge-averaged moments. Bounds the mother-code design rate.
BoundReport punctured_rate_upper_bound(const MbiosChannel& ch, const DegreePair& dp,
                                       const PuncturingPattern& pat,
                                       const SeriesControl& ctrl = {},
                                       const QuadratureConfig& q = {});

// Two-level variant of the parallel-channel bound: quantizes the base
// channel, then applies the edge/node averaging.
BoundReport punctured_two_level_rate_bound(const MbiosChannel& ch,
                                           const DegreePair& dp,
                                           const PuncturingPattern& pat,
                                           const SeriesControl& ctrl = {},
                                           const QuadratureConfig& q = {});

// Smallest average check degree a >= 2 for which the check-regular rate
// bound with Gamma(x) = x^a reaches rate (1 - eps_gap) * capacity.
double avg_degree_lower_bound(const MbiosChannel& ch, double eps_gap,
                              const SeriesControl& ctrl = {},
                              const QuadratureConfig& q = {});

}  // namespace itb
