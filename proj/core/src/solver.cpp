#include "itbounds/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "itbounds/errors.hpp"

namespace itb {
namespace {

// Terms allowed in the quick certification pass of a staged evaluation.
constexpr long kQuickTerms = 4096;

struct Brackets {
  std::vector<double> lo_seq;  // successively wider lower endpoints
  std::vector<double> hi_seq;  // successively wider upper endpoints
};

Brackets family_brackets(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::biawgn:
      return {{0.3, 0.15, 0.05}, {3.0, 4.5, 6.75, 10.0}};
    case ChannelFamily::bsc:
      return {{1e-4, 1e-6, 1e-9}, {0.5}};
    case ChannelFamily::bec:
      return {{1e-4, 1e-6, 1e-9}, {1.0 - 1e-4, 1.0 - 1e-6, 1.0 - 1e-9}};
  }
  throw InvalidArgument("unknown channel family");
}

MbiosChannel family_channel(ChannelFamily family, double param) {
  switch (family) {
    case ChannelFamily::biawgn:
      return MbiosChannel::make_biawgn(param);
    case ChannelFamily::bsc:
      return MbiosChannel::make_bsc(param);
    case ChannelFamily::bec:
      return MbiosChannel::make_bec(param);
  }
  throw InvalidArgument("unknown channel family");
}

}  // namespace

double ebno_db(double rate_ref, double sigma) {
  if (!(rate_ref > 0.0 && rate_ref < 1.0)) {
    throw InvalidArgument("Eb reference rate must lie in (0,1)");
  }
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  return 10.0 * std::log10(1.0 / (2.0 * rate_ref * sigma * sigma));
}

double sigma_from_ebno(double ebno_decibels, double rate_ref) {
  if (!(rate_ref > 0.0 && rate_ref < 1.0)) {
    throw InvalidArgument("Eb reference rate must lie in (0,1)");
  }
  return std::sqrt(1.0 / (2.0 * rate_ref * std::pow(10.0, ebno_decibels / 10.0)));
}

BoundKind parse_bound_kind(const std::string& name) {
  if (name == "unquantized") return BoundKind::unquantized;
  if (name == "two_level") return BoundKind::two_level;
  if (name == "punctured") return BoundKind::punctured;
  throw InvalidArgument("unknown bound kind '" + name +
                        "' (expected unquantized, two_level or punctured)");
}

ChannelFamily parse_channel_family(const std::string& name) {
  if (name == "biawgn") return ChannelFamily::biawgn;
  if (name == "bsc") return ChannelFamily::bsc;
  if (name == "bec") return ChannelFamily::bec;
  throw InvalidArgument("unknown channel family '" + name +
                        "' (expected biawgn, bsc or bec)");
}

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::unquantized: return "unquantized";
    case BoundKind::two_level: return "two_level";
    case BoundKind::punctured: return "punctured";
  }
  return "?";
}

const char* channel_family_name(ChannelFamily family) {
  switch (family) {
    case ChannelFamily::biawgn: return "biawgn";
    case ChannelFamily::bsc: return "bsc";
    case ChannelFamily::bec: return "bec";
  }
  return "?";
}

ThresholdReport threshold(ChannelFamily family, const DegreePair& dp,
                          const std::optional<PuncturingPattern>& pat, BoundKind kind,
                          const SeriesControl& ctrl, const QuadratureConfig& q,
                          double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("solver tol must be positive");
  if (kind == BoundKind::punctured && !pat) {
    throw InvalidArgument("punctured bound kind requires a puncturing pattern");
  }
  const double target = design_rate(dp);
  const CheckNodeDistribution gamma = check_node_distribution(dp);
  double rate_ref = target;
  if (pat && kind != BoundKind::unquantized) {
    rate_ref = punctured_rate(target, puncture_fractions(dp, *pat).node_fraction);
  }

  const auto eval_with = [&](double param, const SeriesControl& c) -> BoundReport {
    const MbiosChannel ch = family_channel(family, param);
    switch (kind) {
      case BoundKind::unquantized:
        return rate_upper_bound(ch, gamma, c, q);
      case BoundKind::two_level:
        return pat ? punctured_two_level_rate_bound(ch, dp, *pat, c, q)
                   : two_level_rate_bound(ch, gamma, c, q);
      case BoundKind::punctured:
        return punctured_rate_upper_bound(ch, dp, *pat, c, q);
    }
    throw InvalidArgument("unknown bound kind");
  };

  // Staged sign evaluation: a cheap capped series is enough whenever its
  // certified interval stays clear of the target; otherwise rerun at the
  // caller's full series control.
  const auto sign_at = [&](double param) -> double {
    SeriesControl quick = ctrl;
    quick.max_terms = std::min(ctrl.max_terms, kQuickTerms);
    quick.error_on_unreached_tail = false;
    const BoundReport r = eval_with(param, quick);
    if (std::abs(r.value - target) > r.value_halfwidth) return r.value - target;
    return eval_with(param, ctrl).value - target;
  };

  const Brackets br = family_brackets(family);
  double lo = br.lo_seq.front();
  double f_lo = sign_at(lo);
  for (size_t i = 1; i < br.lo_seq.size() && f_lo <= 0.0; ++i) {
    lo = br.lo_seq[i];
    f_lo = sign_at(lo);
  }
  double hi = br.hi_seq.front();
  double f_hi = sign_at(hi);
  for (size_t i = 1; i < br.hi_seq.size() && f_hi >= 0.0; ++i) {
    hi = br.hi_seq[i];
    f_hi = sign_at(hi);
  }

  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    // Same-signed endpoints: distinguish a missing root from non-monotone
    // behavior by scanning the interior.
    const double outer_sign = f_lo > 0.0 ? 1.0 : -1.0;
    for (int k = 1; k <= 7; ++k) {
      const double x = lo + (hi - lo) * k / 8.0;
      const double fx = sign_at(x);
      if ((fx > 0.0 ? 1.0 : -1.0) != outer_sign) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "bound minus target changes sign inside [%g, %g] but not at "
                      "its endpoints; bound is not monotone",
                      lo, hi);
        throw MonotonicityError(msg);
      }
    }
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "bound never crosses rate %.6f for %s in [%g, %g]", target,
                  channel_family_name(family), lo, hi);
    throw NoThresholdError(msg);
  }

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (sign_at(mid) > 0.0 ? lo : hi) = mid;
    if (hi - lo <= tol) {
      const double param = 0.5 * (lo + hi);
      const double residual = std::abs(eval_with(param, ctrl).value - target);
      if (residual <= tol) {
        ThresholdReport out;
        out.channel_param = param;
        out.rate_reference = rate_ref;
        out.bound_kind = kind;
        out.residual = residual;
        if (family == ChannelFamily::biawgn) out.ebno_db = ebno_db(rate_ref, param);
        return out;
      }
    }
  }
  throw NoThresholdError("bisection failed to reach the residual tolerance");
}

double shannon_limit_ebno(double rate, double tol, const QuadratureConfig& q) {
  if (!(rate > 0.0 && rate < 1.0)) throw InvalidArgument("rate must lie in (0,1)");
  if (!(tol > 0.0)) throw InvalidArgument("solver tol must be positive");
  const auto cap_at = [&](double sigma) {
    return capacity(MbiosChannel::make_biawgn(sigma), q);
  };
  double lo = 0.05;
  while (cap_at(lo) < rate && lo > 1e-3) lo *= 0.5;
  double hi = 10.0;
  while (cap_at(hi) > rate && hi < 1000.0) hi *= 2.0;
  if (!(cap_at(lo) >= rate && cap_at(hi) <= rate)) {
    throw NoThresholdError("capacity does not bracket the requested rate");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (cap_at(mid) >= rate ? lo : hi) = mid;
  }
  return ebno_db(rate, 0.5 * (lo + hi));
}

double fractional_gap(double capacity_db, double ml_bound_db, double it_threshold_db) {
  if (!(it_threshold_db > capacity_db)) {
    throw InvalidArgument(
        "iterative threshold must exceed the capacity limit for a fractional gap");
  }
  if (ml_bound_db < capacity_db - 1e-12) {
    throw InvalidArgument("ML bound below the capacity limit is inconsistent");
  }
  return std::max(ml_bound_db - capacity_db, 0.0) / (it_threshold_db - capacity_db);
}

}  // namespace itb
