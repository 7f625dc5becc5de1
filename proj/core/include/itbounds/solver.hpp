#pragma once

#include <optional>
#include <string>

#include "itbounds/bounds.hpp"
#include "itbounds/channels.hpp"
#include "itbounds/ensembles.hpp"

namespace itb {

enum class BoundKind { unquantized, two_level, punctured };
enum class ChannelFamily { biawgn, bsc, bec };

struct ThresholdReport {
  double channel_param = 0.0;     // sigma for BIAWGN, eps otherwise
  std::optional<double> ebno_db;  // BIAWGN only
  double rate_reference = 0.0;    // rate used for Eb normalization
  BoundKind bound_kind = BoundKind::unquantized;
  double residual = 0.0;          // |bound(channel_param) - target rate|
};

// Eb/N0 in dB for unit-energy antipodal signaling: 10 log10(1/(2 R sigma^2)).
double ebno_db(double rate_ref, double sigma);
double sigma_from_ebno(double ebno_decibels, double rate_ref);

BoundKind parse_bound_kind(const std::string& name);
ChannelFamily parse_channel_family(const std::string& name);
const char* bound_kind_name(BoundKind kind);
const char* channel_family_name(ChannelFamily family);

// Channel parameter at which the selected bound meets the ensemble's design
// rate, by bracketed bisection on the physical parameter. Puncturing patterns
// affect the bound for the two_level and punctured kinds and set the Eb
// reference to the punctured rate; the unquantized kind ignores them.
ThresholdReport threshold(ChannelFamily family, const DegreePair& dp,
                          const std::optional<PuncturingPattern>& pat,
                          BoundKind kind, const SeriesControl& ctrl = {},
                          const QuadratureConfig& q = {}, double tol = 1e-5);

// Eb/N0 at which BIAWGN capacity equals the given rate.
double shannon_limit_ebno(double rate, double tol = 1e-5,
                          const QuadratureConfig& q = {});

// (ml_bound_db - capacity_db) / (it_threshold_db - capacity_db).
double fractional_gap(double capacity_db, double ml_bound_db,
                      double it_threshold_db);

}  // namespace itb
