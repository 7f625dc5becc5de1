#pragma once

#include <memory>
#include <string>

#include "itbounds/quadrature.hpp"

namespace itb {

enum class ChannelKind { bsc, bec, biawgn, erasure_cascade };

// Memoryless binary-input output-symmetric channel. The LLR law (given input
// +1) determines capacity and the tanh-moments g_p used by the bounds.
struct MbiosChannel {
  ChannelKind kind = ChannelKind::bsc;
  double eps = 0.0;    // BSC crossover in [0, 1/2]; BEC erasure in [0, 1]
  double sigma = 0.0;  // BIAWGN noise standard deviation, > 0
  double pi = 0.0;     // cascade erasure rate in [0, 1]
  std::shared_ptr<const MbiosChannel> base;  // cascade only; never a cascade

  static MbiosChannel make_bsc(double eps);
  static MbiosChannel make_bec(double eps);
  static MbiosChannel make_biawgn(double sigma);
};

// BEC(pi) in series before base. pi = 0 leaves capacity and every g_p equal
// to the base channel's.
MbiosChannel cascade(const MbiosChannel& base, double pi);

double capacity(const MbiosChannel& ch, const QuadratureConfig& q = {});

// g_p = E[tanh^{2p}(L/2)] over the LLR law; closed forms for BSC/BEC/cascade,
// quadrature for BIAWGN.
double g_moment(const MbiosChannel& ch, int p, const QuadratureConfig& q = {});

// w = Pr(L < 0) + Pr(L = 0)/2 given input +1 (erasure mass split evenly).
double hard_decision_crossover(const MbiosChannel& ch);

// Produces g_1, g_2, ... on successive next() calls. limit() is
// g_inf = Pr(L = +inf), the monotone limit of g_p as p -> inf.
class MomentSequence {
 public:
  virtual ~MomentSequence() = default;
  virtual double next() = 0;
  virtual double limit() const = 0;
};

std::unique_ptr<MomentSequence> moment_sequence(const MbiosChannel& ch,
                                                const QuadratureConfig& q = {});

// "bsc:<eps>", "bec:<eps>", "biawgn:<sigma>", optional suffix "!punct=<pi>"
// for an erasure cascade in front of the base channel.
MbiosChannel parse_channel_spec(const std::string& spec);
std::string format_channel_spec(const MbiosChannel& ch);

}  // namespace itb
