#include "itbounds/channels.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "itbounds/bounds.hpp"
#include "itbounds/errors.hpp"

namespace itb {
namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_probability(double v, const char* field, double hi) {
  if (!(v >= 0.0 && v <= hi)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "%s must lie in [0, %g], got %g", field, hi, v);
    throw InvalidArgument(msg);
  }
}

double llr_mean(double sigma) { return 2.0 / (sigma * sigma); }
double llr_std(double sigma) { return 2.0 / sigma; }

double gaussian_pdf(double x, double m, double s) {
  const double z = (x - m) / s;
  return std::exp(-0.5 * z * z) / (s * std::sqrt(2.0 * M_PI));
}

// log2(1 + e^{-l}), stable for l of either sign.
double log2_one_plus_exp_neg(double l) {
  return (std::max(-l, 0.0) + std::log1p(std::exp(-std::abs(l)))) / kLn2;
}

double biawgn_capacity(double sigma, const QuadratureConfig& q) {
  const double m = llr_mean(sigma);
  const double s = llr_std(sigma);
  auto f = [m, s](double l) {
    return gaussian_pdf(l, m, s) * log2_one_plus_exp_neg(l);
  };
  return 1.0 - integrate(f, m - 12.0 * s, m + 12.0 * s, q).value;
}

double biawgn_g_moment(double sigma, int p, const QuadratureConfig& q) {
  const double m = llr_mean(sigma);
  const double s = llr_std(sigma);
  auto f = [m, s, p](double l) {
    const double t = std::tanh(0.5 * l);
    return gaussian_pdf(l, m, s) * std::pow(t * t, p);
  };
  return integrate(f, m - 12.0 * s, m + 12.0 * s, q).value;
}

class GeometricMoments final : public MomentSequence {
 public:
  GeometricMoments(double ratio, double lim) : ratio_(ratio), cur_(1.0), limit_(lim) {}
  double next() override {
    cur_ *= ratio_;
    return cur_;
  }
  double limit() const override { return limit_; }

 private:
  double ratio_, cur_, limit_;
};

class ConstantMoments final : public MomentSequence {
 public:
  explicit ConstantMoments(double v) : v_(v) {}
  double next() override { return v_; }
  double limit() const override { return v_; }

 private:
  double v_;
};

class GridMoments final : public MomentSequence {
 public:
  GridMoments(double sigma, const QuadratureConfig& q) {
    const double m = llr_mean(sigma);
    const double s = llr_std(sigma);
    const double ref = biawgn_g_moment(sigma, 1, q);
    double width = 0.25;
    for (int attempt = 0;; ++attempt) {
      build(m, s, width);
      double g1 = 0.0;
      for (size_t i = 0; i < t_.size(); ++i) g1 += w_[i] * t_[i];
      const double tol = std::max(10.0 * q.abs_tol, 1e-12);
      if (std::abs(g1 - ref) <= tol) break;
      if (attempt == 2) {
        char msg[112];
        std::snprintf(msg, sizeof msg,
                      "moment grid for sigma=%g missed abs_tol %.3e (error %.3e)",
                      sigma, q.abs_tol, std::abs(g1 - ref));
        throw AccuracyError(msg, std::abs(g1 - ref));
      }
      width *= 0.5;
    }
    u_.assign(t_.size(), 1.0);
  }

  double next() override {
    double g = 0.0;
    for (size_t i = 0; i < t_.size(); ++i) {
      u_[i] *= t_[i];
      g += w_[i] * u_[i];
    }
    return g;
  }

  double limit() const override { return 0.0; }

 private:
  void build(double m, double s, double width) {
    PanelGrid grid = make_grid(m - 12.0 * s, m + 12.0 * s, width);
    t_.resize(grid.nodes.size());
    w_.resize(grid.nodes.size());
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
      const double th = std::tanh(0.5 * grid.nodes[i]);
      t_[i] = th * th;
      w_[i] = grid.weights[i] * gaussian_pdf(grid.nodes[i], m, s);
    }
  }

  std::vector<double> t_, w_, u_;
};

class ScaledMoments final : public MomentSequence {
 public:
  ScaledMoments(std::unique_ptr<MomentSequence> base, double scale)
      : base_(std::move(base)), scale_(scale) {}
  double next() override { return scale_ * base_->next(); }
  double limit() const override { return scale_ * base_->limit(); }

 private:
  std::unique_ptr<MomentSequence> base_;
  double scale_;
};

double parse_positive_double(const std::string& text, const char* field) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw InvalidArgument(std::string(field) + " is not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

MbiosChannel MbiosChannel::make_bsc(double eps) {
  check_probability(eps, "bsc eps", 0.5);
  MbiosChannel ch;
  ch.kind = ChannelKind::bsc;
  ch.eps = eps;
  return ch;
}

MbiosChannel MbiosChannel::make_bec(double eps) {
  check_probability(eps, "bec eps", 1.0);
  MbiosChannel ch;
  ch.kind = ChannelKind::bec;
  ch.eps = eps;
  return ch;
}

MbiosChannel MbiosChannel::make_biawgn(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("biawgn sigma must be a positive real");
  }
  MbiosChannel ch;
  ch.kind = ChannelKind::biawgn;
  ch.sigma = sigma;
  return ch;
}

MbiosChannel cascade(const MbiosChannel& base, double pi) {
  if (base.kind == ChannelKind::erasure_cascade) {
    throw InvalidArgument("cascade base must not itself be a cascade");
  }
  check_probability(pi, "cascade pi", 1.0);
  MbiosChannel ch;
  ch.kind = ChannelKind::erasure_cascade;
  ch.pi = pi;
  ch.base = std::make_shared<MbiosChannel>(base);
  return ch;
}

double capacity(const MbiosChannel& ch, const QuadratureConfig& q) {
  switch (ch.kind) {
    case ChannelKind::bsc:
      return 1.0 - h2(ch.eps);
    case ChannelKind::bec:
      return 1.0 - ch.eps;
    case ChannelKind::biawgn:
      return biawgn_capacity(ch.sigma, q);
    case ChannelKind::erasure_cascade:
      return (1.0 - ch.pi) * capacity(*ch.base, q);
  }
  throw InvalidArgument("unknown channel kind");
}

double g_moment(const MbiosChannel& ch, int p, const QuadratureConfig& q) {
  if (p < 1) throw InvalidArgument("g_moment order p must be >= 1");
  switch (ch.kind) {
    case ChannelKind::bsc: {
      const double z = 1.0 - 2.0 * ch.eps;
      return std::pow(z * z, p);
    }
    case ChannelKind::bec:
      return 1.0 - ch.eps;
    case ChannelKind::biawgn:
      return biawgn_g_moment(ch.sigma, p, q);
    case ChannelKind::erasure_cascade:
      return (1.0 - ch.pi) * g_moment(*ch.base, p, q);
  }
  throw InvalidArgument("unknown channel kind");
}

double hard_decision_crossover(const MbiosChannel& ch) {
  switch (ch.kind) {
    case ChannelKind::bsc:
      return ch.eps;
    case ChannelKind::bec:
      return 0.5 * ch.eps;
    case ChannelKind::biawgn:
      // Q(1/sigma) via erfc, accurate to ~1e-15 relative.
      return 0.5 * std::erfc(1.0 / (ch.sigma * std::sqrt(2.0)));
    case ChannelKind::erasure_cascade:
      return (1.0 - ch.pi) * hard_decision_crossover(*ch.base) + 0.5 * ch.pi;
  }
  throw InvalidArgument("unknown channel kind");
}

std::unique_ptr<MomentSequence> moment_sequence(const MbiosChannel& ch,
                                                const QuadratureConfig& q) {
  switch (ch.kind) {
    case ChannelKind::bsc: {
      const double z = 1.0 - 2.0 * ch.eps;
      return std::make_unique<GeometricMoments>(z * z, ch.eps == 0.0 ? 1.0 : 0.0);
    }
    case ChannelKind::bec:
      return std::make_unique<ConstantMoments>(1.0 - ch.eps);
    case ChannelKind::biawgn:
      return std::make_unique<GridMoments>(ch.sigma, q);
    case ChannelKind::erasure_cascade:
      return std::make_unique<ScaledMoments>(moment_sequence(*ch.base, q),
                                             1.0 - ch.pi);
  }
  throw InvalidArgument("unknown channel kind");
}

MbiosChannel parse_channel_spec(const std::string& spec) {
  std::string body = spec;
  double punct = -1.0;
  if (const auto bang = body.find("!punct="); bang != std::string::npos) {
    punct = parse_positive_double(body.substr(bang + 7), "channel punct rate");
    body = body.substr(0, bang);
  }
  const auto colon = body.find(':');
  if (colon == std::string::npos) {
    throw InvalidArgument("channel spec '" + spec +
                          "' must look like bsc:<eps>, bec:<eps> or biawgn:<sigma>");
  }
  const std::string name = body.substr(0, colon);
  const double param = parse_positive_double(body.substr(colon + 1), "channel parameter");
  MbiosChannel base;
  if (name == "bsc") {
    base = MbiosChannel::make_bsc(param);
  } else if (name == "bec") {
    base = MbiosChannel::make_bec(param);
  } else if (name == "biawgn") {
    base = MbiosChannel::make_biawgn(param);
  } else {
    throw InvalidArgument("unknown channel family '" + name + "' in spec '" + spec + "'");
  }
  if (punct >= 0.0) return cascade(base, punct);
  return base;
}

std::string format_channel_spec(const MbiosChannel& ch) {
  char buf[96];
  switch (ch.kind) {
    case ChannelKind::bsc:
      std::snprintf(buf, sizeof buf, "bsc:%.6g", ch.eps);
      return buf;
    case ChannelKind::bec:
      std::snprintf(buf, sizeof buf, "bec:%.6g", ch.eps);
      return buf;
    case ChannelKind::biawgn:
      std::snprintf(buf, sizeof buf, "biawgn:%.6g", ch.sigma);
      return buf;
    case ChannelKind::erasure_cascade: {
      std::string base = format_channel_spec(*ch.base);
      std::snprintf(buf, sizeof buf, "%s!punct=%.6g", base.c_str(), ch.pi);
      return buf;
    }
  }
  throw InvalidArgument("unknown channel kind");
}

}  // namespace itb
