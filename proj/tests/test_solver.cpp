#include <doctest.h>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "itbounds/bounds.hpp"
#include "itbounds/channels.hpp"
#include "itbounds/ensembles.hpp"
#include "itbounds/errors.hpp"
#include "itbounds/solver.hpp"

namespace {

const std::string kDataDir = ITB_DATA_DIR;

itb::EnsembleFile load(const std::string& file) {
  return itb::load_ensemble(kDataDir + "/" + file);
}

}  // namespace

TEST_CASE("eb/n0 conversions") {
  CHECK(std::abs(itb::ebno_db(0.5, 1.0)) <= 1e-12);
  CHECK(std::abs(itb::ebno_db(0.5, 0.978694124615701) - 0.187) <= 2e-3);
  for (double rate : {0.3, 0.5, 0.9}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      CHECK(std::abs(itb::sigma_from_ebno(itb::ebno_db(rate, sigma), rate) - sigma) <= 1e-12);
    }
  }
}

TEST_CASE("bound kind and family names parse both ways") {
  CHECK(itb::parse_bound_kind("unquantized") == itb::BoundKind::unquantized);
  CHECK(itb::parse_bound_kind("two_level") == itb::BoundKind::two_level);
  CHECK(itb::parse_bound_kind("punctured") == itb::BoundKind::punctured);
  CHECK(itb::parse_channel_family("biawgn") == itb::ChannelFamily::biawgn);
  CHECK(itb::parse_channel_family("bec") == itb::ChannelFamily::bec);
  CHECK(std::string(itb::bound_kind_name(itb::BoundKind::two_level)) == "two_level");
  CHECK(std::string(itb::channel_family_name(itb::ChannelFamily::bsc)) == "bsc");
  CHECK_THROWS_AS(itb::parse_bound_kind("soft"), itb::InvalidArgument);
  CHECK_THROWS_AS(itb::parse_channel_family("awgn"), itb::InvalidArgument);
}

TEST_CASE("gaussian thresholds for the rate half benchmark ensembles") {
  auto one = load("tableI-1.json");
  auto r = itb::threshold(itb::ChannelFamily::biawgn, one.degrees, std::nullopt,
                          itb::BoundKind::unquantized);
  REQUIRE(r.ebno_db.has_value());
  CHECK(std::abs(*r.ebno_db - 0.417) <= 5e-3);
  CHECK(std::abs(r.channel_param - 0.953167) <= 2e-4);
  CHECK(r.residual <= 1e-5);
  CHECK(r.rate_reference == doctest::Approx(itb::design_rate(one.degrees)).epsilon(1e-12));

  // The residual is the bound miss at the returned parameter.
  auto gamma = itb::check_node_distribution(one.degrees);
  auto ch = itb::MbiosChannel::make_biawgn(r.channel_param);
  double miss = std::abs(itb::rate_upper_bound(ch, gamma).value - itb::design_rate(one.degrees));
  CHECK(std::abs(miss - r.residual) <= 1e-12);

  auto four = load("tableI-4.json");
  auto r4 = itb::threshold(itb::ChannelFamily::biawgn, four.degrees, std::nullopt,
                           itb::BoundKind::unquantized);
  CHECK(std::abs(*r4.ebno_db - 0.216) <= 5e-3);
}

TEST_CASE("thresholds are deterministic") {
  auto one = load("tableI-1.json");
  auto a = itb::threshold(itb::ChannelFamily::biawgn, one.degrees, std::nullopt,
                          itb::BoundKind::two_level);
  auto b = itb::threshold(itb::ChannelFamily::biawgn, one.degrees, std::nullopt,
                          itb::BoundKind::two_level);
  CHECK(a.channel_param == b.channel_param);
  CHECK(a.residual == b.residual);
  CHECK(*a.ebno_db == *b.ebno_db);
}

TEST_CASE("two level thresholds sit below their soft counterparts in eb/n0") {
  std::vector<double> soft_db;
  for (const char* f : {"tableI-1.json", "tableI-2.json", "tableI-3.json", "tableI-4.json"}) {
    auto ens = load(f);
    auto soft = itb::threshold(itb::ChannelFamily::biawgn, ens.degrees, std::nullopt,
                               itb::BoundKind::unquantized);
    auto two = itb::threshold(itb::ChannelFamily::biawgn, ens.degrees, std::nullopt,
                              itb::BoundKind::two_level);
    CHECK(*two.ebno_db < *soft.ebno_db);
    soft_db.push_back(*soft.ebno_db);
  }
  for (std::size_t i = 1; i < soft_db.size(); ++i) CHECK(soft_db[i] < soft_db[i - 1]);
}

TEST_CASE("punctured thresholds reference the punctured rate") {
  auto row6 = load("tableII-row6.json");
  REQUIRE(row6.pattern.has_value());
  auto r = itb::threshold(itb::ChannelFamily::biawgn, row6.degrees, row6.pattern,
                          itb::BoundKind::punctured);
  CHECK(std::abs(*r.ebno_db - 1.496) <= 2e-2);
  CHECK(std::abs(r.rate_reference - 0.718580) <= 2e-3);

  auto row2 = load("tableII-row2.json");
  auto two = itb::threshold(itb::ChannelFamily::biawgn, row2.degrees, row2.pattern,
                            itb::BoundKind::two_level);
  auto soft = itb::threshold(itb::ChannelFamily::biawgn, row2.degrees, row2.pattern,
                             itb::BoundKind::punctured);
  CHECK(std::abs(*two.ebno_db - 0.343) <= 2e-2);
  CHECK(std::abs(*soft.ebno_db - 0.397) <= 2e-2);
  CHECK(*two.ebno_db < *soft.ebno_db);
  CHECK(two.rate_reference == doctest::Approx(soft.rate_reference).epsilon(1e-12));
}

TEST_CASE("the punctured kind requires a pattern") {
  auto one = load("tableI-1.json");
  CHECK_THROWS_AS(itb::threshold(itb::ChannelFamily::biawgn, one.degrees, std::nullopt,
                                 itb::BoundKind::punctured),
                  itb::InvalidArgument);
}

TEST_CASE("erasure and hard channel families report the physical parameter") {
  auto reg = itb::make_degree_pair({{3, 1.0}}, {{6, 1.0}}, "reg36");

  auto bec = itb::threshold(itb::ChannelFamily::bec, reg, std::nullopt,
                            itb::BoundKind::unquantized);
  CHECK_FALSE(bec.ebno_db.has_value());
  CHECK(bec.residual <= 1e-5);
  // Closed-form oracle: solve 1 - e/(1 - (1-e)^6) = 1/2 by bisection.
  double lo = 0.01, hi = 0.99;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    double v = 1.0 - mid / (1.0 - std::pow(1.0 - mid, 6.0));
    (v > 0.5 ? lo : hi) = mid;
  }
  CHECK(std::abs(bec.channel_param - 0.5 * (lo + hi)) <= 1e-4);

  auto bsc = itb::threshold(itb::ChannelFamily::bsc, reg, std::nullopt,
                            itb::BoundKind::unquantized);
  CHECK_FALSE(bsc.ebno_db.has_value());
  CHECK(bsc.channel_param > 0.0);
  CHECK(bsc.channel_param < 0.5);
  CHECK(bsc.residual <= 1e-5);
}

TEST_CASE("over-punctured ensembles admit no threshold") {
  auto m = load("tableII-row1.json");
  auto pat = itb::PuncturingPattern::make_uniform(0.4999);
  CHECK_THROWS_AS(itb::threshold(itb::ChannelFamily::biawgn, m.degrees, pat,
                                 itb::BoundKind::punctured),
                  itb::NoThresholdError);
}

TEST_CASE("shannon limit in eb/n0 for a given rate") {
  CHECK(std::abs(itb::shannon_limit_ebno(0.5) - 0.187) <= 2e-3);
  CHECK(std::abs(itb::shannon_limit_ebno(0.528165) - 0.318) <= 5e-3);
  CHECK(std::abs(itb::shannon_limit_ebno(0.912391) - 3.399) <= 1e-2);

  double prev = -10.0;
  for (double rate : {0.500, 0.528, 0.592, 0.629, 0.671, 0.719, 0.774, 0.838, 0.912}) {
    double db = itb::shannon_limit_ebno(rate);
    CHECK(db > prev);
    prev = db;
  }
}

TEST_CASE("fractional gap between capacity and the iterative threshold") {
  CHECK(std::abs(itb::fractional_gap(0.187, 0.270, 0.393) - 0.403) <= 3e-3);
  CHECK(std::abs(itb::fractional_gap(0.318, 0.397, 0.526) - 0.379) <= 3e-3);
  CHECK(itb::fractional_gap(0.5, 0.5, 0.7) == 0.0);
  CHECK_THROWS_AS(itb::fractional_gap(0.5, 0.6, 0.5), itb::InvalidArgument);
  CHECK_THROWS_AS(itb::fractional_gap(0.5, 0.4, 0.7), itb::InvalidArgument);
}
