#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "itbounds/ensembles.hpp"
#include "itbounds/errors.hpp"

namespace {

const std::string kDataDir = ITB_DATA_DIR;

itb::DegreePair regular36() {
  return itb::make_degree_pair({{3, 1.0}}, {{6, 1.0}}, "reg36");
}

itb::EnsembleFile mother() { return itb::load_ensemble(kDataDir + "/tableII-row1.json"); }

}  // namespace

TEST_CASE("design rates of the bundled ensembles") {
  CHECK(itb::design_rate(regular36()) == doctest::Approx(0.5).epsilon(1e-14));

  auto irregular = itb::load_ensemble(kDataDir + "/tableI-1.json");
  CHECK(std::abs(itb::design_rate(irregular.degrees) - 0.5) <= 1e-4);

  CHECK(std::abs(itb::design_rate(mother().degrees) - 0.5000426) <= 1e-6);
}

TEST_CASE("check node distributions from edge-perspective rho") {
  auto gamma = itb::check_node_distribution(regular36());
  REQUIRE(gamma.gamma_coeffs.size() == 1u);
  CHECK(gamma.gamma_coeffs.at(6) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma(0.5) == doctest::Approx(0.015625).epsilon(1e-14));

  auto mixed = itb::make_degree_pair({{3, 1.0}}, {{5, 0.5}, {6, 0.5}});
  auto g2 = itb::check_node_distribution(mixed);
  CHECK(g2.gamma_coeffs.at(5) == doctest::Approx(6.0 / 11.0).epsilon(1e-13));
  CHECK(g2.gamma_coeffs.at(6) == doctest::Approx(5.0 / 11.0).epsilon(1e-13));

  auto t1 = itb::load_ensemble(kDataDir + "/tableI-1.json");
  auto g3 = itb::check_node_distribution(t1.degrees);
  CHECK(std::abs(g3.gamma_coeffs.at(5) - 0.27615273514041555) <= 1e-12);
  CHECK(std::abs(g3.gamma_coeffs.at(6) - 0.7238472648595845) <= 1e-12);
}

TEST_CASE("gamma coefficients sum to one and average to the inverse rho integral") {
  for (const char* file : {"tableI-1.json", "tableI-2.json", "tableI-3.json",
                           "tableI-4.json", "tableII-row1.json"}) {
    auto ens = itb::load_ensemble(kDataDir + "/" + file);
    auto gamma = itb::check_node_distribution(ens.degrees);
    double sum = 0.0, mean = 0.0, rho_integral = 0.0;
    for (const auto& [k, c] : gamma.gamma_coeffs) {
      sum += c;
      mean += k * c;
    }
    for (const auto& [k, c] : ens.degrees.rho_coeffs) rho_integral += c / k;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(1.0 / rho_integral).epsilon(1e-9));
  }
}

TEST_CASE("parity check density from rate and check degrees") {
  CHECK(itb::parity_check_density(0.5, regular36()) == doctest::Approx(6.0).epsilon(1e-13));
  auto mixed = itb::make_degree_pair({{3, 1.0}}, {{5, 0.5}, {6, 0.5}});
  CHECK(itb::parity_check_density(0.5, mixed) == doctest::Approx(60.0 / 11.0).epsilon(1e-12));
  CHECK(itb::parity_check_density(0.75, 6.0) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("puncture fractions for the bundled patterns") {
  auto m = mother();

  auto zero = itb::puncture_fractions(m.degrees, itb::PuncturingPattern{});
  CHECK(zero.node_fraction == 0.0);
  CHECK(zero.edge_fraction == 0.0);

  auto row2 = itb::load_ensemble(kDataDir + "/tableII-row2.json");
  REQUIRE(row2.pattern.has_value());
  auto f = itb::puncture_fractions(row2.degrees, *row2.pattern);
  CHECK(std::abs(f.node_fraction - 0.053246225488638554) <= 1e-12);
  CHECK(std::abs(f.edge_fraction - 0.05580830619999999) <= 1e-12);

  auto uni = itb::puncture_fractions(m.degrees, itb::PuncturingPattern::make_uniform(0.3));
  CHECK(uni.node_fraction == doctest::Approx(0.3).epsilon(1e-13));
  CHECK(uni.edge_fraction == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("puncture fractions are linear in the pattern") {
  auto m = mother();
  auto row2 = itb::load_ensemble(kDataDir + "/tableII-row2.json");
  std::map<int, double> doubled;
  for (const auto& [deg, rate] : row2.pattern->per_degree) doubled[deg] = 2.0 * rate;
  auto f1 = itb::puncture_fractions(m.degrees, *row2.pattern);
  auto f2 = itb::puncture_fractions(m.degrees, itb::PuncturingPattern::make_per_degree(doubled));
  CHECK(f2.node_fraction == doctest::Approx(2.0 * f1.node_fraction).epsilon(1e-12));
  CHECK(f2.edge_fraction == doctest::Approx(2.0 * f1.edge_fraction).epsilon(1e-12));
}

TEST_CASE("patterns naming unknown degrees are rejected") {
  auto pat = itb::PuncturingPattern::make_per_degree({{5, 0.1}});
  CHECK_THROWS_AS(itb::puncture_fractions(mother().degrees, pat), itb::InvalidPattern);
}

TEST_CASE("punctured rate reconstruction") {
  CHECK(itb::punctured_rate(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-14));

  auto m = mother();
  double rate = itb::design_rate(m.degrees);
  auto row2 = itb::load_ensemble(kDataDir + "/tableII-row2.json");
  double p2 = itb::puncture_fractions(m.degrees, *row2.pattern).node_fraction;
  CHECK(std::abs(itb::punctured_rate(rate, p2) - 0.528) <= 5e-4);

  auto row9 = itb::load_ensemble(kDataDir + "/tableII-row9.json");
  double p9 = itb::puncture_fractions(m.degrees, *row9.pattern).node_fraction;
  CHECK(std::abs(itb::punctured_rate(rate, p9) - 0.912) <= 2e-3);

  CHECK_THROWS_AS(itb::punctured_rate(0.5, 0.5), itb::InvalidPattern);
  CHECK_THROWS_AS(itb::punctured_rate(0.5, 1.0), itb::InvalidPattern);
}

TEST_CASE("coefficient validation and renormalization") {
  // Sums within 1e-4 of one are accepted and scaled to exactly one.
  auto dp = itb::make_degree_pair({{2, 0.5}, {3, 0.50005}}, {{6, 1.0}});
  double sum = 0.0;
  for (const auto& [deg, c] : dp.lambda_coeffs) sum += c;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(itb::make_degree_pair({{2, 0.5}, {3, 0.501}}, {{6, 1.0}}),
                  itb::InvalidEnsemble);
  CHECK_THROWS_AS(itb::make_degree_pair({{1, 1.0}}, {{6, 1.0}}), itb::InvalidEnsemble);
  CHECK_THROWS_AS(itb::make_degree_pair({{2, 1.0}}, {{10001, 1.0}}), itb::InvalidEnsemble);
  CHECK_THROWS_AS(itb::make_degree_pair({{2, -0.2}, {3, 1.2}}, {{6, 1.0}}),
                  itb::InvalidEnsemble);
  CHECK_THROWS_AS(itb::make_degree_pair({{2, 0.0}, {3, 1.0}}, {{6, 1.0}}),
                  itb::InvalidEnsemble);
  CHECK_THROWS_AS(itb::make_degree_pair({}, {{6, 1.0}}), itb::InvalidEnsemble);
}

TEST_CASE("degree pairs with nonpositive design rate are rejected") {
  auto dp = itb::make_degree_pair({{10, 1.0}}, {{2, 1.0}});
  CHECK_THROWS_AS(itb::design_rate(dp), itb::InvalidEnsemble);
}

TEST_CASE("ensemble files round-trip through json") {
  auto original = itb::load_ensemble(kDataDir + "/tableI-3.json");
  std::string tmp = "/tmp/itb_roundtrip.json";
  itb::save_ensemble(tmp, original);
  auto reloaded = itb::load_ensemble(tmp);
  std::remove(tmp.c_str());

  REQUIRE(reloaded.degrees.lambda_coeffs.size() == original.degrees.lambda_coeffs.size());
  for (const auto& [deg, c] : original.degrees.lambda_coeffs) {
    CHECK(std::abs(reloaded.degrees.lambda_coeffs.at(deg) - c) <= 1e-12);
  }
  for (const auto& [deg, c] : original.degrees.rho_coeffs) {
    CHECK(std::abs(reloaded.degrees.rho_coeffs.at(deg) - c) <= 1e-12);
  }
  CHECK(reloaded.degrees.name == original.degrees.name);

  auto row4 = itb::load_ensemble(kDataDir + "/tableII-row4.json");
  REQUIRE(row4.pattern.has_value());
  auto back = itb::ensemble_from_json(itb::ensemble_to_json(row4));
  REQUIRE(back.pattern.has_value());
  for (const auto& [deg, rate] : row4.pattern->per_degree) {
    CHECK(std::abs(back.pattern->per_degree.at(deg) - rate) <= 1e-12);
  }
}

TEST_CASE("malformed ensemble files raise descriptive errors") {
  CHECK_THROWS_AS(itb::load_ensemble(kDataDir + "/no-such-file.json"), itb::Error);
  CHECK_THROWS_AS(itb::ensemble_from_json("not json at all"), itb::Error);
  CHECK_THROWS_AS(itb::ensemble_from_json(R"({"lambda":{"3":1.0}})"), itb::Error);
  CHECK_THROWS_AS(itb::ensemble_from_json(R"({"lambda":{"x":1.0},"rho":{"6":1.0}})"),
                  itb::Error);
  CHECK_THROWS_AS(itb::ensemble_from_json(R"({"lambda":{"3":"one"},"rho":{"6":1.0}})"),
                  itb::Error);
}
