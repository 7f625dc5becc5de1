#include "itbounds/ensembles.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "itbounds/errors.hpp"

namespace itb {
namespace {

constexpr int kMaxDegree = 10000;

std::map<int, double> validate_coeffs(std::map<int, double> coeffs, const char* which) {
  if (coeffs.empty()) {
    throw InvalidEnsemble(std::string(which) + " distribution is empty");
  }
  double sum = 0.0;
  for (const auto& [deg, c] : coeffs) {
    if (deg < 2 || deg > kMaxDegree) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "%s degree %d outside [2, %d]", which, deg, kMaxDegree);
      throw InvalidEnsemble(msg);
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "%s coefficient at degree %d must be positive", which, deg);
      throw InvalidEnsemble(msg);
    }
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-4) {
    char msg[112];
    std::snprintf(msg, sizeof msg, "%s coefficients sum to %.8f, too far from 1 to renormalize",
                  which, sum);
    throw InvalidEnsemble(msg);
  }
  for (auto& [deg, c] : coeffs) c /= sum;
  return coeffs;
}

double integral_from_zero_to_one(const std::map<int, double>& coeffs) {
  // For edge-perspective f(x) = sum_i f_i x^{i-1}, the integral is sum_i f_i / i.
  double s = 0.0;
  for (const auto& [deg, c] : coeffs) s += c / deg;
  return s;
}

}  // namespace

double CheckNodeDistribution::operator()(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("check-node distribution argument must lie in [0,1]");
  }
  double s = 0.0;
  for (const auto& [k, g] : gamma_coeffs) s += g * std::pow(x, k);
  return s;
}

PuncturingPattern PuncturingPattern::make_uniform(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw InvalidPattern("uniform puncturing rate must lie in [0,1]");
  }
  PuncturingPattern pat;
  pat.uniform = true;
  pat.uniform_rate = rate;
  return pat;
}

PuncturingPattern PuncturingPattern::make_per_degree(std::map<int, double> rates) {
  for (const auto& [deg, r] : rates) {
    if (deg < 2 || deg > kMaxDegree) {
      throw InvalidPattern("puncturing pattern degree outside [2, 10000]");
    }
    if (!(r >= 0.0 && r <= 1.0)) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "puncturing rate at degree %d must lie in [0,1]", deg);
      throw InvalidPattern(msg);
    }
  }
  PuncturingPattern pat;
  pat.per_degree = std::move(rates);
  return pat;
}

double PuncturingPattern::rate_for(int degree) const {
  if (uniform) return uniform_rate;
  const auto it = per_degree.find(degree);
  return it == per_degree.end() ? 0.0 : it->second;
}

bool PuncturingPattern::empty() const {
  if (uniform) return uniform_rate == 0.0;
  for (const auto& [deg, r] : per_degree) {
    (void)deg;
    if (r != 0.0) return false;
  }
  return true;
}

DegreePair make_degree_pair(std::map<int, double> lambda, std::map<int, double> rho,
                            std::string name) {
  DegreePair dp;
  dp.lambda_coeffs = validate_coeffs(std::move(lambda), "lambda");
  dp.rho_coeffs = validate_coeffs(std::move(rho), "rho");
  dp.name = std::move(name);
  return dp;
}

double design_rate(const DegreePair& dp) {
  const double rate = 1.0 - integral_from_zero_to_one(dp.rho_coeffs) /
                                integral_from_zero_to_one(dp.lambda_coeffs);
  if (!(rate > 0.0)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "design rate %.6f is not positive", rate);
    throw InvalidEnsemble(msg);
  }
  return rate;
}

CheckNodeDistribution check_node_distribution(const DegreePair& dp) {
  const double denom = integral_from_zero_to_one(dp.rho_coeffs);
  CheckNodeDistribution gamma;
  for (const auto& [deg, c] : dp.rho_coeffs) {
    gamma.gamma_coeffs[deg] = (c / deg) / denom;
  }
  return gamma;
}

double parity_check_density(double rate, const DegreePair& dp) {
  return parity_check_density(rate, 1.0 / integral_from_zero_to_one(dp.rho_coeffs));
}

double parity_check_density(double rate, double avg_check_degree) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw InvalidArgument("density requires a rate in (0,1)");
  }
  return (1.0 - rate) * avg_check_degree / rate;
}

PunctureFractions puncture_fractions(const DegreePair& dp, const PuncturingPattern& pat) {
  if (!pat.uniform) {
    for (const auto& [deg, r] : pat.per_degree) {
      (void)r;
      if (dp.lambda_coeffs.find(deg) == dp.lambda_coeffs.end()) {
        char msg[96];
        std::snprintf(msg, sizeof msg,
                      "puncturing pattern names degree %d absent from lambda", deg);
        throw InvalidPattern(msg);
      }
    }
  }
  const double lam_int = integral_from_zero_to_one(dp.lambda_coeffs);
  PunctureFractions f;
  for (const auto& [deg, c] : dp.lambda_coeffs) {
    const double rate = pat.rate_for(deg);
    f.node_fraction += (c / deg) / lam_int * rate;
    f.edge_fraction += c * rate;
  }
  return f;
}

double punctured_rate(double rate, double node_fraction) {
  if (!(node_fraction >= 0.0 && node_fraction < 1.0)) {
    throw InvalidPattern("node puncture fraction must lie in [0,1)");
  }
  const double rp = rate / (1.0 - node_fraction);
  if (rp >= 1.0) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "punctured rate %.6f reaches 1, over-punctured", rp);
    throw InvalidPattern(msg);
  }
  return rp;
}

namespace {

std::map<int, double> coeffs_from_json(const nlohmann::json& obj, const char* key) {
  std::map<int, double> out;
  for (const auto& [k, v] : obj.items()) {
    int deg = 0;
    try {
      size_t pos = 0;
      deg = std::stoi(k, &pos);
      if (pos != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      throw InvalidEnsemble(std::string("non-integer degree key '") + k + "' in \"" + key + "\"");
    }
    if (!v.is_number()) {
      throw InvalidEnsemble(std::string("coefficient for degree ") + k + " in \"" + key +
                            "\" is not a number");
    }
    out[deg] = v.get<double>();
  }
  return out;
}

nlohmann::json coeffs_to_json(const std::map<int, double>& coeffs) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [deg, c] : coeffs) obj[std::to_string(deg)] = c;
  return obj;
}

}  // namespace

EnsembleFile ensemble_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidEnsemble(std::string("ensemble file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("lambda") || !j.contains("rho")) {
    throw InvalidEnsemble("ensemble file must be an object with \"lambda\" and \"rho\" keys");
  }
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw InvalidEnsemble("\"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  EnsembleFile ens;
  ens.degrees = make_degree_pair(coeffs_from_json(j["lambda"], "lambda"),
                                 coeffs_from_json(j["rho"], "rho"), name);
  if (j.contains("pi")) {
    std::map<int, double> rates = coeffs_from_json(j["pi"], "pi");
    // An explicit empty "pi" object marks an unpunctured ensemble.
    ens.pattern = rates.empty() ? PuncturingPattern{}
                                : PuncturingPattern::make_per_degree(std::move(rates));
  }
  return ens;
}

std::string ensemble_to_json(const EnsembleFile& ens) {
  nlohmann::json j = nlohmann::json::object();
  if (!ens.degrees.name.empty()) j["name"] = ens.degrees.name;
  j["lambda"] = coeffs_to_json(ens.degrees.lambda_coeffs);
  j["rho"] = coeffs_to_json(ens.degrees.rho_coeffs);
  if (ens.pattern) {
    if (ens.pattern->uniform) {
      // Uniform patterns serialize per degree so the file stays schema-plain.
      nlohmann::json obj = nlohmann::json::object();
      for (const auto& [deg, c] : ens.degrees.lambda_coeffs) {
        (void)c;
        obj[std::to_string(deg)] = ens.pattern->uniform_rate;
      }
      j["pi"] = obj;
    } else {
      j["pi"] = coeffs_to_json(ens.pattern->per_degree);
    }
  }
  return j.dump(2) + "\n";
}

EnsembleFile load_ensemble(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidEnsemble("cannot open ensemble file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  EnsembleFile ens = ensemble_from_json(buf.str());
  if (ens.degrees.name.empty()) {
    auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    if (base.size() > 5 && base.substr(base.size() - 5) == ".json") {
      base = base.substr(0, base.size() - 5);
    }
    ens.degrees.name = base;
  }
  return ens;
}

void save_ensemble(const std::string& path, const EnsembleFile& ens) {
  std::ofstream out(path);
  if (!out) throw InvalidEnsemble("cannot write ensemble file '" + path + "'");
  out << ensemble_to_json(ens);
}

}  // namespace itb
