#pragma once

#include <map>
#include <optional>
#include <string>

namespace itb {

// Edge-perspective degree distributions: lambda_coeffs[i] is the coefficient
// of x^{i-1} in lambda(x), keyed by the variable-node degree i; same for rho.
struct DegreePair {
  std::map<int, double> lambda_coeffs;
  std::map<int, double> rho_coeffs;
  std::string name;
};

// Node-perspective check degree distribution Gamma(x) = sum_k gamma_coeffs[k] x^k.
struct CheckNodeDistribution {
  std::map<int, double> gamma_coeffs;

  // Evaluates Gamma(x) for x in [0,1].
  double operator()(double x) const;
};

// Per-variable-degree puncturing rates; degrees absent from per_degree are
// punctured at rate 0 unless the pattern is uniform.
struct PuncturingPattern {
  std::map<int, double> per_degree;
  bool uniform = false;
  double uniform_rate = 0.0;

  static PuncturingPattern make_uniform(double rate);
  static PuncturingPattern make_per_degree(std::map<int, double> rates);

  double rate_for(int degree) const;
  bool empty() const;
};

struct PunctureFractions {
  double node_fraction = 0.0;
  double edge_fraction = 0.0;
};

// Validates coefficient ranges and degree caps; sums within 1e-4 of one are
// renormalized exactly, larger deviations are rejected.
DegreePair make_degree_pair(std::map<int, double> lambda,
                            std::map<int, double> rho,
                            std::string name = {});

// 1 - (integral of rho)/(integral of lambda); must land in (0,1).
double design_rate(const DegreePair& dp);

// Gamma_k = (rho_k/k) / sum_j (rho_j/j).
CheckNodeDistribution check_node_distribution(const DegreePair& dp);

// (1 - R) * avg_check_degree / R, ones per information bit.
double parity_check_density(double rate, const DegreePair& dp);
double parity_check_density(double rate, double avg_check_degree);

// Node fraction weighs by Lambda_i = (lambda_i/i)/sum_j(lambda_j/j); edge
// fraction weighs by lambda_i directly.
PunctureFractions puncture_fractions(const DegreePair& dp,
                                     const PuncturingPattern& pat);

// R / (1 - node_fraction); must stay below one.
double punctured_rate(double rate, double node_fraction);

struct EnsembleFile {
  DegreePair degrees;
  std::optional<PuncturingPattern> pattern;
};

EnsembleFile load_ensemble(const std::string& path);
void save_ensemble(const std::string& path, const EnsembleFile& ens);
std::string ensemble_to_json(const EnsembleFile& ens);
EnsembleFile ensemble_from_json(const std::string& text);

}  // namespace itb
