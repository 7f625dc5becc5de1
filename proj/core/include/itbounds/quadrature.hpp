#pragma once

#include <functional>
#include <vector>

namespace itb {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_refinements = 40;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

// Adaptive composite Gauss-Legendre integration of f over [a, b].
// Per-panel error is estimated by comparing 16-point and 8-point rules;
// panels are split until the summed estimate drops below abs_tol.
IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, const QuadratureConfig& q = {});

// Fixed composite 16-point Gauss-Legendre table over [a, b] for integrands
// evaluated repeatedly on the same nodes. Panel width never exceeds
// max_panel_width and the interval is covered by at least min_panels panels.
struct PanelGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

PanelGrid make_grid(double a, double b, double max_panel_width,
                    int min_panels = 64);

}  // namespace itb
