#include "itbounds/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>

#include "itbounds/errors.hpp"

namespace itb {
namespace {

const double kGl8Nodes[8] = {
    -9.60289856497536176e-01, -7.96666477413626728e-01,
    -5.25532409916328991e-01, -1.83434642495649780e-01,
    1.83434642495649780e-01,  5.25532409916328991e-01,
    7.96666477413626728e-01,  9.60289856497536176e-01};
const double kGl8Weights[8] = {
    1.01228536290376689e-01, 2.22381034453374343e-01,
    3.13706645877887047e-01, 3.62683783378361768e-01,
    3.62683783378361768e-01, 3.13706645877887047e-01,
    2.22381034453374343e-01, 1.01228536290376689e-01};

const double kGl16Nodes[16] = {
    -9.89400934991649939e-01, -9.44575023073232600e-01,
    -8.65631202387831755e-01, -7.55404408355002999e-01,
    -6.17876244402643771e-01, -4.58016777657227370e-01,
    -2.81603550779258915e-01, -9.50125098376374544e-02,
    9.50125098376374544e-02,  2.81603550779258915e-01,
    4.58016777657227370e-01,  6.17876244402643771e-01,
    7.55404408355002999e-01,  8.65631202387831755e-01,
    9.44575023073232600e-01,  9.89400934991649939e-01};
const double kGl16Weights[16] = {
    2.71524594117540374e-02, 6.22535239386477063e-02,
    9.51585116824925914e-02, 1.24628971255534030e-01,
    1.49595988816576764e-01, 1.69156519395002619e-01,
    1.82603415044923612e-01, 1.89450610455068585e-01,
    1.89450610455068585e-01, 1.82603415044923612e-01,
    1.69156519395002619e-01, 1.49595988816576764e-01,
    1.24628971255534030e-01, 9.51585116824925914e-02,
    6.22535239386477063e-02, 2.71524594117540374e-02};

struct Panel {
  double a, b, value, err;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double v16 = 0.0, v8 = 0.0;
  for (int i = 0; i < 16; ++i) v16 += kGl16Weights[i] * f(c + h * kGl16Nodes[i]);
  for (int i = 0; i < 8; ++i) v8 += kGl8Weights[i] * f(c + h * kGl8Nodes[i]);
  v16 *= h;
  v8 *= h;
  return {a, b, v16, std::abs(v16 - v8)};
}

}  // namespace

IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, const QuadratureConfig& q) {
  if (!(q.abs_tol > 0.0)) throw InvalidArgument("quadrature abs_tol must be > 0");
  if (q.max_refinements < 1)
    throw InvalidArgument("quadrature max_refinements must be >= 1");
  if (!(b >= a)) throw InvalidArgument("quadrature interval has b < a");
  if (a == b) return {0.0, 0.0, 0};

  const int n0 = std::clamp(static_cast<int>(std::ceil((b - a) / 0.5)), 8, 1024);
  std::deque<Panel> panels;
  for (int i = 0; i < n0; ++i) {
    const double pa = a + (b - a) * i / n0;
    const double pb = a + (b - a) * (i + 1) / n0;
    panels.push_back(eval_panel(f, pa, pb));
  }

  auto total_err = [&panels] {
    double e = 0.0;
    for (const Panel& p : panels) e += p.err;
    return e;
  };

  int rounds = 0;
  double err = total_err();
  while (err > q.abs_tol && rounds < q.max_refinements) {
    const double cut = q.abs_tol / (2.0 * static_cast<double>(panels.size()));
    std::deque<Panel> next;
    for (const Panel& p : panels) {
      if (p.err > cut) {
        const double mid = 0.5 * (p.a + p.b);
        next.push_back(eval_panel(f, p.a, mid));
        next.push_back(eval_panel(f, mid, p.b));
      } else {
        next.push_back(p);
      }
    }
    panels.swap(next);
    ++rounds;
    err = total_err();
  }

  if (err > q.abs_tol) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "quadrature reached error %.3e > abs_tol %.3e after %d refinements",
                  err, q.abs_tol, rounds);
    throw AccuracyError(msg, err);
  }

  double value = 0.0;
  for (const Panel& p : panels) value += p.value;
  return {value, err, static_cast<int>(panels.size())};
}

PanelGrid make_grid(double a, double b, double max_panel_width, int min_panels) {
  if (!(b > a)) throw InvalidArgument("grid interval has b <= a");
  if (!(max_panel_width > 0.0)) throw InvalidArgument("grid panel width must be > 0");
  int n = std::max(min_panels,
                   static_cast<int>(std::ceil((b - a) / max_panel_width)));
  PanelGrid grid;
  grid.nodes.reserve(16 * n);
  grid.weights.reserve(16 * n);
  for (int i = 0; i < n; ++i) {
    const double pa = a + (b - a) * i / n;
    const double pb = a + (b - a) * (i + 1) / n;
    const double c = 0.5 * (pa + pb);
    const double h = 0.5 * (pb - pa);
    for (int k = 0; k < 16; ++k) {
      grid.nodes.push_back(c + h * kGl16Nodes[k]);
      grid.weights.push_back(h * kGl16Weights[k]);
    }
  }
  return grid;
}

}  // namespace itb
