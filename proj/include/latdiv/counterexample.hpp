#pragma once

#include <functional>
#include <string>
#include <vector>

#include "latdiv/errors.hpp"

namespace latdiv {

// A density on (0,1] described by closed forms: the density itself, its
// cumulative M(x) = int_0^x rho, and optionally the exact value of
// int_x^1 M(s)/s ds.  Closed forms keep every reported number
// oracle-checkable; quadrature is the fallback.
struct DensitySpec {
  std::string name;
  std::function<double(double)> rho;
  std::function<double(double)> cumulative;
  std::function<double(double)> rho_max_tail;  // int_x^1 rho_max, may be empty
  bool decreasing = false;

  // rho(x) = 1/(x (1-ln x)^2): mass 1, M(x) = 1/(1-ln x), infinite
  // divergence against Lebesgue measure.  int_d^1 rho_max = ln(1-ln d).
  static DensitySpec canonical();
  // rho = 1, M(x) = x.
  static DensitySpec uniform();
  // rho(x) = 2x, M(x) = x^2: the finite-divergence control.  Not decreasing.
  static DensitySpec rho2x();
  // Piecewise-linear cumulative through the given (x, M(x)) points; the
  // density is the piecewise-constant slope.
  static DensitySpec from_cumulative_table(std::string name,
                                           std::vector<std::pair<double, double>> points);
};

// Adaptive Simpson integration of f over [a,b] after the substitution
// u = ln(1/x), which flattens endpoint singularities at 0.  Relative
// tolerance; throws QuadratureFailure when the error estimate stalls.
double integrate_log_substituted(const std::function<double(double)>& f, double a, double b,
                                 double rel_tol = 1e-10);

struct TailCheck {
  double epsilon = 0.0;              // largest grid prefix on which rho(x) <= 1/x
  std::vector<double> violations;    // grid points with rho(x) > 1/x
  bool decreasing_on_grid = false;
};

// Verifies rho(x) <= 1/x along the grid (ascending in (0,1]).  For a
// decreasing integrable density this must hold below some positive
// threshold.  Throws NotDecreasing when a spec declared decreasing is
// increasing on the grid.
TailCheck tail_lemma_check(const DensitySpec& spec, const std::vector<double>& grid);

// rho_max(x) = M(x)/x, the running-average envelope.
double rho_max(const DensitySpec& spec, double x);

struct FubiniCheck {
  double lhs = 0.0;      // int_delta^1 rho_max(x) dx
  double rhs = 0.0;      // M(delta) ln(1/delta) + int_delta^1 rho(s) ln(1/s) ds
  double rel_gap = 0.0;
};

// Exchanging the integration order over {(x,s): s <= x} turns the
// rho_max integral into a log-kernel integral of rho; both sides are
// evaluated (closed form where available) and compared.
FubiniCheck fubini_identity_check(const DensitySpec& spec, double delta,
                                  double rel_tol = 1e-8);

struct BlowupRow {
  double delta = 0.0;             // t_n for this prefix
  std::size_t n = 0;              // number of cutoffs used
  double integral_sup = 0.0;      // int_0^1 max_{k<=n} rho_{t_k}
  double rho_max_integral = 0.0;  // int_delta^1 rho_max, by quadrature
  double closed_form = 0.0;       // same from the closed form (NaN if none)
  double rel_gap = 0.0;           // quadrature vs closed form
};

// The necessity construction: project rho onto the algebra generated by
// [0,t] for each cutoff t, integrate the running maximum of the projected
// densities, and trace the growth as the cutoffs shrink.
std::vector<BlowupRow> blowup_demo(const DensitySpec& spec, std::vector<double> deltas,
                                   std::size_t count = 0);

}  // namespace latdiv
