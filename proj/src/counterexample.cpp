#include "latdiv/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "latdiv/divergence_math.hpp"

namespace latdiv {

DensitySpec DensitySpec::canonical() {
  DensitySpec s;
  s.name = "canonical";
  s.rho = [](double x) { double t = 1.0 - std::log(x); return 1.0 / (x * t * t); };
  s.cumulative = [](double x) { return x <= 0.0 ? 0.0 : 1.0 / (1.0 - std::log(x)); };
  s.rho_max_tail = [](double x) { return std::log(1.0 - std::log(x)); };
  // Decreasing only on (0, 1/e]; x rho(x) <= 1 still holds on all of (0,1],
  // and M(t)/t is decreasing in t, which is what the envelope needs.
  s.decreasing = false;
  return s;
}

DensitySpec DensitySpec::uniform() {
  DensitySpec s;
  s.name = "uniform";
  s.rho = [](double) { return 1.0; };
  s.cumulative = [](double x) { return std::max(0.0, x); };
  s.rho_max_tail = [](double x) { return 1.0 - x; };
  s.decreasing = true;
  return s;
}

DensitySpec DensitySpec::rho2x() {
  DensitySpec s;
  s.name = "rho2x";
  s.rho = [](double x) { return 2.0 * x; };
  s.cumulative = [](double x) { return x <= 0.0 ? 0.0 : x * x; };
  s.rho_max_tail = [](double x) { return (1.0 - x * x) / 2.0; };  // int_x^1 s ds
  s.decreasing = false;
  return s;
}

DensitySpec DensitySpec::from_cumulative_table(std::string name,
                                               std::vector<std::pair<double, double>> points) {
  std::sort(points.begin(), points.end());
  if (points.size() < 2) throw ValidationError("cumulative table needs at least two points");
  if (points.front().first < 0.0 || points.back().first > 1.0)
    throw ValidationError("cumulative table must live in [0,1]");
  if (points.front().first != 0.0 || points.front().second != 0.0)
    points.insert(points.begin(), {0.0, 0.0});
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1].first <= points[i].first)
      throw ValidationError("cumulative table has duplicate x values");
    if (points[i + 1].second < points[i].second)
      throw ValidationError("cumulative must be nondecreasing");
  }

  auto table = std::make_shared<std::vector<std::pair<double, double>>>(std::move(points));
  auto cumulative = [table](double x) {
    if (x <= 0.0) return 0.0;
    const auto& pts = *table;
    if (x >= pts.back().first) return pts.back().second;
    auto it = std::upper_bound(pts.begin(), pts.end(), std::make_pair(x, kInf));
    auto [x1, m1] = *it;
    auto [x0, m0] = *(it - 1);
    return m0 + (m1 - m0) * (x - x0) / (x1 - x0);
  };
  auto rho = [table](double x) {
    const auto& pts = *table;
    auto it = std::upper_bound(pts.begin(), pts.end(), std::make_pair(x, kInf));
    if (it == pts.begin()) ++it;
    if (it == pts.end()) --it;
    auto [x1, m1] = *it;
    auto [x0, m0] = *(it - 1);
    return (m1 - m0) / (x1 - x0);
  };

  DensitySpec s;
  s.name = std::move(name);
  s.cumulative = cumulative;
  s.rho = rho;
  s.decreasing = true;
  const auto& pts = *table;
  for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
    double slope0 = (pts[i + 1].second - pts[i].second) / (pts[i + 1].first - pts[i].first);
    double slope1 = (pts[i + 2].second - pts[i + 1].second) / (pts[i + 2].first - pts[i + 1].first);
    if (slope1 > slope0 * (1.0 + 1e-12)) s.decreasing = false;
  }
  return s;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol || (b - a) < 1e-14) return left + right + err / 15.0;
  if (depth <= 0) throw QuadratureFailure("adaptive quadrature did not reach tolerance");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol_abs) {
  if (b <= a) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, std::max(tol_abs, 1e-300), 60);
}

}  // namespace

double integrate_log_substituted(const std::function<double(double)>& f, double a, double b,
                                 double rel_tol) {
  if (!(a > 0.0) || b > 1.0 + 1e-15 || b <= a)
    throw OutOfDomain("integration interval must satisfy 0 < a < b <= 1");
  // u = ln(1/x):  int_a^b f(x) dx = int_{ln(1/b)}^{ln(1/a)} f(e^-u) e^-u du.
  auto g = [&f](double u) {
    double x = std::exp(-u);
    return f(x) * x;
  };
  double lo = std::log(1.0 / b), hi = std::log(1.0 / a);
  double rough = integrate(g, lo, hi, 1e-6);
  return integrate(g, lo, hi, rel_tol * std::max(1.0, std::abs(rough)));
}

TailCheck tail_lemma_check(const DensitySpec& spec, const std::vector<double>& grid) {
  std::vector<double> xs(grid);
  std::sort(xs.begin(), xs.end());
  if (xs.empty() || xs.front() <= 0.0 || xs.back() > 1.0)
    throw OutOfDomain("grid must lie in (0,1]");

  TailCheck out;
  out.decreasing_on_grid = true;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (spec.rho(xs[i + 1]) > spec.rho(xs[i]) * (1.0 + 1e-12) + 1e-300)
      out.decreasing_on_grid = false;
  if (spec.decreasing && !out.decreasing_on_grid)
    throw NotDecreasing("density declared decreasing increases on the grid");

  bool prefix = true;
  for (double x : xs) {
    bool pass = spec.rho(x) <= 1.0 / x * (1.0 + 1e-12);
    if (pass && prefix) out.epsilon = x;
    if (!pass) {
      prefix = false;
      out.violations.push_back(x);
    }
  }
  return out;
}

double rho_max(const DensitySpec& spec, double x) {
  if (!(x > 0.0) || x > 1.0) throw OutOfDomain("rho_max needs x in (0,1]");
  return spec.cumulative(x) / x;
}

FubiniCheck fubini_identity_check(const DensitySpec& spec, double delta, double rel_tol) {
  if (!(delta > 0.0) || delta >= 1.0) throw OutOfDomain("delta must lie in (0,1)");
  FubiniCheck out;
  if (spec.rho_max_tail)
    out.lhs = spec.rho_max_tail(delta);
  else
    out.lhs = integrate_log_substituted([&spec](double x) { return rho_max(spec, x); }, delta,
                                        1.0, rel_tol);
  // Swapping the order over {(x,s): s <= x <= 1, x >= delta} gives a
  // ln(1/max(s,delta)) kernel; the s <= delta part contributes
  // M(delta) ln(1/delta).
  out.rhs = spec.cumulative(delta) * std::log(1.0 / delta) +
            integrate_log_substituted(
                [&spec](double s) { return spec.rho(s) * std::log(1.0 / s); }, delta, 1.0,
                rel_tol);
  out.rel_gap = std::abs(out.lhs - out.rhs) / std::max(1e-300, std::abs(out.lhs));
  if (out.rel_gap > std::max(rel_tol * 100.0, 1e-6))
    throw QuadratureFailure("Fubini identity sides disagree beyond tolerance");
  return out;
}

std::vector<BlowupRow> blowup_demo(const DensitySpec& spec, std::vector<double> deltas,
                                   std::size_t count) {
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  if (count == 0 || count > deltas.size()) count = deltas.size();
  if (deltas.empty()) throw ValidationError("need at least one cutoff");
  if (deltas.front() >= 1.0 || deltas.back() <= 0.0)
    throw OutOfDomain("cutoffs must lie in (0,1)");

  std::vector<BlowupRow> rows;
  for (std::size_t n = 1; n <= count; ++n) {
    // Projected density for cutoff t: the average M(t)/t below t, rho above.
    // The running maximum over the first n cutoffs is piecewise: constant
    // on (0, t_n), max(rho, best average) between consecutive cutoffs,
    // plain rho above t_1.
    std::vector<double> ts(deltas.begin(), deltas.begin() + n);  // decreasing
    std::vector<double> avg(n);
    for (std::size_t k = 0; k < n; ++k) avg[k] = spec.cumulative(ts[k]) / ts[k];

    double best_avg = *std::max_element(avg.begin(), avg.end());
    double integral = ts[n - 1] * best_avg;  // constant piece on (0, t_n)
    for (std::size_t seg = n; seg-- > 0;) {
      double lo = ts[seg];
      double hi = seg == 0 ? 1.0 : ts[seg - 1];
      if (hi <= lo) continue;
      // Cutoffs above x on this segment are t_0..t_{seg-1}; their best
      // average is the largest among them.
      double c = 0.0;
      for (std::size_t k = 0; k < seg; ++k) c = std::max(c, avg[k]);
      integral += integrate_log_substituted(
          [&spec, c](double x) { return std::max(spec.rho(x), c); }, lo, hi, 1e-9);
    }

    BlowupRow row;
    row.delta = ts[n - 1];
    row.n = n;
    row.integral_sup = integral;
    row.rho_max_integral = integrate_log_substituted(
        [&spec](double x) { return rho_max(spec, x); }, row.delta, 1.0, 1e-9);
    if (spec.rho_max_tail) {
      row.closed_form = spec.rho_max_tail(row.delta);
      row.rel_gap = std::abs(row.rho_max_integral - row.closed_form) /
                    std::max(1e-300, std::abs(row.closed_form));
    } else {
      row.closed_form = std::numeric_limits<double>::quiet_NaN();
      row.rel_gap = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace latdiv
