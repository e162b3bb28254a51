#pragma once

#include <cmath>
#include <limits>

namespace latdiv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Divergence kernel f(x) = x ln x - (x - 1).  Nonnegative, zero only at 1.
inline double div_f(double x) {
  if (x == 0.0) return 1.0;  // 0 ln 0 := 0
  return x * std::log(x) - (x - 1.0);
}

// gamma(x) = x - 1 - ln x, the dual kernel.  Nonnegative, zero only at 1.
inline double gamma_kernel(double x) {
  return x - 1.0 - std::log(x);
}

// One-atom divergence D(k || l) = f(k/l) * l = k ln(k/l) - k + l.
// Conventions: f(0/0)*0 = 0, f(inf/inf)*inf = 0, and any finite/infinite
// mismatch (including l = 0 < k) yields +inf.
inline double scalar_divergence(double k, double l) {
  if (std::isinf(k)) return std::isinf(l) ? 0.0 : kInf;
  if (std::isinf(l)) return kInf;
  if (k == 0.0) return l;  // f(0) * l = l, also covers D(0 || 0) = 0
  if (l == 0.0) return kInf;
  return k * std::log(k / l) - k + l;
}

}  // namespace latdiv
