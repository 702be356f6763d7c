#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "wpb/packet.hpp"
#include "wpb/types.hpp"

// Test-only numerical integration used as an independent check of the
// closed-form Gaussian integrals. Kept out of the library on purpose.
namespace testsupport {

using wpb::cplx;

namespace detail {

template <typename F>
cplx simpson(const F& f, double a, double b, cplx fa, cplx fm, cplx fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
cplx adapt(const F& f, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole,
           double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const cplx flm = f(lm), frm = f(rm);
  const cplx left = simpson(f, a, m, fa, flm, fm);
  const cplx right = simpson(f, m, b, fm, frm, fb);
  const cplx sum = left + right;
  if (depth <= 0 || std::abs(sum - whole) < 15.0 * tol) {
    return sum + (sum - whole) / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with a tolerance relative to a coarse scan of the
// integrand magnitude.
template <typename F>
cplx integrate(const F& f, double a, double b, double rel_tol = 2e-14) {
  // Coarse scale estimate from a uniform scan.
  double scale = 0.0;
  const int kScan = 512;
  for (int i = 0; i <= kScan; ++i) {
    const double x = a + (b - a) * i / kScan;
    scale = std::max(scale, std::abs(f(x)));
  }
  const double tol = rel_tol * std::max(scale * (b - a), 1e-300);
  const double m = 0.5 * (a + b);
  const cplx fa = f(a), fm = f(m), fb = f(b);
  const cplx whole = detail::simpson(f, a, b, fa, fm, fb);
  return detail::adapt(f, a, b, fa, fm, fb, whole, tol, 24);
}

// Integration window that contains essentially all of the product
// envelope |a(x)| * |b(x)|, which is a Gaussian centered at the
// precision-weighted midpoint of the two packets.
inline std::pair<double, double> support_window(const wpb::GeneralizedGaussian& a,
                                                const wpb::GeneralizedGaussian& b) {
  const double wa = a.width.real(), wb = b.width.real();
  const double x0 = (wa * a.center + wb * b.center) / (wa + wb);
  const double span = std::sqrt(2.0 * 60.0 / (wa + wb));
  // Keep both centers inside the window as well.
  const double lo = std::min(x0 - span, std::min(a.center, b.center) - 2.0);
  const double hi = std::max(x0 + span, std::max(a.center, b.center) + 2.0);
  return {lo, hi};
}

inline cplx overlap_quadrature(const wpb::GeneralizedGaussian& a,
                               const wpb::GeneralizedGaussian& b, int power = 0) {
  const auto [lo, hi] = support_window(a, b);
  return integrate(
      [&](double x) {
        cplx v = std::conj(wpb::evaluate(a, x)) * wpb::evaluate(b, x);
        for (int k = 0; k < power; ++k) v *= x;
        return v;
      },
      lo, hi);
}

inline cplx kinetic_quadrature(const wpb::GeneralizedGaussian& a,
                               const wpb::GeneralizedGaussian& b, double mass) {
  const auto [lo, hi] = support_window(a, b);
  // p^2/2m acting on b, with the analytic second derivative of the
  // Gaussian: b'' = (-gamma + (i p - gamma u)^2) b.
  return integrate(
      [&](double x) {
        const double u = x - b.center;
        const cplx q = wpb::kI * b.momentum - b.width * u;
        const cplx second = (-b.width + q * q) * wpb::evaluate(b, x);
        return std::conj(wpb::evaluate(a, x)) * (-second) / (2.0 * mass);
      },
      lo, hi);
}

inline double momentum_quadrature(const wpb::GeneralizedGaussian& g) {
  const auto [lo, hi] = support_window(g, g);
  const cplx v = integrate(
      [&](double x) {
        const double u = x - g.center;
        const cplx dpsi = (wpb::kI * g.momentum - g.width * u) * wpb::evaluate(g, x);
        return std::conj(wpb::evaluate(g, x)) * (-wpb::kI) * dpsi;
      },
      lo, hi);
  return v.real();
}

}  // namespace testsupport
