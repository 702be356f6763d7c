#include "wpb/propagators.hpp"

#include <cmath>
#include <stdexcept>

namespace wpb {

namespace {

void check_input(const GeneralizedGaussian& g, double m) {
  if (!(m > 0.0)) throw std::invalid_argument("propagator: mass must be positive");
  if (!(g.width.real() > 0.0)) {
    throw std::domain_error("propagator: packet width must have Re > 0");
  }
}

// Even functions of z = omega*dt expressed through w = z^2, which is real
// for real or purely imaginary omega:
//   c  = cos z                 (cosh for w < 0)
//   s  = sin(z)/z
//   g2 = (1 - cos z)/z^2
//   g3 = (z - sin z)/z^3
// Near w = 0 the direct forms cancel, so short series take over.
struct OscFuncs {
  double c, s, g2, g3;
};

OscFuncs osc_funcs(double w) {
  OscFuncs f{};
  if (std::abs(w) < 1e-2) {
    f.c = 1.0 + w * (-1.0 / 2.0 + w * (1.0 / 24.0 + w * (-1.0 / 720.0 + w / 40320.0)));
    f.s = 1.0 + w * (-1.0 / 6.0 + w * (1.0 / 120.0 + w * (-1.0 / 5040.0 + w / 362880.0)));
    f.g2 = 1.0 / 2.0 +
           w * (-1.0 / 24.0 + w * (1.0 / 720.0 + w * (-1.0 / 40320.0 + w / 3628800.0)));
    f.g3 = 1.0 / 6.0 +
           w * (-1.0 / 120.0 + w * (1.0 / 5040.0 + w * (-1.0 / 362880.0 + w / 39916800.0)));
  } else if (w > 0.0) {
    const double r = std::sqrt(w);
    f.c = std::cos(r);
    f.s = std::sin(r) / r;
    f.g2 = (1.0 - f.c) / w;
    f.g3 = (r - std::sin(r)) / (r * w);
  } else {
    const double r = std::sqrt(-w);
    f.c = std::cosh(r);
    f.s = std::sinh(r) / r;
    f.g2 = (1.0 - f.c) / w;
    f.g3 = (std::sinh(r) - r) / (r * (-w));
  }
  return f;
}

// log of the Moebius denominator D(t) = cos(omega t) + i (gamma/(m omega))
// sin(omega t), continued from log D(0) = 0. For omega^2 > 1/t^2-ish the
// principal log can wind, so D is factored as e^{i theta} B(theta) where
// B stays inside a zero-free disk in the right half plane and its
// principal log is continuous:
//   B = (1 + e^{-2 i theta})/2 + (gamma/m) t sinc(theta) (sin theta + i cos theta).
// For omega^2 <= 0 and for small phases the straight principal log is
// already the continuous branch (Im D keeps the sign of Re gamma).
cplx log_mobius_denominator(cplx gamma, double m, double omega_sq, double dt) {
  const double w = omega_sq * dt * dt;
  if (w > 1.0) {
    const double theta = std::sqrt(w) * (dt < 0.0 ? -1.0 : 1.0);
    const double sinth = std::sin(theta), costh = std::cos(theta);
    const cplx b = 0.5 * (1.0 + std::exp(cplx{0.0, -2.0 * theta})) +
                   (gamma / m) * dt * (sinth / theta) * cplx{sinth, costh};
    return cplx{0.0, theta} + std::log(b);
  }
  const OscFuncs f = osc_funcs(w);
  const cplx d = f.c + kI * (gamma / m) * dt * f.s;
  return std::log(d);
}

}  // namespace

GeneralizedGaussian free_evolve(const GeneralizedGaussian& g, double m, double t) {
  check_input(g, m);
  const cplx d = 1.0 + kI * g.width * t / m;
  GeneralizedGaussian out = g;
  out.width = g.width / d;
  out.center = g.center + g.momentum / m * t;
  out.log_prefactor =
      g.log_prefactor - 0.5 * std::log(d) +
      kI * (g.momentum * g.momentum * t / (2.0 * m));
  return out;
}

GeneralizedGaussian harmonic_evolve(const GeneralizedGaussian& g, double m,
                                    double omega, double t) {
  check_input(g, m);
  if (!(omega > 0.0)) {
    throw std::invalid_argument("harmonic_evolve: omega must be positive");
  }
  const double omega_sq = omega * omega;
  const double w = omega_sq * t * t;
  const OscFuncs f = osc_funcs(w);

  const double xc = g.center * f.c + g.momentum / m * t * f.s;
  const double pc = g.momentum * f.c - m * omega_sq * t * f.s * g.center;
  const double action = 0.5 * (xc * pc - g.center * g.momentum);

  GeneralizedGaussian out = g;
  out.center = xc;
  out.momentum = pc;
  out.width = (g.width * f.c + kI * m * omega_sq * t * f.s) /
              (f.c + kI * (g.width / m) * t * f.s);
  out.log_prefactor = g.log_prefactor -
                      0.5 * log_mobius_denominator(g.width, m, omega_sq, t) +
                      kI * action;
  return out;
}

ClassicalPoint coherent_trajectory(double x0, double p0, double m, double omega,
                                   double t) {
  if (!(m > 0.0)) throw std::invalid_argument("coherent_trajectory: mass must be positive");
  if (omega < 0.0) throw std::invalid_argument("coherent_trajectory: omega must be >= 0");
  const double omega_sq = omega * omega;
  const OscFuncs f = osc_funcs(omega_sq * t * t);
  ClassicalPoint pt;
  pt.t = t;
  pt.x = x0 * f.c + p0 / m * t * f.s;
  pt.p = p0 * f.c - m * omega_sq * t * f.s * x0;
  pt.action_phase = pt.p * pt.x;
  return pt;
}

GeneralizedGaussian driven_harmonic_step(const GeneralizedGaussian& g,
                                         const EffectiveQuadraticParams& params,
                                         double dt, bool renormalize) {
  check_input(g, params.m);
  if (!(dt > 0.0)) throw std::invalid_argument("driven_harmonic_step: dt must be positive");

  const double m = params.m;
  const double omega_sq = params.m_omega_sq / m;
  const double w = omega_sq * dt * dt;
  const OscFuncs f = osc_funcs(w);
  const double force = params.f_n;
  const double p0 = params.p_n;

  // Classical flow of the local quadratic Hamiltonian from (x_n, p_n):
  //   y(dt)    displacement of the center,
  //   p(dt)    final momentum,
  //   Y(dt)    integral of y over the step (enters the action).
  const double y = force / m * dt * dt * f.g2 + p0 / m * dt * f.s;
  const double pf = p0 * f.c + force * dt * f.s;
  const double int_y = force / m * dt * dt * dt * f.g3 + p0 / m * dt * dt * f.g2;

  // Action along the step; integration by parts against the equation of
  // motion reduces it to boundary data plus the force term:
  //   S = y(dt) p(dt)/2 + F int_y/2 - v_n dt.
  const double action = 0.5 * y * pf + 0.5 * force * int_y - params.v_n * dt;

  GeneralizedGaussian out = g;
  out.center = params.x_n + y;
  out.momentum = pf;
  out.width = (g.width * f.c + kI * params.m_omega_sq * dt * f.s) /
              (f.c + kI * (g.width / m) * dt * f.s);
  out.log_prefactor = g.log_prefactor -
                      0.5 * log_mobius_denominator(g.width, m, omega_sq, dt) +
                      kI * action;
  if (renormalize) {
    out.log_prefactor =
        cplx{0.25 * std::log(out.width.real() / kPi), out.log_prefactor.imag()};
  }
  return out;
}

}  // namespace wpb
