#pragma once

#include "wpb/packet.hpp"
#include "wpb/potential.hpp"
#include "wpb/types.hpp"

namespace wpb {

// A point of a classical trajectory under quadratic dynamics, plus the
// phase exponent p(t)*x(t) carried by the corresponding coherent packet
// when its momentum phase is referenced at the moving center.
struct ClassicalPoint {
  double t = 0.0;
  double x = 0.0;
  double p = 0.0;
  double action_phase = 0.0;
};

// Exact evolution under H = p^2/2m for time t (t may be negative).
GeneralizedGaussian free_evolve(const GeneralizedGaussian& g, double m, double t);

// Exact evolution under H = p^2/2m + m omega^2 x^2 / 2. The width follows
// the Moebius map, the center the classical flow, and the log-prefactor
// picks up -log(D)/2 plus i times the classical action, with the branch of
// log(D) continued through any number of periods.
GeneralizedGaussian harmonic_evolve(const GeneralizedGaussian& g, double m,
                                    double omega, double t);

// Classical phase-space point for harmonic (omega > 0) or free (omega = 0)
// motion started from (x0, p0).
ClassicalPoint coherent_trajectory(double x0, double p0, double m, double omega,
                                   double t);

// One exact step of duration dt under the local quadratic Hamiltonian
//   H = p^2/2m + v_n - f_n (x - x_n) + m_omega_sq/2 (x - x_n)^2.
// The packet's width and prefactor are evolved; the classical trajectory
// is seeded from (params.x_n, params.p_n), which callers normally obtain
// from effective_quadratic on the same packet. m_omega_sq < 0 continues
// through cosh/sinh; m_omega_sq = 0 reduces to free/uniform-force motion.
// With renormalize set, Re(log_prefactor) is reset to the unit-norm value.
GeneralizedGaussian driven_harmonic_step(const GeneralizedGaussian& g,
                                         const EffectiveQuadraticParams& params,
                                         double dt, bool renormalize = false);

}  // namespace wpb
