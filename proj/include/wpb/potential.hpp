#pragma once

#include <array>

#include "wpb/packet.hpp"
#include "wpb/types.hpp"

namespace wpb {

enum class PotentialKind { kFree, kHarmonic, kQuartic, kDoubleWell };

// Potential specification. Supported forms:
//   free:        V = 0
//   harmonic:    V = m omega^2 x^2 / 2
//   quartic:     V = lambda x^4
//   double_well: V = lambda (x^2 - f^2)^2
struct PotentialSpec {
  PotentialKind kind = PotentialKind::kFree;
  double m = 1.0;
  double omega = 0.0;
  double lambda = 0.0;
  double f = 0.0;

  static PotentialSpec free_particle(double m);
  static PotentialSpec harmonic(double m, double omega);
  static PotentialSpec quartic(double m, double lambda);
  static PotentialSpec double_well(double m, double lambda, double f);
};

double value(const PotentialSpec& pot, double x);

// First or second derivative at x; other orders are rejected.
double derivative(const PotentialSpec& pot, double x, int order);

// Monomial coefficients c with V(x) = sum_k c[k] x^k (degree <= 4),
// the form consumed by the closed-form matrix elements.
std::array<double, 5> polynomial_coefficients(const PotentialSpec& pot);

// Average of the d-th derivative of V over a real-width Gaussian of
// width gamma_re centered at x_center (d = 0, 1 or 2).
double gaussian_average(const PotentialSpec& pot, int d, double x_center,
                        double gamma_re);

// Parameters of the local quadratic Hamiltonian
//   H = p^2/2m + v_n - f_n (x - x_n) + m_omega_sq/2 (x - x_n)^2
// obtained by Gaussian-averaged second-order expansion about a packet.
// m_omega_sq = <V''> may be negative (locally concave potential); the
// effective frequency is then imaginary and the propagator continues
// through cosh/sinh automatically.
struct EffectiveQuadraticParams {
  double x_n = 0.0;
  double p_n = 0.0;
  double v_n = 0.0;
  double f_n = 0.0;
  double m_omega_sq = 0.0;
  double m = 1.0;

  cplx omega() const;  // sqrt(m_omega_sq / m), real or purely imaginary
};

// Expansion about the packet's center and momentum; all averages are
// taken with the real part of the packet width, which keeps every
// parameter real and the effective Hamiltonian hermitian.
EffectiveQuadraticParams effective_quadratic(const PotentialSpec& pot,
                                             const GeneralizedGaussian& g);

}  // namespace wpb
