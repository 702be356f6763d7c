#include "wpb/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace wpb {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// d-th derivative for d = 0..4; degree <= 4 so everything above vanishes.
double deriv_any(const PotentialSpec& pot, double x, int d) {
  switch (pot.kind) {
    case PotentialKind::kFree:
      return 0.0;
    case PotentialKind::kHarmonic: {
      const double k = pot.m * pot.omega * pot.omega;
      if (d == 0) return 0.5 * k * x * x;
      if (d == 1) return k * x;
      if (d == 2) return k;
      return 0.0;
    }
    case PotentialKind::kQuartic: {
      if (d == 0) return pot.lambda * x * x * x * x;
      if (d == 1) return 4.0 * pot.lambda * x * x * x;
      if (d == 2) return 12.0 * pot.lambda * x * x;
      if (d == 3) return 24.0 * pot.lambda * x;
      if (d == 4) return 24.0 * pot.lambda;
      return 0.0;
    }
    case PotentialKind::kDoubleWell: {
      const double q = x * x - pot.f * pot.f;
      if (d == 0) return pot.lambda * q * q;
      if (d == 1) return 4.0 * pot.lambda * x * q;
      if (d == 2) return 4.0 * pot.lambda * (3.0 * x * x - pot.f * pot.f);
      if (d == 3) return 24.0 * pot.lambda * x;
      if (d == 4) return 24.0 * pot.lambda;
      return 0.0;
    }
  }
  throw std::invalid_argument("unsupported potential kind");
}

}  // namespace

PotentialSpec PotentialSpec::free_particle(double m) {
  require(m > 0.0, "potential: m must be positive");
  return {PotentialKind::kFree, m, 0.0, 0.0, 0.0};
}

PotentialSpec PotentialSpec::harmonic(double m, double omega) {
  require(m > 0.0, "potential: m must be positive");
  require(omega > 0.0, "potential: omega must be positive");
  return {PotentialKind::kHarmonic, m, omega, 0.0, 0.0};
}

PotentialSpec PotentialSpec::quartic(double m, double lambda) {
  require(m > 0.0, "potential: m must be positive");
  require(lambda > 0.0, "potential: lambda must be positive");
  return {PotentialKind::kQuartic, m, 0.0, lambda, 0.0};
}

PotentialSpec PotentialSpec::double_well(double m, double lambda, double f) {
  require(m > 0.0, "potential: m must be positive");
  require(lambda > 0.0, "potential: lambda must be positive");
  require(f > 0.0, "potential: f must be positive");
  return {PotentialKind::kDoubleWell, m, 0.0, lambda, f};
}

double value(const PotentialSpec& pot, double x) { return deriv_any(pot, x, 0); }

double derivative(const PotentialSpec& pot, double x, int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("derivative: order must be 1 or 2");
  }
  return deriv_any(pot, x, order);
}

std::array<double, 5> polynomial_coefficients(const PotentialSpec& pot) {
  std::array<double, 5> c{0.0, 0.0, 0.0, 0.0, 0.0};
  switch (pot.kind) {
    case PotentialKind::kFree:
      break;
    case PotentialKind::kHarmonic:
      c[2] = 0.5 * pot.m * pot.omega * pot.omega;
      break;
    case PotentialKind::kQuartic:
      c[4] = pot.lambda;
      break;
    case PotentialKind::kDoubleWell:
      c[0] = pot.lambda * pot.f * pot.f * pot.f * pot.f;
      c[2] = -2.0 * pot.lambda * pot.f * pot.f;
      c[4] = pot.lambda;
      break;
  }
  return c;
}

double gaussian_average(const PotentialSpec& pot, int d, double x_center,
                        double gamma_re) {
  require(d >= 0 && d <= 2, "gaussian_average: d must be 0, 1 or 2");
  require(gamma_re > 0.0, "gaussian_average: width must be positive");
  // <x^2> = 1/(2 gamma), <x^4> = 3/(4 gamma^2), odd moments vanish:
  // <V^(d)(x + c)> = V^(d)(c) + V^(d+2)(c)/(4 gamma) + V^(d+4)(c)/(32 gamma^2).
  return deriv_any(pot, x_center, d) +
         deriv_any(pot, x_center, d + 2) / (4.0 * gamma_re) +
         deriv_any(pot, x_center, d + 4) / (32.0 * gamma_re * gamma_re);
}

cplx EffectiveQuadraticParams::omega() const {
  return std::sqrt(cplx{m_omega_sq / m, 0.0});
}

EffectiveQuadraticParams effective_quadratic(const PotentialSpec& pot,
                                             const GeneralizedGaussian& g) {
  const double gamma_re = g.width.real();
  require(gamma_re > 0.0, "effective_quadratic: packet width must have Re > 0");
  EffectiveQuadraticParams p;
  p.x_n = g.center;
  p.p_n = g.momentum;
  p.m = pot.m;
  p.v_n = gaussian_average(pot, 0, g.center, gamma_re);
  p.f_n = -gaussian_average(pot, 1, g.center, gamma_re);
  p.m_omega_sq = gaussian_average(pot, 2, g.center, gamma_re);
  return p;
}

}  // namespace wpb
