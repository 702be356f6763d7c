#include "wpb/packet.hpp"

#include <cmath>
#include <stdexcept>

namespace wpb {

namespace {

void check_width(const GeneralizedGaussian& g) {
  if (!(g.width.real() > 0.0) || !std::isfinite(g.width.real()) ||
      !std::isfinite(g.width.imag())) {
    throw std::domain_error("packet width must have positive finite real part");
  }
}

// The product integrand a*(x) b(x) is exp(-A x^2 + B x + c) with
// Re A > 0. Gathers A, B and the full constant (including both
// prefactors), from which every integral below follows.
struct ProductExponent {
  cplx quad;      // A
  cplx lin;       // B
  cplx constant;  // c, including conj(log C_a) + log C_b
};

ProductExponent product_exponent(const GeneralizedGaussian& a,
                                 const GeneralizedGaussian& b) {
  const cplx ga = std::conj(a.width);
  const cplx gb = b.width;
  ProductExponent e;
  e.quad = 0.5 * (ga + gb);
  e.lin = ga * a.center + gb * b.center + kI * (b.momentum - a.momentum);
  e.constant = std::conj(a.log_prefactor) + b.log_prefactor -
               0.5 * (ga * a.center * a.center + gb * b.center * b.center) +
               kI * (a.momentum * a.center - b.momentum * b.center);
  return e;
}

struct PairBasics {
  cplx overlap;   // integral of the product
  cplx mu;        // B / (2A), center of the product Gaussian
  cplx half_var;  // 1 / (2A)
};

PairBasics pair_basics(const GeneralizedGaussian& a,
                       const GeneralizedGaussian& b) {
  check_width(a);
  check_width(b);
  const ProductExponent e = product_exponent(a, b);
  // integral exp(-A x^2 + B x + c) dx = sqrt(pi/A) exp(B^2/(4A) + c),
  // principal square root (valid since Re A > 0).
  const cplx log_integral =
      e.constant + e.lin * e.lin / (4.0 * e.quad) + 0.5 * std::log(kPi / e.quad);
  PairBasics p;
  p.overlap = std::exp(log_integral);
  p.mu = e.lin / (2.0 * e.quad);
  p.half_var = 1.0 / (2.0 * e.quad);
  return p;
}

// Raw moments M_k with M_0 = 1 of the (complex) product Gaussian:
// M_k = mu M_{k-1} + (k-1) half_var M_{k-2}.
std::array<cplx, 5> raw_moments(const PairBasics& p) {
  std::array<cplx, 5> m;
  m[0] = cplx{1.0, 0.0};
  m[1] = p.mu;
  for (int k = 2; k <= 4; ++k) {
    m[k] = p.mu * m[k - 1] + static_cast<double>(k - 1) * p.half_var * m[k - 2];
  }
  return m;
}

cplx kinetic_from_basics(const PairBasics& p, const GeneralizedGaussian& b,
                         double mass) {
  // p^2 b = -b''; with u = x - b.center,
  //   b''/b = -gamma + (i p_b - gamma u)^2
  //         = -gamma - p_b^2 - 2 i p_b gamma u + gamma^2 u^2.
  const cplx gb = b.width;
  const double pb = b.momentum;
  const cplx u1 = p.mu - b.center;
  const cplx u2 = u1 * u1 + p.half_var;
  const cplx p2 = (gb + pb * pb) * p.overlap +
                  2.0 * kI * pb * gb * p.overlap * u1 - gb * gb * p.overlap * u2;
  return p2 / (2.0 * mass);
}

}  // namespace

GeneralizedGaussian GeneralizedGaussian::normalized(double center,
                                                    double momentum, cplx width,
                                                    double phase) {
  GeneralizedGaussian g;
  g.center = center;
  g.momentum = momentum;
  g.width = width;
  check_width(g);
  g.log_prefactor = cplx{0.25 * std::log(width.real() / kPi), phase};
  return g;
}

cplx evaluate(const GeneralizedGaussian& g, double x) {
  check_width(g);
  if (!std::isfinite(x)) throw std::domain_error("evaluate: x must be finite");
  const double u = x - g.center;
  return std::exp(g.log_prefactor + kI * (g.momentum * u) - 0.5 * g.width * u * u);
}

GeneralizedGaussian shift(const GeneralizedGaussian& g, double dx) {
  GeneralizedGaussian out = g;
  out.center += dx;
  return out;
}

GeneralizedGaussian boost(const GeneralizedGaussian& g, double dp) {
  GeneralizedGaussian out = g;
  out.momentum += dp;
  return out;
}

double packet_norm(const GeneralizedGaussian& g) {
  check_width(g);
  // |C|^2 integral exp(-Re(gamma) u^2) du = |C|^2 sqrt(pi / Re gamma)
  const double log_n2 = 2.0 * g.log_prefactor.real() +
                        0.5 * std::log(kPi / g.width.real());
  return std::exp(0.5 * log_n2);
}

GeneralizedGaussian normalize(const GeneralizedGaussian& g) {
  check_width(g);
  GeneralizedGaussian out = g;
  out.log_prefactor =
      cplx{0.25 * std::log(g.width.real() / kPi), g.log_prefactor.imag()};
  return out;
}

cplx overlap(const GeneralizedGaussian& a, const GeneralizedGaussian& b) {
  return pair_basics(a, b).overlap;
}

cplx moment(const GeneralizedGaussian& a, const GeneralizedGaussian& b, int k) {
  if (k < 0 || k > 4) throw std::invalid_argument("moment: k must be in 0..4");
  const PairBasics p = pair_basics(a, b);
  return p.overlap * raw_moments(p)[static_cast<std::size_t>(k)];
}

cplx kinetic_element(const GeneralizedGaussian& a, const GeneralizedGaussian& b,
                     double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("kinetic_element: mass must be positive");
  return kinetic_from_basics(pair_basics(a, b), b, mass);
}

PairIntegrals pair_integrals(const GeneralizedGaussian& a,
                             const GeneralizedGaussian& b, double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("pair_integrals: mass must be positive");
  const PairBasics p = pair_basics(a, b);
  const auto m = raw_moments(p);
  PairIntegrals out;
  out.overlap = p.overlap;
  for (int k = 0; k <= 4; ++k) out.moments[static_cast<std::size_t>(k)] = p.overlap * m[static_cast<std::size_t>(k)];
  out.kinetic = kinetic_from_basics(p, b, mass);
  return out;
}

}  // namespace wpb
