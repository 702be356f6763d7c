#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "support/quadrature.hpp"
#include "support/random_packets.hpp"
#include "wpb/potential.hpp"

using wpb::GeneralizedGaussian;
using wpb::PotentialSpec;

TEST_CASE("point values and derivatives") {
  const auto dw = PotentialSpec::double_well(1.0, 1.0, 2.0);
  CHECK(value(dw, 2.0) == 0.0);  // exact zero at the minimum
  CHECK(value(dw, -2.0) == 0.0);
  CHECK(derivative(dw, 2.0, 1) == doctest::Approx(0.0));

  const auto q = PotentialSpec::quartic(1.0, 1.0);
  CHECK(value(q, 1.0) == doctest::Approx(1.0));
  CHECK(derivative(q, 1.0, 1) == doctest::Approx(4.0));
  CHECK(derivative(q, 1.0, 2) == doctest::Approx(12.0));

  const auto dw1 = PotentialSpec::double_well(1.0, 1.0, 1.0);
  CHECK(derivative(dw1, 0.0, 2) == doctest::Approx(-4.0));

  CHECK_THROWS_AS(derivative(q, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(derivative(q, 1.0, 0), std::invalid_argument);
}

TEST_CASE("factories validate their parameters") {
  CHECK_THROWS_AS(PotentialSpec::free_particle(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec::harmonic(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec::harmonic(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec::quartic(1.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(PotentialSpec::double_well(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("polynomial coefficients reproduce the point values") {
  for (const auto& pot :
       {PotentialSpec::harmonic(2.0, 1.5), PotentialSpec::quartic(1.0, 0.25),
        PotentialSpec::double_well(1.0, 1.0, 1.4)}) {
    const auto c = polynomial_coefficients(pot);
    for (double x : {-2.3, -0.4, 0.0, 1.1, 2.9}) {
      double v = 0.0, xp = 1.0;
      for (int k = 0; k <= 4; ++k) {
        v += c[static_cast<std::size_t>(k)] * xp;
        xp *= x;
      }
      CHECK(v == doctest::Approx(value(pot, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("effective quadratic parameters for the quartic oscillator") {
  const auto pot = PotentialSpec::quartic(1.0, 1.0);
  const auto g = GeneralizedGaussian::normalized(0.0, 0.0, {1.0, 0.0});
  const auto p = effective_quadratic(pot, g);
  CHECK(p.v_n == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(p.f_n == doctest::Approx(0.0));
  CHECK(std::sqrt(p.m_omega_sq / p.m) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));

  // Zero-width limit reduces to the classical point values.
  const auto tight = GeneralizedGaussian::normalized(1.0, 0.0, {1e9, 0.0});
  const auto pc = effective_quadratic(pot, tight);
  CHECK(pc.v_n == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(pc.f_n == doctest::Approx(-4.0).epsilon(1e-6));
  CHECK(pc.m_omega_sq == doctest::Approx(12.0).epsilon(1e-6));
}

TEST_CASE("effective curvature of the double well can be negative") {
  const auto pot = PotentialSpec::double_well(1.0, 1.0, 1.0);
  const auto wide = GeneralizedGaussian::normalized(0.0, 0.0, {1.0, 0.0});
  CHECK(effective_quadratic(pot, wide).m_omega_sq == doctest::Approx(2.0).epsilon(1e-12));
  const auto tight = GeneralizedGaussian::normalized(0.0, 0.0, {10.0, 0.0});
  CHECK(effective_quadratic(pot, tight).m_omega_sq == doctest::Approx(-3.4).epsilon(1e-12));
}

TEST_CASE("gaussian averages agree with quadrature") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> cen(-2.0, 2.0);
  std::uniform_real_distribution<double> gam(0.3, 6.0);
  for (const auto& pot :
       {PotentialSpec::harmonic(1.3, 0.9), PotentialSpec::quartic(1.0, 0.6),
        PotentialSpec::double_well(2.0, 0.8, 1.2)}) {
    for (int i = 0; i < 8; ++i) {
      const double x0 = cen(rng);
      const double gr = gam(rng);
      const double span = std::sqrt(60.0 / gr);
      for (int d = 0; d <= 2; ++d) {
        const auto got = gaussian_average(pot, d, x0, gr);
        // direct integral of V^(d)(x0+u) against the width-gr Gaussian
        const auto q = testsupport::integrate(
            [&](double u) {
              const double vd = d == 0 ? value(pot, x0 + u)
                                       : derivative(pot, x0 + u, d);
              return wpb::cplx{std::sqrt(gr / wpb::kPi) * std::exp(-gr * u * u) * vd, 0.0};
            },
            -span, span);
        CHECK(std::abs(got - q.real()) < 1e-9 * (std::abs(got) + 1.0));
      }
    }
  }
}

TEST_CASE("harmonic expansion is exact for every packet") {
  const auto pot = PotentialSpec::harmonic(1.7, 2.3);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    const auto g = testsupport::random_packet(rng);
    const auto p = effective_quadratic(pot, g);
    const double k = pot.m * pot.omega * pot.omega;
    CHECK(p.m_omega_sq == doctest::Approx(k).epsilon(1e-14));
    CHECK(p.f_n == doctest::Approx(-k * g.center).epsilon(1e-14));
    CHECK(p.omega().real() == doctest::Approx(pot.omega).epsilon(1e-14));
    CHECK(p.omega().imag() == 0.0);
  }
}

TEST_CASE("parameters depend only on the real part of the width") {
  const auto pot = PotentialSpec::quartic(1.0, 0.5);
  const auto a = GeneralizedGaussian::normalized(0.7, -0.3, {1.3, 0.0});
  const auto b = GeneralizedGaussian::normalized(0.7, -0.3, {1.3, 4.2});
  const auto pa = effective_quadratic(pot, a);
  const auto pb = effective_quadratic(pot, b);
  CHECK(pa.v_n == pb.v_n);
  CHECK(pa.f_n == pb.f_n);
  CHECK(pa.m_omega_sq == pb.m_omega_sq);
}
