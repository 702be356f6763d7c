#pragma once

#include <vector>

#include "wpb/packet.hpp"
#include "wpb/potential.hpp"
#include "wpb/types.hpp"

namespace wpb {

// Uniform periodic grid x_j = x_min + j dx, dx = (x_max - x_min)/n_points,
// j = 0..n_points-1 (x_max itself wraps around to x_min).
struct GridSpec {
  double x_min = -12.0;
  double x_max = 12.0;
  int n_points = 1024;
  double dt = 1e-3;

  double dx() const { return (x_max - x_min) / n_points; }
  double x(int j) const { return x_min + j * dx(); }
  bool operator==(const GridSpec&) const = default;
};

// Complex amplitudes on a grid; the brute-force reference state.
struct GridState {
  GridSpec spec;
  std::vector<cplx> amplitudes;
};

// Samples the packet on the grid and renormalizes. Fails with
// domain_too_small_error when the packet has visible support at the
// boundary (relative amplitude >= 1e-12).
GridState init_from_packet(const GeneralizedGaussian& g, const GridSpec& spec);

// Second-order split-step evolution under H = p^2/2m + V for total time
// t_total >= 0 (kinetic factor applied in momentum space via the FFT).
GridState evolve_real_time(const GridState& s, const PotentialSpec& pot,
                           double t_total);

// exp(-tau H) by split-step in imaginary time. With renormalize the
// result is rescaled to unit norm; otherwise it carries its true decayed
// norm (decay_underflow_error below 1e-300).
GridState evolve_imag_time(const GridState& s, const PotentialSpec& pot,
                           double tau, bool renormalize);

struct Eigenpair {
  double energy = 0.0;
  GridState state;
};

// k lowest eigenpairs of the discretized Hamiltonian (spectral kinetic
// matrix, dense diagonalization; n_points <= 2048).
std::vector<Eigenpair> lowest_eigenpairs(const PotentialSpec& pot,
                                         const GridSpec& spec, int k);

// H applied once (spectral kinetic + potential).
GridState apply_hamiltonian(const GridState& s, const PotentialSpec& pot);

double norm(const GridState& s);
double expectation_x(const GridState& s);
double l2_error(const GridState& a, const GridState& b);
cplx inner_product(const GridState& a, const GridState& b);

// Real part of <s|H|s> / <s|s>.
double rayleigh_quotient(const GridState& s, const PotentialSpec& pot);

}  // namespace wpb
