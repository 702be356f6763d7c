#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "wpb/grid.hpp"
#include "wpb/packet.hpp"
#include "wpb/potential.hpp"

namespace wpb {

// A self-consistent stationary Gaussian in one well of a double-well
// potential: the Gaussian-averaged force vanishes at `center` and the
// real width equals m * omega_eff with m omega_eff^2 = <V''>.
struct StationaryWell {
  enum class Side { kLeft, kRight };
  double center = 0.0;
  double width = 0.0;
  Side side = Side::kLeft;
};

// Both stationary Gaussians (left, right); mirror-symmetric by parity.
// Fails with no_stationary_solution_error when the wells are too shallow
// (center^2 = f^2 - 3/(2 gamma) has no positive solution) or the damped
// fixed-point iteration does not converge within 10^4 sweeps.
std::pair<StationaryWell, StationaryWell> find_stationary_gaussians(
    const PotentialSpec& pot);

// Unit-norm zero-momentum packet sitting in a stationary well.
GeneralizedGaussian well_packet(const StationaryWell& well);

struct InstantonSample {
  double tau = 0.0;
  double x = 0.0;
  double p = 0.0;  // m * dx/dtau
};

// Inverted-potential trajectory between the two stationary centers,
// tau = 0 at the midpoint. Samples are uniform in x and stop the
// distance delta short of the turning points, with delta solving
// V(c - delta) - V(c) = 1e-8 * barrier height.
struct InstantonPath {
  std::vector<InstantonSample> samples;
};

// Euclidean energy-conservation quadrature of the inverted-potential
// motion: tau(x) = integral dx' / sqrt((2/m)(V(x') - V(c))) from the
// midpoint, p = sqrt(2 m (V(x) - V(c))). Throws no_instanton_error when
// V - V(c) is not positive across the interior.
InstantonPath instanton_trajectory(const PotentialSpec& pot,
                                   const StationaryWell& well, int n_samples);

enum class MomentumMode { kWithMomentum, kFrozen };

// One unit-norm packet of width gamma per path sample; momentum taken
// from the sample or frozen to zero.
std::vector<GeneralizedGaussian> instanton_basis(const InstantonPath& path,
                                                 double gamma, MomentumMode mode);

// {left well, n_path instanton packets, right well}, all with the
// stationary width.
std::vector<GeneralizedGaussian> instanton_augmented_basis(
    const PotentialSpec& pot,
    const std::pair<StationaryWell, StationaryWell>& wells, int n_path,
    MomentumMode mode);

// Imaginary-time-smoothed effective Hamiltonian over the packet set:
// with phi_i = exp(-t H/2) psi_i on the grid, forms S_lm = <phi_l|phi_m>
// and Htilde_lm = <phi_l|H|phi_m> and returns the Hamiltonian in the
// orthonormal basis of the significance-filtered eigenspace of S
// (eigenvalues > eps * largest). The result is hermitian; its dimension
// is the retained mode count. t = 0 reduces to the symmetric
// orthogonalization of the plain packet matrices.
Eigen::MatrixXcd smoothed_hamiltonian(const std::vector<GeneralizedGaussian>& packets,
                                      const PotentialSpec& pot, double t,
                                      const GridSpec& spec, double eps = 1e-10);

struct SplittingResult {
  double delta_e = 0.0;       // E1 - E0
  double transfer_time = 0.0; // pi / delta_e, two-level transfer time
};

// Level splitting of a hermitian matrix with at least two modes. The
// index sets identify which packets sit in which well and are validated
// only; the two-level observables depend on the spectrum alone.
SplittingResult splitting_and_transfer(const Eigen::MatrixXcd& h,
                                       const std::vector<int>& left_index_set,
                                       const std::vector<int>& right_index_set);

}  // namespace wpb
