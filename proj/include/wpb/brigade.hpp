#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wpb/packet.hpp"
#include "wpb/potential.hpp"
#include "wpb/types.hpp"

namespace wpb {

// Stepping parameters for trajectory-basis generation.
struct BrigadeConfig {
  double dt = 0.01;
  int n_steps = 100;
  double significance_eps = 1e-8;  // relative Gram-eigenvalue cutoff
  bool renormalize_each_step = false;
  int thin_every = 1;  // keep every k-th trajectory packet before assembly
};

// An ordered packet set with its overlap (Gram) and Hamiltonian matrices.
struct BasisSet {
  std::vector<GeneralizedGaussian> packets;
  Eigen::MatrixXcd gram;
  Eigen::MatrixXcd hamiltonian;
};

// Whitening map from packet coefficients to orthonormal-mode coefficients:
// columns are retained Gram eigenvectors scaled by 1/sqrt(eigenvalue), in
// descending eigenvalue order, so matrix.adjoint()*gram*matrix == identity.
struct SubspaceTransform {
  Eigen::MatrixXcd matrix;  // n_packets x retained_modes
  int retained_modes = 0;
  std::vector<double> discarded_eigenvalues;
};

// Iterates the packet under its own locally-fitted quadratic Hamiltonian,
// collecting [g0, g1, ..., g_{n_steps}]. The constant term fed to each
// step is adjusted by -m_omega_sq/(4 Re gamma) so the local Hamiltonian
// has the same mean energy as the true one; for quadratic potentials the
// stepping then reproduces the exact flow including the global phase.
std::vector<GeneralizedGaussian> generate_trajectory_basis(
    const GeneralizedGaussian& g0, const PotentialSpec& pot,
    const BrigadeConfig& cfg);

// Gram and Hamiltonian matrices over the packets. Both are hermitized by
// averaging with their adjoints after asserting the asymmetry is below
// 1e-9.
BasisSet assemble_matrices(const std::vector<GeneralizedGaussian>& packets,
                           const PotentialSpec& pot);

// Keeps Gram eigenmodes with eigenvalue > eps * largest; throws
// degenerate_basis_error when nothing survives.
SubspaceTransform significant_subspace(const BasisSet& basis, double eps);

// Hamiltonian in the orthonormal retained modes: transform^H H transform.
Eigen::MatrixXcd projected_hamiltonian(const BasisSet& basis,
                                       const SubspaceTransform& transform);

// exp(-i t h) applied to the initial state expressed as packet
// coefficients; the result is mapped back to packet coefficients.
Eigen::VectorXcd project_and_exponentiate(const BasisSet& basis,
                                          const SubspaceTransform& transform,
                                          const Eigen::VectorXcd& init, double t);

// Least-squares packet coefficients of an arbitrary packet in the
// retained subspace (overlap vector whitened and mapped back).
Eigen::VectorXcd least_squares_coefficients(const BasisSet& basis,
                                            const SubspaceTransform& transform,
                                            const GeneralizedGaussian& target);

// Samples sum_n coeffs[n] * packets[n] at the given points.
std::vector<cplx> reconstruct(const std::vector<GeneralizedGaussian>& packets,
                              const Eigen::VectorXcd& coeffs,
                              const std::vector<double>& xs);

}  // namespace wpb
