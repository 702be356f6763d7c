#include "wpb/brigade.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wpb/errors.hpp"
#include "wpb/kernels.hpp"
#include "wpb/propagators.hpp"

namespace wpb {

namespace {

bool finite(const GeneralizedGaussian& g) {
  return std::isfinite(g.center) && std::isfinite(g.momentum) &&
         std::isfinite(g.width.real()) && std::isfinite(g.width.imag()) &&
         std::isfinite(g.log_prefactor.real()) &&
         std::isfinite(g.log_prefactor.imag()) && g.width.real() > 0.0;
}

// Max |M - M^H| entry, the hermiticity defect of an assembled matrix.
double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void hermitize_checked(Eigen::MatrixXcd& m, const char* what) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (hermiticity_defect(m) >= 1e-9 * scale) {
    throw numerical_error(std::string(what) + ": hermiticity defect above 1e-9");
  }
  m = 0.5 * (m + m.adjoint()).eval();
}

}  // namespace

std::vector<GeneralizedGaussian> generate_trajectory_basis(
    const GeneralizedGaussian& g0, const PotentialSpec& pot,
    const BrigadeConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("brigade: dt must be positive");
  if (cfg.n_steps < 1) throw std::invalid_argument("brigade: n_steps must be >= 1");

  std::vector<GeneralizedGaussian> traj;
  traj.reserve(static_cast<std::size_t>(cfg.n_steps) + 1);
  traj.push_back(g0);
  GeneralizedGaussian g = g0;
  for (int k = 0; k < cfg.n_steps; ++k) {
    EffectiveQuadraticParams params = effective_quadratic(pot, g);
    // Remove the width-broadened part of the constant that the quadratic
    // term reproduces on average, so <H_local> = <H> for the packet the
    // expansion was made about.
    params.v_n -= params.m_omega_sq / (4.0 * g.width.real());
    g = driven_harmonic_step(g, params, cfg.dt, cfg.renormalize_each_step);
    if (!finite(g)) {
      throw numerical_error("generate_trajectory_basis: non-finite packet at step " +
                            std::to_string(k + 1));
    }
    traj.push_back(g);
  }
  return traj;
}

BasisSet assemble_matrices(const std::vector<GeneralizedGaussian>& packets,
                           const PotentialSpec& pot) {
  if (packets.empty()) throw std::invalid_argument("assemble_matrices: empty packet list");
  const int n = static_cast<int>(packets.size());
  const auto coeff = polynomial_coefficients(pot);

  BasisSet basis;
  basis.packets = packets;
  basis.gram.resize(n, n);
  basis.hamiltonian.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto pi = pair_integrals(packets[static_cast<std::size_t>(i)],
                                     packets[static_cast<std::size_t>(j)], pot.m);
      cplx h = pi.kinetic;
      for (int k = 0; k <= 4; ++k) {
        if (coeff[static_cast<std::size_t>(k)] != 0.0) {
          h += coeff[static_cast<std::size_t>(k)] * pi.moments[static_cast<std::size_t>(k)];
        }
      }
      basis.gram(i, j) = pi.overlap;
      basis.hamiltonian(i, j) = h;
    }
  }
  hermitize_checked(basis.gram, "assemble_matrices(gram)");
  hermitize_checked(basis.hamiltonian, "assemble_matrices(hamiltonian)");
  return basis;
}

SubspaceTransform significant_subspace(const BasisSet& basis, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("significant_subspace: eps must be in (0, 1)");
  }
  const int n = static_cast<int>(basis.packets.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(basis.gram);
  if (es.info() != Eigen::Success) {
    throw numerical_error("significant_subspace: eigensolver failed");
  }
  const double lambda_max = es.eigenvalues().maxCoeff();

  SubspaceTransform t;
  std::vector<int> keep;
  for (int i = n - 1; i >= 0; --i) {  // descending eigenvalue order
    const double lambda = es.eigenvalues()(i);
    if (lambda > eps * lambda_max && lambda > 0.0) {
      keep.push_back(i);
    } else {
      t.discarded_eigenvalues.push_back(lambda);
    }
  }
  if (keep.empty()) {
    throw degenerate_basis_error("significant_subspace: no modes above the cutoff");
  }
  t.retained_modes = static_cast<int>(keep.size());
  t.matrix.resize(n, t.retained_modes);
  for (int c = 0; c < t.retained_modes; ++c) {
    const int i = keep[static_cast<std::size_t>(c)];
    t.matrix.col(c) = es.eigenvectors().col(i) / std::sqrt(es.eigenvalues()(i));
  }
  return t;
}

Eigen::MatrixXcd projected_hamiltonian(const BasisSet& basis,
                                       const SubspaceTransform& transform) {
  Eigen::MatrixXcd h = transform.matrix.adjoint() * basis.hamiltonian * transform.matrix;
  h = 0.5 * (h + h.adjoint()).eval();
  return h;
}

Eigen::VectorXcd project_and_exponentiate(const BasisSet& basis,
                                          const SubspaceTransform& transform,
                                          const Eigen::VectorXcd& init, double t) {
  if (init.size() != static_cast<Eigen::Index>(basis.packets.size())) {
    throw std::invalid_argument("project_and_exponentiate: coefficient length mismatch");
  }
  if (!std::isfinite(t)) {
    throw std::invalid_argument("project_and_exponentiate: t must be finite");
  }
  const Eigen::MatrixXcd h = projected_hamiltonian(basis, transform);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw numerical_error("project_and_exponentiate: eigensolver failed");
  }
  const Eigen::VectorXcd a0 = transform.matrix.adjoint() * (basis.gram * init);
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(cplx{0.0, -t * es.eigenvalues()(i)});
  }
  const Eigen::VectorXcd at =
      es.eigenvectors() * phases.asDiagonal() * (es.eigenvectors().adjoint() * a0);
  return transform.matrix * at;
}

Eigen::VectorXcd least_squares_coefficients(const BasisSet& basis,
                                            const SubspaceTransform& transform,
                                            const GeneralizedGaussian& target) {
  const int n = static_cast<int>(basis.packets.size());
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = overlap(basis.packets[static_cast<std::size_t>(i)], target);
  }
  return transform.matrix * (transform.matrix.adjoint() * v);
}

std::vector<cplx> reconstruct(const std::vector<GeneralizedGaussian>& packets,
                              const Eigen::VectorXcd& coeffs,
                              const std::vector<double>& xs) {
  if (coeffs.size() != static_cast<Eigen::Index>(packets.size())) {
    throw std::invalid_argument("reconstruct: coefficient length mismatch");
  }
  std::vector<cplx> out(xs.size(), cplx{0.0, 0.0});
  std::vector<cplx> scratch(xs.size());
  for (std::size_t nidx = 0; nidx < packets.size(); ++nidx) {
    const cplx c = coeffs(static_cast<Eigen::Index>(nidx));
    if (c == cplx{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      scratch[j] = evaluate(packets[nidx], xs[j]);
    }
    kernels::ops().caxpy(out.data(), c, scratch.data(), out.size());
  }
  return out;
}

}  // namespace wpb
