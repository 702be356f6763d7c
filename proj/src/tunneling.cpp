#include "wpb/tunneling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wpb/errors.hpp"
#include "wpb/kernels.hpp"

namespace wpb {

namespace {

void require_double_well(const PotentialSpec& pot) {
  if (pot.kind != PotentialKind::kDoubleWell) {
    throw std::invalid_argument("tunneling: potential must be a double well");
  }
}

// Adaptive Simpson for smooth real integrands.
double simpson(double fa, double fm, double fb, double a, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adapt(const F& f, double a, double b, double fa, double fm, double fb,
             double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, a, m);
  const double right = simpson(fm, frm, fb, m, b);
  const double sum = left + right;
  if (depth <= 0 || std::abs(sum - whole) < 15.0 * tol) {
    return sum + (sum - whole) / 15.0;
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adapt(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 32);
}

}  // namespace

std::pair<StationaryWell, StationaryWell> find_stationary_gaussians(
    const PotentialSpec& pot) {
  require_double_well(pot);
  const double m = pot.m, lambda = pot.lambda, f = pot.f;

  // Start from the single-well harmonic width m*omega_well and iterate
  //   c(gamma)^2 = f^2 - 3/(2 gamma)      (force balance)
  //   gamma <- sqrt(m <V''(x + c)>)       (width consistency)
  // with damping 1/2.
  double gamma = std::sqrt(8.0 * lambda * m * f * f);
  bool converged = false;
  for (int it = 0; it < 10000; ++it) {
    const double c_sq = f * f - 1.5 / gamma;
    if (c_sq <= 0.0) {
      throw no_stationary_solution_error(
          "find_stationary_gaussians: wells too shallow for a stationary width");
    }
    const double curvature = gaussian_average(pot, 2, std::sqrt(c_sq), gamma);
    if (curvature <= 0.0) {
      throw no_stationary_solution_error(
          "find_stationary_gaussians: averaged curvature not positive");
    }
    const double target = std::sqrt(m * curvature);
    const double next = gamma + 0.5 * (target - gamma);
    if (std::abs(next - gamma) <= 4e-16 * gamma) {
      gamma = target;
      converged = true;
      break;
    }
    gamma = next;
  }
  if (!converged) {
    throw no_stationary_solution_error("find_stationary_gaussians: no convergence in 1e4 iterations");
  }
  const double c = std::sqrt(f * f - 1.5 / gamma);
  StationaryWell left{-c, gamma, StationaryWell::Side::kLeft};
  StationaryWell right{c, gamma, StationaryWell::Side::kRight};
  return {left, right};
}

GeneralizedGaussian well_packet(const StationaryWell& well) {
  return GeneralizedGaussian::normalized(well.center, 0.0, {well.width, 0.0});
}

InstantonPath instanton_trajectory(const PotentialSpec& pot,
                                   const StationaryWell& well, int n_samples) {
  require_double_well(pot);
  if (n_samples < 3) throw std::invalid_argument("instanton_trajectory: n_samples must be >= 3");

  const double c = std::abs(well.center);
  const double m = pot.m;
  const double v0 = value(pot, c);
  const double barrier = value(pot, 0.0) - v0;
  if (!(barrier > 0.0)) {
    throw no_instanton_error("instanton_trajectory: no barrier above the endpoints");
  }
  for (int i = 1; i < 64; ++i) {
    const double x = -c + 2.0 * c * i / 64.0;
    if (value(pot, x) - v0 <= 0.0) {
      throw no_instanton_error("instanton_trajectory: V - V(c) not positive in the interior");
    }
  }

  // Endpoint offset: V(c - delta) - V(c) = 1e-8 * barrier (bisection).
  double lo = 0.0, hi = c;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (value(pot, c - mid) - v0 < 1e-8 * barrier ? lo : hi) = mid;
  }
  const double delta = 0.5 * (lo + hi);
  const double edge = c - delta;

  const auto speed = [&](double x) {
    return std::sqrt(std::max(0.0, 2.0 / m * (value(pot, x) - v0)));
  };
  const auto inv_speed = [&](double x) { return 1.0 / speed(x); };

  // Uniform-in-x samples, built symmetrically so that reflecting
  // x -> -x, tau -> -tau reproduces the path exactly.
  InstantonPath path;
  path.samples.resize(static_cast<std::size_t>(n_samples));
  const int n = n_samples;
  const double step = 2.0 * edge / (n - 1);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    const double x_right = edge - i * step;  // from +edge toward the middle
    const int hi_idx = n - 1 - i;
    path.samples[static_cast<std::size_t>(hi_idx)].x = x_right;
    path.samples[static_cast<std::size_t>(i)].x = -x_right;
  }
  if (n % 2 == 1) path.samples[static_cast<std::size_t>(n / 2)].x = 0.0;

  // tau by quadrature from the midpoint outward over the positive side.
  double tau_acc = 0.0;
  double x_prev = 0.0;
  for (int i = n / 2 + (n % 2 == 0 ? 0 : 1); i < n; ++i) {
    const double x_i = path.samples[static_cast<std::size_t>(i)].x;
    tau_acc += integrate(inv_speed, x_prev, x_i, 1e-12);
    x_prev = x_i;
    path.samples[static_cast<std::size_t>(i)].tau = tau_acc;
    path.samples[static_cast<std::size_t>(n - 1 - i)].tau = -tau_acc;
  }
  for (auto& s : path.samples) {
    s.p = m * speed(std::abs(s.x));
  }
  return path;
}

std::vector<GeneralizedGaussian> instanton_basis(const InstantonPath& path,
                                                 double gamma, MomentumMode mode) {
  if (!(gamma > 0.0)) throw std::invalid_argument("instanton_basis: gamma must be positive");
  std::vector<GeneralizedGaussian> packets;
  packets.reserve(path.samples.size());
  for (const auto& s : path.samples) {
    const double p = mode == MomentumMode::kWithMomentum ? s.p : 0.0;
    packets.push_back(GeneralizedGaussian::normalized(s.x, p, {gamma, 0.0}));
  }
  return packets;
}

std::vector<GeneralizedGaussian> instanton_augmented_basis(
    const PotentialSpec& pot,
    const std::pair<StationaryWell, StationaryWell>& wells, int n_path,
    MomentumMode mode) {
  const auto path = instanton_trajectory(pot, wells.first, n_path);
  std::vector<GeneralizedGaussian> packets;
  packets.reserve(static_cast<std::size_t>(n_path) + 2);
  packets.push_back(well_packet(wells.first));
  const auto bridge = instanton_basis(path, wells.first.width, mode);
  packets.insert(packets.end(), bridge.begin(), bridge.end());
  packets.push_back(well_packet(wells.second));
  return packets;
}

Eigen::MatrixXcd smoothed_hamiltonian(const std::vector<GeneralizedGaussian>& packets,
                                      const PotentialSpec& pot, double t,
                                      const GridSpec& spec, double eps) {
  if (packets.empty()) throw std::invalid_argument("smoothed_hamiltonian: empty packet list");
  if (t < 0.0) throw std::invalid_argument("smoothed_hamiltonian: t must be >= 0");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("smoothed_hamiltonian: eps must be in (0, 1)");
  }
  const int n = static_cast<int>(packets.size());

  std::vector<GridState> smeared;
  smeared.reserve(static_cast<std::size_t>(n));
  double max_norm = 0.0;
  for (const auto& g : packets) {
    GridState s = init_from_packet(g, spec);
    if (t > 0.0) s = evolve_imag_time(s, pot, 0.5 * t, false);
    max_norm = std::max(max_norm, norm(s));
    smeared.push_back(std::move(s));
  }
  // One common rescale keeps the matrices well conditioned without
  // changing S^{-1/2} Htilde S^{-1/2}.
  if (max_norm > 0.0) {
    for (auto& s : smeared) {
      kernels::ops().cscale(s.amplitudes.data(), cplx{1.0 / max_norm, 0.0},
                            s.amplitudes.size());
    }
  }

  Eigen::MatrixXcd overlap_s(n, n), ham(n, n);
  std::vector<GridState> h_applied;
  h_applied.reserve(static_cast<std::size_t>(n));
  for (const auto& s : smeared) h_applied.push_back(apply_hamiltonian(s, pot));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      overlap_s(i, j) = inner_product(smeared[static_cast<std::size_t>(i)],
                                      smeared[static_cast<std::size_t>(j)]);
      ham(i, j) = inner_product(smeared[static_cast<std::size_t>(i)],
                                h_applied[static_cast<std::size_t>(j)]);
    }
  }
  overlap_s = 0.5 * (overlap_s + overlap_s.adjoint()).eval();
  ham = 0.5 * (ham + ham.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(overlap_s);
  if (es.info() != Eigen::Success) {
    throw numerical_error("smoothed_hamiltonian: eigensolver failed");
  }
  const double lambda_max = es.eigenvalues().maxCoeff();
  if (!(lambda_max > 0.0)) {
    throw degenerate_basis_error("smoothed_hamiltonian: smeared overlap matrix is null");
  }
  std::vector<int> keep;
  for (int i = n - 1; i >= 0; --i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda > eps * lambda_max && lambda > 0.0) keep.push_back(i);
  }
  if (keep.empty()) {
    throw degenerate_basis_error("smoothed_hamiltonian: overlap matrix singular beyond filtering");
  }
  Eigen::MatrixXcd w(n, static_cast<int>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const int i = keep[c];
    w.col(static_cast<int>(c)) = es.eigenvectors().col(i) / std::sqrt(es.eigenvalues()(i));
  }
  Eigen::MatrixXcd h = w.adjoint() * ham * w;
  h = 0.5 * (h + h.adjoint()).eval();
  return h;
}

SplittingResult splitting_and_transfer(const Eigen::MatrixXcd& h,
                                       const std::vector<int>& left_index_set,
                                       const std::vector<int>& right_index_set) {
  if (h.rows() < 2 || h.rows() != h.cols()) {
    throw std::invalid_argument("splitting_and_transfer: need a hermitian matrix with >= 2 modes");
  }
  for (const auto& set : {left_index_set, right_index_set}) {
    for (int idx : set) {
      if (idx < 0) throw std::invalid_argument("splitting_and_transfer: negative packet index");
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw numerical_error("splitting_and_transfer: eigensolver failed");
  }
  SplittingResult r;
  r.delta_e = es.eigenvalues()(1) - es.eigenvalues()(0);
  r.transfer_time = kPi / r.delta_e;
  return r;
}

}  // namespace wpb
