#include "wpb/grid.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "wpb/errors.hpp"
#include "wpb/fft.hpp"
#include "wpb/kernels.hpp"

namespace wpb {

namespace {

void check_spec(const GridSpec& spec) {
  if (!(spec.x_max > spec.x_min)) throw std::invalid_argument("grid: x_max must exceed x_min");
  if (spec.n_points < 16) throw std::invalid_argument("grid: n_points must be >= 16");
  if (!(spec.dt > 0.0)) throw std::invalid_argument("grid: dt must be positive");
}

void check_same_spec(const GridState& a, const GridState& b) {
  if (!(a.spec == b.spec)) throw std::invalid_argument("grid: mismatched grid specs");
}

// Signed momentum of FFT bin j.
double momentum_of_bin(const GridSpec& spec, int j) {
  const double dk = 2.0 * kPi / (spec.x_max - spec.x_min);
  const int half = spec.n_points / 2;
  const int q = j < half ? j : j - spec.n_points;
  return dk * q;
}

std::vector<double> kinetic_energies(const GridSpec& spec, double m) {
  std::vector<double> e(static_cast<std::size_t>(spec.n_points));
  for (int j = 0; j < spec.n_points; ++j) {
    const double k = momentum_of_bin(spec, j);
    e[static_cast<std::size_t>(j)] = k * k / (2.0 * m);
  }
  return e;
}

std::vector<cplx> phase_table(const std::vector<double>& values, cplx factor) {
  std::vector<cplx> t(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) t[i] = std::exp(factor * values[i]);
  return t;
}

std::vector<double> potential_samples(const PotentialSpec& pot, const GridSpec& spec) {
  std::vector<double> v(static_cast<std::size_t>(spec.n_points));
  for (int j = 0; j < spec.n_points; ++j) v[static_cast<std::size_t>(j)] = value(pot, spec.x(j));
  return v;
}

// Shared split-step driver; one Strang step is exp(f V dt/2) F^-1
// exp(f T dt) F exp(f V dt/2) with f = -i in real time and f = -1 in
// imaginary time. Adjacent potential half-steps are merged, and the
// phase tables are cached per block of equal dt (the final partial step
// gets its own block). Imaginary-time flows decay, so the state is
// renormalized in chunks and the cumulative log scale returned.
double split_step_evolve(GridState& s, const PotentialSpec& pot, double total,
                         cplx unit_factor, bool rescale_chunks) {
  const auto& k = kernels::ops();
  const std::size_t un = static_cast<std::size_t>(s.spec.n_points);
  const double dx = s.spec.dx();
  Fft plan(un);

  const auto v = potential_samples(pot, s.spec);
  const auto t = kinetic_energies(s.spec, pot.m);

  double log_scale = 0.0;
  long steps_done = 0;
  const double norm0_sq = k.sumsq(s.amplitudes.data(), un) * dx;

  const double dt_main = s.spec.dt;
  long n_full = static_cast<long>(std::floor(total / dt_main + 1e-12));
  double rem = total - static_cast<double>(n_full) * dt_main;
  if (rem < 1e-12 * std::max(dt_main, total)) rem = 0.0;

  const auto run_block = [&](double dt, long steps) {
    if (steps <= 0) return;
    const auto v_half = phase_table(v, 0.5 * dt * unit_factor);
    const auto v_full = phase_table(v, dt * unit_factor);
    const auto t_full = phase_table(t, dt * unit_factor);
    k.cmul_inplace(s.amplitudes.data(), v_half.data(), un);
    for (long i = 0; i < steps; ++i) {
      plan.forward(s.amplitudes.data());
      k.cmul_inplace(s.amplitudes.data(), t_full.data(), un);
      plan.inverse(s.amplitudes.data());
      const bool last = i + 1 == steps;
      k.cmul_inplace(s.amplitudes.data(), (last ? v_half : v_full).data(), un);
      ++steps_done;
      if (rescale_chunks && steps_done % 50 == 0) {
        const double nrm = std::sqrt(k.sumsq(s.amplitudes.data(), un) * dx);
        if (nrm > 0.0) {
          log_scale += std::log(nrm);
          k.cscale(s.amplitudes.data(), cplx{1.0 / nrm, 0.0}, un);
        }
      }
      if (!rescale_chunks && steps_done % 1000 == 0) {
        const double nrm_sq = k.sumsq(s.amplitudes.data(), un) * dx;
        if (std::abs(nrm_sq / norm0_sq - 1.0) > 1e-6) {
          throw step_size_error("evolve_real_time: norm drift beyond 1e-6");
        }
      }
    }
  };
  run_block(dt_main, n_full);
  run_block(rem, rem > 0.0 ? 1 : 0);
  return log_scale;
}

}  // namespace

GridState init_from_packet(const GeneralizedGaussian& g, const GridSpec& spec) {
  check_spec(spec);
  GridState s;
  s.spec = spec;
  s.amplitudes.resize(static_cast<std::size_t>(spec.n_points));
  for (int j = 0; j < spec.n_points; ++j) {
    s.amplitudes[static_cast<std::size_t>(j)] = evaluate(g, spec.x(j));
  }
  const double nrm = norm(s);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw domain_too_small_error("init_from_packet: packet vanishes on the grid");
  }
  kernels::ops().cscale(s.amplitudes.data(), cplx{1.0 / nrm, 0.0}, s.amplitudes.size());
  const double edge = std::max(std::abs(s.amplitudes.front()),
                               std::abs(evaluate(g, spec.x_max)) / nrm);
  if (edge >= 1e-12) {
    throw domain_too_small_error(
        "init_from_packet: packet has support at the grid boundary");
  }
  return s;
}

GridState evolve_real_time(const GridState& s, const PotentialSpec& pot,
                           double t_total) {
  check_spec(s.spec);
  if (t_total < 0.0) throw std::invalid_argument("evolve_real_time: t_total must be >= 0");
  GridState out = s;
  if (t_total == 0.0) return out;
  split_step_evolve(out, pot, t_total, cplx{0.0, -1.0}, false);
  return out;
}

GridState evolve_imag_time(const GridState& s, const PotentialSpec& pot,
                           double tau, bool renormalize) {
  check_spec(s.spec);
  if (tau < 0.0) throw std::invalid_argument("evolve_imag_time: tau must be >= 0");
  GridState out = s;
  if (tau == 0.0) return out;
  const double log_scale = split_step_evolve(out, pot, tau, cplx{-1.0, 0.0}, true);
  const std::size_t un = out.amplitudes.size();
  if (renormalize) {
    const double nrm = norm(out);
    if (!(nrm > 0.0)) throw decay_underflow_error("evolve_imag_time: state decayed to zero");
    kernels::ops().cscale(out.amplitudes.data(), cplx{1.0 / nrm, 0.0}, un);
    return out;
  }
  const double log_norm = log_scale + std::log(std::max(norm(out), 1e-308));
  if (log_norm < std::log(1e-300)) {
    throw decay_underflow_error("evolve_imag_time: norm underflow below 1e-300");
  }
  kernels::ops().cscale(out.amplitudes.data(), cplx{std::exp(log_scale), 0.0}, un);
  return out;
}

std::vector<Eigenpair> lowest_eigenpairs(const PotentialSpec& pot,
                                         const GridSpec& spec, int k) {
  check_spec(spec);
  if (k < 1) throw std::invalid_argument("lowest_eigenpairs: k must be >= 1");
  if (k > spec.n_points / 4) {
    throw std::invalid_argument("lowest_eigenpairs: k too large for this grid");
  }
  if (spec.n_points > 2048) {
    throw std::invalid_argument("lowest_eigenpairs: dense path limited to n_points <= 2048");
  }
  const int n = spec.n_points;
  const std::size_t un = static_cast<std::size_t>(n);

  // Kinetic operator as a circulant: row c_d = (IFFT of the spectral
  // kinetic energies)_d, exactly what F^-1 diag(k^2/2m) F applies.
  const auto t = kinetic_energies(spec, pot.m);
  std::vector<cplx> row(un);
  for (std::size_t j = 0; j < un; ++j) row[j] = cplx{t[j], 0.0};
  Fft plan(un);
  plan.inverse(row.data());

  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      h(i, j) = row[static_cast<std::size_t>(((i - j) % n + n) % n)].real();
    }
    h(i, i) += value(pot, spec.x(i));
  }
  h = 0.5 * (h + h.transpose().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) {
    throw numerical_error("lowest_eigenpairs: eigensolver failed");
  }

  const double dx = spec.dx();
  std::vector<Eigenpair> pairs;
  pairs.reserve(static_cast<std::size_t>(k));
  for (int e = 0; e < k; ++e) {
    Eigenpair p;
    p.energy = es.eigenvalues()(e);
    p.state.spec = spec;
    p.state.amplitudes.resize(un);
    Eigen::VectorXd v = es.eigenvectors().col(e);
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;  // deterministic sign
    for (int j = 0; j < n; ++j) {
      p.state.amplitudes[static_cast<std::size_t>(j)] = cplx{v(j) / std::sqrt(dx), 0.0};
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

GridState apply_hamiltonian(const GridState& s, const PotentialSpec& pot) {
  check_spec(s.spec);
  const std::size_t un = s.amplitudes.size();
  GridState kin = s;
  Fft plan(un);
  plan.forward(kin.amplitudes.data());
  const auto t = kinetic_energies(s.spec, pot.m);
  for (std::size_t j = 0; j < un; ++j) kin.amplitudes[j] *= t[j];
  plan.inverse(kin.amplitudes.data());
  GridState out = s;
  for (std::size_t j = 0; j < un; ++j) {
    out.amplitudes[j] = kin.amplitudes[j] +
                        value(pot, s.spec.x(static_cast<int>(j))) * s.amplitudes[j];
  }
  return out;
}

double norm(const GridState& s) {
  return std::sqrt(kernels::ops().sumsq(s.amplitudes.data(), s.amplitudes.size()) *
                   s.spec.dx());
}

double expectation_x(const GridState& s) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < s.amplitudes.size(); ++j) {
    const double w = std::norm(s.amplitudes[j]);
    num += w * s.spec.x(static_cast<int>(j));
    den += w;
  }
  if (den == 0.0) throw std::invalid_argument("expectation_x: zero state");
  return num / den;
}

double l2_error(const GridState& a, const GridState& b) {
  check_same_spec(a, b);
  double acc = 0.0;
  for (std::size_t j = 0; j < a.amplitudes.size(); ++j) {
    acc += std::norm(a.amplitudes[j] - b.amplitudes[j]);
  }
  return std::sqrt(acc * a.spec.dx());
}

cplx inner_product(const GridState& a, const GridState& b) {
  check_same_spec(a, b);
  return kernels::ops().cdotc(a.amplitudes.data(), b.amplitudes.data(),
                              a.amplitudes.size()) *
         a.spec.dx();
}

double rayleigh_quotient(const GridState& s, const PotentialSpec& pot) {
  const GridState hs = apply_hamiltonian(s, pot);
  const cplx num = inner_product(s, hs);
  const cplx den = inner_product(s, s);
  return (num / den).real();
}

}  // namespace wpb
