#include "ncosc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ncosc/errors.hpp"

namespace ncosc {

namespace {

constexpr double kMinSchrodingerExtent = 6.0;
constexpr double kMinPointsPerLength = 8.0;
// Below this |E_S| the route agreement is judged in absolute terms
// (threshold * floor).
constexpr double kEsScaleFloor = 1e-5;

// Antisymmetric 8th-order first-derivative stencil, offsets 1..4.
constexpr std::array<double, 4> kD1 = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
constexpr int kD1Reach = 4;

template <class F>
auto with_context(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const ConfigurationError& e) {
    throw ConfigurationError(stage + ": " + e.what());
  } catch (const SingularConfigurationError& e) {
    throw SingularConfigurationError(stage + ": " + e.what());
  } catch (const IllConditionedError& e) {
    throw IllConditionedError(stage + ": " + e.what());
  } catch (const InconsistencyError& e) {
    throw InconsistencyError(stage + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(stage + ": " + e.what());
  }
}

Eigen::Matrix2cd exponent_matrix(const TwoModeGaussian& s) {
  Eigen::Matrix2cd m;
  m << s.alpha, s.gamma, s.gamma, s.beta;
  return m;
}

// Sampled psi = exp(-x^T L x / 2) with per-axis node coordinates.
struct SampledState {
  int n = 0;
  std::vector<double> x1, x2;
  double h1 = 0.0, h2 = 0.0;
  std::vector<complex> psi;  // psi[i * n + j] at (x1[i], x2[j])

  complex& at(int i, int j) { return psi[static_cast<std::size_t>(i) * n + j]; }
  const complex& at(int i, int j) const { return psi[static_cast<std::size_t>(i) * n + j]; }
};

// Characteristic lengths sqrt((Re L)^{-1}_aa): 1/e half-widths of the
// marginals of |psi|^2.
std::array<double, 2> characteristic_lengths(const Eigen::Matrix2cd& lam) {
  const Eigen::Matrix2d re = lam.real();
  const double det = re.determinant();
  if (!(re(0, 0) > 0.0) || !(det > 0.0)) {
    throw DomainError("state is not normalizable (Re Lambda not positive definite)");
  }
  return {std::sqrt(re(1, 1) / det), std::sqrt(re(0, 0) / det)};
}

SampledState sample(const Eigen::Matrix2cd& lam, const GridSpec& grid) {
  const auto len = characteristic_lengths(lam);
  SampledState s;
  s.n = grid.points_per_axis;
  s.h1 = grid.spacing() * len[0];
  s.h2 = grid.spacing() * len[1];
  s.x1.resize(s.n);
  s.x2.resize(s.n);
  for (int i = 0; i < s.n; ++i) {
    s.x1[i] = -grid.extent * len[0] + i * s.h1;
    s.x2[i] = -grid.extent * len[1] + i * s.h2;
  }
  s.psi.resize(static_cast<std::size_t>(s.n) * s.n);
  const complex l11 = lam(0, 0), l22 = lam(1, 1), l12 = lam(0, 1);
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.n; ++j) {
      const double a = s.x1[i], b = s.x2[j];
      s.at(i, j) = std::exp(-0.5 * (l11 * a * a + l22 * b * b + 2.0 * l12 * a * b));
    }
  }
  return s;
}

double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

// 8th-order d/dx_axis; zero within kD1Reach nodes of the edge.
std::vector<complex> derivative(const SampledState& s, int axis) {
  const int n = s.n;
  const double h = axis == 0 ? s.h1 : s.h2;
  std::vector<complex> d(s.psi.size(), complex{});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int pos = axis == 0 ? i : j;
      if (pos < kD1Reach || pos >= n - kD1Reach) continue;
      complex acc{};
      for (int k = 1; k <= kD1Reach; ++k) {
        const complex fwd = axis == 0 ? s.at(i + k, j) : s.at(i, j + k);
        const complex bwd = axis == 0 ? s.at(i - k, j) : s.at(i, j - k);
        acc += kD1[k - 1] * (fwd - bwd);
      }
      d[static_cast<std::size_t>(i) * n + j] = acc / h;
    }
  }
  return d;
}

}  // namespace

void GridSpec::validate() const {
  if (points_per_axis < kMinPoints) {
    throw ConfigurationError("grid needs at least " + std::to_string(kMinPoints) +
                             " points per axis, got " + std::to_string(points_per_axis));
  }
  if (!std::isfinite(extent) || !(extent > 0.0)) {
    throw ConfigurationError("grid extent must be positive");
  }
}

std::array<complex, 4> numeric_eigenvalues(const Eigen::Matrix4d& matrix) {
  if (!matrix.allFinite()) throw DomainError("matrix has non-finite entries");
  Eigen::EigenSolver<Eigen::Matrix4d> solver(matrix, false);
  if (solver.info() != Eigen::Success) throw IllConditionedError("eigensolver did not converge");
  std::array<complex, 4> ev;
  for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()(i);
  std::sort(ev.begin(), ev.end(), [](const complex& a, const complex& b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  return ev;
}

double eigenvalue_mismatch(const std::array<complex, 4>& ev, const ModeSpectrum& spectrum) {
  const double s1 = spectrum.sigma1, s2 = spectrum.sigma2;
  double worst = std::max({std::abs(-ev[0].imag() - s1) / s1, std::abs(-ev[1].imag() - s2) / s2,
                           std::abs(ev[2].imag() - s2) / s2, std::abs(ev[3].imag() - s1) / s1});
  for (const complex& e : ev) worst = std::max(worst, std::abs(e.real()) / s1);
  return worst;
}

double schrodinger_residual(const OscillatorParams& params, const GroundStateLambda& lambda,
                            const GridSpec& grid) {
  grid.validate();
  if (grid.extent < kMinSchrodingerExtent) {
    std::ostringstream msg;
    msg << "Schroedinger residual needs extent >= " << kMinSchrodingerExtent
        << " characteristic lengths, got " << grid.extent;
    throw ConfigurationError(msg.str());
  }
  const CanonicalSystem sys = bopp_shift(params);
  const ModeSpectrum spectrum = mode_spectrum(params);
  const double e00 = energy_level(spectrum, 0, 0);

  const SampledState s = sample(exponent_matrix(ground_state_as_gaussian(lambda)), grid);
  const int n = s.n;
  const double kin1 = 0.5 / sys.big_m1, kin2 = 0.5 / sys.big_m2;
  const double pot1 = 0.5 * sys.big_m1 * sys.omega1_sq;
  const double pot2 = 0.5 * sys.big_m2 * sys.omega2_sq;
  const double ta1 = params.theta * params.alpha1, ta2 = params.theta * params.alpha2;
  const complex minus_i{0.0, -1.0};

  double res_sq = 0.0, norm_sq = 0.0;
  for (int i = 1; i < n - 1; ++i) {
    for (int j = 1; j < n - 1; ++j) {
      const complex c = s.at(i, j);
      const complex d11 = (s.at(i + 1, j) - 2.0 * c + s.at(i - 1, j)) / (s.h1 * s.h1);
      const complex d22 = (s.at(i, j + 1) - 2.0 * c + s.at(i, j - 1)) / (s.h2 * s.h2);
      const complex p1 = minus_i * (s.at(i + 1, j) - s.at(i - 1, j)) / (2.0 * s.h1);
      const complex p2 = minus_i * (s.at(i, j + 1) - s.at(i, j - 1)) / (2.0 * s.h2);
      const double x1 = s.x1[i], x2 = s.x2[j];
      const complex h_psi = -kin1 * d11 - kin2 * d22 + (pot1 * x1 * x1 + pot2 * x2 * x2) * c -
                            (ta1 * x1 * p2 - ta2 * x2 * p1);
      res_sq += std::norm(h_psi - e00 * c);
      norm_sq += std::norm(c);
    }
  }
  return std::sqrt(res_sq / norm_sq);
}

ConvergenceStudy schrodinger_convergence(const OscillatorParams& params,
                                         const GroundStateLambda& lambda, double extent,
                                         int coarsest_points, int refinements) {
  ConvergenceStudy study;
  int points = coarsest_points;
  for (int k = 0; k <= refinements; ++k) {
    study.points.push_back(points);
    study.residuals.push_back(schrodinger_residual(params, lambda, GridSpec{extent, points}));
    points = 2 * (points - 1) + 1;
  }
  for (std::size_t k = 0; k + 1 < study.residuals.size(); ++k) {
    study.orders.push_back(std::log2(study.residuals[k] / study.residuals[k + 1]));
  }
  return study;
}

double gaussian_norm_quadrature(const TwoModeGaussian& state, const GridSpec& grid) {
  grid.validate();
  const SampledState s = sample(exponent_matrix(state), grid);
  double total = 0.0;
  for (int i = 0; i < s.n; ++i) {
    for (int j = 0; j < s.n; ++j) {
      total += trapezoid_weight(i, s.n) * trapezoid_weight(j, s.n) * std::norm(s.at(i, j));
    }
  }
  return total * s.h1 * s.h2;
}

CovarianceBlocks gaussian_moment_quadrature(const TwoModeGaussian& state, const GridSpec& grid) {
  grid.validate();
  check_normalizable(state);
  const Eigen::Matrix2cd lam = exponent_matrix(state);
  const auto len = characteristic_lengths(lam);

  const double per_length = (grid.points_per_axis - 1) / (2.0 * grid.extent);
  if (per_length < kMinPointsPerLength) {
    std::ostringstream msg;
    msg << "grid under-resolves the state: " << per_length
        << " points per characteristic length, need " << kMinPointsPerLength;
    throw ConfigurationError(msg.str());
  }
  // Typical local wavenumber of psi one characteristic length out; the
  // matching wavelength 2 pi / k must also get 8 points.
  for (int a = 0; a < 2; ++a) {
    const int b = 1 - a;
    const double wavenumber = std::abs(lam(a, a)) * len[a] + std::abs(lam(a, b)) * len[b];
    const double h = grid.spacing() * len[a];
    if (h * wavenumber > 2.0 * std::numbers::pi / kMinPointsPerLength) {
      std::ostringstream msg;
      msg << "grid under-resolves the phase of the state along axis " << a + 1
          << " (h * k = " << h * wavenumber << ")";
      throw ConfigurationError(msg.str());
    }
  }

  const SampledState s = sample(lam, grid);
  const std::vector<complex> d1 = derivative(s, 0);
  const std::vector<complex> d2 = derivative(s, 1);
  const complex minus_i{0.0, -1.0};

  double norm = 0.0, x11 = 0.0, x22 = 0.0, x12 = 0.0;
  double p11 = 0.0, p22 = 0.0, p12 = 0.0;
  double x1p1 = 0.0, x2p2 = 0.0, x1p2 = 0.0, x2p1 = 0.0;
  const int n = s.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      const double w = trapezoid_weight(i, n) * trapezoid_weight(j, n);
      const complex psi = s.psi[k];
      const complex pp1 = minus_i * d1[k];
      const complex pp2 = minus_i * d2[k];
      const double dens = std::norm(psi);
      const double a = s.x1[i], b = s.x2[j];
      norm += w * dens;
      x11 += w * a * a * dens;
      x22 += w * b * b * dens;
      x12 += w * a * b * dens;
      p11 += w * std::norm(pp1);
      p22 += w * std::norm(pp2);
      p12 += w * (std::conj(pp1) * pp2).real();
      x1p1 += w * a * (std::conj(psi) * pp1).real();
      x2p2 += w * b * (std::conj(psi) * pp2).real();
      x1p2 += w * a * (std::conj(psi) * pp2).real();
      x2p1 += w * b * (std::conj(psi) * pp1).real();
    }
  }
  CovarianceBlocks cov;
  cov.a_block << x11, x1p1, x1p1, p11;
  cov.b_block << x22, x2p2, x2p2, p22;
  cov.c_block << x12, x1p2, x2p1, p12;
  cov.a_block /= norm;
  cov.b_block /= norm;
  cov.c_block /= norm;
  return cov;
}

double covariance_mismatch(const CovarianceBlocks& q, const CovarianceBlocks& c) {
  const double sx1 = std::sqrt(c.x1x1()), sx2 = std::sqrt(c.x2x2());
  const double sp1 = std::sqrt(c.p1p1()), sp2 = std::sqrt(c.p2p2());
  const std::array<std::array<double, 3>, 10> entries = {{
      {q.x1x1(), c.x1x1(), sx1 * sx1},
      {q.p1p1(), c.p1p1(), sp1 * sp1},
      {q.x1p1(), c.x1p1(), sx1 * sp1},
      {q.x2x2(), c.x2x2(), sx2 * sx2},
      {q.p2p2(), c.p2p2(), sp2 * sp2},
      {q.x2p2(), c.x2p2(), sx2 * sp2},
      {q.x1x2(), c.x1x2(), sx1 * sx2},
      {q.x1p2(), c.x1p2(), sx1 * sp2},
      {q.x2p1(), c.x2p1(), sx2 * sp1},
      {q.p1p2(), c.p1p2(), sp1 * sp2},
  }};
  double worst = 0.0;
  for (const auto& [num, exact, scale] : entries) {
    worst = std::max(worst, std::abs(num - exact) / scale);
  }
  return worst;
}

ValidationReport run_validation(const OscillatorParams& params, const GridSpec& grid,
                                const ValidationOptions& options) {
  params.validate();
  grid.validate();
  ValidationReport report;

  const ModeSpectrum spectrum =
      with_context("spectrum", [&] { return mode_spectrum(params, options.tolerance); });
  report.e00 = energy_level(spectrum, 0, 0);

  report.eigen_residual = with_context("eigen oracle", [&] {
    return eigenvalue_mismatch(numeric_eigenvalues(build_omega_matrix(params)), spectrum);
  });

  GroundStateLambda lambda =
      with_context("closed-form Lambda", [&] { return ground_state_lambda_closed(params, spectrum); });
  if (options.lambda_hook) lambda = options.lambda_hook(lambda);

  report.schrodinger_residual = with_context(
      "Schroedinger oracle", [&] { return schrodinger_residual(params, lambda, grid); });

  const TwoModeGaussian state = ground_state_as_gaussian(lambda);
  report.moment_max_err = with_context("moment oracle", [&] {
    return covariance_mismatch(gaussian_moment_quadrature(state, grid), covariance_blocks(state));
  });

  report.e_s = es_closed_form(params);
  std::vector<double> routes{report.e_s,
                             with_context("covariance route",
                                          [&] { return simon_es(covariance_blocks(state)); })};
  if (!spectrum.degenerate) {
    routes.push_back(with_context("numeric Lambda route", [&] {
      const GroundStateLambda numeric = ground_state_lambda_numeric(params, options.tolerance);
      return simon_es(covariance_blocks(ground_state_as_gaussian(numeric)));
    }));
  }
  double spread = 0.0, scale = 0.0;
  for (double a : routes) {
    scale = std::max(scale, std::abs(a));
    for (double b : routes) spread = std::max(spread, std::abs(a - b));
  }
  report.es_agreement = spread / std::max(scale, kEsScaleFloor);

  const ValidationThresholds& t = options.thresholds;
  if (!(report.eigen_residual <= t.eigen)) report.failures.push_back("eigen_residual");
  if (!(report.schrodinger_residual <= t.schrodinger))
    report.failures.push_back("schrodinger_residual");
  if (!(report.moment_max_err <= t.moments)) report.failures.push_back("moment_max_err");
  if (!(report.es_agreement <= t.es_agreement)) report.failures.push_back("es_agreement");
  report.passed = report.failures.empty();
  return report;
}

}  // namespace ncosc
