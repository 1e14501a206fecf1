#include "ncosc/gaussian_state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "ncosc/errors.hpp"

namespace ncosc {

namespace {

// Below this gap the (Omega - 1/2) ln(Omega - 1/2) term is replaced by its
// limit 0.
constexpr double kOmegaLimitGuard = 1e-15;

double xlogx(double x) { return x < kOmegaLimitGuard ? 0.0 : x * std::log(x); }

}  // namespace

void check_normalizable(const TwoModeGaussian& state) {
  std::ostringstream msg;
  if (!(state.alpha.real() > 0.0)) {
    msg << "Re(alpha) > 0 violated: Re(alpha) = " << state.alpha.real();
    throw DomainError(msg.str());
  }
  if (!(state.beta.real() > 0.0)) {
    msg << "Re(beta) > 0 violated: Re(beta) = " << state.beta.real();
    throw DomainError(msg.str());
  }
  if (!(state.delta_sq() > 0.0)) {
    msg << "Delta^2 = Re(alpha)Re(beta) - Re(gamma)^2 > 0 violated: Delta^2 = "
        << state.delta_sq();
    throw DomainError(msg.str());
  }
}

double normalization(const TwoModeGaussian& state) {
  check_normalizable(state);
  return std::sqrt(state.delta_sq()) / std::numbers::pi;
}

CovarianceBlocks covariance_blocks(const TwoModeGaussian& state) {
  check_normalizable(state);
  const double a1 = state.alpha.real(), a2 = state.alpha.imag();
  const double b1 = state.beta.real(), b2 = state.beta.imag();
  const double g1 = state.gamma.real(), g2 = state.gamma.imag();
  const double d2 = state.delta_sq();
  const double two_d2 = 2.0 * d2;

  const double x1x1 = b1 / two_d2;
  const double x2x2 = a1 / two_d2;
  const double x1x2 = -g1 / two_d2;

  const double p1p1 =
      (b1 * std::norm(state.alpha) - a1 * (g1 * g1 - g2 * g2) - 2.0 * a2 * g1 * g2) /
      two_d2;
  const double p2p2 =
      (a1 * std::norm(state.beta) - b1 * (g1 * g1 - g2 * g2) - 2.0 * b2 * g1 * g2) /
      two_d2;
  const double p1p2 =
      ((a1 * g1 + a2 * g2) * d2 + (a1 * b2 - g1 * g2) * (a1 * g2 - a2 * g1)) /
      (2.0 * a1 * d2);

  const double x1p1 = (g1 * g2 - a2 * b1) / two_d2;
  const double x2p2 = (g1 * g2 - a1 * b2) / two_d2;
  const double x1p2 = (g1 * b2 - g2 * b1) / two_d2;
  const double x2p1 = (g1 * a2 - g2 * a1) / two_d2;

  CovarianceBlocks cov;
  cov.a_block << x1x1, x1p1, x1p1, p1p1;
  cov.b_block << x2x2, x2p2, x2p2, p2p2;
  cov.c_block << x1x2, x1p2, x2p1, p1p2;
  return cov;
}

double simon_es(const CovarianceBlocks& cov) {
  Eigen::Matrix2d j;
  j << 0.0, 1.0, -1.0, 0.0;
  const double det_a = cov.a_block.determinant();
  const double det_b = cov.b_block.determinant();
  const double det_c = cov.c_block.determinant();
  const double tr =
      (cov.a_block * j * cov.c_block * j * cov.b_block * j * cov.c_block.transpose() * j)
          .trace();
  const double gap = 0.25 - std::abs(det_c);
  const double e_s = det_a * det_b + gap * gap - tr - 0.25 * (det_a + det_b);
  if (!std::isfinite(e_s)) {
    throw DomainError("Simon functional is not finite (moments out of range)");
  }
  return e_s;
}

double simon_es_pure(const TwoModeGaussian& state) {
  check_normalizable(state);
  return -0.25 * std::norm(state.gamma) / state.delta_sq();
}

EntanglementMeasures entanglement_of_formation(double e_s) {
  if (e_s > 0.0) {
    std::ostringstream msg;
    msg << "E_S must be <= 0 for a pure two-mode Gaussian, got " << e_s;
    throw DomainError(msg.str());
  }
  const double omega = std::sqrt(0.25 - e_s);
  return {omega, entanglement_of_formation_from_omega(omega)};
}

double entanglement_of_formation_from_omega(double omega) {
  if (!(omega >= 0.5)) {
    std::ostringstream msg;
    msg << "Omega must be >= 1/2, got " << omega;
    throw DomainError(msg.str());
  }
  return xlogx(omega + 0.5) - xlogx(omega - 0.5);
}

EntanglementReport entanglement_report(double e_s, double tolerance) {
  const auto [omega, e_f] = entanglement_of_formation(e_s);
  return {e_s, omega, e_f, e_s >= -0.25 * tolerance};
}

}  // namespace ncosc
