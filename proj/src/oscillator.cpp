#include "ncosc/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ncosc/errors.hpp"

namespace ncosc {

namespace {

constexpr complex kI{0.0, 1.0};

// Relative size below which the closed-form Lambda denominator is singular.
constexpr double kSingularDenominator = 1e-12;

std::string describe(const OscillatorParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "m1=" << p.m1 << " m2=" << p.m2 << " alpha1=" << p.alpha1
     << " alpha2=" << p.alpha2 << " theta=" << p.theta;
  return os.str();
}

}  // namespace

void OscillatorParams::validate() const {
  auto require = [this](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string(what) + " violated (" + describe(*this) + ")");
  };
  require(std::isfinite(m1) && m1 > 0.0, "m1 > 0");
  require(std::isfinite(m2) && m2 > 0.0, "m2 > 0");
  require(std::isfinite(alpha1) && alpha1 > 0.0, "alpha1 > 0");
  require(std::isfinite(alpha2) && alpha2 > 0.0, "alpha2 > 0");
  require(std::isfinite(theta) && theta >= 0.0, "theta >= 0");
}

CanonicalSystem bopp_shift(const OscillatorParams& params) {
  params.validate();
  const double t2 = params.theta * params.theta;
  CanonicalSystem sys;
  sys.big_m1 = 1.0 / (1.0 / params.m1 + 0.5 * params.alpha2 * t2);
  sys.big_m2 = 1.0 / (1.0 / params.m2 + 0.5 * params.alpha1 * t2);
  sys.omega1_sq = 2.0 * params.alpha1 / sys.big_m1;
  sys.omega2_sq = 2.0 * params.alpha2 / sys.big_m2;
  return sys;
}

Eigen::Matrix4d build_h_matrix(const OscillatorParams& params) {
  const CanonicalSystem sys = bopp_shift(params);
  const double ta1 = params.theta * params.alpha1;
  const double ta2 = params.theta * params.alpha2;
  Eigen::Matrix4d h;
  // clang-format off
  h << sys.big_m1 * sys.omega1_sq, 0.0,              0.0,                        -ta1,
       0.0,                        1.0 / sys.big_m1, ta2,                        0.0,
       0.0,                        ta2,              sys.big_m2 * sys.omega2_sq, 0.0,
       -ta1,                       0.0,              0.0,                        1.0 / sys.big_m2;
  // clang-format on
  return h;
}

Eigen::Matrix4d build_omega_matrix(const OscillatorParams& params) {
  const CanonicalSystem sys = bopp_shift(params);
  const double ta1 = params.theta * params.alpha1;
  const double ta2 = params.theta * params.alpha2;
  Eigen::Matrix4d om;
  // clang-format off
  om << 0.0,                         1.0 / sys.big_m1, ta2,                         0.0,
        -sys.big_m1 * sys.omega1_sq, 0.0,              0.0,                         ta1,
        -ta1,                        0.0,              0.0,                         1.0 / sys.big_m2,
        0.0,                         -ta2,             -sys.big_m2 * sys.omega2_sq, 0.0;
  // clang-format on
  return om;
}

Eigen::Matrix4cd sigma_y_block() {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 1) = -kI;
  s(1, 0) = kI;
  s(2, 3) = -kI;
  s(3, 2) = kI;
  return s;
}

ModeSpectrum mode_spectrum(const OscillatorParams& params, double tolerance) {
  const CanonicalSystem sys = bopp_shift(params);
  const double t2 = params.theta * params.theta;
  const double a1 = params.alpha1, a2 = params.alpha2;

  ModeSpectrum s;
  s.b = sys.omega1_sq + sys.omega2_sq + 2.0 * t2 * a1 * a2;
  s.c = (sys.omega2_sq - t2 * (sys.big_m1 / sys.big_m2) * a2 * a2) *
        (sys.omega1_sq - t2 * (sys.big_m2 / sys.big_m1) * a1 * a1);
  s.d = s.b * s.b - 4.0 * s.c;
  s.degenerate = false;

  if (!(s.c > 0.0)) {
    throw InconsistencyError("characteristic constant c <= 0 (" + describe(params) + ")");
  }
  const double b_sq = s.b * s.b;
  if (s.d < -tolerance * b_sq) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "discriminant D = " << s.d << " < 0 (" << describe(params) << ")";
    throw InconsistencyError(msg.str());
  }
  if (std::abs(s.d) <= tolerance * b_sq) {
    s.d = 0.0;
    s.degenerate = true;
  }
  const double sigma1_sq = 0.5 * (s.b + std::sqrt(s.d));
  // Vieta: avoids the cancellation in (b - sqrt D)/2 when sigma2 << sigma1.
  const double sigma2_sq = s.degenerate ? sigma1_sq : s.c / sigma1_sq;
  s.sigma1 = std::sqrt(sigma1_sq);
  s.sigma2 = std::sqrt(sigma2_sq);
  if (s.sigma2 > s.sigma1) std::swap(s.sigma1, s.sigma2);
  return s;
}

double energy_level(const ModeSpectrum& spectrum, unsigned n1, unsigned n2) {
  return spectrum.sigma1 * (n1 + 0.5) + spectrum.sigma2 * (n2 + 0.5);
}

LeftEigenvectors left_eigenvectors(const OscillatorParams& params,
                                   const ModeSpectrum& spectrum) {
  if (spectrum.degenerate) {
    throw IllConditionedError(
        "left eigenvectors are not defined for a degenerate spectrum; use "
        "ground_state_lambda_closed (" +
        describe(params) + ")");
  }
  const CanonicalSystem sys = bopp_shift(params);
  const double m1 = sys.big_m1, m2 = sys.big_m2;
  const double w2 = sys.omega2_sq;
  const double th = params.theta, a1 = params.alpha1, a2 = params.alpha2;
  const Eigen::Matrix4cd sy = sigma_y_block();

  LeftEigenvectors out;
  const std::array<double, 2> sigmas{spectrum.sigma1, spectrum.sigma2};
  for (std::size_t i = 0; i < 2; ++i) {
    const double s = sigmas[i];
    const double s2 = s * s;
    Eigen::RowVector4cd u;
    u(0) = -kI * m1 * m2 * s * (s2 - w2 - th * th * a1 * a2);
    u(1) = m2 * (s2 - w2) + th * th * m1 * a2 * a2;
    u(2) = th * m1 * m2 * a2 * (s2 - th * th * a1 * a2) + th * m2 * m2 * a1 * w2;
    u(3) = kI * th * s * (m1 * a2 + m2 * a1);

    // Magnitudes of the additive terms; a result far below them is roundoff
    // (the formula collapses for one mode when theta = 0).
    const double tt = th * th;
    Eigen::Vector4d terms;
    terms << m1 * m2 * s * (s2 + w2 + tt * a1 * a2), m2 * (s2 + w2) + tt * m1 * a2 * a2,
        th * m1 * m2 * a2 * (s2 + tt * a1 * a2) + th * m2 * m2 * a1 * w2,
        th * s * (m1 * a2 + m2 * a1);
    const double len_sq = u.squaredNorm();
    const double k_sq = -(u * sy * u.adjoint())(0, 0).real();
    if (!(len_sq > 1e-16 * terms.squaredNorm()) || !(k_sq > 1e-14 * len_sq)) {
      throw IllConditionedError("closed-form left eigenvector " + std::to_string(i + 1) +
                                " is not normalizable (" + describe(params) + ")");
    }
    double k = std::sqrt(k_sq);
    // Phase convention: first nonzero component has argument in (-pi/2, pi/2].
    for (Eigen::Index c = 0; c < 4; ++c) {
      if (u(c) == complex{}) continue;
      const double arg = std::arg(u(c));
      if (arg <= -0.5 * std::numbers::pi || arg > 0.5 * std::numbers::pi) k = -k;
      break;
    }
    out.u[i] = u / k;
    out.k[i] = k;
  }
  return out;
}

Eigen::Vector4cd right_eigenvector(const Eigen::RowVector4cd& u) {
  return -sigma_y_block() * u.adjoint();
}

GroundStateLambda lambda_from_left_eigenvectors(const Eigen::RowVector4cd& u1,
                                                const Eigen::RowVector4cd& u2) {
  Eigen::Matrix2cd xi, eta;
  xi << u1(0), u1(2), u2(0), u2(2);
  eta << u1(1), u1(3), u2(1), u2(3);

  const double row_scale = eta.row(0).norm() * eta.row(1).norm();
  if (!(std::abs(eta.determinant()) > 1e-12 * row_scale)) {
    throw IllConditionedError("eta block of the left eigenbasis is singular");
  }
  const Eigen::Matrix2cd lam = kI * eta.inverse() * xi;

  GroundStateLambda out;
  out.lambda11 = lam(0, 0).real();
  out.lambda22 = lam(1, 1).real();
  out.lambda12 = 0.5 * (lam(0, 1) + lam(1, 0));
  const double scale = std::abs(lam(0, 0)) + std::abs(lam(1, 1));
  if (std::abs(lam(0, 0).imag()) > 1e-8 * scale || std::abs(lam(1, 1).imag()) > 1e-8 * scale) {
    throw InconsistencyError("diagonal of Lambda is not real");
  }
  return out;
}

GroundStateLambda ground_state_lambda_closed(const OscillatorParams& params,
                                             const ModeSpectrum& spectrum) {
  const CanonicalSystem sys = bopp_shift(params);
  const double m1 = sys.big_m1, m2 = sys.big_m2;
  const double w2 = sys.omega2_sq;
  const double th = params.theta, a1 = params.alpha1, a2 = params.alpha2;
  const double s1 = spectrum.sigma1, s2 = spectrum.sigma2;
  const double s12 = s1 * s2;

  const double shift = th * th * m1 * a2 * a2;
  const double den = m2 * (w2 + s12) - shift;
  const double den_scale = m2 * (w2 + s12) + shift;
  if (!(std::abs(den) > kSingularDenominator * den_scale)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "closed-form Lambda denominator " << den << " vanishes (" << describe(params)
        << ")";
    throw SingularConfigurationError(msg.str());
  }

  GroundStateLambda out;
  out.lambda11 = m1 * m2 * s12 * (s1 + s2) / den;
  out.lambda22 = m2 * (m2 * w2 - m1 * th * th * a2 * a2) * (s1 + s2) / den;
  out.lambda12 = kI *
                 (m2 * (th * th * th * m1 * a2 * a2 * a1 - th * m2 * a1 * w2 +
                        th * m1 * a2 * s12)) /
                 den;
  return out;
}

GroundStateLambda ground_state_lambda_numeric(const OscillatorParams& params,
                                              double tolerance) {
  const Eigen::Matrix4d om = build_omega_matrix(params);
  // Left eigenvectors of Omega are eigenvectors of Omega^T.
  Eigen::EigenSolver<Eigen::Matrix4d> solver(om.transpose(), true);
  if (solver.info() != Eigen::Success) {
    throw IllConditionedError("eigensolver failed (" + describe(params) + ")");
  }
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  std::vector<Eigen::Index> lowering;
  for (Eigen::Index i = 0; i < 4; ++i) {
    if (values(i).imag() < 0.0) lowering.push_back(i);
  }
  if (lowering.size() != 2) {
    throw IllConditionedError("expected two eigenvalues -i sigma (" + describe(params) + ")");
  }
  const complex l1 = values(lowering[0]), l2 = values(lowering[1]);
  if (std::abs(l1 - l2) <= std::sqrt(tolerance) * std::max(std::abs(l1), std::abs(l2))) {
    throw IllConditionedError(
        "degenerate spectrum; use ground_state_lambda_closed (" + describe(params) + ")");
  }
  const Eigen::RowVector4cd u1 = vectors.col(lowering[0]).transpose();
  const Eigen::RowVector4cd u2 = vectors.col(lowering[1]).transpose();
  return lambda_from_left_eigenvectors(u1, u2);
}

TwoModeGaussian ground_state_as_gaussian(const GroundStateLambda& lambda) {
  // gamma = (L12 + L21)/2 with L21 = L12
  return {complex{lambda.lambda11, 0.0}, complex{lambda.lambda22, 0.0}, lambda.lambda12};
}

double es_closed_form(const OscillatorParams& params) {
  params.validate();
  const double a = std::sqrt(params.alpha1 * params.m2);
  const double b = std::sqrt(params.alpha2 * params.m1);
  const double prod = params.alpha1 * params.m2 * params.alpha2 * params.m1;
  const double t2 = params.theta * params.theta;
  const double diff = a - b;
  const double sum = a + b;
  // + 0.0 turns -0 into +0 at separable points
  return -(t2 / 8.0) * std::sqrt(prod) * diff * diff / (2.0 * t2 * prod + sum * sum) + 0.0;
}

double es_special_cases(const OscillatorParams& params) {
  params.validate();
  const double t2 = params.theta * params.theta;
  if (params.alpha1 == params.alpha2) {
    const double alpha = params.alpha1;
    const double mm = params.m1 * params.m2;
    const double r1 = std::sqrt(params.m1), r2 = std::sqrt(params.m2);
    return -(t2 * alpha * mm / (8.0 * std::sqrt(mm))) * (r1 - r2) * (r1 - r2) /
           (2.0 * t2 * alpha * mm + (r1 + r2) * (r1 + r2));
  }
  if (params.m1 == params.m2) {
    const double m = params.m1;
    const double aa = params.alpha1 * params.alpha2;
    const double r1 = std::sqrt(params.alpha1), r2 = std::sqrt(params.alpha2);
    return -(t2 * m * aa / (8.0 * std::sqrt(aa))) * (r1 - r2) * (r1 - r2) /
           (2.0 * t2 * m * aa + (r1 + r2) * (r1 + r2));
  }
  throw UnsupportedCaseError(
      "reduced E_S needs alpha1 == alpha2 or m1 == m2; use es_closed_form (" +
      describe(params) + ")");
}

AsymptoticBounds asymptotic_bounds(const OscillatorParams& params) {
  OscillatorParams p = params;
  p.theta = 0.0;
  p.validate();
  const double a = std::sqrt(p.alpha1 * p.m2);
  const double b = std::sqrt(p.alpha2 * p.m1);

  // (a1 m2 a2 m1)^(1/2) = a b; written so that a = b gives exactly 0 and 1/2
  AsymptoticBounds out;
  out.e_s_limit = -(1.0 / 16.0) * (a - b) * (a - b) / (a * b);
  out.omega0 = 0.25 * (std::sqrt(a / b) + std::sqrt(b / a));
  out.e_f_bound = entanglement_of_formation_from_omega(std::max(out.omega0, 0.5));
  return out;
}

double anisotropy_ratio(const OscillatorParams& params) {
  params.validate();
  return (params.alpha1 / params.m1) / (params.alpha2 / params.m2);
}

}  // namespace ncosc
