#pragma once

// Two-dimensional anisotropic harmonic oscillator on a noncommutative plane,
//
//   H = P1^2/(2 m1) + P2^2/(2 m2) + alpha1 X1^2 + alpha2 X2^2,
//   [X1, X2] = i theta,  [Xi, Pj] = i delta_ij,
//
// solved through the Bopp shift X1 = x1 - (theta/2) p2, X2 = x2 + (theta/2) p1
// onto canonical variables.  hbar = 1; theta carries units of length^2 but
// all inputs are treated as dimensionless numbers.
//
// Phase-space vectors are ordered (x1, p1, x2, p2) everywhere.

#include <array>
#include <complex>

#include <Eigen/Core>

#include "ncosc/gaussian_state.hpp"
#include "ncosc/tolerance.hpp"

namespace ncosc {

struct OscillatorParams {
  double m1 = 1.0;
  double m2 = 1.0;
  double alpha1 = 1.0;  // stiffness: potential alpha1 X1^2
  double alpha2 = 1.0;
  double theta = 0.0;

  // Throws DomainError unless m1, m2, alpha1, alpha2 > 0 and theta >= 0.
  void validate() const;
};

// Parameters of the Bopp-shifted canonical Hamiltonian
//   p1^2/(2M1) + p2^2/(2M2) + M1 w1^2 x1^2/2 + M2 w2^2 x2^2/2
//     - theta (alpha1 x1 p2 - alpha2 x2 p1)
struct CanonicalSystem {
  double big_m1;     // 1/M1 = 1/m1 + alpha2 theta^2 / 2
  double big_m2;     // 1/M2 = 1/m2 + alpha1 theta^2 / 2
  double omega1_sq;  // 2 alpha1 / M1
  double omega2_sq;  // 2 alpha2 / M2
};

// Normal modes from the characteristic polynomial lambda^4 + b lambda^2 + c of
// the dynamical matrix.  Eigenvalues are {-i sigma1, i sigma1, -i sigma2, i sigma2}.
struct ModeSpectrum {
  double b;
  double c;
  double d;  // b^2 - 4c, clamped to 0 when degenerate
  double sigma1;
  double sigma2;
  bool degenerate;  // sigma1 == sigma2 within tolerance
};

// Exponent matrix of the ground state
//   psi00 ~ exp[-(L11 x1^2 + L22 x2^2 + (L12 + L21) x1 x2)/2],  L21 = L12.
struct GroundStateLambda {
  double lambda11;
  double lambda22;
  complex lambda12;
};

// Left eigenvectors u_i (u_i Omega = -i sigma_i u_i) scaled by 1/k_i so that
// u_i v_j = delta_ij with v_i = -Sigma_y u_i^dagger.
struct LeftEigenvectors {
  std::array<Eigen::RowVector4cd, 2> u;
  std::array<double, 2> k;  // normalization constants (sign fixes the phase)
};

struct AsymptoticBounds {
  double e_s_limit;  // E_S as theta -> infinity
  double omega0;     // Omega as theta -> infinity
  double e_f_bound;  // E_F at omega0; E_F(theta) stays below it
};

CanonicalSystem bopp_shift(const OscillatorParams& params);

// Symmetric matrix with H = X^T H X / 2.
Eigen::Matrix4d build_h_matrix(const OscillatorParams& params);

// Real dynamical matrix Omega = i Sigma_y H.
Eigen::Matrix4d build_omega_matrix(const OscillatorParams& params);

// Sigma_y = diag(sigma_y, sigma_y); [X_a, X_b] = -(Sigma_y)_ab.
Eigen::Matrix4cd sigma_y_block();

ModeSpectrum mode_spectrum(const OscillatorParams& params,
                           double tolerance = kDefaultTolerance);

// E = sigma1 (n1 + 1/2) + sigma2 (n2 + 1/2)
double energy_level(const ModeSpectrum& spectrum, unsigned n1, unsigned n2);

// Closed-form left eigenvectors.  Throws IllConditionedError on a degenerate
// spectrum (use ground_state_lambda_closed there) or when the formula
// collapses to the zero vector, which happens for one mode at theta = 0.
LeftEigenvectors left_eigenvectors(const OscillatorParams& params,
                                   const ModeSpectrum& spectrum);

// v = -Sigma_y u^dagger
Eigen::Vector4cd right_eigenvector(const Eigen::RowVector4cd& u);

// Lambda = i eta^{-1} xi from any pair of left eigenvectors belonging to the
// eigenvalues -i sigma_1, -i sigma_2, symmetrized.  Throws IllConditionedError
// if eta is numerically singular.
GroundStateLambda lambda_from_left_eigenvectors(const Eigen::RowVector4cd& u1,
                                                const Eigen::RowVector4cd& u2);

// Closed forms for Lambda.  Throws SingularConfigurationError if the common
// denominator M2 (w2^2 + sigma1 sigma2) - theta^2 M1 alpha2^2 is below 1e-12
// relative to its terms.
GroundStateLambda ground_state_lambda_closed(const OscillatorParams& params,
                                             const ModeSpectrum& spectrum);

// Independent route: left eigenvectors of Omega from a numerical eigensolver,
// then Lambda = i eta^{-1} xi.  Throws IllConditionedError on a degenerate
// spectrum.
GroundStateLambda ground_state_lambda_numeric(const OscillatorParams& params,
                                              double tolerance = kDefaultTolerance);

// alpha = L11, beta = L22, gamma = (L12 + L21)/2
TwoModeGaussian ground_state_as_gaussian(const GroundStateLambda& lambda);

// E_S of the ground state in closed form.  Never positive; zero iff
// theta = 0 or alpha1/m1 = alpha2/m2.
double es_closed_form(const OscillatorParams& params);

// Reduced closed forms for equal stiffnesses (alpha1 = alpha2) or equal
// masses (m1 = m2).  Throws UnsupportedCaseError otherwise.
double es_special_cases(const OscillatorParams& params);

// theta -> infinity limits; params.theta is ignored.
AsymptoticBounds asymptotic_bounds(const OscillatorParams& params);

// r = (alpha1/m1) / (alpha2/m2); r = 1 is separable for every theta.
double anisotropy_ratio(const OscillatorParams& params);

}  // namespace ncosc
