#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ncosc/errors.hpp"
#include "ncosc/oracles.hpp"
#include "test_support.hpp"

using namespace ncosc;
using ncosc::testing::random_params;
using ncosc::testing::random_states;

namespace {

OscillatorParams reference_case(double theta) { return {1.0, 1.0, 5.0, 10.0, theta}; }

GroundStateLambda closed_lambda(const OscillatorParams& p) {
  return ground_state_lambda_closed(p, mode_spectrum(p));
}

}  // namespace

// ---------- eigenvalues ----------

TEST(NumericEigenvalues, UnitCommutativeOscillator) {
  const auto ev = numeric_eigenvalues(build_omega_matrix({1.0, 1.0, 0.5, 0.5, 0.0}));
  EXPECT_NEAR(ev[0].imag(), -1.0, 1e-14);
  EXPECT_NEAR(ev[1].imag(), -1.0, 1e-14);
  EXPECT_NEAR(ev[2].imag(), 1.0, 1e-14);
  EXPECT_NEAR(ev[3].imag(), 1.0, 1e-14);
  for (const complex& z : ev) EXPECT_NEAR(z.real(), 0.0, 1e-14);
}

TEST(NumericEigenvalues, ReferenceCaseMatchesSpectrum) {
  const auto ev = numeric_eigenvalues(build_omega_matrix(reference_case(1.0)));
  EXPECT_NEAR(ev[0].imag(), -15.136945600256785, 1e-10);
  EXPECT_NEAR(ev[1].imag(), -0.9342793451996707, 1e-10);
  EXPECT_NEAR(ev[2].imag(), 0.9342793451996707, 1e-10);
  EXPECT_NEAR(ev[3].imag(), 15.136945600256785, 1e-10);
  EXPECT_LT(eigenvalue_mismatch(ev, mode_spectrum(reference_case(1.0))), 1e-12);
}

TEST(NumericEigenvalues, ScaleWithMatrix) {
  const Eigen::Matrix4d om = build_omega_matrix(reference_case(1.0));
  const auto ev = numeric_eigenvalues(om);
  const auto scaled = numeric_eigenvalues(3.5 * om);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(scaled[i].imag(), 3.5 * ev[i].imag(), 1e-11);
}

TEST(NumericEigenvalues, NonFiniteRejected) {
  Eigen::Matrix4d om = build_omega_matrix(reference_case(1.0));
  om(1, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(numeric_eigenvalues(om), DomainError);
}

TEST(NumericEigenvalues, AgreeWithClosedSpectrum) {
  for (const auto& p : random_params(500, 21)) {
    const ModeSpectrum s = mode_spectrum(p);
    EXPECT_LT(eigenvalue_mismatch(numeric_eigenvalues(build_omega_matrix(p)), s), 1e-8);
  }
}

// ---------- Schroedinger residual ----------

TEST(SchrodingerResidual, ReferenceCaseUnderThreshold) {
  const OscillatorParams p = reference_case(1.0);
  const double r = schrodinger_residual(p, closed_lambda(p), GridSpec{6.0, 257});
  EXPECT_LT(r, 5e-3);
}

// Nothing but truncation error is left here.  Its leading term for the unit
// oscillator is 0.15729 h^2 (2.46e-3 at h = 1/8, so 129^2 at extent 8 cannot
// get under 1e-3); the measured value must match it.
TEST(SchrodingerResidual, CommutativeIsPureDiscretizationError) {
  const OscillatorParams p{1.0, 1.0, 0.5, 0.5, 0.0};
  const GroundStateLambda lam = closed_lambda(p);
  const GridSpec grid{8.0, 129};
  const double h = grid.spacing();
  const double r = schrodinger_residual(p, lam, grid);
  EXPECT_NEAR(r, 0.15729 * h * h, 0.02 * 0.15729 * h * h);
  const double fine = schrodinger_residual(p, lam, GridSpec{8.0, 513});
  EXPECT_LT(fine, 1e-3);
}

TEST(SchrodingerResidual, DetectsPerturbedState) {
  const OscillatorParams p = reference_case(1.0);
  const GroundStateLambda lam = closed_lambda(p);
  GroundStateLambda bad = lam;
  bad.lambda11 *= 1.05;
  const GridSpec grid{6.0, 257};
  EXPECT_GT(schrodinger_residual(p, bad, grid), 10.0 * schrodinger_residual(p, lam, grid));
}

TEST(SchrodingerResidual, ConjugateLambdaIsNotTheGroundState) {
  const OscillatorParams p = reference_case(1.0);
  GroundStateLambda lam = closed_lambda(p);
  const GridSpec grid{6.0, 257};
  const double good = schrodinger_residual(p, lam, grid);
  lam.lambda12 = std::conj(lam.lambda12);
  EXPECT_GT(schrodinger_residual(p, lam, grid), 10.0 * good);
}

TEST(SchrodingerResidual, SecondOrderConvergence) {
  const OscillatorParams p = reference_case(1.0);
  const ConvergenceStudy c = schrodinger_convergence(p, closed_lambda(p), 6.0, 65, 3);
  ASSERT_EQ(c.points, (std::vector<int>{65, 129, 257, 513}));
  ASSERT_EQ(c.orders.size(), 3u);
  for (double order : c.orders) EXPECT_NEAR(order, 2.0, 0.2);
}

TEST(SchrodingerResidual, GridPreconditions) {
  const OscillatorParams p = reference_case(1.0);
  const GroundStateLambda lam = closed_lambda(p);
  EXPECT_THROW(schrodinger_residual(p, lam, GridSpec{6.0, 16}), ConfigurationError);
  EXPECT_THROW(schrodinger_residual(p, lam, GridSpec{4.0, 257}), ConfigurationError);
  EXPECT_THROW(schrodinger_residual(p, lam, GridSpec{0.0, 257}), ConfigurationError);
}

// ---------- quadrature ----------

TEST(MomentQuadrature, UnitGaussian) {
  const CovarianceBlocks q = gaussian_moment_quadrature({1.0, 1.0, 0.0}, GridSpec{});
  EXPECT_NEAR(q.x1x1(), 0.5, 1e-6);
  EXPECT_NEAR(q.p1p1(), 0.5, 1e-6);
  EXPECT_NEAR(q.x1x2(), 0.0, 1e-12);
}

TEST(MomentQuadrature, MatchesClosedFormsOnRandomStates) {
  for (const auto& s : random_states(50, 22)) {
    const double err = covariance_mismatch(gaussian_moment_quadrature(s, GridSpec{}), covariance_blocks(s));
    EXPECT_LT(err, 1e-6);
  }
}

TEST(MomentQuadrature, UnderResolvedGridRejected) {
  // 8 points per characteristic length needs (N-1)/(2 extent) >= 8
  EXPECT_THROW(gaussian_moment_quadrature({1.0, 1.0, 0.0}, GridSpec{6.0, 65}), ConfigurationError);
  // a rapidly varying phase is not resolved by 129 points
  EXPECT_THROW(gaussian_moment_quadrature({complex(1.0, 40.0), 1.0, 0.0}, GridSpec{6.0, 129}),
               ConfigurationError);
  EXPECT_NO_THROW(gaussian_moment_quadrature({1.0, 1.0, 0.0}, GridSpec{6.0, 97}));
}

TEST(NormQuadrature, InverseOfNormalization) {
  for (const auto& s : random_states(20, 23)) {
    EXPECT_NEAR(normalization(s) * gaussian_norm_quadrature(s, GridSpec{}), 1.0, 1e-10);
  }
}

TEST(CovarianceMismatch, ZeroForIdenticalBlocks) {
  const CovarianceBlocks c = covariance_blocks({complex(2.0, 1.0), 1.0, 0.5});
  EXPECT_EQ(covariance_mismatch(c, c), 0.0);
  CovarianceBlocks d = c;
  d.c_block(1, 1) += 1e-3;
  EXPECT_GT(covariance_mismatch(d, c), 1e-4);
}

// ---------- run_validation ----------

TEST(RunValidation, ReferenceCasePasses) {
  const ValidationReport r = run_validation(reference_case(1.0), GridSpec{});
  EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_LT(r.eigen_residual, 1e-8);
  EXPECT_LT(r.schrodinger_residual, 5e-3);
  EXPECT_LT(r.moment_max_err, 1e-6);
  EXPECT_LT(r.es_agreement, 1e-9);
  EXPECT_NEAR(r.e_s, -0.005871454297898656, 1e-15);
  EXPECT_NEAR(r.e00, 8.035612472728229, 1e-12);
}

TEST(RunValidation, IsotropicCommutativePasses) {
  const ValidationReport r = run_validation({1.0, 1.0, 0.5, 0.5, 0.0}, GridSpec{});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.e_s, 0.0);
}

TEST(RunValidation, CorruptedLambdaFails) {
  ValidationOptions opt;
  opt.lambda_hook = [](GroundStateLambda l) {
    l.lambda12 *= 1.1;
    return l;
  };
  const ValidationReport r = run_validation(reference_case(1.0), GridSpec{}, opt);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(std::find(r.failures.begin(), r.failures.end(), "schrodinger_residual"), r.failures.end());
  EXPECT_NE(std::find(r.failures.begin(), r.failures.end(), "es_agreement"), r.failures.end());
}

TEST(RunValidation, ErrorsCarryContextAndType) {
  try {
    run_validation(reference_case(1.0), GridSpec{6.0, 16});
    FAIL() << "expected ConfigurationError";
  } catch (const ConfigurationError&) {
  }
  EXPECT_THROW(run_validation({-1.0, 1.0, 1.0, 1.0, 0.0}, GridSpec{}), DomainError);
}
