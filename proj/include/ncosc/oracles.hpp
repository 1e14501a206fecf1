#pragma once

// Independent numerical checks of the closed forms: a general eigensolver for
// the dynamical matrix, a finite-difference Schroedinger residual for the
// ground state, and grid quadrature of Gaussian moments.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ncosc/gaussian_state.hpp"
#include "ncosc/oscillator.hpp"

namespace ncosc {

// Square grid of points_per_axis^2 nodes.  Each axis spans
// [-extent * l, extent * l] where l is that axis' characteristic length
// (the 1/e half-width of |psi|^2 along the axis).
struct GridSpec {
  static constexpr int kMinPoints = 33;
  static constexpr double kDefaultExtent = 6.0;
  static constexpr int kDefaultPoints = 257;

  double extent = kDefaultExtent;
  int points_per_axis = kDefaultPoints;

  // 2 extent / (points_per_axis - 1), in characteristic lengths.
  double spacing() const { return 2.0 * extent / (points_per_axis - 1); }

  // Throws ConfigurationError when points_per_axis < 33 or extent <= 0.
  void validate() const;
};

struct ValidationThresholds {
  double eigen = 1e-8;
  double schrodinger = 5e-3;
  double moments = 1e-6;
  double es_agreement = 1e-9;
};

struct ValidationReport {
  double eigen_residual = 0.0;         // max relative eigenvalue mismatch
  double schrodinger_residual = 0.0;   // ||(H - E00) psi|| / ||psi||
  double moment_max_err = 0.0;         // max normalized covariance-entry error
  double es_agreement = 0.0;           // max relative spread of the three E_S routes
  double e_s = 0.0;                    // closed-form E_S
  double e00 = 0.0;
  bool passed = false;
  std::vector<std::string> failures;   // names of residuals over threshold
};

// Eigenvalues of a real 4x4 matrix sorted by (imaginary part, real part).
// Throws DomainError on non-finite entries.
std::array<complex, 4> numeric_eigenvalues(const Eigen::Matrix4d& matrix);

// Max over modes of |sigma_numeric - sigma_closed| / sigma_closed, also
// folding in the real parts (which must vanish) relative to sigma1.
double eigenvalue_mismatch(const std::array<complex, 4>& eigenvalues,
                           const ModeSpectrum& spectrum);

// Applies the Bopp-shifted Hamiltonian, discretized with second-order central
// differences, to psi00 sampled on the grid and returns
// ||(H - E00) psi|| / ||psi|| with E00 = (sigma1 + sigma2)/2.  Boundary nodes
// (where the stencil is incomplete) are excluded.  Requires extent >= 6.
double schrodinger_residual(const OscillatorParams& params, const GroundStateLambda& lambda,
                            const GridSpec& grid);

struct ConvergenceStudy {
  std::vector<int> points;         // grid sizes, spacing halving each step
  std::vector<double> residuals;
  std::vector<double> orders;      // log2(r_k / r_{k+1})
};

// Residual on points_per_axis = coarsest, 2 coarsest - 1, ... (refinements + 1 grids).
ConvergenceStudy schrodinger_convergence(const OscillatorParams& params,
                                         const GroundStateLambda& lambda, double extent,
                                         int coarsest_points, int refinements);

// Trapezoidal quadrature of |psi|^2 for the unnormalized exponential; the
// normalization constant is 1 / result.
double gaussian_norm_quadrature(const TwoModeGaussian& state, const GridSpec& grid);

// All ten second moments of the normalized state by trapezoidal quadrature;
// momenta act as -i d/dx through 8th-order central differences.  Requires at
// least 8 grid points per characteristic length and per wavelength of the
// phase of psi one characteristic length from the origin.
CovarianceBlocks gaussian_moment_quadrature(const TwoModeGaussian& state,
                                            const GridSpec& grid);

// Max over the ten entries of |q - c| / sqrt(<a^2><b^2>), the Cauchy-Schwarz
// scale of the pair of operators in that entry.
double covariance_mismatch(const CovarianceBlocks& numeric, const CovarianceBlocks& exact);

struct ValidationOptions {
  ValidationThresholds thresholds;
  double tolerance = kDefaultTolerance;
  // Applied to the closed-form Lambda before it is checked; a negative control
  // hook for tests.
  std::function<GroundStateLambda(GroundStateLambda)> lambda_hook;
};

// Runs the eigen, Schroedinger and moment oracles and the three-route E_S
// agreement.  Errors from sub-oracles are rethrown with context.
ValidationReport run_validation(const OscillatorParams& params, const GridSpec& grid,
                                const ValidationOptions& options = {});

}  // namespace ncosc
