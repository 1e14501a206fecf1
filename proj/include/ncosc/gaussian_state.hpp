#pragma once

// Pure two-mode Gaussian states
//
//   psi(x1, x2) = N0 exp[-(alpha x1^2 + beta x2^2 + 2 gamma x1 x2) / 2]
//
// with complex alpha, beta, gamma, and their entanglement content.  Units are
// hbar = 1 throughout; all moments are dimensionless.  Entropies are in nats.

#include <complex>

#include <Eigen/Core>

#include "ncosc/tolerance.hpp"

namespace ncosc {

using complex = std::complex<double>;

struct TwoModeGaussian {
  complex alpha;  // coefficient of x1^2
  complex beta;   // coefficient of x2^2
  complex gamma;  // coefficient of the x1 x2 cross term (appears as 2 gamma)

  // Delta^2 = Re(alpha) Re(beta) - Re(gamma)^2
  double delta_sq() const {
    return alpha.real() * beta.real() - gamma.real() * gamma.real();
  }
};

// Throws DomainError unless Re(alpha) > 0, Re(beta) > 0 and Delta^2 > 0.
void check_normalizable(const TwoModeGaussian& state);

// Second moments, grouped as
//   A = [<x1^2>, <{x1,p1}>; <{x1,p1}>, <p1^2>]
//   B = [<x2^2>, <{x2,p2}>; <{x2,p2}>, <p2^2>]
//   C = [<x1 x2>, <x1 p2>; <p1 x2>, <p1 p2>]
// where <{x,p}> is the symmetrized moment <xp + px>/2.
struct CovarianceBlocks {
  Eigen::Matrix2d a_block;
  Eigen::Matrix2d b_block;
  Eigen::Matrix2d c_block;

  double x1x1() const { return a_block(0, 0); }
  double p1p1() const { return a_block(1, 1); }
  double x1p1() const { return a_block(0, 1); }
  double x2x2() const { return b_block(0, 0); }
  double p2p2() const { return b_block(1, 1); }
  double x2p2() const { return b_block(0, 1); }
  double x1x2() const { return c_block(0, 0); }
  double x1p2() const { return c_block(0, 1); }
  double x2p1() const { return c_block(1, 0); }
  double p1p2() const { return c_block(1, 1); }
};

struct EntanglementMeasures {
  double omega;  // Omega = sqrt(1/4 - E_S)
  double e_f;    // entanglement of formation, nats
};

struct EntanglementReport {
  double e_s;
  double omega;
  double e_f;
  bool separable;
};

// |N0|^2 = Delta / pi.
double normalization(const TwoModeGaussian& state);

// Closed-form second moments of a normalized state.
CovarianceBlocks covariance_blocks(const TwoModeGaussian& state);

// Simon functional from the covariance blocks:
//   det A det B + (1/4 - |det C|)^2 - tr(A J C J B J C^T J) - (det A + det B)/4
// E_S >= 0 iff the state is separable.
double simon_es(const CovarianceBlocks& cov);

// The same functional specialized to pure two-mode Gaussians:
//   E_S = -(1/4) |gamma|^2 / Delta^2
double simon_es_pure(const TwoModeGaussian& state);

// Omega and E_F from E_S.  E_F is continuous at Omega = 1/2 where it is 0.
// Throws DomainError for e_s > 0.
EntanglementMeasures entanglement_of_formation(double e_s);

// E_F = (Omega + 1/2) ln(Omega + 1/2) - (Omega - 1/2) ln(Omega - 1/2) for
// Omega >= 1/2.  Throws DomainError below 1/2.
double entanglement_of_formation_from_omega(double omega);

// Bundles E_S, Omega and E_F with the separability verdict.  The state is
// called separable when E_S >= -tolerance/4, i.e. Omega^2 is within
// `tolerance` (relative) of its vacuum value 1/4.
EntanglementReport entanglement_report(double e_s,
                                       double tolerance = kDefaultTolerance);

}  // namespace ncosc
