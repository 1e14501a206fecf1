// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "ncosc/errors.hpp"
#include "ncosc/oracles.hpp"
#include "test_support.hpp"

using namespace ncosc;
using ncosc::testing::random_params;
using ncosc::testing::random_states;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

OscillatorParams reference_case(double theta) { return {1.0, 1.0, 5.0, 10.0, theta}; }

std::string str(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double es_via_lambda(const GroundStateLambda& lam) {
  return simon_es(covariance_blocks(ground_state_as_gaussian(lam)));
}

// Closed form, covariance pipeline on closed Lambda, covariance pipeline on
// eigensolver Lambda.
std::array<double, 3> three_routes(const OscillatorParams& p) {
  const ModeSpectrum s = mode_spectrum(p);
  return {es_closed_form(p), es_via_lambda(ground_state_lambda_closed(p, s)),
          es_via_lambda(ground_state_lambda_numeric(p))};
}

void ac1(Outcome& o) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& p : random_params(200, 1001)) {
    const auto e = three_routes(p);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double diff = std::abs(e[i] - e[j]);
        const double rel = diff / std::max({std::abs(e[i]), std::abs(e[j]), 1e-300});
        if (diff > 1e-14) worst = std::max(worst, rel);
        o.require(diff <= std::max(1e-9 * std::max(std::abs(e[i]), std::abs(e[j])), 1e-14),
                  "route mismatch " + str(rel));
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 5.0, "runtime " + str(elapsed) + " s");
  o.detail << "200 sets, worst relative spread " << str(worst) << " (limit 1e-9), " << str(elapsed)
           << " s (limit 5 s)";
}

void ac2(Outcome& o) {
  double worst_boundary = 0.0;
  const auto base = random_params(50, 2002, {0.1, 10.0, 0.05, 5.0});
  for (std::size_t i = 0; i < base.size(); ++i) {
    OscillatorParams p = base[i];
    if (i % 2 == 0) {
      p.theta = 0.0;
    } else {
      p.alpha2 = p.alpha1 * p.m2 / p.m1;  // alpha1/m1 = alpha2/m2
    }
    const ModeSpectrum s = mode_spectrum(p);
    std::vector<double> routes{es_closed_form(p), es_via_lambda(ground_state_lambda_closed(p, s))};
    if (!s.degenerate) routes.push_back(es_via_lambda(ground_state_lambda_numeric(p)));
    for (double e : routes) {
      worst_boundary = std::max(worst_boundary, std::abs(e));
      o.require(std::abs(e) < 1e-14, "boundary |E_S| = " + str(std::abs(e)));
    }
  }
  double closest = -1.0;
  for (const auto& p : random_params(200, 2003)) {
    const double e = es_closed_form(p);
    closest = std::max(closest, e);
    o.require(e < -1e-12, "interior E_S = " + str(e));
  }
  o.detail << "50 boundary cases max |E_S| " << str(worst_boundary)
           << " (limit 1e-14); 200 interior cases max E_S " << str(closest) << " (limit -1e-12)";
}

void ac3(Outcome& o) {
  cli::SweepConfig cfg;
  cfg.kind = cli::SweepKind::theta;
  cfg.start = 0.0;
  cfg.stop = 10.0;
  cfg.steps = 101;
  cfg.fixed = reference_case(0.0);
  const auto rows = cli::run_sweep(cfg);
  const double bound = asymptotic_bounds(cfg.fixed).e_f_bound;
  o.require(rows.front().e_f == 0.0, "E_F(0) = " + str(rows.front().e_f));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    o.require(rows[i].e_f >= rows[i - 1].e_f, "decrease at theta = " + str(rows[i].sweep_value));
  }
  const double last = rows.back().e_f;
  const double gap = std::abs(last - bound) / bound;
  o.require(gap <= 0.05, "E_F(10) off the bound by " + str(gap));
  // rapid rise then saturation: most of the final value is reached in the
  // first tenth of the range, and the second half adds little
  const double at1 = rows[10].e_f, at5 = rows[50].e_f;
  o.require(at1 >= 0.5 * last, "E_F(1)/E_F(10) = " + str(at1 / last));
  o.require(last - at5 <= 0.05 * last, "late growth " + str((last - at5) / last));
  o.detail << "E_F(0) = 0, nondecreasing over 101 steps, E_F(10) = " << str(last) << " vs bound "
           << str(bound) << " (" << str(100 * gap) << "%, limit 5%), E_F(1)/E_F(10) = "
           << str(at1 / last);
}

void ac4(Outcome& o) {
  cli::SweepConfig cfg;
  cfg.kind = cli::SweepKind::ratio;
  cfg.start = 0.1;
  cfg.stop = 10.0;
  cfg.steps = 101;
  cfg.product = 2.0;
  cfg.fixed = {1.0, 1.0, 1.0, 1.0, 1.0};
  const auto rows = cli::run_sweep(cfg);
  const std::size_t mid = rows.size() / 2;
  o.require(std::abs(rows[mid].sweep_value - 1.0) < 1e-12, "middle row is not r = 1");
  o.require(rows[mid].e_f < 1e-12, "E_F(1) = " + str(rows[mid].e_f));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i != mid) o.require(rows[i].e_f > 0.0, "E_F not positive at r = " + str(rows[i].sweep_value));
    if (i < mid) o.require(rows[i].e_f > rows[i + 1].e_f, "not decreasing toward r = 1 at " + str(rows[i].sweep_value));
    if (i > mid) o.require(rows[i].e_f > rows[i - 1].e_f, "not increasing away from r = 1 at " + str(rows[i].sweep_value));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const OscillatorParams p = cli::sweep_point(cfg, rows[i].sweep_value);
    const OscillatorParams swapped{p.m2, p.m1, p.alpha2, p.alpha1, p.theta};
    const double ef_swap = entanglement_of_formation(es_closed_form(swapped)).e_f;
    const double mirror = rows[rows.size() - 1 - i].e_f;  // r -> 1/r
    worst = std::max({worst, std::abs(ef_swap - rows[i].e_f), std::abs(mirror - rows[i].e_f)});
  }
  o.require(worst <= 1e-10, "symmetry defect " + str(worst));
  o.detail << "E_F(1) = " << str(rows[mid].e_f) << " (limit 1e-12), strictly increasing away from r = 1 on both sides, "
           << "E_F(r) vs E_F(1/r) and swap defect " << str(worst) << " (limit 1e-10)";
}

void ac5(Outcome& o) {
  double worst_eig = 0.0, worst_vieta = 0.0;
  for (const auto& p : random_params(500, 5005)) {
    const ModeSpectrum s = mode_spectrum(p);
    worst_eig = std::max(worst_eig, eigenvalue_mismatch(numeric_eigenvalues(build_omega_matrix(p)), s));
    const double s1 = s.sigma1 * s.sigma1, s2 = s.sigma2 * s.sigma2;
    worst_vieta = std::max({worst_vieta, std::abs(s1 + s2 - s.b) / s.b, std::abs(s1 * s2 - s.c) / s.c});
  }
  o.require(worst_eig <= 1e-8, "eigenvalue mismatch " + str(worst_eig));
  o.require(worst_vieta <= 1e-10, "Vieta defect " + str(worst_vieta));
  o.detail << "500 sets, eigenvalue mismatch " << str(worst_eig) << " (limit 1e-8), Vieta defect "
           << str(worst_vieta) << " (limit 1e-10)";
}

void ac6(Outcome& o) {
  const auto t0 = Clock::now();
  const OscillatorParams p = reference_case(1.0);
  const GroundStateLambda lam = ground_state_lambda_closed(p, mode_spectrum(p));
  const GridSpec grid;  // 257^2
  const double r = schrodinger_residual(p, lam, grid);
  o.require(grid.points_per_axis == 257, "grid is not 257^2");
  o.require(r < 5e-3, "residual " + str(r));
  const ConvergenceStudy study = schrodinger_convergence(p, lam, grid.extent, 65, 3);
  for (double order : study.orders) o.require(std::abs(order - 2.0) <= 0.2, "order " + str(order));
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 30.0, "runtime " + str(elapsed) + " s");
  o.detail << "residual " << str(r) << " on 257^2 (limit 5e-3), orders";
  for (double order : study.orders) o.detail << ' ' << str(order);
  o.detail << " (2.0 +- 0.2), " << str(elapsed) << " s (limit 30 s)";
}

void ac7(Outcome& o) {
  double worst = 0.0;
  int complex_all = 0;
  for (const auto& s : random_states(50, 7007)) {
    if (s.alpha.imag() != 0.0 && s.beta.imag() != 0.0 && s.gamma.imag() != 0.0) ++complex_all;
    const double err = covariance_mismatch(gaussian_moment_quadrature(s, GridSpec{}), covariance_blocks(s));
    worst = std::max(worst, err);
    o.require(err <= 1e-6, "moment mismatch " + str(err));
  }
  o.require(complex_all > 0, "no state with complex alpha, beta, gamma");
  o.detail << "50 states (" << complex_all << " fully complex), worst moment mismatch " << str(worst)
           << " (limit 1e-6)";
}

void ac8(Outcome& o) {
  double worst_l = 0.0, worst_f = 0.0;
  const OscillatorParams shapes[] = {{1.0, 1.0, 1.0, 1.0, 0.0}, {2.0, 2.0, 3.0, 3.0, 0.0},
                                     {0.3, 0.3, 7.5, 7.5, 0.0}};
  for (OscillatorParams p : shapes) {
    for (double theta : {0.1, 1.0, 10.0}) {
      p.theta = theta;
      const GroundStateLambda lam = ground_state_lambda_closed(p, mode_spectrum(p));
      const double e_f_closed = entanglement_of_formation(es_closed_form(p)).e_f;
      const double e_f_pipeline = entanglement_of_formation(es_via_lambda(lam)).e_f;
      worst_l = std::max(worst_l, std::abs(lam.lambda12));
      worst_f = std::max({worst_f, e_f_closed, e_f_pipeline});
    }
  }
  o.require(worst_l <= 1e-14, "|Lambda12| = " + str(worst_l));
  o.require(worst_f <= 1e-14, "E_F = " + str(worst_f));
  o.detail << "theta in {0.1, 1, 10}, max |Lambda12| " << str(worst_l) << ", max E_F " << str(worst_f)
           << " (limit 1e-14)";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"AC1 three-route E_S agreement", ac1},
      {"AC2 separability criterion", ac2},
      {"AC3 E_F versus theta", ac3},
      {"AC4 E_F versus anisotropy ratio", ac4},
      {"AC5 spectrum oracle", ac5},
      {"AC6 ground-state Schroedinger residual", ac6},
      {"AC7 covariance quadrature", ac7},
      {"AC8 isotropic null result", ac8},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
