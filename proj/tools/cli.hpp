#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "ncosc/gaussian_state.hpp"
#include "ncosc/oracles.hpp"
#include "ncosc/oscillator.hpp"

namespace ncosc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kSingular = 3,
  kIo = 4,
  kValidationFailed = 5,
};

enum class SweepKind { theta, ratio };

// theta sweeps are linear in theta; ratio sweeps are geometric in r with
// alpha1 * alpha2 held at `product`.
struct SweepConfig {
  SweepKind kind = SweepKind::theta;
  double start = 0.0;
  double stop = 10.0;
  int steps = 101;
  OscillatorParams fixed;
  double product = 2.0;

  // Throws ConfigurationError unless start < stop, steps >= 2 and, for ratio
  // sweeps, start > 0 and product > 0.
  void validate() const;
};

struct SweepRow {
  double sweep_value;
  double e_s;
  double omega;
  double e_f;
  double sigma1;
  double sigma2;
};

struct Analysis {
  OscillatorParams params;
  CanonicalSystem canonical;
  ModeSpectrum spectrum;
  double e00;
  GroundStateLambda lambda;
  double ratio;
  double e_s_covariance;  // E_S through the covariance blocks of psi00
  EntanglementReport entanglement;
  AsymptoticBounds bounds;
};

struct SpectrumLine {
  unsigned n1;
  unsigned n2;
  double energy;
};

Analysis analyze(const OscillatorParams& params, double tolerance = kDefaultTolerance);

std::vector<double> sweep_values(const SweepConfig& config);

// Parameters at one sweep value.  For ratio sweeps
//   alpha1 = sqrt(product * r * m1 / m2),  alpha2 = product / alpha1.
OscillatorParams sweep_point(const SweepConfig& config, double value);

std::vector<SweepRow> run_sweep(const SweepConfig& config, double tolerance = kDefaultTolerance);

// Header `sweep_value,e_s,omega,e_f,sigma1,sigma2`, 12 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// E_{n1 n2} for n1, n2 <= n_max, ascending.
std::vector<SpectrumLine> spectrum_table(const ModeSpectrum& spectrum, unsigned n_max);

nlohmann::ordered_json analysis_json(const Analysis& analysis);
nlohmann::ordered_json validation_json(const ValidationReport& report);

// Full command line, argv[0] included.  Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncosc::cli
