#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ncosc/errors.hpp"

namespace ncosc::cli {

namespace {

constexpr int kCsvDigits = 12;

struct IoError : Error {
  using Error::Error;
};

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(kCsvDigits) << v;
  return os.str();
}

void write_key_value_csv(std::ostream& out, const nlohmann::ordered_json& obj) {
  out << "quantity,value\n";
  for (const auto& [key, value] : obj.items()) {
    out << key << ',';
    if (value.is_boolean()) {
      out << (value.get<bool>() ? "true" : "false");
    } else if (value.is_number()) {
      out << format_number(value.get<double>());
    } else if (value.is_array()) {
      out << '"' << value.dump() << '"';
    } else {
      out << value.get<std::string>();
    }
    out << '\n';
  }
}

nlohmann::json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError("invalid config file " + path + ": " + e.what());
  }
}

template <class T>
void override_from(const nlohmann::json& cfg, const char* key, T& target) {
  if (!cfg.contains(key)) return;
  try {
    target = cfg.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("config key '") + key + "': " + e.what());
  }
}

// Output goes to --output when given, otherwise to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.emplace(path);
      if (!*file_) throw IoError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : fallback_; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write to output failed");
  }

 private:
  std::ostream& fallback_;
  std::optional<std::ofstream> file_;
};

}  // namespace

void SweepConfig::validate() const {
  if (!(start < stop)) throw ConfigurationError("sweep needs start < stop");
  if (steps < 2) throw ConfigurationError("sweep needs at least 2 steps");
  if (kind == SweepKind::ratio) {
    if (!(start > 0.0)) throw ConfigurationError("ratio sweep needs start > 0");
    if (!(product > 0.0)) throw ConfigurationError("ratio sweep needs alpha1*alpha2 > 0");
  } else if (!(start >= 0.0)) {
    throw ConfigurationError("theta sweep needs start >= 0");
  }
}

Analysis analyze(const OscillatorParams& params, double tolerance) {
  params.validate();
  Analysis a;
  a.params = params;
  a.canonical = bopp_shift(params);
  a.spectrum = mode_spectrum(params, tolerance);
  a.e00 = energy_level(a.spectrum, 0, 0);
  a.lambda = ground_state_lambda_closed(params, a.spectrum);
  a.ratio = anisotropy_ratio(params);
  a.e_s_covariance = simon_es(covariance_blocks(ground_state_as_gaussian(a.lambda)));
  a.entanglement = entanglement_report(es_closed_form(params), tolerance);
  a.bounds = asymptotic_bounds(params);
  return a;
}

std::vector<double> sweep_values(const SweepConfig& config) {
  config.validate();
  std::vector<double> values(config.steps);
  const double last = config.steps - 1;
  for (int k = 0; k < config.steps; ++k) {
    const double t = k / last;
    if (config.kind == SweepKind::theta) {
      values[k] = config.start + t * (config.stop - config.start);
    } else {
      values[k] = std::pow(config.start, 1.0 - t) * std::pow(config.stop, t);
    }
  }
  values.front() = config.start;
  values.back() = config.stop;
  return values;
}

OscillatorParams sweep_point(const SweepConfig& config, double value) {
  OscillatorParams p = config.fixed;
  if (config.kind == SweepKind::theta) {
    p.theta = value;
  } else {
    p.alpha1 = std::sqrt(config.product * value * p.m1 / p.m2);
    p.alpha2 = config.product / p.alpha1;
  }
  return p;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, double tolerance) {
  std::vector<SweepRow> rows;
  for (double v : sweep_values(config)) {
    const Analysis a = analyze(sweep_point(config, v), tolerance);
    rows.push_back({v, a.entanglement.e_s, a.entanglement.omega, a.entanglement.e_f,
                    a.spectrum.sigma1, a.spectrum.sigma2});
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "sweep_value,e_s,omega,e_f,sigma1,sigma2\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.sweep_value) << ',' << format_number(r.e_s) << ','
        << format_number(r.omega) << ',' << format_number(r.e_f) << ','
        << format_number(r.sigma1) << ',' << format_number(r.sigma2) << '\n';
  }
}

std::vector<SpectrumLine> spectrum_table(const ModeSpectrum& spectrum, unsigned n_max) {
  std::vector<SpectrumLine> lines;
  for (unsigned n1 = 0; n1 <= n_max; ++n1) {
    for (unsigned n2 = 0; n2 <= n_max; ++n2) {
      lines.push_back({n1, n2, energy_level(spectrum, n1, n2)});
    }
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const SpectrumLine& a, const SpectrumLine& b) { return a.energy < b.energy; });
  return lines;
}

nlohmann::ordered_json analysis_json(const Analysis& a) {
  nlohmann::ordered_json j;
  j["m1"] = a.params.m1;
  j["m2"] = a.params.m2;
  j["alpha1"] = a.params.alpha1;
  j["alpha2"] = a.params.alpha2;
  j["theta"] = a.params.theta;
  j["big_m1"] = a.canonical.big_m1;
  j["big_m2"] = a.canonical.big_m2;
  j["omega1_sq"] = a.canonical.omega1_sq;
  j["omega2_sq"] = a.canonical.omega2_sq;
  j["b"] = a.spectrum.b;
  j["c"] = a.spectrum.c;
  j["d"] = a.spectrum.d;
  j["sigma1"] = a.spectrum.sigma1;
  j["sigma2"] = a.spectrum.sigma2;
  j["degenerate"] = a.spectrum.degenerate;
  j["e00"] = a.e00;
  j["lambda11"] = a.lambda.lambda11;
  j["lambda22"] = a.lambda.lambda22;
  j["lambda12_re"] = a.lambda.lambda12.real();
  j["lambda12_im"] = a.lambda.lambda12.imag();
  j["r"] = a.ratio;
  j["e_s"] = a.entanglement.e_s;
  j["e_s_covariance"] = a.e_s_covariance;
  j["omega"] = a.entanglement.omega;
  j["e_f"] = a.entanglement.e_f;
  j["e_s_limit"] = a.bounds.e_s_limit;
  j["omega0"] = a.bounds.omega0;
  j["e_f_bound"] = a.bounds.e_f_bound;
  j["separable"] = a.entanglement.separable;
  return j;
}

nlohmann::ordered_json validation_json(const ValidationReport& r) {
  nlohmann::ordered_json j;
  j["eigen_residual"] = r.eigen_residual;
  j["schrodinger_residual"] = r.schrodinger_residual;
  j["moment_max_err"] = r.moment_max_err;
  j["es_agreement"] = r.es_agreement;
  j["e_s"] = r.e_s;
  j["e00"] = r.e00;
  j["passed"] = r.passed;
  j["failures"] = r.failures;
  return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement of an anisotropic oscillator on a noncommutative plane", "ncosc"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output_path;
  std::string format = "csv";
  double tolerance = kDefaultTolerance;
  std::string config_path;
  app.add_option("--output", output_path, "Write results to this file instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tolerance", tolerance, "Relative comparison tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--config", config_path, "JSON file whose keys override flags");

  OscillatorParams params;
  auto add_params = [&params](CLI::App* cmd) {
    cmd->add_option("--m1", params.m1, "Mass of oscillator 1");
    cmd->add_option("--m2", params.m2, "Mass of oscillator 2");
    cmd->add_option("--alpha1", params.alpha1, "Stiffness alpha1 (potential alpha1 X1^2)");
    cmd->add_option("--alpha2", params.alpha2, "Stiffness alpha2 (potential alpha2 X2^2)");
    cmd->add_option("--theta", params.theta, "Noncommutativity parameter");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Spectrum, ground state and entanglement");
  add_params(analyze_cmd);

  SweepConfig sweep;
  std::string kind = "theta";
  auto* sweep_cmd = app.add_subcommand("sweep", "E_F against theta or the anisotropy ratio");
  add_params(sweep_cmd);
  sweep_cmd->add_option("--kind", kind, "theta or ratio")->check(CLI::IsMember({"theta", "ratio"}));
  sweep_cmd->add_option("--start", sweep.start, "First sweep value");
  sweep_cmd->add_option("--stop", sweep.stop, "Last sweep value");
  sweep_cmd->add_option("--steps", sweep.steps, "Number of rows");
  sweep_cmd->add_option("--product", sweep.product, "alpha1*alpha2 held fixed in ratio sweeps");

  unsigned n_max = 2;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Energy levels E_{n1 n2}");
  add_params(spectrum_cmd);
  spectrum_cmd->add_option("--n-max", n_max, "Largest quantum number per mode");

  GridSpec grid;
  ValidationThresholds thresholds;
  auto* validate_cmd = app.add_subcommand("validate", "Check closed forms against numerical oracles");
  add_params(validate_cmd);
  validate_cmd->add_option("--grid-points", grid.points_per_axis, "Grid points per axis");
  validate_cmd->add_option("--grid-extent", grid.extent, "Grid half-width in characteristic lengths");
  validate_cmd->add_option("--eigen-threshold", thresholds.eigen);
  validate_cmd->add_option("--schrodinger-threshold", thresholds.schrodinger);
  validate_cmd->add_option("--moment-threshold", thresholds.moments);
  validate_cmd->add_option("--es-threshold", thresholds.es_agreement);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (!config_path.empty()) {
      const nlohmann::json cfg = read_config(config_path);
      override_from(cfg, "m1", params.m1);
      override_from(cfg, "m2", params.m2);
      override_from(cfg, "alpha1", params.alpha1);
      override_from(cfg, "alpha2", params.alpha2);
      override_from(cfg, "theta", params.theta);
      override_from(cfg, "tolerance", tolerance);
      override_from(cfg, "format", format);
      override_from(cfg, "kind", kind);
      override_from(cfg, "start", sweep.start);
      override_from(cfg, "stop", sweep.stop);
      override_from(cfg, "steps", sweep.steps);
      override_from(cfg, "product", sweep.product);
      override_from(cfg, "n_max", n_max);
      override_from(cfg, "grid_points", grid.points_per_axis);
      override_from(cfg, "grid_extent", grid.extent);
      if (format != "csv" && format != "json") throw ConfigurationError("format must be csv or json");
      if (kind != "theta" && kind != "ratio") throw ConfigurationError("kind must be theta or ratio");
    }
    params.validate();
    const bool json = format == "json";

    if (analyze_cmd->parsed()) {
      const Analysis a = analyze(params, tolerance);
      Sink sink(output_path, out);
      if (json) {
        sink.stream() << analysis_json(a).dump(2) << '\n';
      } else {
        write_key_value_csv(sink.stream(), analysis_json(a));
      }
      sink.finish();
      return kSuccess;
    }

    if (sweep_cmd->parsed()) {
      sweep.kind = kind == "ratio" ? SweepKind::ratio : SweepKind::theta;
      sweep.fixed = params;
      const std::vector<SweepRow> rows = run_sweep(sweep, tolerance);
      Sink sink(output_path, out);
      if (json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const SweepRow& r : rows) {
          arr.push_back({{"sweep_value", r.sweep_value}, {"e_s", r.e_s}, {"omega", r.omega},
                         {"e_f", r.e_f}, {"sigma1", r.sigma1}, {"sigma2", r.sigma2}});
        }
        sink.stream() << arr.dump(2) << '\n';
      } else {
        write_sweep_csv(sink.stream(), rows);
      }
      sink.finish();
      return kSuccess;
    }

    if (spectrum_cmd->parsed()) {
      const auto lines = spectrum_table(mode_spectrum(params, tolerance), n_max);
      Sink sink(output_path, out);
      if (json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& l : lines) arr.push_back({{"n1", l.n1}, {"n2", l.n2}, {"energy", l.energy}});
        sink.stream() << arr.dump(2) << '\n';
      } else {
        sink.stream() << "n1,n2,energy\n";
        for (const auto& l : lines) sink.stream() << l.n1 << ',' << l.n2 << ',' << format_number(l.energy) << '\n';
      }
      sink.finish();
      return kSuccess;
    }

    // validate
    ValidationOptions options;
    options.thresholds = thresholds;
    options.tolerance = tolerance;
    const ValidationReport report = run_validation(params, grid, options);
    Sink sink(output_path, out);
    if (json) {
      sink.stream() << validation_json(report).dump(2) << '\n';
    } else {
      write_key_value_csv(sink.stream(), validation_json(report));
    }
    sink.finish();
    if (!report.passed) {
      const nlohmann::ordered_json j = validation_json(report);
      for (const auto& name : report.failures) {
        err << "validation failed: " << name << " = " << j[name].get<double>() << '\n';
      }
      return kValidationFailed;
    }
    return kSuccess;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "singular configuration: " << e.what() << '\n';
    return kSingular;
  }
}

}  // namespace ncosc::cli
