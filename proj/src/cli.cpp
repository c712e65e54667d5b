#include <saltice/cli.hpp>

#include <saltice/critical_curves.hpp>
#include <saltice/exact_ensemble.hpp>
#include <saltice/io.hpp>
#include <saltice/lattice_sim.hpp>
#include <saltice/numerics.hpp>
#include <saltice/phase_diagram.hpp>
#include <saltice/selftest.hpp>
#include <saltice/variational.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace saltice::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kDescription =
    "Phase diagram of a dilute salt solution near freezing, modelled as an Ising\n"
    "model with canonical salt. Every output file starts with a '#' header that\n"
    "echoes the version, the resolved parameters and the seed.\n\n"
    "Each subcommand accepts --config FILE with one key=value per line (keys are\n"
    "the long flag names); flags on the command line override the file.\n"
    "Relative output paths are resolved against $SALTICE_OUTPUT_DIR when set.";

fs::path resolve_output(const std::string& given, const std::string& fallback) {
  fs::path p = given.empty() ? fs::path(fallback) : fs::path(given);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0')
      p = fs::path(dir) / p;
  }
  return p;
}

// Writes through `body` either to `out` (path "-") or to a file; returns the place written.
std::string write_to(const std::string& given, const std::string& fallback, std::ostream& out,
                     const std::function<void(std::ostream&)>& body) {
  if (given == "-") {
    body(out);
    return "stdout";
  }
  const auto path = resolve_output(given, fallback);
  auto file = open_output(path);
  body(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
  return path.string();
}

std::string bc_check(const std::string& text) {
  try {
    parse_boundary_condition(text);
    return {};
  } catch (const std::invalid_argument&) {
    return "boundary condition must be plus or minus, got '" + text + "'";
  }
}

struct ModelOptions {
  ModelParams params;
  std::string bc = "plus";

  BoundaryCondition boundary() const { return parse_boundary_condition(bc); }

  void attach(CLI::App* app) {
    app->add_option("--bc", bc, "boundary condition: plus (liquid) or minus (ice)")
        ->check(bc_check)
        ->capture_default_str();
    app->add_option("--d", params.d, "lattice dimension")->capture_default_str();
    app->add_option("--mstar", params.m_star, "spontaneous magnetization m*")->capture_default_str();
    app->add_option("--w1", params.w1, "unit-volume droplet surface energy")->capture_default_str();
    app->add_option("--kappa", params.kappa, "salt-ice repulsion")->capture_default_str();
  }

  void describe(OutputHeader& h) const {
    h.add("bc", std::string(to_string(boundary())));
    h.add("d", std::to_string(params.d));
    h.add("m_star", params.m_star);
    h.add("w1", params.w1);
    h.add("kappa", params.kappa);
  }
};

void add_config(CLI::App* app) {
  // Consumed by expand_config before parsing; registered so --help lists it.
  app->add_option("--config", "key=value file; command-line flags take precedence");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splices the entries of --config FILE in as --key=value right after the
// subcommand name, so any flag given on the command line comes later and wins.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string file;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (file.empty()) return args;
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("--config: cannot read '" + file + "'");
  std::vector<std::string> entries;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? std::string() : trim(line.substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("--config: " + file + ":" + std::to_string(number) +
                                  ": expected key=value");
    if (key == "config") throw std::invalid_argument("--config: files cannot include other files");
    entries.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  args.insert(args.begin() + 1, entries.begin(), entries.end());
  return args;
}

void add_thresholds(OutputHeader& h, const CriticalCurves& c, const ModelParams& p) {
  h.add("xi_t", c.xi_t);
  h.add("xi_u", c.xi_u);
  if (c.xi_1) h.add("xi_1", *c.xi_1);
  if (c.xi_2) h.add("xi_2", *c.xi_2);
  if (c.bc == BoundaryCondition::Minus)
    h.add("gap_condition", gap_condition_holds(p) ? "true" : "false");
  if (c.m0) h.add("m0", *c.m0);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app(kDescription, "saltice");
  app.set_version_flag("--version", std::string("saltice ") + kVersion);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.footer("Exit status: 0 success, 1 domain error, 2 usage error.");

  std::function<void()> action;

  // curves
  ModelOptions curves_model;
  int curves_samples = kDefaultCurveSamples;
  double curves_xi_max = 0.0;
  std::string curves_output;
  auto* curves = app.add_subcommand("curves", "sample the critical curves and report the thresholds");
  curves_model.attach(curves);
  curves->add_option("--samples", curves_samples, "number of xi samples (log-spaced)")
      ->capture_default_str();
  curves->add_option("--xi-max", curves_xi_max, "largest xi sampled; 0 picks a default");
  curves->add_option("--output,-o", curves_output, "output CSV path, '-' for stdout")
      ->default_str("curves_<bc>.csv");
  add_config(curves);
  curves->callback([&] {
    action = [&] {
      const auto bc = curves_model.boundary();
      const auto c = sample_curves(curves_model.params, bc, curves_samples, curves_xi_max);
      OutputHeader h;
      h.command = "curves";
      curves_model.describe(h);
      h.add("samples", std::to_string(curves_samples));
      h.add("xi_max", c.samples.back().xi);
      add_thresholds(h, c, curves_model.params);
      const auto where = write_to(curves_output, "curves_" + std::string(to_string(bc)) + ".csv",
                                  out, [&](std::ostream& os) {
                                    write_header(os, h);
                                    os << "xi,b_upper,b_lower\n";
                                    for (const auto& s : c.samples)
                                      os << format_number(s.xi, 12) << ','
                                         << format_number(s.b_upper, 12) << ','
                                         << format_number(s.b_lower, 12) << '\n';
                                  });
      if (where != "stdout") out << "wrote " << where << '\n';
    };
  });

  // diagram
  ModelOptions diagram_model;
  GridSpec grid;
  std::string diagram_format = "csv";
  std::string diagram_output;
  auto* diagram = app.add_subcommand("diagram", "rasterize the (xi, b) phase diagram");
  diagram_model.attach(diagram);
  diagram->add_option("--xi-min", grid.xi_min)->capture_default_str();
  diagram->add_option("--xi-max", grid.xi_max)->capture_default_str();
  diagram->add_option("--b-min", grid.b_min)->capture_default_str();
  diagram->add_option("--b-max", grid.b_max)->capture_default_str();
  diagram->add_option("--nx", grid.nx, "cells along xi")->capture_default_str();
  diagram->add_option("--ny", grid.ny, "cells along b")->capture_default_str();
  diagram->add_option("--format", diagram_format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}))
      ->capture_default_str();
  diagram->add_option("--output,-o", diagram_output, "output path, '-' for stdout")
      ->default_str("diagram_<bc>.<format>");
  add_config(diagram);
  diagram->callback([&] {
    action = [&] {
      const auto bc = diagram_model.boundary();
      const auto format = parse_diagram_format(diagram_format);
      const auto r = raster(diagram_model.params, bc, grid);
      const auto where = write_to(
          diagram_output, "diagram_" + std::string(to_string(bc)) + "." + diagram_format, out,
          [&](std::ostream& os) {
            if (format == DiagramFormat::Csv)
              write_csv(r, os);
            else
              write_svg(r, os);
          });
      if (where != "stdout") out << "wrote " << where << '\n';
    };
  });

  // minimize
  ModelOptions min_model;
  ThermoPoint point;
  auto* minimize = app.add_subcommand("minimize", "global minimizers of the reduced rate function");
  min_model.attach(minimize);
  minimize->add_option("--b", point.b, "scaled field")->required();
  minimize->add_option("--xi", point.xi, "scaled salt concentration")->required();
  add_config(minimize);
  minimize->callback([&] {
    action = [&] {
      const auto bc = min_model.boundary();
      const auto set = minimize_q(min_model.params, bc, point);
      OutputHeader h;
      h.command = "minimize";
      min_model.describe(h);
      h.add("b", point.b);
      h.add("xi", point.xi);
      write_header(out, h);
      out << "kind = " << to_string(set.kind) << '\n';
      out << "multiplicity = " << set.multiplicity() << '\n';
      out << "value = " << format_number(set.value, 15) << '\n';
      out << "minimizers =";
      for (std::size_t i = 0; i < set.minimizers.size(); ++i)
        out << (i ? ", " : " ") << format_number(set.minimizers[i], 15);
      out << '\n';
      out << "droplet_fraction =";
      for (std::size_t i = 0; i < set.minimizers.size(); ++i)
        out << (i ? ", " : " ")
            << format_number(droplet_fraction(min_model.params, bc, set.minimizers[i]), 15);
      out << '\n';
    };
  });

  // oracle
  ExactSpec spec;
  std::string oracle_bc = "plus";
  std::string oracle_output;
  auto* oracle = app.add_subcommand("oracle", "exact (M, Q) distribution on an L x L box, L <= 5");
  oracle->add_option("--L", spec.L, "box side")->capture_default_str();
  oracle->add_option("--bc", oracle_bc, "boundary ring: plus or minus")
      ->check(bc_check)
      ->capture_default_str();
  oracle->add_option("--J", spec.J, "Ising coupling")->capture_default_str();
  oracle->add_option("--kappa", spec.kappa, "salt-ice repulsion")->capture_default_str();
  oracle->add_option("--c", spec.c, "salt concentration")->capture_default_str();
  oracle->add_option("--field", spec.h, "magnetic field h")->capture_default_str();
  oracle->add_option("--workers", spec.workers, "enumeration threads")->capture_default_str();
  oracle->add_option("--output,-o", oracle_output, "output CSV path, '-' for stdout")
      ->default_str("oracle_L<L>.csv");
  add_config(oracle);
  oracle->callback([&] {
    action = [&] {
      spec.bc = parse_boundary_condition(oracle_bc);
      const auto dist = exact_distribution(spec);
      const auto where = write_to(oracle_output, "oracle_L" + std::to_string(spec.L) + ".csv", out,
                                  [&](std::ostream& os) { write_csv(dist, os); });
      if (where != "stdout") out << "wrote " << where << '\n';
    };
  });

  // simulate
  SimConfig sim;
  std::string sim_bc = "plus";
  std::string sim_move = "heat_bath";
  std::string sim_output;
  double sim_m_star = 0.0;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run on an L x L box");
  simulate->add_option("--L", sim.L, "box side")->capture_default_str();
  simulate->add_option("--J", sim.J, "Ising coupling")->capture_default_str();
  simulate->add_option("--kappa", sim.kappa, "salt-ice repulsion")->capture_default_str();
  simulate->add_option("--c", sim.c, "salt concentration")->capture_default_str();
  simulate->add_option("--field", sim.h, "magnetic field h")->capture_default_str();
  simulate->add_option("--bc", sim_bc, "boundary ring: plus or minus")
      ->check(bc_check)
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  simulate->add_option("--sweeps", sim.sweeps)->capture_default_str();
  simulate->add_option("--burn-in", sim.burn_in)->capture_default_str();
  simulate->add_option("--thinning", sim.thinning)->capture_default_str();
  simulate->add_option("--salt-move", sim_move, "heat_bath or pair_swap")
      ->check(CLI::IsMember({"heat_bath", "pair_swap"}))
      ->capture_default_str();
  simulate->add_option("--mstar", sim_m_star,
                       "m* for the droplet-fraction estimate; 0 uses the exact value for J");
  simulate->add_option("--output,-o", sim_output, "output prefix for the series and histogram CSVs")
      ->default_str("simulate");
  add_config(simulate);
  simulate->callback([&] {
    action = [&] {
      sim.bc = parse_boundary_condition(sim_bc);
      sim.salt_move = parse_salt_move(sim_move);
      const auto series = run(sim);
      const std::string prefix = sim_output.empty() ? std::string("simulate") : sim_output;
      const auto series_path =
          write_to(prefix + "_series.csv", "", out, [&](std::ostream& os) { write_series_csv(series, os); });
      const auto hist_path = write_to(prefix + "_histogram.csv", "", out,
                                      [&](std::ostream& os) { write_histogram_csv(series, os); });
      out << "records = " << series.records.size() << '\n';
      out << "N = " << series.N << '\n';
      out << "mean_m_per_site = " << format_number(series.mean_m() / sim.volume()) << '\n';
      const double ms = sim_m_star > 0.0 ? sim_m_star : onsager_m_star(sim.J);
      if (ms > 0.0 && ms < 1.0)
        out << "droplet_fraction = " << format_number(droplet_fraction_estimate(series, ms)) << '\n';
      out << "wrote " << series_path << '\n' << "wrote " << hist_path << '\n';
    };
  });

  // selftest
  auto* selftest = app.add_subcommand("selftest", "recheck reference values against the library");
  bool selftest_ok = true;
  selftest->callback([&] { action = [&] { selftest_ok = report(run_selftest(), out); }; });

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
    const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
    const bool known = std::any_of(subs.begin(), subs.end(),
                                   [&](const CLI::App* s) { return s->get_name() == args.front(); });
    if (!known) {
      err << "usage error: unknown subcommand '" << args.front() << "'\n"
          << "Run with --help for more information.\n";
      return kExitUsage;
    }
  }

  try {
    const auto expanded = args.empty() ? args : expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (action) action();
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const numerics::BracketError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return selftest_ok ? kExitOk : kExitDomain;
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace saltice::cli
