// qbm-thermo: curves, figure data and consistency reports for the damped
// quantum oscillator and the free quantum Brownian particle.
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbm/report.hpp"

namespace {

using qbm::report::CurveSpec;
using qbm::report::Kernel;
using qbm::report::Model;
using qbm::report::Route;
using qbm::report::UsageError;

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

struct CommonOptions {
  std::string model = "oscillator";
  std::string kernel = "ohmic";
  double alpha = 1.0;
  std::string cutoff = "inf";
  double t_min = 1e-3;
  double t_max = 10.0;
  int points = 400;
  bool log_grid = false;
  std::string route = "both";
  std::string quantities = "C";
  std::string out;
  double tol = 1e-12;
  unsigned threads = 0;
};

void add_grid_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--model", o.model, "oscillator | free")->capture_default_str();
  cmd->add_option("--kernel", o.kernel, "ohmic | drude")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "gamma / omega0 (oscillator)")->capture_default_str();
  cmd->add_option("--cutoff-ratio", o.cutoff, "omega_D / gamma (drude), or inf")
      ->capture_default_str();
  cmd->add_option("--tmin", o.t_min, "lowest reduced temperature")->capture_default_str();
  cmd->add_option("--tmax", o.t_max, "highest reduced temperature")->capture_default_str();
  cmd->add_option("--points", o.points, "number of grid points")->capture_default_str();
  cmd->add_flag("--log", o.log_grid, "logarithmic temperature grid");
  cmd->add_option("--out", o.out, "output file (default: stdout)");
  cmd->add_option("--tol", o.tol, "relative Matsubara tail tolerance")->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)")->capture_default_str();
}

double parse_cutoff(const std::string& s) {
  if (s == "inf" || s == "infinity") return qbm::infinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("");
    return v;
  } catch (const std::exception&) {
    throw UsageError("--cutoff-ratio must be a number or 'inf'");
  }
}

CurveSpec make_spec(const CommonOptions& o) {
  CurveSpec s;
  if (o.model == "oscillator")
    s.model = Model::Oscillator;
  else if (o.model == "free")
    s.model = Model::Free;
  else
    throw UsageError("--model must be oscillator or free");

  if (o.kernel == "ohmic")
    s.kernel = Kernel::Ohmic;
  else if (o.kernel == "drude")
    s.kernel = Kernel::Drude;
  else
    throw UsageError("--kernel must be ohmic or drude");

  if (o.route == "energy")
    s.route = Route::Energy;
  else if (o.route == "partition")
    s.route = Route::Partition;
  else if (o.route == "both")
    s.route = Route::Both;
  else
    throw UsageError("--route must be energy, partition or both");

  s.quantities = {};
  s.quantities.C = false;
  std::stringstream ss(o.quantities);
  std::string q;
  while (std::getline(ss, q, ',')) {
    if (q == "E")
      s.quantities.E = true;
    else if (q == "S")
      s.quantities.S = true;
    else if (q == "C")
      s.quantities.C = true;
    else
      throw UsageError("--quantities takes a comma-separated subset of E,S,C");
  }

  s.alpha = o.alpha;
  s.cutoff_ratio = parse_cutoff(o.cutoff);
  s.t_min = o.t_min;
  s.t_max = o.t_max;
  s.points = o.points;
  s.log_grid = o.log_grid;
  s.tol = o.tol;
  s.threads = o.threads;
  return s;
}

template <class Write>
void emit(const std::string& path, Write&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write(f);
}

nlohmann::json optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

nlohmann::json compare_json(const qbm::report::CompareReport& rep) {
  nlohmann::json j;
  j["command"] = "compare";
  j["version"] = qbm::version;
  j["parameters"] = rep.spec.describe();
  j["strict_ohmic_identity"] = rep.strict_ohmic_identity;
  auto& pts = j["points"] = nlohmann::json::array();
  for (const auto& p : rep.points) {
    pts.push_back({{"theta", p.theta},
                   {"E_direct", optional_number(p.E_direct)},
                   {"E_partition", optional_number(p.E_partition)},
                   {"gap", optional_number(p.gap)},
                   {"C_closed", optional_number(p.C_closed)},
                   {"C_fd_direct", optional_number(p.C_fd_direct)},
                   {"C_fd_partition", optional_number(p.C_fd_partition)},
                   {"status", p.status}});
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermodynamics of quantum Brownian motion at finite dissipation"};
  app.require_subcommand(1);

  CommonOptions curve_opt;
  auto* curve = app.add_subcommand("curve", "tabulate C, S and E over a temperature grid");
  add_grid_options(curve, curve_opt);
  curve->add_option("--route", curve_opt.route, "energy | partition | both")->capture_default_str();
  curve->add_option("--quantities", curve_opt.quantities, "subset of E,S,C")->capture_default_str();

  std::string fig_dir = ".";
  qbm::report::Fig1Spec fig_spec;
  auto* fig1 = app.add_subcommand("fig1", "free-particle specific heat: main curve and cutoff inset");
  fig1->add_option("--out", fig_dir, "directory for fig1_main.csv and fig1_inset.csv")
      ->capture_default_str();
  fig1->add_option("--tmin", fig_spec.t_min, "lowest theta_gamma")->capture_default_str();
  fig1->add_option("--tmax", fig_spec.t_max, "highest theta_gamma")->capture_default_str();
  fig1->add_option("--points", fig_spec.points, "grid points (log-spaced)")->capture_default_str();
  fig1->add_option("--threads", fig_spec.threads, "worker threads (0: all cores)");

  CommonOptions cmp_opt;
  cmp_opt.points = 20;
  cmp_opt.t_min = 0.1;
  auto* cmp = app.add_subcommand("compare", "energy versus partition-function prescription (JSON)");
  add_grid_options(cmp, cmp_opt);

  CommonOptions exp_opt;
  exp_opt.points = 20;
  auto* exps = app.add_subcommand("expansions", "accuracy of the asymptotic expansions (CSV)");
  add_grid_options(exps, exp_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*curve) {
      const auto table = qbm::report::curve_table(make_spec(curve_opt));
      emit(curve_opt.out, [&](std::ostream& os) { table.write_csv(os); });
    } else if (*fig1) {
      const auto tables = qbm::report::fig1_tables(fig_spec);
      std::filesystem::create_directories(fig_dir);
      const auto dir = std::filesystem::path(fig_dir);
      emit((dir / "fig1_main.csv").string(), [&](std::ostream& os) { tables.main.write_csv(os); });
      emit((dir / "fig1_inset.csv").string(), [&](std::ostream& os) { tables.inset.write_csv(os); });
    } else if (*cmp) {
      const auto rep = qbm::report::compare(make_spec(cmp_opt));
      emit(cmp_opt.out, [&](std::ostream& os) { os << compare_json(rep).dump(2) << '\n'; });
    } else if (*exps) {
      const auto spec = make_spec(exp_opt);
      const auto rows = qbm::report::expansion_report(spec);
      const auto table = qbm::report::expansion_table(spec, rows);
      emit(exp_opt.out, [&](std::ostream& os) { table.write_csv(os); });
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const qbm::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const qbm::report::PointFailure& e) {
    std::cerr << e.what() << '\n';
    return exit_numerical;
  } catch (const qbm::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
