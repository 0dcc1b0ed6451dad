#pragma once

// Tabulation behind the command-line tool: temperature grids, curve tables,
// the free-particle figure data, prescription comparisons and expansion
// accuracy reports. Grid points are evaluated on worker threads and written
// back by index, so output does not depend on the thread count.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qbm/core.hpp"
#include "qbm/free_particle.hpp"
#include "qbm/matsubara.hpp"
#include "qbm/oscillator.hpp"

namespace qbm::report {

enum class Model { Oscillator, Free };
enum class Kernel { Ohmic, Drude };
enum class Route { Energy, Partition, Both };

inline const char* to_string(Model m) { return m == Model::Oscillator ? "oscillator" : "free"; }
inline const char* to_string(Kernel k) { return k == Kernel::Ohmic ? "ohmic" : "drude"; }
inline const char* to_string(Route r) {
  switch (r) {
    case Route::Energy: return "energy";
    case Route::Partition: return "partition";
    case Route::Both: return "both";
  }
  return "?";
}

/// Invalid user input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A grid point whose evaluation failed; maps to exit code 3.
class PointFailure : public std::runtime_error {
 public:
  PointFailure(double theta, const std::string& what)
      : std::runtime_error("numerical failure at theta = " + detail::format_g(theta, 17) + ": " + what),
        theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

struct Quantities {
  bool E = false;
  bool S = false;
  bool C = true;
};

struct CurveSpec {
  Model model = Model::Oscillator;
  Kernel kernel = Kernel::Ohmic;
  double alpha = 1.0;               // oscillator: gamma / omega0
  double cutoff_ratio = infinity;   // omega_D / gamma, drude only
  double t_min = 1e-3;
  double t_max = 10.0;
  int points = 400;
  bool log_grid = true;
  Route route = Route::Both;
  Quantities quantities;
  double tol = 1e-12;
  unsigned threads = 0;             // 0: hardware concurrency

  void validate() const {
    if (!(t_min > 0) || !(t_max > t_min) || !std::isfinite(t_max))
      throw UsageError("temperature bounds must satisfy 0 < tmin < tmax");
    if (points < 2) throw UsageError("a grid needs at least 2 points");
    if (model == Model::Oscillator && !(alpha >= 0 && std::isfinite(alpha)))
      throw UsageError("alpha must be non-negative");
    if (kernel == Kernel::Drude && !(cutoff_ratio > 0 && std::isfinite(cutoff_ratio)))
      throw UsageError("the drude kernel needs a positive finite --cutoff-ratio");
    if (kernel == Kernel::Ohmic && std::isfinite(cutoff_ratio))
      throw UsageError("--cutoff-ratio only applies to the drude kernel");
    if (quantities.S && model != Model::Oscillator)
      throw UsageError("entropy is only available for the oscillator");
    if (quantities.S && kernel != Kernel::Ohmic)
      throw UsageError("entropy is only available for ohmic damping");
    if (!(quantities.E || quantities.S || quantities.C)) throw UsageError("no quantities requested");
    if (!(tol > 0)) throw UsageError("tolerance must be positive");
  }

  std::string describe() const {
    std::ostringstream os;
    os << "model=" << to_string(model) << " kernel=" << to_string(kernel);
    if (model == Model::Oscillator) os << " alpha=" << alpha;
    os << " cutoff_ratio=" << cutoff_ratio << " tmin=" << t_min << " tmax=" << t_max
       << " points=" << points << " log=" << (log_grid ? 1 : 0) << " route=" << to_string(route)
       << " quantities=";
    const char* sep = "";
    if (quantities.C) os << std::exchange(sep, ",") << "C";
    if (quantities.S) os << std::exchange(sep, ",") << "S";
    if (quantities.E) os << std::exchange(sep, ",") << "E";
    os << " tol=" << tol;
    return os.str();
  }
};

inline std::vector<double> temperature_grid(double t_min, double t_max, int points, bool log_grid) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double s = static_cast<double>(i) / (points - 1);
    g[i] = log_grid ? t_min * std::pow(t_max / t_min, s) : t_min + (t_max - t_min) * s;
  }
  g.front() = t_min;
  g.back() = t_max;
  return g;
}

/// Calls fn(i) for i in [0, n) on `threads` workers with fixed contiguous
/// chunks. The first exception (lowest chunk) is rethrown.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// -- CSV -------------------------------------------------------------------

/// Shortest form that is still 17 significant digits, '.' separator.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct Table {
  std::vector<std::string> header;
  std::string comment;  // written as the second line, prefixed by '#'
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;  // optional text column after the first

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n' << "# " << comment << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        if (i == 1 && !labels.empty()) os << labels[r] << ',';
        os << format_number(row[i]);
      }
      os << '\n';
    }
  }
};

inline std::string comment_line(const std::string& command, const std::string& params) {
  return std::string("qbm-thermo ") + version + " command=" + command + " " + params;
}

// -- point evaluators ---------------------------------------------------------

namespace detail {

inline DampingKernel kernel_for(const CurveSpec& s) {
  if (s.model == Model::Oscillator) {
    return s.kernel == Kernel::Ohmic ? DampingKernel::ohmic(s.alpha)
                                     : DampingKernel::drude(s.alpha, s.cutoff_ratio * s.alpha);
  }
  return s.kernel == Kernel::Ohmic ? DampingKernel::ohmic(1.0)
                                   : DampingKernel::drude(1.0, s.cutoff_ratio);
}

inline double omega0_for(const CurveSpec& s) { return s.model == Model::Oscillator ? 1.0 : 0.0; }

inline SumOptions sum_options(double tol) {
  SumOptions o;
  o.tol = tol;
  o.regularization = Regularization::SubtractDivergentConstant;
  return o;
}

}  // namespace detail

/// Reduced energy of the chosen model and route; strict ohmic values are
/// regularized (defined up to a temperature-independent constant).
inline double curve_energy(const CurveSpec& s, double theta, PrescriptionTag route) {
  if (s.model == Model::Oscillator && s.alpha == 0.0) return *undamped_thermo(theta).E;
  return energy_sum(detail::omega0_for(s), detail::kernel_for(s), 1.0 / theta, route,
                    detail::sum_options(s.tol))
      .value;
}

/// Specific heat: closed forms where they exist, otherwise the numerical
/// temperature derivative of the Matsubara energy.
inline double curve_specific_heat(const CurveSpec& s, double theta, PrescriptionTag route) {
  const bool energy = route == PrescriptionTag::EnergyRoute;
  if (s.model == Model::Oscillator && s.kernel == Kernel::Ohmic) {
    return energy ? *damped_specific_heat(theta, s.alpha).C
                  : *damped_specific_heat_via_entropy(theta, s.alpha).C;
  }
  if (s.model == Model::Free && s.kernel == Kernel::Ohmic) return *ohmic_specific_heat(theta).C;
  if (s.model == Model::Free && energy) return *drude_specific_heat(theta, s.cutoff_ratio).C;
  return specific_heat_fd([&](double t) { return curve_energy(s, t, route); }, theta,
                          Tolerances{}.fd_step)
      .value;
}

inline std::vector<PrescriptionTag> routes_of(Route r) {
  switch (r) {
    case Route::Energy: return {PrescriptionTag::EnergyRoute};
    case Route::Partition: return {PrescriptionTag::PartitionRoute};
    case Route::Both: return {PrescriptionTag::EnergyRoute, PrescriptionTag::PartitionRoute};
  }
  return {};
}

inline Table curve_table(const CurveSpec& spec) {
  spec.validate();
  const auto grid = temperature_grid(spec.t_min, spec.t_max, spec.points, spec.log_grid);
  const auto routes = routes_of(spec.route);

  Table t;
  t.header.push_back("theta");
  if (spec.quantities.C)
    for (auto r : routes) t.header.push_back(std::string("C_") + to_string(r));
  if (spec.quantities.S) t.header.push_back("S");
  if (spec.quantities.E)
    for (auto r : routes) t.header.push_back(std::string("E_") + to_string(r));
  t.comment = comment_line("curve", spec.describe());
  t.rows.resize(grid.size());

  parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
    const double theta = grid[i];
    std::vector<double> row{theta};
    try {
      if (spec.quantities.C)
        for (auto r : routes) row.push_back(curve_specific_heat(spec, theta, r));
      if (spec.quantities.S) row.push_back(*damped_entropy(theta, spec.alpha).S);
      if (spec.quantities.E)
        for (auto r : routes) row.push_back(curve_energy(spec, theta, r));
    } catch (const Error& e) {
      throw PointFailure(theta, e.what());
    }
    t.rows[i] = std::move(row);
  });
  return t;
}

// -- free-particle figure ---------------------------------------------------

struct Fig1Spec {
  double t_min = 1e-3;
  double t_max = 10.0;
  int points = 400;
  unsigned threads = 0;
};

/// Cutoff ratios of the inset, ordered from the upper to the lower curve.
inline const std::vector<double>& fig1_cutoffs() {
  static const std::vector<double> c{0.01, 0.1, 1.0, infinity};
  return c;
}

struct Fig1Tables {
  Table main;
  Table inset;
};

inline Fig1Tables fig1_tables(const Fig1Spec& spec) {
  if (!(spec.t_min > 0 && spec.t_max > spec.t_min) || spec.points < 2)
    throw UsageError("invalid fig1 grid");
  const auto grid = temperature_grid(spec.t_min, spec.t_max, spec.points, true);
  std::ostringstream params;
  params << "tmin=" << spec.t_min << " tmax=" << spec.t_max << " points=" << spec.points
         << " log=1";

  Fig1Tables f;
  f.main.header = {"theta_gamma", "C_ohmic", "C_lowT"};
  f.main.comment = comment_line("fig1-main", params.str());
  f.inset.header = {"theta_gamma"};
  for (double c : fig1_cutoffs())
    f.inset.header.push_back("C_cutoff_" + (std::isinf(c) ? std::string("inf") : format_number(c)));
  f.inset.header.push_back("C_lowT");
  f.inset.comment = comment_line("fig1-inset", params.str() + " cutoff_ratios=0.01,0.1,1,inf");
  f.main.rows.resize(grid.size());
  f.inset.rows.resize(grid.size());

  parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
    const double theta = grid[i];
    const double lowT = ohmic_lowT_expansion(theta).value;
    f.main.rows[i] = {theta, *ohmic_specific_heat(theta).C, lowT};
    std::vector<double> row{theta};
    for (double c : fig1_cutoffs()) row.push_back(*drude_specific_heat(theta, c).C);
    row.push_back(lowT);
    f.inset.rows[i] = std::move(row);
  });
  return f;
}

// -- prescription comparison ---------------------------------------------------

struct ComparePoint {
  double theta = 0.0;
  std::optional<double> E_direct;
  std::optional<double> E_partition;
  std::optional<double> gap;
  std::optional<double> C_closed;
  std::optional<double> C_fd_direct;
  std::optional<double> C_fd_partition;
  std::string status = "ok";
};

struct CompareReport {
  CurveSpec spec;
  bool strict_ohmic_identity = false;
  std::vector<ComparePoint> points;
};

inline std::optional<double> closed_form_specific_heat(const CurveSpec& s, double theta) {
  if (s.model == Model::Oscillator && s.kernel == Kernel::Ohmic)
    return damped_specific_heat(theta, s.alpha).C;
  if (s.model == Model::Free) return drude_specific_heat(theta, s.cutoff_ratio).C;
  return std::nullopt;
}

/// Per point: both energies, their gap, and the specific heat from the
/// closed form and from each energy by finite differences. Failures are
/// recorded in the point's status and the run continues.
inline CompareReport compare(const CurveSpec& spec) {
  CurveSpec s = spec;
  s.quantities = Quantities{};
  s.validate();
  const auto grid = temperature_grid(s.t_min, s.t_max, s.points, s.log_grid);
  const auto kernel = detail::kernel_for(s);
  const double omega0 = detail::omega0_for(s);

  CompareReport rep;
  rep.spec = s;
  rep.strict_ohmic_identity = s.kernel == Kernel::Ohmic;
  rep.points.resize(grid.size());

  parallel_for(grid.size(), s.threads, [&](std::size_t i) {
    ComparePoint p;
    p.theta = grid[i];
    const double beta = 1.0 / p.theta;
    std::vector<std::string> notes;
    try {
      SumOptions absolute;
      absolute.tol = s.tol;
      try {
        p.E_direct = energy_sum(omega0, kernel, beta, PrescriptionTag::EnergyRoute, absolute).value;
        p.E_partition =
            energy_sum(omega0, kernel, beta, PrescriptionTag::PartitionRoute, absolute).value;
      } catch (const DivergenceError&) {
        const auto reg = detail::sum_options(s.tol);
        p.E_direct = energy_sum(omega0, kernel, beta, PrescriptionTag::EnergyRoute, reg).value;
        p.E_partition = energy_sum(omega0, kernel, beta, PrescriptionTag::PartitionRoute, reg).value;
        notes.push_back(
            "divergent: absolute energy is infinite for strict ohmic damping; energies "
            "exclude a temperature-independent constant");
      }
      SumOptions gap_opt;
      gap_opt.tol = s.tol;
      p.gap = prescription_gap(omega0, kernel, beta, gap_opt).value;
      p.C_closed = closed_form_specific_heat(s, p.theta);
      const double h = Tolerances{}.fd_step;
      p.C_fd_direct = specific_heat_fd(
          [&](double t) { return curve_energy(s, t, PrescriptionTag::EnergyRoute); }, p.theta, h)
                          .value;
      p.C_fd_partition = specific_heat_fd(
          [&](double t) { return curve_energy(s, t, PrescriptionTag::PartitionRoute); }, p.theta, h)
                             .value;
    } catch (const Error& e) {
      notes.push_back(std::string("error: ") + e.what());
    }
    if (!notes.empty()) {
      p.status.clear();
      for (std::size_t k = 0; k < notes.size(); ++k) p.status += (k ? "; " : "") + notes[k];
    }
    rep.points[i] = std::move(p);
  });
  return rep;
}

// -- expansion accuracy ----------------------------------------------------------

struct ExpansionRow {
  double theta = 0.0;
  ExpansionKind kind = ExpansionKind::DampedLowT;
  double exact = 0.0;
  double expansion = 0.0;
  double abs_error = 0.0;
  double last_term = 0.0;
  double exponent = 0.0;  // log2 of the error ratio between theta and theta/2 (low T) or 2 theta (high T)
};

inline bool is_low_temperature(ExpansionKind k) {
  return k == ExpansionKind::UndampedLowT || k == ExpansionKind::DampedLowT ||
         k == ExpansionKind::FreeLowT;
}

inline std::vector<ExpansionKind> expansion_kinds(const CurveSpec& s) {
  if (s.model == Model::Free) return {ExpansionKind::FreeLowT};
  if (s.alpha == 0.0) return {ExpansionKind::UndampedLowT, ExpansionKind::UndampedHighT};
  return {ExpansionKind::DampedLowT, ExpansionKind::DampedHighT};
}

inline double expansion_exact(const CurveSpec& s, ExpansionKind kind, double theta) {
  switch (kind) {
    case ExpansionKind::UndampedLowT:
    case ExpansionKind::UndampedHighT: return *undamped_thermo(theta).C;
    case ExpansionKind::DampedLowT:
    case ExpansionKind::DampedHighT: return *damped_specific_heat(theta, s.alpha).C;
    case ExpansionKind::FreeLowT: return *drude_specific_heat(theta, s.cutoff_ratio).C;
  }
  return 0.0;
}

inline ExpansionValue expansion_value(const CurveSpec& s, ExpansionKind kind, double theta) {
  if (kind == ExpansionKind::FreeLowT) return ohmic_lowT_expansion(theta);
  return oscillator_expansion(kind, theta, s.alpha);
}

inline ExpansionRow expansion_row(const CurveSpec& s, ExpansionKind kind, double theta) {
  ExpansionRow r;
  r.theta = theta;
  r.kind = kind;
  r.exact = expansion_exact(s, kind, theta);
  const auto v = expansion_value(s, kind, theta);
  r.expansion = v.value;
  r.last_term = v.last_term;
  r.abs_error = std::abs(r.exact - r.expansion);
  const double other = is_low_temperature(kind) ? 0.5 * theta : 2.0 * theta;
  const double other_err = std::abs(expansion_exact(s, kind, other) - expansion_value(s, kind, other).value);
  r.exponent = std::log2(r.abs_error / other_err);
  return r;
}

inline std::vector<ExpansionRow> expansion_report(const CurveSpec& spec) {
  CurveSpec s = spec;
  s.quantities = Quantities{};
  s.validate();
  if (s.model == Model::Oscillator && s.kernel != Kernel::Ohmic)
    throw UsageError("oscillator expansions are for ohmic damping");
  const auto grid = temperature_grid(s.t_min, s.t_max, s.points, s.log_grid);
  const auto kinds = expansion_kinds(s);
  std::vector<ExpansionRow> rows(grid.size() * kinds.size());
  parallel_for(rows.size(), s.threads, [&](std::size_t i) {
    const double theta = grid[i / kinds.size()];
    try {
      rows[i] = expansion_row(s, kinds[i % kinds.size()], theta);
    } catch (const Error& e) {
      throw PointFailure(theta, e.what());
    }
  });
  return rows;
}

inline Table expansion_table(const CurveSpec& spec, const std::vector<ExpansionRow>& rows) {
  Table t;
  t.header = {"theta", "kind", "exact", "expansion", "abs_error", "last_term", "exponent"};
  t.comment = comment_line("expansions", spec.describe());
  for (const auto& r : rows) {
    t.rows.push_back({r.theta, r.exact, r.expansion, r.abs_error, r.last_term, r.exponent});
    t.labels.push_back(qbm::to_string(r.kind));
  }
  return t;
}

}  // namespace qbm::report
