#pragma once

// Command-line front end. run_cli() is the whole program minus main(), so the
// test suite can drive every subcommand in-process.
//
// Exit codes: 0 success, 2 usage error, 3 domain/precondition error,
// 4 numerical failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <branchlab/branchlab.hpp>

namespace branchlab::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kNumerical = 4 };

struct RunResult {
  int exit_code = kOk;
  std::string out;  // report text (empty when written to --out)
  std::string err;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using nlohmann::json;

namespace detail {

struct Options {
  // model
  int k = 1;
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<double> delta;
  // branches
  std::optional<double> p_min;
  std::optional<double> p_max;
  int samples = 200;
  bool general = false;
  bool diagnostic_mixed = false;
  // spectrum
  std::string bc = "dirichlet";
  double alpha = 0.0;
  std::optional<int> n;
  int count = 3;
  // sweep
  std::vector<double> gammas;
  std::string bc_pair = "dirichlet,neumann";
  bool fit_slope = false;
  // output
  std::string format;
  std::string out_path;
  bool no_header = false;
};

inline BoundaryCondition parse_bc(const std::string& name, double alpha) {
  if (name == "dirichlet") return BoundaryCondition::dirichlet();
  if (name == "neumann") return BoundaryCondition::neumann();
  if (name == "robin") return BoundaryCondition::robin(alpha);
  throw UsageError("unknown boundary condition '" + name + "' (dirichlet|neumann|robin)");
}

inline json bc_json(const BoundaryCondition& bc) {
  json j = {{"kind", to_string(bc)}};
  if (bc.kind == BcKind::Robin) j["alpha"] = bc.alpha;
  return j;
}

inline std::string emit(const Options& o, const json& doc, const std::optional<CsvTable>& table,
                        const std::vector<std::string>& extra_comments = {}) {
  if (o.format == "csv") {
    if (!table) throw UsageError("this subcommand has no CSV form; use --format json");
    std::vector<std::string> comments;
    if (!o.no_header) {
      comments = config_comments(doc.at("config"));
      for (const auto& w : doc.value("warnings", json::array())) comments.push_back("warning: " + w.get<std::string>());
    }
    comments.insert(comments.end(), extra_comments.begin(), extra_comments.end());
    return table->render(comments);
  }
  return render_json(doc);
}

inline json base_doc(const std::string& subcommand, json config) {
  config["subcommand"] = subcommand;
  config["tool"] = std::string(kToolName) + " " + kToolVersion;
  return json{{"config", std::move(config)}, {"warnings", json::array()}};
}

// ---------------------------------------------------------------- branches

inline std::string cmd_branches(const Options& o) {
  if (o.gamma && o.delta) throw UsageError("give either --gamma or --delta, not both");
  if (o.samples < 2) throw UsageError("--n must be >= 2");
  const double lambda = o.lambda.value_or(o.general ? 0.0 : 1.0);
  const ModelParams params = o.delta ? ModelParams::from_delta(o.k, lambda, *o.delta)
                                     : ModelParams::from_gamma(o.k, lambda, o.gamma.value_or(0.5));
  if (!o.general && params.k() != 1) throw UsageError("--k other than 1 needs --general");
  const double p_min = o.p_min.value_or(o.general ? 0.1 : -lambda + 0.1);
  const double p_max = o.p_max.value_or(5.0);
  if (!(p_min < p_max)) throw UsageError("empty p range: need --p-min < --p-max");

  json config = {{"k", params.k()},        {"lambda", params.lambda()}, {"p_min", p_min},
                 {"p_max", p_max},         {"n", o.samples},            {"general", o.general},
                 {"diagnostic_mixed", o.diagnostic_mixed}, {"format", o.format}};
  if (!o.general) {
    config["gamma"] = params.gamma();
    config["mu"] = params.mu();
    config["delta"] = params.effective_delta();
    config["delta_given"] = params.delta().has_value();
  }
  json doc = base_doc("branches", config);

  std::vector<std::string> cols = {"p", "H_plus", "H_minus", "v_plus", "v_minus"};
  if (o.diagnostic_mixed) {
    cols.push_back("H_mixed_plus");
    cols.push_back("H_mixed_minus");
  }
  std::vector<std::vector<double>> rows;
  std::vector<std::string> extra;

  if (o.general) {
    if (!(p_min > 0.0)) throw DomainError("general-k branches need p > 0 (got --p-min " + format_float(p_min) + ")");
    for (double p : uniform_samples(p_min, p_max, o.samples)) {
      const double hp = general_branch_hamiltonian(p, params.k(), BranchSign::Plus);
      const double hm = general_branch_hamiltonian(p, params.k(), BranchSign::Minus);
      const auto v = general_velocity_branches(p, params.k());
      std::vector<double> row = {p, hp, hm, v.plus.value(), v.minus.value()};
      if (o.diagnostic_mixed) {
        // f = 0, U = 0
        row.push_back(general_mixed_hamiltonian(p, params.k(), 0.0, 0.0, BranchSign::Plus));
        row.push_back(general_mixed_hamiltonian(p, params.k(), 0.0, 0.0, BranchSign::Minus));
      }
      rows.push_back(std::move(row));
    }
  } else {
    const auto plus = sample_branch_curve(p_min, p_max, o.samples, BranchSign::Plus, params);
    const auto minus = sample_branch_curve(p_min, p_max, o.samples, BranchSign::Minus, params);
    for (std::size_t i = 0; i < plus.points.size(); ++i) {
      const double p = plus.points[i].p;
      const auto v = velocity_branches(p, params);
      std::vector<double> row = {p, plus.points[i].value, minus.points[i].value, v.plus.value(),
                                 v.minus.value()};
      if (o.diagnostic_mixed) {
        // on shell, f from the lambda/delta family, U = f(v), V = 0
        row.push_back(general_mixed_hamiltonian(p, 1, f_prime_of_v(v.plus, params),
                                                f_of_v(v.plus.value(), params), BranchSign::Plus));
        row.push_back(general_mixed_hamiltonian(p, 1, f_prime_of_v(v.minus, params),
                                                f_of_v(v.minus.value(), params), BranchSign::Minus));
      }
      rows.push_back(std::move(row));
    }
  }
  if (o.diagnostic_mixed) {
    const std::string caveat =
        "mixed-form columns depend on p and v jointly; they are diagnostics evaluated on shell, "
        "not a Hamiltonian of (x, p)";
    doc["warnings"].push_back(caveat);
    if (o.no_header) extra.push_back("caveat: " + caveat);
  }

  CsvTable table(cols);
  json points = json::array();
  for (auto& row : rows) {
    json obj;
    for (std::size_t c = 0; c < cols.size(); ++c) obj[cols[c]] = row[c];
    points.push_back(std::move(obj));
    table.add_row(std::move(row));
  }
  doc["result"] = {{"points", points}};
  return emit(o, doc, table, extra);
}

// ---------------------------------------------------------------- spectrum

struct ResolvedGrid {
  Grid grid;
  bool user_wall;
};

inline ResolvedGrid resolve_grid(const PseudoPotential& pot, const Options& o) {
  const Grid base = default_grid(pot);
  const double p_max = o.p_max.value_or(base.p_max());
  int n = 0;
  if (o.n) {
    n = *o.n;
  } else {
    n = std::max(Grid::kMinInterior, static_cast<int>(std::ceil(p_max / base.h())) - 1);
  }
  return {Grid(p_max, n), o.p_max.has_value()};
}

inline Spectrum solve_for_cli(const PseudoPotential& pot, const BoundaryCondition& bc,
                              const ResolvedGrid& rg, int count) {
  if (rg.user_wall) return solve_spectrum(pot, bc, rg.grid, count);
  Grid g = rg.grid;
  for (int attempt = 0;; ++attempt) {
    try {
      return solve_spectrum(pot, bc, g, count);
    } catch (const WallTooCloseError&) {
      if (attempt >= 8) throw;
      const int n = static_cast<int>(std::ceil(1.5 * (g.n() + 1))) - 1;
      g = Grid(g.h() * (n + 1), n);
    }
  }
}

inline std::string cmd_spectrum(const Options& o) {
  if (!o.gamma) throw UsageError("spectrum needs --gamma");
  if (o.count < 1) throw UsageError("--count must be >= 1");
  if (*o.gamma == 0.0) {
    throw DomainError("gamma = 0 rejected: " + left_halfline_guard(0.0).summary);
  }
  const PseudoPotential pot(*o.gamma, o.lambda.value_or(0.0));
  const BoundaryCondition bc = parse_bc(o.bc, o.alpha);
  const ResolvedGrid rg = resolve_grid(pot, o);
  const Spectrum s = solve_for_cli(pot, bc, rg, o.count);

  json config = {{"gamma", pot.gamma()},
                 {"lambda", pot.shift_lambda()},
                 {"bc", bc_json(bc)},
                 {"count", o.count},
                 {"p_max", s.grid.p_max()},
                 {"n", s.grid.n()},
                 {"h", s.grid.h()},
                 {"richardson", "h, h/2"},
                 {"shooting_grid_n", s.grid.halved().n()},
                 {"format", o.format}};
  json doc = base_doc("spectrum", config);
  const auto guard = left_halfline_guard(pot);
  doc["result"]["half_line"] = guard.summary;
  if (pot.gamma() < 0.0) {
    for (const auto& w : guard.warnings) doc["warnings"].push_back(w);
  }
  doc["result"]["energies"] = s.energies;
  doc["result"]["energies_coarse"] = s.coarse;
  doc["result"]["energies_fine"] = s.fine;
  doc["result"]["energies_shooting"] = s.shooting;
  const double worst = s.residuals.empty() ? 0.0 : *std::max_element(s.residuals.begin(), s.residuals.end());
  if (worst > 1e-6) {
    doc["warnings"].push_back(
        "matrix and shooting levels differ by up to " + format_float(worst) +
        "; with psi(0) != 0 the first-order ghost node and the point-sampled p^(-1/2) term limit "
        "the matrix route, so energies_shooting is the more accurate column");
  }
  doc["result"]["residuals"] = s.residuals;
  doc["result"]["wall_potential"] = pot(s.grid.p_max());

  std::vector<std::string> cols = {"level", "E", "E_coarse", "E_fine", "E_shooting", "residual"};
  const bool compare = pot.gamma() > 0.0 && pot.shift_lambda() == 0.0;
  std::vector<double> pred;
  if (compare) {
    pred = predicted_levels(pot.gamma(), o.count);
    std::vector<double> diff;
    for (std::size_t i = 0; i < pred.size(); ++i) diff.push_back(std::abs(s.energies[i] - pred[i]));
    doc["result"]["perturbative"] = {{"E_pred", pred},
                                     {"abs_dE", diff},
                                     {"tolerance", perturbative_tolerance(pot.gamma())},
                                     {"anharmonic_estimate", anharmonic_error_bound(pot.gamma())},
                                     {"reliable", perturbation_reliable(pot.gamma())}};
    if (!perturbation_reliable(pot.gamma())) {
      doc["warnings"].push_back("perturbative levels unreliable at this gamma (anharmonic estimate > 10% of spacing)");
    }
    cols.push_back("E_pred");
    cols.push_back("abs_dE");
  }
  CsvTable table(cols);
  for (int i = 0; i < o.count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    std::vector<double> row = {static_cast<double>(i), s.energies[k], s.coarse[k], s.fine[k],
                               s.shooting[k], s.residuals[k]};
    if (compare) {
      row.push_back(pred[k]);
      row.push_back(std::abs(s.energies[k] - pred[k]));
    }
    table.add_row(row);
  }
  return emit(o, doc, table);
}

// ---------------------------------------------------------------- perturbation

inline json perturbation_payload(double gamma, int count) {
  const PerturbativePrediction pp = predict(gamma, count);
  const double rho2 = pp.rho * pp.rho;
  double level_identity = 0.0;
  for (std::size_t n = 0; n < pp.levels.size(); ++n) {
    const double lhs = pp.levels[n] * rho2;
    const double rhs = pp.constant_term + (2.0 * static_cast<double>(n) + 1.0);
    level_identity = std::max(level_identity, std::abs(lhs - rhs) / std::abs(rhs));
  }
  const json identities = {
      {"constant_over_rho2_vs_W0", std::abs(pp.constant_term / rho2 - pp.W0) / pp.W0},
      {"oscillator_coefficient_vs_1",
       std::abs(0.75 * rho2 * rho2 * std::pow(gamma, -2.0 / 3.0) - 1.0)},
      {"W0_vs_3p0", std::abs(pp.W0 - 3.0 * pp.p0) / pp.W0},
      {"W2p0_vs_1.5", std::abs(pp.W2 * pp.p0 - 1.5) / 1.5},
      {"W3p0sq_vs_-3.75", std::abs(pp.W3 * pp.p0 * pp.p0 + 3.75) / 3.75},
      {"levels_rho2_vs_constant_plus_2n1", level_identity}};
  return {{"p0", pp.p0},
          {"W0", pp.W0},
          {"W2", pp.W2},
          {"W3", pp.W3},
          {"rho", pp.rho},
          {"q0", pp.q0},
          {"constant_term", pp.constant_term},
          {"levels", pp.levels},
          {"level_spacing", level_spacing(gamma)},
          {"anharmonic_estimate", anharmonic_error_bound(gamma)},
          {"tolerance", perturbative_tolerance(gamma)},
          {"reliable", perturbation_reliable(gamma)},
          {"identity_residuals", identities}};
}

inline std::string cmd_perturbation(const Options& o) {
  if (!o.gamma) throw UsageError("perturbation needs --gamma");
  if (o.count < 1) throw UsageError("--count must be >= 1");
  const double gamma = *o.gamma;
  if (!(gamma > 0.0)) throw DomainError("perturbation needs gamma > 0 (got " + format_float(gamma) + ")");
  json doc = base_doc("perturbation", {{"gamma", gamma}, {"count", o.count}, {"format", o.format}});
  doc["result"] = perturbation_payload(gamma, o.count);
  if (!perturbation_reliable(gamma)) {
    doc["warnings"].push_back(
        "perturbation theory not trusted here: anharmonic estimate exceeds 10% of the level spacing");
  }
  CsvTable table({"level", "E_pred"});
  const auto& lv = doc["result"]["levels"];
  for (std::size_t i = 0; i < lv.size(); ++i) table.add_row({static_cast<double>(i), lv[i].get<double>()});
  return emit(o, doc, table);
}

// ---------------------------------------------------------------- sweep

struct SweepRow {
  double gamma;
  double e_first;
  double e_second;
  double gap;
  double e_pred;
  double anharmonic;
};

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse '" + item + "' as a number");
    }
    if (used != item.size()) throw UsageError("cannot parse '" + item + "' as a number");
    out.push_back(v);
  }
  return out;
}

/// Least-squares slope of log(E0 - 3 gamma^(2/3)) against log gamma.
inline double fit_excess_slope(const std::vector<SweepRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double excess = r.e_first - 3.0 * std::cbrt(r.gamma * r.gamma);
    if (!(excess > 0.0)) throw NumericalError("slope fit: E0 - 3 gamma^(2/3) <= 0 at gamma = " + format_float(r.gamma));
    const double x = std::log(r.gamma);
    const double y = std::log(excess);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::string cmd_sweep(const Options& o, const std::vector<std::string>& bc_names) {
  if (o.gammas.size() < 2) throw UsageError("sweep needs at least two gammas (--gammas g1,g2,...)");
  if (bc_names.size() != 2) throw UsageError("--bc-pair takes exactly two conditions, e.g. dirichlet,neumann");
  for (double g : o.gammas) {
    if (!(g > 0.0)) throw DomainError("sweep gammas must be > 0 (got " + format_float(g) + ")");
  }
  const BoundaryCondition first = parse_bc(bc_names[0], o.alpha);
  const BoundaryCondition second = parse_bc(bc_names[1], o.alpha);

  std::vector<std::future<SweepRow>> jobs;
  for (double g : o.gammas) {
    jobs.push_back(std::async(std::launch::async, [g, first, second, &o] {
      const PseudoPotential pot(g);
      const ResolvedGrid rg = resolve_grid(pot, o);
      const double e1 = solve_for_cli(pot, first, rg, 1).energies[0];
      const double e2 = solve_for_cli(pot, second, rg, 1).energies[0];
      return SweepRow{g, e1, e2, std::abs(e1 - e2), predicted_levels(g, 1)[0], anharmonic_error_bound(g)};
    }));
  }
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    try {
      rows.push_back(jobs[i].get());
    } catch (const DomainError& e) {
      throw DomainError("sweep failed at gamma = " + format_float(o.gammas[i]) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("sweep failed at gamma = " + format_float(o.gammas[i]) + ": " + e.what());
    }
  }

  bool decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) decreasing = decreasing && rows[i].gap < rows[i - 1].gap;

  const std::string c1 = "E0_" + bc_names[0];
  const std::string c2 = "E0_" + bc_names[1];
  json config = {{"gammas", o.gammas},
                 {"bc_pair", json::array({bc_json(first), bc_json(second)})},
                 {"fit_slope", o.fit_slope},
                 {"format", o.format}};
  if (o.n) config["n"] = *o.n;
  if (o.p_max) config["p_max"] = *o.p_max;
  json doc = base_doc("sweep", config);
  json jrows = json::array();
  CsvTable table({"gamma", c1, c2, "gap", "E_pred", "anharmonic_estimate"});
  for (const auto& r : rows) {
    table.add_row({r.gamma, r.e_first, r.e_second, r.gap, r.e_pred, r.anharmonic});
    jrows.push_back({{"gamma", r.gamma}, {c1, r.e_first}, {c2, r.e_second}, {"gap", r.gap},
                     {"E_pred", r.e_pred}, {"anharmonic_estimate", r.anharmonic}});
  }
  doc["result"]["rows"] = jrows;
  doc["result"]["gap_strictly_decreasing"] = decreasing;
  std::vector<std::string> trailer = {std::string("gap_strictly_decreasing=") + (decreasing ? "true" : "false")};
  if (!decreasing) doc["warnings"].push_back("gap is not strictly decreasing over the requested gammas");
  if (o.fit_slope) {
    const double slope = fit_excess_slope(rows);
    doc["result"]["excess_slope"] = slope;
    doc["result"]["excess_slope_expected"] = -1.0 / 3.0;
    trailer.push_back("excess_slope=" + format_float(slope));
  }
  return emit(o, doc, table, trailer);
}

// ---------------------------------------------------------------- bessel-check

inline std::string cmd_bessel_check(const Options& o) {
  if (!o.gamma) throw UsageError("bessel-check needs --gamma");
  const double gamma = *o.gamma;
  if (gamma == 0.0) throw DomainError("bessel-check needs gamma != 0");
  const DirichletSelection sel = dirichlet_selection(gamma);
  const auto reg = SmallPSolution::regular(gamma);
  const auto sing = SmallPSolution::singular(gamma);

  double res_reg = 0.0;
  double res_sing = 0.0;
  constexpr double kResLo = 1e-10;
  constexpr double kResHi = 0.5;
  constexpr int kResPoints = 41;
  for (int i = 0; i < kResPoints; ++i) {
    const double p = kResLo * std::pow(kResHi / kResLo, static_cast<double>(i) / (kResPoints - 1));
    res_reg = std::max(res_reg, std::abs(verify_leading_order_ode(p, reg)));
    res_sing = std::max(res_sing, std::abs(verify_leading_order_ode(p, sing)));
  }
  const auto prop = full_equation_proportionality(gamma);

  json doc = base_doc("bessel-check", {{"gamma", gamma}, {"format", o.format}});
  json samples = json::array();
  for (const auto& s : sel.samples) {
    samples.push_back({{"p", s.p}, {"regular", s.regular}, {"singular", s.singular}});
  }
  const bool ik = sel.family == SolutionFamily::ModifiedIK;
  doc["result"] = {
      {"vanishing_coefficient", sel.vanishing_coefficient},
      {"family", to_string(sel.family)},
      {"regular_coefficient", ik ? "C1" : "D1"},
      {"limit_samples", samples},
      {"slope_fit", {{"p_range", {1e-8, 1e-4}},
                     {"regular", loglog_slope(reg, 1e-8, 1e-4)},
                     {"singular", loglog_slope(sing, 1e-8, 1e-4)},
                     {"expected", {1.0, 0.0}}}},
      {"ode_residual_max", {{"p_range", {kResLo, kResHi}}, {"regular", res_reg}, {"singular", res_sing}}},
      {"full_equation_proportionality",
       {{"p_range", {prop.p_lo, prop.p_hi}}, {"energy", prop.energy}, {"max_deviation", prop.max_deviation}}}};
  return emit(o, doc, std::nullopt);
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline RunResult run_cli(const std::vector<std::string>& args) {
  using detail::Options;
  Options o;
  CLI::App app{"branchlab: branched Hamiltonians and their half-line quantization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out_path, "write the report here instead of standard output");
    sub->add_flag("--no-header", o.no_header, "omit the commented config header from CSV");
  };

  auto* branches = app.add_subcommand("branches", "H_pm - V and v_pm curves (plot data)");
  branches->add_option("--k", o.k, "branch exponent index (general family)");
  branches->add_option("--lambda", o.lambda, "linear velocity coupling (default 1; 0 with --general)");
  branches->add_option("--gamma", o.gamma, "coupling gamma = mu^(3/2) (default 0.5)");
  branches->add_option("--delta", o.delta, "kinetic rescaling delta < 4^(-2/3) (alternative to --gamma)");
  branches->add_option("--p-min", o.p_min, "first momentum sample (default -lambda + 0.1)");
  branches->add_option("--p-max", o.p_max, "last momentum sample (default 5)");
  branches->add_option("--n", o.samples, "number of samples");
  branches->add_flag("--general", o.general, "general-k pair p +- p^(-(2k-1)/2)/(4k-2) instead of k = 1");
  branches->add_flag("--diagnostic-mixed", o.diagnostic_mixed, "append on-shell mixed-form columns");

  auto* spectrum = app.add_subcommand("spectrum", "low-lying levels of -d2/dp2 + p + 2 gamma/sqrt(p)");
  spectrum->add_option("--gamma", o.gamma, "coupling (nonzero)")->required();
  spectrum->add_option("--lambda", o.lambda, "shift: W = p + 2 gamma/sqrt(p + lambda) (default 0)");
  spectrum->add_option("--bc", o.bc, "dirichlet | neumann | robin")->check(CLI::IsMember({"dirichlet", "neumann", "robin"}));
  spectrum->add_option("--alpha", o.alpha, "Robin coefficient: psi'(0) = alpha psi(0)");
  spectrum->add_option("--p-max", o.p_max, "Dirichlet wall position (default p0 + 25 rho, >= 30)");
  spectrum->add_option("--n", o.n, "interior grid points (default: h <= rho/40, n >= 20000)");
  spectrum->add_option("--count", o.count, "number of levels");

  auto* perturbation = app.add_subcommand("perturbation", "large-gamma oscillator data and predicted levels");
  perturbation->add_option("--gamma", o.gamma, "coupling (> 0)")->required();
  perturbation->add_option("--count", o.count, "number of predicted levels");

  std::string gammas_text;
  auto* sweep = app.add_subcommand("sweep", "ground-state gap between two boundary conditions over gamma");
  sweep->add_option("--gammas", gammas_text, "comma-separated gamma list (>= 2 values)")->required();
  sweep->add_option("--bc-pair", o.bc_pair, "two conditions, e.g. dirichlet,neumann");
  sweep->add_option("--alpha", o.alpha, "Robin coefficient if robin appears in the pair");
  sweep->add_option("--p-max", o.p_max, "wall position for every gamma (default per gamma)");
  sweep->add_option("--n", o.n, "interior grid points for every gamma");
  sweep->add_flag("--fit-slope", o.fit_slope, "fit log(E0 - 3 gamma^(2/3)) against log gamma");

  auto* bessel = app.add_subcommand("bessel-check", "small-p Bessel solutions and the Dirichlet selection");
  bessel->add_option("--gamma", o.gamma, "coupling (nonzero)")->required();

  // --format defaults differ per subcommand and are filled in after parsing
  for (auto* sub : {branches, spectrum, perturbation, sweep, bessel}) add_common(sub);

  RunResult result;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    result.out = os.str();
    return result;
  } catch (const CLI::CallForVersion&) {
    result.out = std::string(kToolName) + " " + kToolVersion + "\n";
    return result;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    result.err = os.str();
    result.exit_code = kUsage;
    return result;
  }

  try {
    std::string text;
    if (branches->parsed()) {
      if (o.format.empty()) o.format = "csv";
      text = detail::cmd_branches(o);
    } else if (spectrum->parsed()) {
      if (o.format.empty()) o.format = "json";
      text = detail::cmd_spectrum(o);
    } else if (perturbation->parsed()) {
      if (o.format.empty()) o.format = "json";
      text = detail::cmd_perturbation(o);
    } else if (sweep->parsed()) {
      if (o.format.empty()) o.format = "csv";
      o.gammas = detail::parse_list(gammas_text);
      std::vector<std::string> names;
      std::istringstream in(o.bc_pair);
      for (std::string item; std::getline(in, item, ',');) names.push_back(item);
      text = detail::cmd_sweep(o, names);
    } else if (bessel->parsed()) {
      if (o.format.empty()) o.format = "json";
      text = detail::cmd_bessel_check(o);
    }
    if (!o.out_path.empty()) {
      std::ofstream f(o.out_path, std::ios::binary);
      if (!f) throw UsageError("cannot open --out path '" + o.out_path + "'");
      f << text;
    } else {
      result.out = std::move(text);
    }
  } catch (const UsageError& e) {
    result.err = std::string("usage error: ") + e.what() + "\n";
    result.exit_code = kUsage;
  } catch (const DomainError& e) {
    result.err = std::string("domain error: ") + e.what() + "\n";
    result.exit_code = kDomain;
  } catch (const NumericalError& e) {
    result.err = std::string("numerical failure: ") + e.what() +
                 "\nhint: refine the grid (--n), move the wall (--p-max) or request fewer levels\n";
    result.exit_code = kNumerical;
  }
  return result;
}

}  // namespace branchlab::cli
