#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "madelung/analysis.hpp"
#include "madelung/cli.hpp"
#include "madelung/errors.hpp"
#include "madelung/grid.hpp"
#include "madelung/residual.hpp"
#include "madelung/serialize.hpp"
#include "madelung/sinc.hpp"
#include "madelung/solver.hpp"
#include "madelung/sweep.hpp"
#include "output.hpp"
#include "verify.hpp"

namespace madelung::cli {

namespace {

struct Common {
  double mass = 1.0;
  double hbar = 1.0;
  double u0 = 1.0;
  std::string variant = "paper";
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* app, Common& c, bool with_variant) {
  app->add_option("--u0", c.u0, "U at the origin")->capture_default_str();
  app->add_option("--mass", c.mass, "particle mass")->capture_default_str();
  app->add_option("--hbar", c.hbar, "reduced Planck constant")->capture_default_str();
  if (with_variant) {
    app->add_option("--variant", c.variant, "radial first-derivative term: paper (2/r) or planar (1/r)")
        ->check(CLI::IsMember({"paper", "planar", "paper-radial", "planar-radial"}))
        ->capture_default_str();
  }
  app->add_option("--out", c.out, "output directory (default $MADELUNG_OUT_DIR or .)");
  app->add_option("--format", c.format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();
}

PhysicalParams params_from(const Common& c, double beta) {
  return make_params(c.mass, c.hbar, beta, parse_variant(c.variant));
}

json params_json(const Common& c, double beta) {
  return json{{"params", params_from(c, beta)}, {"u0", c.u0}, {"format", c.format}};
}

bool want_csv(const Common& c) { return c.format != "json"; }
bool want_json(const Common& c) { return c.format != "csv"; }

std::vector<double> parse_list(const std::string& s, const char* field) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(field, "not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError(field, "empty list");
  return out;
}

std::string beta_tag(double beta) { return fmt::format("{:g}", beta); }

// ---------------------------------------------------------------------------

int solve_radial_cmd(const Common& c, double beta, std::ostream& out) {
  const PhysicalParams p = params_from(c, beta);
  const RadialProfile prof = solve_radial(radial_request(p, c.u0));
  RunRecorder rec("solve-radial", resolve_out_dir(c.out));
  auto& m = rec.manifest();
  m.parameters = params_json(c, beta);
  m.solver = radial_request(p, c.u0).control;
  m.solver.blowup_threshold = default_blowup_threshold(p, c.u0);
  if (want_csv(c)) rec.write("radial_profile.csv", radial_profile_table(prof).str());
  if (want_json(c)) rec.write("radial_profile.json", json(prof).dump() + "\n");
  if (prof.has_support()) {
    const Observables o = observables(prof);
    m.observables = o;
    m.residuals = maxent_residual(prof);
    out << fmt::format("r_m = {}  K_bar = {}  U_bar = {}  H = {}\n", format_number(o.r_m),
                       format_number(o.k_bar_quadrature), format_number(o.u_bar),
                       format_number(o.entropy));
  } else {
    m.observables = json{{"r_m", "inf"}, {"support", "none"}};
    out << "zero solution: no finite support\n";
  }
  rec.finish();
  return kSuccess;
}

struct CartesianFlags {
  double beta = 0.0;
  std::optional<double> u0_y;
  double grid_h = 0.01;
  std::optional<double> rotate;
};

std::string axis_csv(const AxisProfile& p, const char* coord) {
  CsvTable t({coord, "u", "du"});
  for (std::size_t j = 0; j < p.nodes().size(); ++j) t.add_row({p.nodes()[j], p.u()[j], p.du()[j]});
  return t.str();
}

std::string plane_csv(const Grid2D& g, const std::vector<double>& plane) {
  CsvTable t({"x", "y", "value"});
  const GridGeometry& geo = g.geometry();
  for (std::size_t j = 0; j < geo.ny; ++j) {
    for (std::size_t i = 0; i < geo.nx; ++i) t.add_row({geo.x(i), geo.y(j), plane[j * geo.nx + i]});
  }
  return t.str();
}

int solve_cartesian_cmd(const Common& c, const CartesianFlags& f, std::ostream& out) {
  const PhysicalParams p = params_from(c, f.beta);
  if (!(f.grid_h > 0.0)) throw ValidationError("grid-h", "must be positive");
  const double u0y = f.u0_y.value_or(c.u0);
  if (!(c.u0 > 0.0) || !(u0y > 0.0)) {
    throw ValidationError("u0", "2D assembly needs positive u0 on both axes");
  }
  const AxisProfile ux = solve_cartesian_factor(cartesian_request(p, c.u0));
  const AxisProfile uy = solve_cartesian_factor(cartesian_request(p, u0y));
  const Grid2D grid = assemble_2d(ux, uy, GridSpec{f.grid_h});

  RunRecorder rec("solve-cartesian", resolve_out_dir(c.out));
  auto& m = rec.manifest();
  m.parameters = params_json(c, f.beta);
  m.parameters["u0_y"] = u0y;
  m.parameters["grid_h"] = f.grid_h;
  m.parameters["rotate"] = f.rotate ? json(*f.rotate) : json(nullptr);
  m.solver = cartesian_request(p, c.u0).control;
  m.solver.blowup_threshold = default_blowup_threshold(p, c.u0);
  if (want_csv(c)) {
    rec.write("axis_x.csv", axis_csv(ux, "x"));
    rec.write("axis_y.csv", axis_csv(uy, "y"));
    rec.write("grid2d_u.csv", plane_csv(grid, grid.u()));
    rec.write("grid2d_rho.csv", plane_csv(grid, grid.rho()));
  }
  if (want_json(c)) {
    rec.write("axis_x.json", json(ux).dump() + "\n");
    rec.write("axis_y.json", json(uy).dump() + "\n");
    rec.write("grid2d.json", json(grid).dump() + "\n");
  }

  double mass = 0.0;
  for (double r : grid.rho()) mass += r;
  mass *= f.grid_h * f.grid_h;
  const ResidualNorms base = maxent_residual(grid);
  json report{{"grid_mass", mass},
              {"half_width_x", ux.half_width()},
              {"half_width_y", uy.half_width()},
              {"mixed_difference", mixed_difference_norm(grid)},
              {"unrotated", base}};
  if (f.rotate) {
    const Grid2D rot = rotate_grid(grid, *f.rotate);
    if (want_csv(c)) {
      rec.write("grid2d_rotated_u.csv", plane_csv(rot, rot.u()));
      rec.write("grid2d_rotated_rho.csv", plane_csv(rot, rot.rho()));
    }
    if (want_json(c)) rec.write("grid2d_rotated.json", json(rot).dump() + "\n");
    const ResidualNorms rr = maxent_residual(rot);
    report["rotated"] = rr;
    report["theta"] = *f.rotate;
    report["rotated_to_unrotated"] =
        base.pde_scaled > 0.0 ? number_to_json(rr.pde_scaled / base.pde_scaled) : json(nullptr);
  }
  rec.write("residual_report.json", report.dump(2) + "\n");
  m.residuals = report;
  m.observables = json{{"half_width_x", ux.half_width()}, {"half_width_y", uy.half_width()},
                       {"grid_mass", mass}};
  rec.finish();
  out << fmt::format("i_m = {}  grid mass = {}  scaled residual = {}\n",
                     format_number(ux.half_width()), format_number(mass),
                     format_number(base.pde_scaled));
  return kSuccess;
}

struct SweepFlags {
  std::vector<double> log_range;
  std::string list;
  unsigned threads = 1;
};

int sweep_cmd(const Common& c, const SweepFlags& f, std::ostream& out, std::ostream& err) {
  std::vector<double> betas;
  if (!f.log_range.empty()) {
    const double n = f.log_range[2];
    if (!(n >= 1.0) || n != std::floor(n)) {
      throw ValidationError("beta-log-range", "point count must be a positive integer");
    }
    betas = log_range(f.log_range[0], f.log_range[1], static_cast<std::size_t>(n));
  } else {
    betas = parse_list(f.list, "beta-list");
  }
  const PhysicalParams tmpl = params_from(c, betas.front() > 0.0 ? betas.front() : 1.0);
  SweepOptions opts;
  opts.threads = f.threads;
  const std::vector<SweepRow> rows = beta_sweep(betas, c.u0, tmpl, opts);
  const SweepSummary summary = summarize(rows);

  CsvTable t({"beta", "r_m", "r2_bar", "z", "u_bar", "k_bar_quad", "k_bar_closed", "energy",
              "entropy"});
  json failed = json::array();
  for (const SweepRow& r : rows) {
    t.add_row({r.beta, r.r_m, r.r2_bar, r.z, r.u_bar, r.k_bar_quadrature, r.k_bar_closed_form,
               r.energy, r.entropy});
    if (!r.ok) {
      err << fmt::format("warning: beta = {} failed: {}\n", format_number(r.beta), r.error);
      failed.push_back(json{{"beta", r.beta}, {"error", r.error}});
    }
  }
  RunRecorder rec("sweep", resolve_out_dir(c.out));
  auto& m = rec.manifest();
  m.parameters = params_json(c, betas.front());
  m.parameters.erase("params");
  m.parameters["mass"] = c.mass;
  m.parameters["hbar"] = c.hbar;
  m.parameters["variant"] = std::string(to_string(tmpl.variant()));
  m.parameters["betas"] = betas;
  if (want_csv(c)) rec.write("sweep.csv", t.str());
  if (want_json(c)) rec.write("sweep.json", json(rows).dump(2) + "\n");
  const json report{{"summary", summary}, {"failed", failed}};
  rec.write("sweep_report.json", report.dump(2) + "\n");
  m.observables = json{{"rows", rows.size()}, {"failed_rows", summary.failed_rows}};
  m.residuals = json{{"monotonicity", summary}};
  rec.finish();
  out << fmt::format(
      "{} rows ({} failed); r_m nondecreasing: {}; r2_bar nondecreasing: {}; K_bar strictly "
      "decreasing: {}; U_bar nonincreasing: {}\n",
      rows.size(), summary.failed_rows, summary.r_m_nondecreasing, summary.r2_bar_nondecreasing,
      summary.k_bar_strictly_decreasing, summary.u_bar_nonincreasing);
  return kSuccess;
}

struct LimitFlags {
  std::string betas = "10,50,100";
  std::size_t samples = 20001;
};

int limit_cmd(const Common& c, const LimitFlags& f, std::ostream& out) {
  const std::vector<double> betas = parse_list(f.betas, "betas");
  for (double b : betas) {
    if (!(b > 0.0)) throw ValidationError("betas", "must be positive");
  }
  if (!(c.u0 > 0.0)) throw ValidationError("u0", "must be positive");
  const PhysicalParams tmpl = params_from(c, betas.front());
  const ConvergenceReport rep = limit_convergence(betas, c.u0, tmpl, f.samples);

  RunRecorder rec("limit", resolve_out_dir(c.out));
  auto& m = rec.manifest();
  m.parameters = params_json(c, betas.front());
  m.parameters["betas"] = betas;
  m.parameters["samples"] = f.samples;
  for (double b : betas) {
    const RadialProfile prof = solve_radial(radial_request(tmpl.with_beta(b), c.u0));
    rec.write("profile_beta_" + beta_tag(b) + ".csv", radial_profile_table(prof).str());
  }
  CsvTable sinc({"r", "psi", "rho"});
  const std::size_t n = 1001;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rep.limit.r_inf * static_cast<double>(i) / static_cast<double>(n - 1);
    sinc.add_row({r, rep.limit.psi(r), rep.limit.density(r)});
  }
  rec.write("sinc_limit.csv", sinc.str());
  CsvTable conv({"beta", "sup_norm_distance"});
  for (const auto& row : rep.rows) conv.add_row({row.beta, row.sup_distance});
  rec.write("convergence.csv", conv.str());
  if (want_json(c)) {
    rec.write("convergence.json",
              json{{"rows", rep.rows}, {"sinc_limit", rep.limit},
                   {"strictly_decreasing", rep.strictly_decreasing}}
                      .dump(2) +
                  "\n");
  }
  m.observables = json{{"sinc_limit", rep.limit}, {"rows", rep.rows}};
  m.residuals = json{{"strictly_decreasing", rep.strictly_decreasing}};
  rec.finish();
  for (const auto& row : rep.rows) {
    out << fmt::format("beta = {:<8g} r_m = {:.10f}  sup|rho - rho_inf| = {:.6e}\n", row.beta,
                       row.r_m, row.sup_distance);
  }
  out << fmt::format("r_inf = {:.10f}  strictly decreasing: {}\n", rep.limit.r_inf,
                     rep.strictly_decreasing);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Maximum-entropy self-trapped solutions of the 2D Madelung fluid", "madelung");
  app.require_subcommand(1);

  Common radial_c, cart_c, sweep_c, limit_c;
  double radial_beta = 0.0;
  auto* radial = app.add_subcommand("solve-radial", "solve the rotationally symmetric equation");
  radial->add_option("--beta", radial_beta, "Lagrange multiplier beta")->required();
  add_common(radial, radial_c, true);

  CartesianFlags cart_f;
  auto* cart = app.add_subcommand("solve-cartesian", "solve the axis factors and assemble a 2D grid");
  cart->add_option("--beta", cart_f.beta, "Lagrange multiplier beta")->required();
  add_common(cart, cart_c, false);
  cart->add_option("--u0-y", cart_f.u0_y, "U at the origin for the y factor (default: --u0)");
  cart->add_option("--grid-h", cart_f.grid_h, "grid spacing")->capture_default_str();
  cart->add_option("--rotate", cart_f.rotate, "also emit the grid rotated by this angle (radians)");

  SweepFlags sweep_f;
  auto* sweep = app.add_subcommand("sweep", "observables over a range of beta");
  auto* range_opt = sweep->add_option("--beta-log-range", sweep_f.log_range, "lo hi n")
                        ->expected(3);
  auto* list_opt = sweep->add_option("--beta-list", sweep_f.list, "comma-separated betas");
  range_opt->excludes(list_opt);
  sweep->add_option("--threads", sweep_f.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  add_common(sweep, sweep_c, true);

  LimitFlags limit_f;
  auto* limit = app.add_subcommand("limit", "large-beta convergence towards the sinc limit");
  limit->add_option("--betas", limit_f.betas, "comma-separated betas")->capture_default_str();
  limit->add_option("--samples", limit_f.samples, "radii sampled for the sup-norm")
      ->capture_default_str();
  add_common(limit, limit_c, true);

  VerifyOptions verify_o;
  verify_o.golden = MADELUNG_GOLDEN_FILE;
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--beta", verify_o.beta, "beta of the checked solution")->capture_default_str();
  verify->add_flag("--quick", verify_o.quick, "skip the slower checks");
  verify->add_option("--golden", verify_o.golden, "golden values file")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kUsageError;
  }

  try {
    if (*radial) return solve_radial_cmd(radial_c, radial_beta, out);
    if (*cart) return solve_cartesian_cmd(cart_c, cart_f, out);
    if (*sweep) {
      if (sweep_f.log_range.empty() && sweep_f.list.empty()) {
        throw ValidationError("beta", "give --beta-log-range or --beta-list");
      }
      return sweep_cmd(sweep_c, sweep_f, out, err);
    }
    if (*limit) return limit_cmd(limit_c, limit_f, out);
    if (*verify) return run_verify(verify_o, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kComputationFailed;
  }
  return kUsageError;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace madelung::cli
