// Command-line front end: single simulations, bright/dark timeline
// extraction, parameter sweeps, figure recipes, and the self-verification
// suite. Output is CSV with a fixed column order; plotting is left to
// external tools.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdyn/analytics.hpp"
#include "qdyn/concurrence.hpp"
#include "qdyn/config.hpp"
#include "qdyn/csv.hpp"
#include "qdyn/parallel.hpp"
#include "qdyn/propagators.hpp"
#include "qdyn/timeline.hpp"
#include "qdyn/verification.hpp"

namespace {

using namespace qdyn;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

// The closed forms cover the one-parameter family with equal rates on both
// qubits and a live bath.
bool analytic_family(const RunConfig& cfg) {
  return cfg.rate_a == cfg.rate_b && cfg.rate_a > 0.0;
}

AnalyticParams analytic_params(const RunConfig& cfg) {
  return AnalyticParams{cfg.a, cfg.chi, cfg.v / cfg.rate_a,
                        cfg.model == "decay" ? Environment::Decay
                                             : Environment::Dephasing};
}

const char* kSimulateHeader =
    "t,c_numeric,c_tilde_numeric,c_analytic,rho11,rho22,rho33,rho44,"
    "re_rho23,im_rho23";

void write_simulation_rows(const RunConfig& cfg, const StateTrajectory& traj,
                           std::ostream& os) {
  const bool analytic = analytic_family(cfg);
  const AnalyticParams ap =
      analytic ? analytic_params(cfg) : AnalyticParams{};
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const DensityMatrix& rho = traj.states[i];
    const ConcurrenceValue general = concurrence_general(rho);
    const ConcurrenceValue fast =
        concurrence_x(project_to_x_form(rho).state);
    std::vector<std::string> fields;
    fields.push_back(format_sci(t));
    fields.push_back(format_sci(general.c));
    fields.push_back(format_sci(fast.c_tilde));
    fields.push_back(analytic ? format_sci(concurrence_closed_form(
                                    ap, cfg.rate_a * t))
                              : std::string());
    fields.push_back(format_sci(rho(kEE, kEE).real()));
    fields.push_back(format_sci(rho(kEG, kEG).real()));
    fields.push_back(format_sci(rho(kGE, kGE).real()));
    fields.push_back(format_sci(rho(kGG, kGG).real()));
    fields.push_back(format_sci(rho(kEG, kGE).real()));
    fields.push_back(format_sci(rho(kEG, kGE).imag()));
    os << join_csv(fields);
  }
}

void cmd_simulate(const RunConfig& cfg, std::ostream& os) {
  const ModelParams p = cfg.to_model_params();
  const DensityMatrix rho0 = cfg.to_init().to_density_matrix();
  const StateTrajectory traj = integrate(rho0, p, cfg.to_integrator(p));
  os << kSimulateHeader << '\n';
  write_simulation_rows(cfg, traj, os);
}

EntanglementTimeline build_timeline(const RunConfig& cfg) {
  const ModelParams p = cfg.to_model_params();
  const double v_ratio = std::abs(p.v) / p.rate_unit();
  const long grid = cfg.grid_n > 0 ? cfg.grid_n
                                   : default_grid_n(cfg.horizon, v_ratio);
  if (analytic_family(cfg)) {
    const AnalyticParams ap = analytic_params(cfg);
    const double rate = cfg.rate_a;
    return extract_timeline(
        [&](double t) { return c_tilde_closed_form(ap, rate * t); },
        cfg.horizon, grid);
  }
  const NumericCtildeEvaluator eval(cfg.to_init().to_density_matrix(), p,
                                    cfg.horizon, grid);
  return extract_timeline([&](double t) { return eval(t); }, cfg.horizon,
                          grid);
}

void cmd_timeline(const RunConfig& cfg, std::ostream& os) {
  const EntanglementTimeline tl = build_timeline(cfg);
  os << "# intervals: " << tl.intervals.size() << '\n';
  os << "# revivals: " << revival_count(tl) << '\n';
  os << "# dark_fraction: " << format_sci(dark_fraction(tl)) << '\n';
  if (tl.esd_time.has_value()) {
    os << "# ESD: t=" << format_sci(*tl.esd_time) << '\n';
  } else {
    os << "# ESD: none\n";
  }
  os << "kind,t_start,t_end\n";
  for (const Interval& iv : tl.intervals) {
    os << join_csv({iv.kind == IntervalKind::Bright ? "bright" : "dark",
                    format_sci(iv.t_start), format_sci(iv.t_end)});
  }
}

void cmd_sweep(const RunConfig& cfg, std::ostream& os) {
  const std::vector<double> as = parse_value_list("sweep_a", cfg.sweep_a,
                                                  cfg.a);
  const std::vector<double> chis =
      parse_value_list("sweep_chi", cfg.sweep_chi, cfg.chi);
  const std::vector<double> vs = parse_value_list("sweep_v", cfg.sweep_v,
                                                  cfg.v);
  const std::vector<double> rates =
      parse_value_list("sweep_rate", cfg.sweep_rate, cfg.rate_a);

  std::vector<RunConfig> points;
  for (double a : as)
    for (double chi : chis)
      for (double v : vs)
        for (double rate : rates) {
          RunConfig point = cfg;
          point.a = a;
          point.chi = chi;
          point.v = v;
          point.rate_a = rate;
          point.rate_b = rate;
          point.to_model_params();  // fail fast on bad values
          point.to_init();
          points.push_back(point);
        }

  // Rows are buffered per point and emitted in grid order, whatever the
  // completion order of the workers.
  std::vector<std::string> rows(points.size());
  parallel_for_index(points.size(), [&](std::size_t i) {
    const RunConfig& point = points[i];
    const EntanglementTimeline tl = build_timeline(point);
    rows[i] = join_csv(
        {point.model, format_sci(point.a), format_sci(point.chi),
         format_sci(point.v), format_sci(point.rate_a),
         format_sci(point.horizon), std::to_string(tl.intervals.size()),
         std::to_string(revival_count(tl)), format_sci(dark_fraction(tl)),
         tl.esd_time.has_value() ? format_sci(*tl.esd_time)
                                 : std::string()});
  });

  os << "model,a,chi,v,rate,horizon,intervals,revivals,dark_fraction,"
        "esd_time\n";
  for (const std::string& row : rows) os << row;
}

int cmd_verify(const std::string& level, std::ostream& os) {
  if (level != "quick" && level != "full") {
    throw ConfigError("verify level must be 'quick' or 'full'");
  }
  const std::vector<CheckResult> results = run_verification(level == "full");
  bool all_pass = true;
  for (const CheckResult& r : results) {
    all_pass = all_pass && r.pass;
    std::ostringstream line;
    line << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  residual "
         << format_sci(r.residual) << "  tolerance " << format_sci(r.tolerance);
    os << line.str() << '\n';
  }
  os << (all_pass ? "verification passed" : "verification FAILED") << " ("
     << results.size() << " checks)\n";
  return all_pass ? kExitOk : kExitVerifyFailure;
}

struct RecipeCurve {
  double a, chi, v, rate;
};

void cmd_recipe(const std::string& name, std::ostream& os) {
  std::string model;
  double t_end = 10.0;
  std::vector<RecipeCurve> curves;
  const double half_pi = M_PI / 2.0;

  if (name == "fig2a" || name == "fig2b") {
    model = "decay";
    const double a = name == "fig2a" ? 0.4 : 0.2;
    t_end = 10.0;
    curves = {{a, 0.0, 0.0, 1.0}, {a, 0.0, 5.0, 1.0}, {a, half_pi, 5.0, 1.0}};
  } else if (name == "fig3") {
    // The caption states a = 0.2, chi = pi/2 and three decay rates, but not
    // which rates; 0.5, 1, 2 are this artifact's choice, with v = 5*gamma
    // and absolute time.
    model = "decay";
    t_end = 10.0;
    for (double g : {0.5, 1.0, 2.0}) curves.push_back({0.2, half_pi, 5.0 * g, g});
  } else if (name == "fig4a" || name == "fig4b") {
    model = "dephasing";
    const double v = name == "fig4a" ? 4.0 : 10.0;
    t_end = 5.0;
    curves = {{0.4, 0.0, 0.0, 1.0}, {0.4, 0.0, v, 1.0}, {0.4, half_pi, v, 1.0}};
  } else {
    throw ConfigError("unknown recipe '" + name +
                      "' (have fig2a, fig2b, fig3, fig4a, fig4b)");
  }

  os << "a,chi,v,rate_a,rate_b," << kSimulateHeader << '\n';
  for (const RecipeCurve& curve : curves) {
    RunConfig run;
    run.model = model;
    run.a = curve.a;
    run.chi = curve.chi;
    run.v = curve.v;
    run.rate_a = curve.rate;
    run.rate_b = curve.rate;
    run.t_end = t_end;
    run.method = "exp";
    const ModelParams p = run.to_model_params();
    IntegratorConfig icfg = run.to_integrator(p);
    // Aim for about one thousand output rows per curve.
    const long steps = detail::step_count(icfg.t_end, icfg.dt);
    icfg.sample_every = std::max(1L, steps / 1000);

    const StateTrajectory traj =
        integrate(run.to_init().to_density_matrix(), p, icfg);
    std::ostringstream rows;
    write_simulation_rows(run, traj, rows);
    std::istringstream lines(rows.str());
    std::string line;
    const std::string prefix = format_sci(curve.a) + ',' +
                               format_sci(curve.chi) + ',' +
                               format_sci(curve.v) + ',' +
                               format_sci(curve.rate) + ',' +
                               format_sci(curve.rate) + ',';
    while (std::getline(lines, line)) {
      os << prefix << line << '\n';
    }
  }
}

int dispatch(const RunConfig& cfg, const std::string& verify_level,
             const std::string& recipe_name) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw ConfigError("cannot open output file " + cfg.output);
    os = &file;
  }

  if (cfg.command == "simulate") {
    cmd_simulate(cfg, *os);
  } else if (cfg.command == "timeline") {
    cmd_timeline(cfg, *os);
  } else if (cfg.command == "sweep") {
    cmd_sweep(cfg, *os);
  } else if (cfg.command == "verify") {
    return cmd_verify(verify_level, *os);
  } else if (cfg.command == "recipe") {
    cmd_recipe(recipe_name, *os);
  } else {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement dynamics of two interacting qubits in contact "
               "with independent environments"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "key=value config file; flags override file values");

  // Flag values land in optionals so a config file never overrides an
  // explicitly given flag.
  std::optional<std::string> model, method, output;
  std::optional<double> a, chi, v, rate_a, rate_b, omega0, t_end, dt, horizon;
  std::optional<int> sample_every;
  std::optional<long> grid_n;
  std::optional<std::string> sweep_a, sweep_chi, sweep_v, sweep_rate;

  auto add_common = [&](CLI::App* sub) {
    sub->fallthrough();  // lets --config appear after the subcommand
    sub->add_option("--model", model, "decay | dephasing");
    sub->add_option("--a", a, "initial |ee> weight, in [0, 1]");
    sub->add_option("--chi", chi, "initial coherence phase");
    sub->add_option("--v", v, "qubit-qubit coupling");
    sub->add_option("--rate-a", rate_a, "bath rate of qubit A");
    sub->add_option("--rate-b", rate_b, "bath rate of qubit B");
    sub->add_option("--omega0", omega0, "qubit transition frequency");
    sub->add_option("--output,-o", output, "output file (default stdout)");
  };

  CLI::App* simulate = app.add_subcommand(
      "simulate", "propagate one initial state and emit the concurrence CSV");
  add_common(simulate);
  simulate->add_option("--t-end", t_end, "propagation horizon");
  simulate->add_option("--dt", dt, "integrator step (default: dt_max rule)");
  simulate->add_option("--method", method, "rk4 | exp");
  simulate->add_option("--sample-every", sample_every,
                       "store every k-th step");

  CLI::App* timeline = app.add_subcommand(
      "timeline", "extract bright/dark intervals and the ESD time");
  add_common(timeline);
  timeline->add_option("--horizon", horizon, "timeline horizon");
  timeline->add_option("--grid-n", grid_n, "scan grid cells");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "timeline summaries over a parameter grid");
  add_common(sweep);
  sweep->add_option("--horizon", horizon, "timeline horizon");
  sweep->add_option("--grid-n", grid_n, "scan grid cells");
  sweep->add_option("--sweep-a", sweep_a, "comma list of a values");
  sweep->add_option("--sweep-chi", sweep_chi, "comma list of chi values");
  sweep->add_option("--sweep-v", sweep_v, "comma list of v values");
  sweep->add_option("--sweep-rate", sweep_rate, "comma list of rates");

  std::string verify_level = "quick";
  CLI::App* verify = app.add_subcommand(
      "verify", "run the invariant suite and report residuals");
  verify->fallthrough();
  verify->add_option("--level", verify_level, "quick | full");
  verify->add_option("--output,-o", output, "report file (default stdout)");

  std::string recipe_name;
  CLI::App* recipe = app.add_subcommand(
      "recipe", "emit a named figure-reproduction data set");
  recipe->fallthrough();
  recipe->add_option("name", recipe_name, "fig2a | fig2b | fig3 | fig4a | fig4b")
      ->required();
  recipe->add_option("--output,-o", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitConfigError;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file " + config_path);
      std::ostringstream text;
      text << in.rdbuf();
      cfg = RunConfig::from_text(text.str());
    }
    if (model) cfg.model = *model;
    if (a) cfg.a = *a;
    if (chi) cfg.chi = *chi;
    if (v) cfg.v = *v;
    if (rate_a) cfg.rate_a = *rate_a;
    if (rate_b) cfg.rate_b = *rate_b;
    if (omega0) cfg.omega0 = *omega0;
    if (t_end) cfg.t_end = *t_end;
    if (dt) cfg.dt = *dt;
    if (method) cfg.method = *method;
    if (sample_every) cfg.sample_every = *sample_every;
    if (horizon) cfg.horizon = *horizon;
    if (grid_n) cfg.grid_n = *grid_n;
    if (output) cfg.output = *output;
    if (sweep_a) cfg.sweep_a = *sweep_a;
    if (sweep_chi) cfg.sweep_chi = *sweep_chi;
    if (sweep_v) cfg.sweep_v = *sweep_v;
    if (sweep_rate) cfg.sweep_rate = *sweep_rate;

    if (simulate->parsed()) cfg.command = "simulate";
    if (timeline->parsed()) cfg.command = "timeline";
    if (sweep->parsed()) cfg.command = "sweep";
    if (verify->parsed()) cfg.command = "verify";
    if (recipe->parsed()) cfg.command = "recipe";

    return dispatch(cfg, verify_level, recipe_name);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InvalidStateError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  }
}
