#include "milnor/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>

#include "milnor/cli/germ_spec.hpp"
#include "milnor/milnor.hpp"

namespace milnor::cli {

namespace {

using nlohmann::json;

struct Invocation {
  std::string command;
  std::string germ_file;
  double epsilon = 0.0;
  std::optional<double> eta;
  double theta = 0.0;
  std::string mode;
  std::size_t samples = 0;
  std::size_t starts = 64;
  std::uint64_t seed = 0;
  bool same_degree = false;
  std::string out_path;
  std::string format = "json";
};

constexpr std::size_t kDefaultLinkSamples = 64;
constexpr std::size_t kDefaultFiberSamples = 32;
constexpr std::size_t kDefaultEquivalenceSamples = 100;
constexpr std::size_t kDefaultRankSamples = 200;

json to_json(const Point& p) { return json(std::vector<double>(p)); }

json points_json(const std::vector<Point>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(to_json(p));
  return arr;
}

json weights_json(const WeightSystem& ws) {
  json w = json::array();
  for (const auto& r : ws.weights()) w.push_back(to_string(r));
  return {{"weights", w},
          {"degree_p", to_string(ws.degree_p())},
          {"degree_q", to_string(ws.degree_q())},
          {"same_degree", ws.same_degree()}};
}

void build_app(CLI::App& app, Invocation& inv) {
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--out", inv.out_path, "Also write the report to PATH");
  app.add_option("--format", inv.format, "Format for --out")->check(CLI::IsMember({"json", "csv"}));

  auto germ_arg = [&](CLI::App* sub) { sub->add_option("germ", inv.germ_file, "Germ spec JSON file")->required(); };
  auto eps_opt = [&](CLI::App* sub) {
    sub->add_option("--epsilon", inv.epsilon, "Sphere / ball radius")->required()->check(CLI::PositiveNumber);
  };
  auto seed_opt = [&](CLI::App* sub) { sub->add_option("--seed", inv.seed, "Random seed"); };

  auto* info = app.add_subcommand("info", "Summarize a germ");
  germ_arg(info);

  auto* weights = app.add_subcommand("weights", "Infer a quasi-homogeneous weight system");
  germ_arg(weights);
  weights->add_flag("--same-degree", inv.same_degree, "Require b1 = b2");

  auto* identities = app.add_subcommand("identities", "Certify the Euler, orthogonality and growth identities");
  germ_arg(identities);

  auto* critical = app.add_subcommand("critical", "Critical points of f/|f| on the eps-sphere");
  germ_arg(critical);
  eps_opt(critical);
  critical->add_option("--starts", inv.starts, "Multistart count")->check(CLI::PositiveNumber);
  seed_opt(critical);

  auto* link = app.add_subcommand("link", "Sample the link f^-1(0) on the eps-sphere");
  germ_arg(link);
  eps_opt(link);
  link->add_option("--samples", inv.samples, "Multistart count");
  seed_opt(link);

  auto* fiber = app.add_subcommand("fiber", "Sample a fiber of the tube or sphere fibration");
  germ_arg(fiber);
  fiber->add_option("--mode", inv.mode)->required()->check(CLI::IsMember({"tube", "sphere"}));
  fiber->add_option("--theta", inv.theta, "Fiber angle in radians")->required();
  eps_opt(fiber);
  fiber->add_option("--eta", inv.eta, "Tube level (tube mode)")->check(CLI::PositiveNumber);
  fiber->add_option("--samples", inv.samples, "Multistart count");
  seed_opt(fiber);

  auto* equivalence = app.add_subcommand("equivalence", "Check the Euler-flow bundle equivalence numerically");
  germ_arg(equivalence);
  eps_opt(equivalence);
  equivalence->add_option("--eta", inv.eta, "Tube level")->required()->check(CLI::PositiveNumber);
  equivalence->add_option("--samples", inv.samples, "Tube samples");
  seed_opt(equivalence);

  auto* rank = app.add_subcommand("rank", "Sampled rank evidence for Df and d(f/|f|)");
  germ_arg(rank);
  eps_opt(rank);
  rank->add_option("--samples", inv.samples, "Sphere samples");
  seed_opt(rank);
}

Invocation parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Milnor fibration toolkit", "milnor"};
  Invocation inv;
  build_app(app, inv);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
  inv.command = app.get_subcommands().front()->get_name();
  return inv;
}

std::string usage_text() {
  CLI::App app{"Milnor fibration toolkit", "milnor"};
  Invocation inv;
  build_app(app, inv);
  return app.help();
}

void set_table(RunReport& report, const MapGerm& germ, std::vector<Point> points, std::vector<double> residuals) {
  report.table = PointTable{germ.variable_names(), std::move(points), std::move(residuals)};
}

void run_info(const GermSpec& spec, RunReport& report) {
  const MapGerm germ = spec.germ();
  report.results = {{"variables", germ.variable_names()},
                    {"num_vars", germ.num_vars()},
                    {"P", germ.P().to_string(germ.variable_names())},
                    {"Q", germ.Q().to_string(germ.variable_names())},
                    {"P_terms", germ.P().term_count()},
                    {"Q_terms", germ.Q().term_count()},
                    {"order", germ.order()},
                    {"P_degree", germ.P().total_degree()},
                    {"Q_degree", germ.Q().total_degree()}};
  const auto ws = spec.weight_system();
  report.results["declared_weights"] = ws ? weights_json(*ws) : json(nullptr);
}

json verdict_json(const QHVerdict& v) {
  json out = {{"status", v.quasi_homogeneous() ? "QuasiHomogeneous" : "NotQuasiHomogeneous"},
              {"solution_dimension", v.solution_dimension},
              {"reason", v.reason},
              {"same_degree", v.same_degree}};
  if (v.weights) out.update(weights_json(*v.weights));
  return out;
}

void run_weights(const Invocation& inv, const GermSpec& spec, RunReport& report) {
  report.inputs["same_degree"] = inv.same_degree;
  const QHVerdict v = infer_weights(spec.germ(), inv.same_degree);
  report.results = verdict_json(v);
  report.exit_code = v.quasi_homogeneous() ? kPass : kViolation;
}

// Declared weights win; otherwise infer, preferring b1 = b2.
std::optional<WeightSystem> resolve_weights(const GermSpec& spec, json& results, bool require_same) {
  if (auto ws = spec.weight_system()) {
    results["weight_source"] = "declared";
    results["weight_system"] = weights_json(*ws);
    return ws;
  }
  QHVerdict v = infer_weights(spec.germ(), true);
  if (!v.quasi_homogeneous() && !require_same) v = infer_weights(spec.germ(), false);
  results["weight_source"] = "inferred";
  results["weight_inference"] = verdict_json(v);
  if (!v.quasi_homogeneous()) return std::nullopt;
  results["weight_system"] = weights_json(*v.weights);
  return v.weights;
}

void run_identities(const GermSpec& spec, RunReport& report) {
  const MapGerm germ = spec.germ();
  const auto ws = resolve_weights(spec, report.results, false);
  if (!ws) {
    report.results["status"] = "NotQuasiHomogeneous";
    report.exit_code = kViolation;
    return;
  }
  report.results["status"] = "QuasiHomogeneous";
  json certs = json::array();
  bool all = true;
  for (const auto& c : certify_identities(germ, *ws)) {
    certs.push_back({{"name", identity_name(c.name)},
                     {"holds", c.holds},
                     {"residual", c.residual.to_string(germ.variable_names())}});
    all = all && c.holds;
  }
  if (!ws->same_degree()) {
    for (const auto id : {Identity::Lemma_L1, Identity::Condition_B}) {
      certs.push_back({{"name", identity_name(id)}, {"holds", false}, {"residual", nullptr},
                       {"note", "requires equal degrees b1 = b2"}});
    }
    all = false;
  }
  report.results["certificates"] = certs;
  report.results["all_hold"] = all;
  report.exit_code = all ? kPass : kViolation;
}

void run_critical(const Invocation& inv, const GermSpec& spec, RunReport& report) {
  const MapGerm germ = spec.germ();
  const CriticalSearchOptions opts;
  report.inputs["starts"] = inv.starts;
  report.tolerances = {{"residual_tolerance", opts.residual_tolerance},
                       {"max_iterations", opts.max_iterations},
                       {"link_exclusion", opts.link_exclusion},
                       {"merge_radius_relative", opts.merge_radius},
                       {"omega_zero_tolerance", opts.omega_zero_tolerance}};
  const auto r = critical_points_on_sphere(germ, inv.epsilon, inv.starts, inv.seed, opts);
  report.results = {{"count", r.points.size()},
                    {"points", points_json(r.points)},
                    {"residuals", r.residuals},
                    {"omega_zero", std::vector<bool>(r.omega_zero_flags)},
                    {"multistart_count", r.multistart_count},
                    {"converged_count", r.converged_count},
                    {"near_link_count", r.near_link_count},
                    {"merge_radius", r.merge_radius}};
  set_table(report, germ, r.points, r.residuals);
}

void run_link(const Invocation& inv, const GermSpec& spec, RunReport& report) {
  const MapGerm germ = spec.germ();
  const std::size_t n = inv.samples ? inv.samples : kDefaultLinkSamples;
  report.inputs["samples"] = n;
  report.tolerances = {{"link_tolerance_relative", kLinkTolerance}};
  const auto s = link_points(germ, inv.epsilon, n, inv.seed);
  report.results = {{"count", s.points.size()},
                    {"points", points_json(s.points)},
                    {"f_norms", s.f_norms},
                    {"multistart_count", s.multistart_count},
                    {"tolerance", s.tolerance}};
  set_table(report, germ, s.points, s.f_norms);
}

void run_fiber(const Invocation& inv, const GermSpec& spec, RunReport& report) {
  const MapGerm germ = spec.germ();
  const std::size_t n = inv.samples ? inv.samples : kDefaultFiberSamples;
  const FiberOptions opts;
  report.inputs["mode"] = inv.mode;
  report.inputs["theta"] = inv.theta;
  report.inputs["samples"] = n;
  report.tolerances = {{"accept_tolerance", opts.accept_tolerance},
                       {"max_eta_ratio", opts.max_eta_ratio},
                       {"merge_radius_relative", opts.merge_radius}};
  const double c = std::cos(inv.theta);
  const double s = std::sin(inv.theta);
  if (inv.mode == "tube") {
    if (!inv.eta) throw UsageError("fiber --mode tube requires --eta");
    report.inputs["eta"] = *inv.eta;
    std::vector<TubePoint> pts;
    try {
      pts = tube_fiber_sample(germ, inv.epsilon, *inv.eta, inv.theta, n, inv.seed, opts);
    } catch (const EmptyFiberError& e) {
      report.results = {{"count", 0}, {"points", json::array()}, {"error", e.what()}};
      report.exit_code = kViolation;
      set_table(report, germ, {}, {});
      return;
    }
    std::vector<Point> xs;
    std::vector<double> res;
    json fvals = json::array();
    for (const auto& p : pts) {
      xs.push_back(p.x);
      res.push_back(std::hypot(p.f_value[0] - *inv.eta * c, p.f_value[1] - *inv.eta * s) / *inv.eta);
      fvals.push_back({p.f_value[0], p.f_value[1]});
    }
    report.results = {{"count", xs.size()}, {"points", points_json(xs)}, {"f_values", fvals}, {"residuals", res}};
    set_table(report, germ, std::move(xs), std::move(res));
  } else {
    const auto pts = sphere_fiber_sample(germ, inv.epsilon, inv.theta, n, inv.seed, opts);
    std::vector<double> res;
    for (const auto& p : pts) res.push_back(angle_between(germ.P().evaluate(p), germ.Q().evaluate(p), c, s));
    report.results = {{"count", pts.size()}, {"points", points_json(pts)}, {"residuals", res}};
    set_table(report, germ, pts, std::move(res));
  }
}

void run_equivalence(const Invocation& inv, const GermSpec& spec, RunReport& report) {
  const MapGerm germ = spec.germ();
  const std::size_t n = inv.samples ? inv.samples : kDefaultEquivalenceSamples;
  report.inputs["eta"] = *inv.eta;
  report.inputs["samples"] = n;
  report.tolerances = {{"max_angular_deviation", kMaxAngularDeviation},
                       {"max_sphere_residual_relative", kMaxSphereResidual},
                       {"max_eta_ratio", FiberOptions{}.max_eta_ratio}};
  const auto ws = resolve_weights(spec, report.results, true);
  if (!ws || !ws->same_degree()) {
    report.results["status"] = ws ? "DegreeMismatch" : "NotQuasiHomogeneous";
    report.results["verdict"] = false;
    report.exit_code = kViolation;
    return;
  }
  EquivalenceReport r;
  try {
    r = equivalence_report(germ, *ws, inv.epsilon, *inv.eta, n, inv.seed);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  } catch (const DegenerateSampleError& e) {
    report.results["status"] = "QuasiHomogeneous";
    report.results["error"] = e.what();
    report.results["verdict"] = false;
    report.exit_code = kViolation;
    return;
  }
  report.results["status"] = "QuasiHomogeneous";
  report.results.update({{"num_samples", r.num_samples},
                         {"max_angular_deviation", r.max_angular_deviation},
                         {"max_sphere_residual", r.max_sphere_residual},
                         {"max_flow_time", r.max_flow_time},
                         {"min_flow_time", r.min_flow_time},
                         {"injectivity_violations", r.injectivity_violations},
                         {"verdict", r.verdict}});
  report.exit_code = r.verdict ? kPass : kViolation;
}

json rank_json(const RankSampleReport& r) {
  return {{"num_samples", r.num_samples},
          {"num_discarded", r.num_discarded},
          {"min_sigma", r.min_sigma},
          {"worst_point", to_json(r.worst_point)}};
}

void run_rank(const Invocation& inv, const GermSpec& spec, RunReport& report) {
  const MapGerm germ = spec.germ();
  const std::size_t n = inv.samples ? inv.samples : kDefaultRankSamples;
  report.inputs["samples"] = n;
  report.tolerances = {{"off_variety_tolerance", kDefaultOffVarietyTolerance}};
  report.results["evidence"] = "sampled";
  try {
    const auto df = df_min_singular_sample(germ, inv.epsilon, n, inv.seed);
    const auto proj = submersion_sample(germ, inv.epsilon, n, inv.seed);
    report.results["df"] = rank_json(df);
    report.results["projection"] = rank_json(proj);
    set_table(report, germ, {df.worst_point, proj.worst_point}, {df.min_sigma, proj.min_sigma});
  } catch (const DegenerateSampleError& e) {
    report.results["error"] = e.what();
    report.exit_code = kViolation;
  }
}

}  // namespace

RunReport run_command(const std::vector<std::string>& args) {
  Invocation inv;
  try {
    inv = parse_args(args);
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + usage_text());
  }
  RunReport report;
  report.command = inv.command;
  report.inputs = {{"germ_file", inv.germ_file}, {"seed", inv.seed}};
  if (inv.epsilon > 0) report.inputs["epsilon"] = inv.epsilon;
  const GermSpec spec = load_germ_spec(inv.germ_file);
  report.inputs["germ"] = serialize_germ(spec.germ(), spec.weight_system());

  if (inv.command == "info") run_info(spec, report);
  else if (inv.command == "weights") run_weights(inv, spec, report);
  else if (inv.command == "identities") run_identities(spec, report);
  else if (inv.command == "critical") run_critical(inv, spec, report);
  else if (inv.command == "link") run_link(inv, spec, report);
  else if (inv.command == "fiber") run_fiber(inv, spec, report);
  else if (inv.command == "equivalence") run_equivalence(inv, spec, report);
  else if (inv.command == "rank") run_rank(inv, spec, report);

  if (!inv.out_path.empty()) emit_report(report, inv.format == "csv" ? Format::Csv : Format::Json, inv.out_path);
  return report;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  {
    // --help short-circuits before any germ file is read.
    CLI::App app{"Milnor fibration toolkit", "milnor"};
    Invocation inv;
    build_app(app, inv);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kPass;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kPass;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n" << app.help();
      return kUsage;
    }
  }
  try {
    const RunReport report = run_command(args);
    out << render_json(report);
    return report.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace milnor::cli
