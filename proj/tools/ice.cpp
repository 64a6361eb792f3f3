// ice: command-line front end for incremental cost-effectiveness inference.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "iceinfer/iceinfer.hpp"

namespace {

using namespace iceinfer;

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

std::optional<double> parse_lambda(const std::string& text) {
  if (text == "auto") return std::nullopt;
  const auto v = csv::parse_double(text);
  if (!v)
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("--lambda expects a number or 'auto', got '{}'",
                            text));
  return *v;
}

void print_summary(const ArmSample& arm) {
  for (const auto v : {Variable::Effe, Variable::Cost}) {
    const auto s = summarize(arm, v);
    fmt::print("  {} {} (n = {}): min {:.6g}  q1 {:.6g}  median {:.6g}  "
               "mean {:.6g}  q3 {:.6g}  max {:.6g}  sd {:.6g}\n",
               to_string(arm.arm()), to_string(v), s.n, s.min, s.q1, s.median,
               s.mean, s.q3, s.max, s.sd);
  }
}

ShadowPrice resolve_lambda(const std::optional<double>& lambda,
                           const TwoArmData& data, ScaleRule rule) {
  if (lambda) return ShadowPrice(*lambda, LambdaSource::UserSupplied);
  const auto scale = ice_scale(data.std_arm, data.new_arm, rule);
  fmt::print(stderr, "auto lambda: statistical ratio {:.6g}, nearest power of 10 = {}\n",
             scale.ratio, csv::format_double(scale.recommended.value()));
  return scale.recommended;
}

// Enumerated option matched case-insensitively against `table`.
template <typename E>
void add_choice(CLI::App* cmd, const std::string& name, E& target,
                const std::map<std::string, E>& table,
                const std::string& description) {
  cmd->add_option_function<std::string>(
         name, [&target, &table](const std::string& v) { target = table.at(v); },
         description)
      ->transform(CLI::IsMember(table, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental cost-effectiveness (ICE) inference: shadow price "
               "selection, bootstrap confidence wedges, preference maps, "
               "cost-effectiveness frontiers and reports."};
  app.require_subcommand(1);

  const std::map<std::string, ScaleRule> scale_rules{
      {"se", ScaleRule::StandardError}, {"pooled", ScaleRule::Pooled}};
  const std::map<std::string, Perspective> perspectives{
      {"alias", Perspective::Alias}, {"alibi", Perspective::Alibi}};
  const std::map<std::string, TailRule> tail_rules{
      {"symmetric", TailRule::Symmetric}, {"equal", TailRule::Equal}};

  // scale
  std::string scale_input;
  ScaleRule scale_rule = ScaleRule::StandardError;
  auto* scale_cmd = app.add_subcommand(
      "scale", "Statistical shadow price: ratio of cost to effectiveness "
               "spread and the nearest power of 10");
  scale_cmd->add_option("--input", scale_input, "Two-arm CSV (trtm,effe,cost)")
      ->required();
  add_choice(scale_cmd, "--scale-rule", scale_rule, scale_rules,
             "Spread of the differences: se (standard error of the mean "
             "difference) or pooled (pooled SD)");

  // bootstrap
  RunConfig boot;
  std::string boot_lambda = "auto";
  std::string boot_out;
  auto* boot_cmd = app.add_subcommand(
      "bootstrap", "Resample patients with replacement and write the ICE "
                   "scatter (rep,x,y)");
  boot_cmd->add_option("--input", boot.input, "Two-arm CSV")->required();
  boot_cmd->add_option("--reps", boot.reps, "Bootstrap replications (>= 100)")
      ->capture_default_str();
  boot_cmd->add_option("--seed", boot.seed, "Master random seed")
      ->capture_default_str();
  boot_cmd->add_option("--lambda", boot_lambda,
                       "Shadow price, or 'auto' for the nearest power of 10")
      ->capture_default_str();
  add_choice(boot_cmd, "--scale-rule", boot.scale_rule, scale_rules,
             "Rule for --lambda auto");
  add_choice(boot_cmd, "--perspective", boot.perspective, perspectives,
             "alias (effectiveness units) or alibi (cost units)");
  boot_cmd->add_option("--out", boot_out, "Scatter CSV to write")->required();

  // wedge
  std::string wedge_scatter;
  double wedge_confidence = 0.95;
  TailRule wedge_tails = TailRule::Symmetric;
  auto* wedge_cmd = app.add_subcommand(
      "wedge", "Angular confidence wedge over a bootstrap scatter");
  wedge_cmd->add_option("--scatter", wedge_scatter, "Scatter CSV")->required();
  wedge_cmd->add_option("--confidence", wedge_confidence, "Confidence level")
      ->capture_default_str();
  add_choice(wedge_cmd, "--tails", wedge_tails, tail_rules,
             "symmetric (half-angle about the observed ray) or equal (equal "
             "tail counts)");

  // prefmap
  double pref_beta = 1.0, pref_gamma = 1.0, pref_range = 2.0;
  std::size_t pref_grid = 41;
  bool pref_check = false;
  auto* pref_cmd = app.add_subcommand(
      "prefmap", "Validity, returns to scale and axiom checks of a preference "
                 "map");
  pref_cmd->add_option("--beta", pref_beta, "Radius power (returns to scale)")
      ->required();
  pref_cmd->add_option("--gamma", pref_gamma, "Signed-power exponent")
      ->required();
  pref_cmd->add_flag("--check-axioms", pref_check,
                     "Check the four coherence axioms on a square grid");
  pref_cmd->add_option("--grid", pref_grid, "Grid points per axis")
      ->capture_default_str();
  pref_cmd->add_option("--range", pref_range, "Grid covers [-range, range]^2")
      ->capture_default_str();

  // frontier
  std::string frontier_options;
  auto* frontier_cmd = app.add_subcommand(
      "frontier", "Cost-effectiveness frontier with strict and extended "
                  "dominance");
  frontier_cmd->add_option("--options", frontier_options,
                           "Options CSV (name,effe,cost)")
      ->required();

  // report
  RunConfig rep;
  std::string rep_lambda = "auto";
  auto* report_cmd = app.add_subcommand(
      "report", "Full study: summaries, shadow price, bootstrap, wedge, "
                "preference histograms and plots");
  report_cmd->add_option("--input", rep.input, "Two-arm CSV")->required();
  report_cmd->add_option("--reps", rep.reps, "Bootstrap replications")
      ->capture_default_str();
  report_cmd->add_option("--seed", rep.seed, "Master random seed")
      ->capture_default_str();
  report_cmd->add_option("--lambda", rep_lambda, "Shadow price or 'auto'")
      ->capture_default_str();
  add_choice(report_cmd, "--scale-rule", rep.scale_rule, scale_rules,
             "Rule for --lambda auto");
  add_choice(report_cmd, "--perspective", rep.perspective, perspectives,
             "alias or alibi");
  report_cmd->add_option("--confidence", rep.confidence, "Wedge confidence")
      ->capture_default_str();
  add_choice(report_cmd, "--tails", rep.tails, tail_rules, "symmetric or equal");
  report_cmd->add_option("--beta", rep.beta, "Nonlinear map radius power")
      ->capture_default_str();
  report_cmd->add_option("--gamma", rep.gamma,
                         "Nonlinear map exponent (default Omega)")
      ->capture_default_str();
  report_cmd->add_option("--bins", rep.bins, "Histogram bins")
      ->capture_default_str();
  report_cmd->add_option("--outdir", rep.outdir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*scale_cmd) {
      const auto data = ingest_csv(scale_input);
      const auto s = ice_scale(data.std_arm, data.new_arm, scale_rule);
      fmt::print("scale rule: {}\n", to_string(s.rule));
      fmt::print("cost spread: {:.6g}\neffe spread: {:.6g}\n", s.spread_cost,
                 s.spread_effe);
      fmt::print("ratio: {:.6g}\n", s.ratio);
      fmt::print("recommended lambda: {} ({})\n",
                 csv::format_double(s.recommended.value()),
                 to_string(s.recommended.source()));
      print_summary(data.std_arm);
      print_summary(data.new_arm);
    } else if (*boot_cmd) {
      const auto data = ingest_csv(boot.input);
      const auto lambda =
          resolve_lambda(parse_lambda(boot_lambda), data, boot.scale_rule);
      const auto scatter =
          resample(data, boot.reps, boot.seed, lambda, boot.perspective);
      write_scatter_csv(boot_out, scatter);
      fmt::print("wrote {} replicates to {} (lambda = {}, {} perspective)\n",
                 scatter.r(), boot_out, csv::format_double(lambda.value()),
                 to_string(scatter.perspective()));
    } else if (*wedge_cmd) {
      const auto scatter = read_scatter_csv(wedge_scatter);
      const auto w = compute_wedge(scatter, wedge_confidence, wedge_tails);
      constexpr double deg = 180.0 / kPi;
      fmt::print("tails: {}\nconfidence: {:g}\n", to_string(w.tails),
                 w.confidence);
      fmt::print("center: {:.6f} deg\n", w.center * deg);
      fmt::print("lower: {:.6f} deg\nupper: {:.6f} deg\n", w.lower() * deg,
                 w.upper() * deg);
      fmt::print("half-angle: {:.6f} deg\n", w.half_angle * deg);
      fmt::print("below: {}\nabove: {}\ninside: {}\norigin: {}\nr: {}\n",
                 w.count_below, w.count_above, w.count_inside, w.count_origin,
                 w.r);
    } else if (*pref_cmd) {
      const PreferenceMap map(pref_beta, pref_gamma);
      const auto [lo, hi] = omega_bounds();
      fmt::print("beta: {:g}\ngamma: {:g}\ngamma/beta: {:.9g}\n", map.beta(),
                 map.gamma(), map.ratio());
      fmt::print("omega bounds: [{:.9g}, {:.9g}]\n", lo, hi);
      fmt::print("monotone-valid: {}\n", map.monotone_valid() ? "yes" : "no");
      fmt::print("returns to scale: {}\n", to_string(returns_to_scale(map)));
      if (pref_check) {
        const auto grid = square_grid(pref_grid, pref_range);
        const auto report = check_axioms(map, grid);
        for (const auto* a : report.results()) {
          fmt::print("axiom {}: {} ({} checks, {} failures)\n", a->name,
                     a->passed ? "pass" : "FAIL", a->checks, a->failures);
          if (!a->passed) fmt::print("  first failure: {}\n", a->first_failure);
        }
      }
    } else if (*frontier_cmd) {
      const auto options = read_options_csv(frontier_options);
      const auto result = compute_frontier(options);
      fmt::print("frontier:");
      for (const auto& o : result.frontier) fmt::print(" {}", o.name);
      fmt::print("\n");
      const auto& f = result.frontier;
      for (std::size_t i = 1; i < f.size(); ++i) {
        if (f[i].effe == f[i - 1].effe) {
          fmt::print("  {} = {}: same coordinates\n", f[i - 1].name, f[i].name);
          continue;
        }
        fmt::print("  {} -> {}: ICER {:.6g}\n", f[i - 1].name, f[i].name,
                   (f[i].cost - f[i - 1].cost) / (f[i].effe - f[i - 1].effe));
      }
      for (const auto& d : result.dominated)
        fmt::print("{}: strictly dominated by {}\n", d.option.name,
                   d.dominator);
      for (const auto& d : result.extendedly_dominated) {
        fmt::print("{}: extendedly dominated by mixture of {} and {}",
                   d.option.name, d.left, d.right);
        const auto find = [&](const std::string& name) {
          for (const auto& f : result.frontier)
            if (f.name == name) return f;
          return TreatmentOption{};
        };
        if (!d.left.empty() && !d.right.empty()) {
          const auto m = mixture_compare(d.option, find(d.left), find(d.right));
          fmt::print(" (weight on {} {:.6g}, saving {:.6g})", d.left,
                     m.weight_left, m.cost_saving);
        }
        fmt::print("\n");
      }
    } else if (*report_cmd) {
      rep.lambda = parse_lambda(rep_lambda);
      const auto study = run_report(rep);
      if (study.results.scale)
        fmt::print("auto lambda: statistical ratio {:.6g}, nearest power of 10 = {}\n",
                   study.results.scale->ratio,
                   csv::format_double(study.results.lambda.value()));
      for (const auto& name : report_file_names())
        fmt::print("wrote {}\n", (std::filesystem::path(rep.outdir) / name).string());
    }
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}: {}\n", to_string(e.code()), e.what());
    return kRuntimeError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: Internal: {}\n", e.what());
    return kRuntimeError;
  }
  return 0;
}
