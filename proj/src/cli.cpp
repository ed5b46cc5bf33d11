#include "corrbeta/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "corrbeta/core_params.hpp"
#include "corrbeta/efficiency.hpp"
#include "corrbeta/errors.hpp"
#include "corrbeta/report_io.hpp"
#include "corrbeta/validation.hpp"

namespace corrbeta::cli {

namespace {

CorrelatedBetaTarget<> target_of(const CliConfig& cfg) {
  return {cfg.c1, cfg.c2, cfg.c3, cfg.r};
}

std::string target_text(const CorrelatedBetaTarget<>& t) {
  return "c1=" + format_number(t.c1) + " c2=" + format_number(t.c2) + " c3=" +
         format_number(t.c3) + " c4=" + format_number(t.c4()) + " r=" + format_number(t.r);
}

nlohmann::ordered_json target_json(const CorrelatedBetaTarget<>& t) {
  return {{"c1", t.c1}, {"c2", t.c2}, {"c3", t.c3}, {"c4", t.c4()}, {"r", t.r}};
}

std::optional<double> max_r_or_empty(const CorrelatedBetaTarget<>& t) {
  if (!(t.c4() > 0.0)) return std::nullopt;
  return max_feasible_r(t.c1, t.c2, t.c3);
}

int cmd_solve(const CliConfig& cfg, std::ostream& out) {
  const auto target = target_of(cfg);
  const FeasibilityReport<> report = check_feasibility(target);
  const auto bounds = case_bounds(target);

  if (cfg.format == Format::Json) {
    nlohmann::ordered_json j = {{"target", target_json(target)}, {"feasibility", to_json(report)}};
    if (bounds) j["case_bounds"] = bounds->describe();
    if (report.feasible) {
      const auto alphas = solve_alphas(target);
      j["alphas"] = to_json(alphas);
      j["round_trip_correlation"] = target_correlation(alphas);
    } else {
      const auto max_r = max_r_or_empty(target);
      j["max_feasible_r"] = max_r ? nlohmann::ordered_json(*max_r) : nlohmann::ordered_json();
    }
    out << j.dump(2) << '\n';
    return report.feasible ? kOk : kInfeasible;
  }

  out << "target          " << target_text(target) << '\n';
  out << "case            " << to_string(report.special_case) << '\n';
  if (bounds) out << "case_bounds     " << bounds->describe() << '\n';
  if (report.feasible) {
    const auto alphas = solve_alphas(target);
    out << "feasible        yes\n";
    out << "alpha0          " << format_number(alphas.a0()) << '\n';
    out << "alpha1          " << format_number(alphas.a1()) << '\n';
    out << "alpha2          " << format_number(alphas.a2()) << '\n';
    out << "alpha3          " << format_number(alphas.a3()) << '\n';
    out << "gamma_sum       " << format_number(alphas.gamma_sum()) << '\n';
    out << "correlation     " << format_number(target_correlation(alphas)) << '\n';
    return kOk;
  }

  out << "feasible        no\n";
  for (Restriction r : report.violated) {
    out << "violated        " << to_string(r);
    const auto& m = report.margins;
    switch (r) {
      case Restriction::Alpha1Positive: out << " (alpha1 = " << format_number(m.alpha1) << ")"; break;
      case Restriction::Alpha2Positive: out << " (alpha2 = " << format_number(m.alpha2) << ")"; break;
      case Restriction::Alpha0Positive: out << " (alpha0 = " << format_number(m.alpha0) << ")"; break;
      case Restriction::Alpha3Positive: out << " (alpha3 = " << format_number(m.alpha3) << ")"; break;
      case Restriction::C4Positive: out << " (c4 = " << format_number(target.c4()) << ")"; break;
    }
    out << '\n';
  }
  const auto max_r = max_r_or_empty(target);
  out << "max_feasible_r  " << (max_r ? format_number(*max_r) : std::string("n/a")) << '\n';
  return kInfeasible;
}

int cmd_maxr(const CliConfig& cfg, std::ostream& out) {
  const double value = max_feasible_r(cfg.c1, cfg.c2, cfg.c3);
  if (cfg.format == Format::Json) {
    out << nlohmann::ordered_json{{"c1", cfg.c1}, {"c2", cfg.c2}, {"c3", cfg.c3}, {"max_feasible_r", value}}
               .dump(2)
        << '\n';
  } else {
    out << format_number(value) << '\n';
  }
  return kOk;
}

int cmd_sample(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto target = target_of(cfg);
  RngStream stream(cfg.seed, cfg.stream);
  const SampleBatch batch = sample_correlated_beta(stream, target, cfg.n, cfg.method, cfg.max_attempts);

  std::optional<nlohmann::ordered_json> diag;
  if (batch.johnk) {
    diag = to_json(*batch.johnk);
    (*diag)["analytic_efficiency"] = johnk_efficiency(solve_alphas(target));
    err << "johnk attempts=" << batch.johnk->attempts << " accepts=" << batch.johnk->accepts
        << " empirical_rate=" << format_number(batch.johnk->acceptance_rate())
        << " analytic_efficiency=" << format_number((*diag)["analytic_efficiency"].get<double>())
        << '\n';
  }

  if (cfg.format == Format::Json) {
    nlohmann::ordered_json j = to_json(batch);
    if (diag) j["johnk"] = *diag;
    out << j.dump() << '\n';
  } else {
    write_pairs_csv(out, batch);
  }
  return kOk;
}

int cmd_table(const CliConfig& cfg, std::ostream& out) {
  std::vector<double> rs = cfg.r_list;
  if (rs.empty()) rs.push_back(cfg.r);
  const std::vector<double> c1s =
      cfg.c1_list.empty() ? std::vector<double>(kTableC1Values.begin(), kTableC1Values.end())
                          : cfg.c1_list;
  const std::vector<double> c2s =
      cfg.c2_list.empty() ? std::vector<double>(kTableC2Values.begin(), kTableC2Values.end())
                          : cfg.c2_list;

  std::vector<EfficiencyGrid> grids;
  for (double r : rs) grids.push_back(efficiency_grid(r, c1s, c2s));

  if (cfg.format == Format::Json) {
    if (grids.size() == 1) {
      out << grid_to_json(grids.front()).dump(2) << '\n';
    } else {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& g : grids) arr.push_back(grid_to_json(g));
      out << arr.dump(2) << '\n';
    }
    return kOk;
  }
  for (std::size_t k = 0; k < grids.size(); ++k) {
    if (k > 0) out << '\n';
    out << (cfg.format == Format::Csv ? grid_to_csv(grids[k]) : grid_to_text(grids[k]));
  }
  return kOk;
}

int cmd_validate(const CliConfig& cfg, std::ostream& out) {
  RngStream stream(cfg.seed, cfg.stream);
  const ValidationReport rep = validate_sampler(stream, target_of(cfg), cfg.n, cfg.method);
  out << to_json(rep).dump(2) << '\n';
  return rep.pass ? kOk : kValidationFailed;
}

int dispatch(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.subcommand == "solve") return cmd_solve(cfg, out);
  if (cfg.subcommand == "maxr") return cmd_maxr(cfg, out);
  if (cfg.subcommand == "sample") return cmd_sample(cfg, out, err);
  if (cfg.subcommand == "table") return cmd_table(cfg, out);
  return cmd_validate(cfg, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlated beta pairs via a latent Dirichlet", "corrbeta"};
  app.require_subcommand(1);

  CliConfig cfg;
  const std::map<std::string, Format> formats{
      {"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}};
  std::string format_name = "text";
  std::string method_name = "gamma";
  std::size_t sample_n = 1000;
  std::size_t validate_n = 100000;

  auto add_shapes = [&](CLI::App* sub, bool with_r) {
    sub->add_option("--c1", cfg.c1, "first shape of marginal 1")->required();
    sub->add_option("--c2", cfg.c2, "second shape of marginal 1")->required();
    sub->add_option("--c3", cfg.c3, "first shape of marginal 2")->required();
    if (with_r) sub->add_option("--r", cfg.r, "target correlation in [0, 1)")->required();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "write results to this file");
  };
  auto add_sampling = [&](CLI::App* sub, std::size_t& n) {
    sub->add_option("-n", n, "number of pairs")->capture_default_str();
    sub->add_option("--method", method_name, "gamma or johnk")
        ->check(CLI::IsMember({"gamma", "johnk"}));
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--stream", cfg.stream, "RNG stream id");
  };

  auto* solve = app.add_subcommand("solve", "solve for the Dirichlet shapes");
  add_shapes(solve, true);
  add_format(solve);
  add_output(solve);

  auto* maxr = app.add_subcommand("maxr", "largest feasible correlation for (c1, c2, c3)");
  add_shapes(maxr, false);
  add_format(maxr);
  add_output(maxr);

  auto* sample = app.add_subcommand("sample", "draw correlated beta pairs");
  add_shapes(sample, true);
  add_sampling(sample, sample_n);
  sample->add_option("--max-attempts", cfg.max_attempts, "Johnk trials allowed per accepted draw");
  add_format(sample);
  add_output(sample);

  auto* table = app.add_subcommand("table", "Johnk efficiency grid for c1 = c3");
  auto* r_opt = table->add_option("--r", cfg.r, "target correlation");
  auto* r_list_opt = table->add_option("--r-list", cfg.r_list, "several correlations")->delimiter(',');
  r_opt->excludes(r_list_opt);
  table->add_option("--c1-list", cfg.c1_list, "row values (c1 = c3)")->delimiter(',');
  table->add_option("--c2-list", cfg.c2_list, "column values")->delimiter(',');
  add_format(table);
  add_output(table);

  auto* validate = app.add_subcommand("validate", "sample and check marginals and correlation");
  add_shapes(validate, true);
  add_sampling(validate, validate_n);
  add_output(validate);

  // CLI11 consumes a reversed argument vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (table->parsed() && r_opt->count() == 0 && r_list_opt->count() == 0) {
    err << "error: table needs --r or --r-list\n";
    return kUsage;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.n = validate->parsed() ? validate_n : sample_n;
  cfg.format = formats.at(format_name);
  cfg.method = *parse_method(method_name);

  std::ofstream file;
  std::ostream* sink = &out;
  if (cfg.output) {
    file.open(*cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *cfg.output << '\n';
      return kUsage;
    }
    sink = &file;
  }

  try {
    return dispatch(cfg, *sink, err);
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const TooManyRejections& e) {
    err << "error: " << e.what() << '\n';
    return kRejectionBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace corrbeta::cli
