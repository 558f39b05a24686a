#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "catransport/checks.hpp"
#include "catransport/finite_cat.hpp"

namespace {

using namespace catransport;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::pair<int, int> parse_grid(const std::string& grid) {
  const auto x = grid.find('x');
  if (x == std::string::npos) throw ConfigError("grid must look like NxM");
  const int n = std::stoi(grid.substr(0, x));
  const int m = std::stoi(grid.substr(x + 1));
  if (n < 8 || m < 8) throw ConfigError("grid sizes must be at least 8");
  return {n, m};
}

std::vector<std::vector<int>> read_cayley_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open Cayley table " + file);
  std::vector<std::vector<int>> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<int> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stoi(cell));
    table.push_back(std::move(row));
  }
  return table;
}

int emit_report(const std::vector<ReportRow>& rows, const std::string& out_file) {
  const std::string csv = report_to_csv(rows);
  if (out_file.empty()) {
    std::cout << csv;
  } else {
    write_report_csv(out_file, rows);
  }
  bool all_pass = true;
  for (const auto& r : rows) all_pass = all_pass && r.pass;
  if (!all_pass) {
    std::cerr << "failing rows:\n";
    for (const auto& r : rows)
      if (!r.pass)
        std::cerr << "  " << r.check << " residual=" << r.residual
                  << " tolerance=" << r.tolerance << "\n";
  }
  return all_pass ? 0 : 1;
}

int cmd_run(const std::string& scenario_name, const std::string& grid,
            std::uint64_t seed, const std::string& checks_csv,
            const std::string& out_file, const std::string& config_file) {
  std::string sname = scenario_name;
  std::string grid_str = grid;
  std::uint64_t the_seed = seed;
  std::vector<std::string> checks = split_list(checks_csv);
  std::string out = out_file;
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw ConfigError("cannot open config " + config_file);
    nlohmann::json cfg = nlohmann::json::parse(in);
    if (cfg.contains("scenario")) sname = cfg["scenario"].get<std::string>();
    if (cfg.contains("grid"))
      grid_str = std::to_string(cfg["grid"]["N"].get<int>()) + "x" +
                 std::to_string(cfg["grid"]["M"].get<int>());
    if (cfg.contains("seed")) the_seed = cfg["seed"].get<std::uint64_t>();
    if (cfg.contains("checks")) checks = cfg["checks"].get<std::vector<std::string>>();
    if (cfg.contains("output")) out = cfg["output"].get<std::string>();
  }
  if (checks.empty()) checks = {"all"};
  const auto [n, m] = parse_grid(grid_str);
  const Scenario& sc = scenario(sname);
  std::vector<ReportRow> rows = run_checks(checks, sc, n, m, the_seed);
  return emit_report(rows, out);
}

int cmd_convergence(const std::string& scenario_name, const std::string& checks_csv,
                    const std::string& grids_csv, std::uint64_t seed,
                    const std::string& out_file) {
  const Scenario& sc = scenario(scenario_name);
  std::vector<std::string> checks = split_list(checks_csv);
  if (checks.empty()) checks = convergence_check_names();
  std::vector<std::pair<int, int>> grids;
  for (const std::string& g : split_list(grids_csv)) {
    const int n = std::stoi(g);
    grids.push_back({n, std::max(8, n / 2)});
  }
  if (grids.size() < 3) throw ConfigError("need a ladder of at least 3 grids");
  std::ostringstream all;
  all << "check,h,residual,order\n";
  bool monotone = true;
  for (const std::string& c : checks) {
    std::vector<ConvergenceRow> rows = convergence_study(c, sc, grids, seed);
    std::string csv = convergence_to_csv(rows);
    all << csv.substr(csv.find('\n') + 1);
    for (size_t i = 1; i < rows.size(); ++i)
      if (rows[i].residual > rows[i - 1].residual * 1.05 && rows[i].residual > 1e-12)
        monotone = false;
  }
  if (out_file.empty()) {
    std::cout << all.str();
  } else {
    std::ofstream out(out_file, std::ios::binary);
    out << all.str();
  }
  if (!monotone) std::cerr << "non-monotone residuals in ladder\n";
  return monotone ? 0 : 1;
}

int cmd_finite(const std::string& cayley_file, const std::string& center_csv,
               const std::string& out_file) {
  std::vector<std::vector<int>> table = read_cayley_csv(cayley_file);
  auto model = finite_model("cayley", table);
  const auto& fin = static_cast<const FiniteGroupModel&>(*model);
  std::vector<int> center;
  for (const std::string& c : split_list(center_csv)) center.push_back(std::stoi(c));
  std::vector<ReportRow> rows;
  auto add = [&](const std::string& check, const std::optional<std::string>& witness) {
    ReportRow r;
    r.check = check;
    r.scenario = "finite";
    r.N = fin.order();
    r.M = static_cast<int>(center.size());
    r.residual = witness ? 1.0 : 0.0;
    r.tolerance = 0.0;
    r.pass = !witness;
    rows.push_back(r);
    if (witness) std::cerr << check << ": " << *witness << "\n";
  };
  GroupAxiomReport rep = group_axiom_report(fin, fin.order());
  ReportRow g;
  g.check = "cayley_group_axioms";
  g.scenario = "finite";
  g.N = fin.order();
  g.M = static_cast<int>(center.size());
  g.residual = rep.max();
  g.tolerance = 0.0;
  g.pass = rep.max() == 0.0;
  rows.push_back(g);
  finite::FiniteCategoricalGroup cg2 = finite::build_cg2(fin, center);
  add("cg2_axioms", cg2.check_axioms());
  finite::FiniteBundle bundle = finite::cg2_quotient_bundle(fin, center);
  add("cg2_bundle_axioms", finite::check_principal_axioms(bundle));
  sort_rows(rows);
  return emit_report(rows, out_file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"categorical gauge transport experiment runner"};
  app.require_subcommand(1);

  std::string scenario_name = "so3_conj";
  std::string grid = "160x32";
  std::uint64_t seed = 20260810;
  std::string checks_csv;
  std::string out_file;
  std::string config_file;
  std::string grids_csv = "50,100,200";
  std::string cayley_file;
  std::string center_csv;

  CLI::App* run = app.add_subcommand("run", "run residual checks on a scenario");
  run->add_option("--scenario", scenario_name, "scenario name");
  run->add_option("--grid", grid, "grid NxM (path samples x surface rows)");
  run->add_option("--seed", seed, "random seed");
  run->add_option("--checks", checks_csv, "comma-separated checks or 'all'");
  run->add_option("--out", out_file, "CSV report path (stdout if omitted)");
  run->add_option("--config", config_file, "JSON config with the same fields");

  CLI::App* conv = app.add_subcommand("convergence", "grid-refinement study");
  conv->add_option("--scenario", scenario_name, "scenario name");
  conv->add_option("--checks", checks_csv, "refinable checks");
  conv->add_option("--grids", grids_csv, "comma-separated path sample counts");
  conv->add_option("--seed", seed, "random seed");
  conv->add_option("--out", out_file, "CSV report path");

  CLI::App* fin = app.add_subcommand("finite", "exhaustive finite-group checks");
  fin->add_option("--cayley", cayley_file, "Cayley table CSV")->required();
  fin->add_option("--center", center_csv, "central subgroup element indices")->required();
  fin->add_option("--out", out_file, "CSV report path");

  CLI::App* list = app.add_subcommand("list-scenarios", "print the scenario catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run))
      return cmd_run(scenario_name, grid, seed, checks_csv, out_file, config_file);
    if (app.got_subcommand(conv))
      return cmd_convergence(scenario_name, checks_csv, grids_csv, seed, out_file);
    if (app.got_subcommand(fin)) return cmd_finite(cayley_file, center_csv, out_file);
    if (app.got_subcommand(list)) {
      for (const std::string& name : catransport::scenario_names())
        std::cout << name << "\n";
      return 0;
    }
  } catch (const catransport::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
