#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicesim/oracle.hpp"
#include "slicesim/report.hpp"
#include "slicesim/sim_engine.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw slicesim::IoError("cannot open for writing: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw slicesim::IoError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"5G network-slice scheduling simulator"};
  app.require_subcommand(1);

  // simulate
  std::string sim_scenario;
  std::string sim_algo = "dansm";
  uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  std::string sim_out = ".";
  auto* simulate = app.add_subcommand("simulate", "run one scenario with one scheduler");
  simulate->add_option("--scenario", sim_scenario, "scenario file")->required();
  simulate->add_option("--algo", sim_algo, "dansm|mga|ffd|bfd");
  simulate->add_option("--seed", sim_seed, "override the scenario seed")
      ->each([&](const std::string&) { sim_seed_set = true; });
  simulate->add_option("--out", sim_out, "output directory");

  // compare
  std::string cmp_scenario;
  std::vector<std::string> cmp_algos;
  std::vector<uint64_t> cmp_seeds;
  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "run several algorithms over shared seeds");
  cmp->add_option("--scenario", cmp_scenario, "scenario file")->required();
  cmp->add_option("--algos", cmp_algos, "algorithms")->required()->delimiter(',');
  cmp->add_option("--seeds", cmp_seeds, "seeds")->required()->delimiter(',');
  cmp->add_option("--out", cmp_out, "output directory for summary, per-run and plot CSVs");

  // oracle
  std::string orc_instance;
  auto* orc = app.add_subcommand("oracle", "brute-force optimum of a static instance");
  orc->add_option("--instance", orc_instance, "scenario file describing the instance")
      ->required();

  // emit-plots
  std::vector<std::string> plot_in;
  std::string plot_out;
  auto* plots = app.add_subcommand("emit-plots", "convert report JSON to plot CSVs");
  plots->add_option("--in", plot_in, "report JSON file (repeatable)")->required();
  plots->add_option("--out", plot_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      auto cfg = slicesim::load_scenario(sim_scenario);
      if (sim_seed_set) cfg.seed = sim_seed;
      const auto report = slicesim::run(cfg, sim_algo);
      std::filesystem::create_directories(sim_out);
      const std::string stem = sim_out + "/report_" + sim_algo + "_seed" +
                               std::to_string(cfg.seed);
      write_file(stem + ".json", slicesim::report_to_json(report));
      write_file(stem + ".csv", slicesim::report_to_csv(report));
      std::cout << sim_algo << " seed " << cfg.seed << ": " << report.total_completed
                << " subtasks completed, " << report.departures << " departures\n"
                << "wrote " << stem << ".json and .csv\n";
    } else if (cmp->parsed()) {
      const auto cfg = slicesim::load_scenario(cmp_scenario);
      const auto summary = slicesim::compare(cfg, cmp_algos, cmp_seeds);
      std::cout << slicesim::summary_to_text(summary);
      if (!cmp_out.empty()) {
        std::filesystem::create_directories(cmp_out);
        write_file(cmp_out + "/summary.json", slicesim::summary_to_json(summary));
        for (const auto& r : summary.runs) {
          write_file(cmp_out + "/report_" + r.algo + "_seed" + std::to_string(r.seed) +
                         ".csv",
                     slicesim::report_to_csv(r));
        }
        slicesim::emit_plot_data(summary.runs, cmp_out);
        std::cout << "wrote " << cmp_out << "/summary.json and CSVs\n";
      }
    } else if (orc->parsed()) {
      const auto cfg = slicesim::load_scenario(orc_instance);
      const auto inst = slicesim::StaticInstance::from_scenario(cfg);
      const auto result = slicesim::brute_force_min(inst);
      std::cout << "F* = " << result.objective << "\n";
      for (size_t i = 0; i < result.assignment.size(); ++i) {
        std::cout << "ue " << (i + 1) << " -> upf " << result.assignment[i] << "\n";
      }
      std::cout << result.evaluated << " feasible assignments evaluated\n";
    } else if (plots->parsed()) {
      std::vector<slicesim::SimReport> reports;
      for (const auto& path : plot_in) {
        reports.push_back(slicesim::report_from_json(read_file(path)));
      }
      slicesim::emit_plot_data(reports, plot_out);
      std::cout << "wrote plot CSVs to " << plot_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
