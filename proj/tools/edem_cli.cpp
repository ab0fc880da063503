#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edem/dataset.hpp"
#include "edem/experiments.hpp"
#include "edem/figures.hpp"
#include "edem/market.hpp"
#include "edem/ostat.hpp"

namespace fs = std::filesystem;
using namespace edem;

namespace {

const char* kAllLabels[] = {"run1", "run2",      "run3",      "run4", "run5A",
                            "run5B", "run6", "run7_cbp1", "run7_cbm1", "run8"};

std::string resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("EDEM_OUT_DIR")) return env;
  return "results";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<RunConfig> resolve_run_target(const std::string& target) {
  if (target == "5A" || target == "5a") return {preset(5, 'A')};
  if (target == "5B" || target == "5b") return {preset(5, 'B')};
  if (target.size() == 1 && target[0] >= '1' && target[0] <= '9') {
    const int id = target[0] - '0';
    if (id == 9)
      throw std::runtime_error("run 9 is the sensitivity sweep; use `edem grid`");
    return run_specs(id);
  }
  return {load_config_file(target)};
}

void execute_batch(const RunConfig& cfg, const std::string& out_dir) {
  const RunDataset ds = run_batch(cfg);
  const fs::path data_path = fs::path(out_dir) / (cfg.name + ".csv");
  write_dataset(ds, data_path.string());
  write_aggregate(aggregate(ds), (fs::path(out_dir) / (cfg.name + "_agg.csv")).string());
  std::cout << cfg.name << ": " << ds.seeds.size() << " seeds x " << cfg.ticks
            << " ticks -> " << data_path.string() << "\n";
}

int cmd_run(const std::string& target, const std::string& seeds_csv,
            const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::vector<RunConfig> configs = resolve_run_target(target);
  for (RunConfig& cfg : configs) {
    if (!seeds_csv.empty()) {
      cfg.seeds.clear();
      std::string tok;
      std::istringstream ss(seeds_csv);
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) cfg.seeds.push_back(std::stoull(tok));
    }
    execute_batch(cfg, out_dir);
  }
  return 0;
}

void write_grid_files(const GridSummary& grid, const std::string& out_dir) {
  std::ostringstream csv;
  csv << "c_b,sigma_bar,median_terminal\n";
  for (const auto& c : grid.cells) {
    char row[96];
    std::snprintf(row, sizeof(row), "%.1f,%.2f,%.17g\n", c.c_b, c.sigma_bar, c.median_terminal);
    csv << row;
  }
  write_text((fs::path(out_dir) / "run9_grid.csv").string(), csv.str());
  write_text((fs::path(out_dir) / "run9_summary.txt").string(), grid_table(grid));
}

GridSummary load_grid(const std::string& out_dir) {
  const fs::path path = fs::path(out_dir) / "run9_grid.csv";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing " + path.string() + " (run `edem grid` first)");
  GridSummary grid;
  std::string line;
  std::getline(in, line);
  int gt15 = 0, gt10 = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    GridCell c;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &c.c_b, &c.sigma_bar, &c.median_terminal) != 3)
      throw std::runtime_error("bad row in " + path.string());
    if (c.median_terminal > 1.5) ++gt15;
    if (c.median_terminal > 10.0) ++gt10;
    grid.max_cell = std::max(grid.max_cell, c.median_terminal);
    grid.cells.push_back(c);
  }
  grid.fraction_gt_1_5 = static_cast<double>(gt15) / grid.cells.size();
  grid.fraction_gt_10 = static_cast<double>(gt10) / grid.cells.size();
  return grid;
}

int cmd_grid(const std::string& out_dir) {
  fs::create_directories(out_dir);
  const GridSummary grid = sensitivity_grid();
  write_grid_files(grid, out_dir);
  std::cout << grid_table(grid);
  return 0;
}

std::map<std::string, RunDataset> load_present_datasets(const std::string& out_dir) {
  std::map<std::string, RunDataset> datasets;
  for (const char* label : kAllLabels) {
    const fs::path path = fs::path(out_dir) / (std::string(label) + ".csv");
    if (fs::exists(path)) datasets.emplace(label, read_dataset(path.string()));
  }
  return datasets;
}

int cmd_tables(const std::string& out_dir) {
  const auto datasets = load_present_datasets(out_dir);
  if (datasets.empty())
    throw std::runtime_error("no datasets under " + out_dir + " (run `edem all` first)");
  const std::string t1 = rbar_table(datasets);
  const std::string t2 = summary_table(datasets);
  write_text((fs::path(out_dir) / "table1.txt").string(), t1);
  write_text((fs::path(out_dir) / "table2.txt").string(), t2);
  std::cout << "-- table 1: per-epoch multiplier --\n" << t1;
  std::cout << "-- table 2: run outcomes --\n" << t2;
  const bool partial = t1.find("MISSING") != std::string::npos ||
                       t2.find("MISSING") != std::string::npos;
  if (partial) std::cerr << "warning: some runs missing; report is partial\n";
  return 0;
}

int cmd_ostat(const std::string& out_dir) {
  fs::create_directories(out_dir);
  const int ns[] = {2, 3, 5, 10, 20};
  const double sigmas[] = {0.05, 0.15, 0.30};
  const long samples = 1000000;
  RandomStream rng(12345);
  std::ostringstream out;
  out << "n\tsigma\tclosed_form\tmc_mean\tstd_err\tz\tpass\n";
  bool all_pass = true;
  for (int n : ns) {
    for (double sigma : sigmas) {
      const double closed = max_bid_bias(n, sigma);
      const McEstimate mc = max_bid_bias_mc(n, sigma, samples, rng);
      const double z = std::fabs(mc.mean - closed) / mc.std_error;
      const bool pass = z < 3.0;
      all_pass = all_pass && pass;
      char row[160];
      std::snprintf(row, sizeof(row), "%d\t%.2f\t%.6f\t%.6f\t%.2e\t%.2f\t%s\n", n, sigma,
                    closed, mc.mean, mc.std_error, z, pass ? "ok" : "FAIL");
      out << row;
    }
  }
  write_text((fs::path(out_dir) / "ostat.txt").string(), out.str());
  std::cout << out.str();
  return all_pass ? 0 : 1;
}

int cmd_figures(const std::string& out_dir) {
  const auto datasets = load_present_datasets(out_dir);
  int failures = 0;
  for (int run_id = 1; run_id <= 9; ++run_id) {
    try {
      const std::string svg = run_id == 9 ? render_grid_figure(load_grid(out_dir))
                                          : render_run_figure(run_id, datasets);
      const fs::path path = fs::path(out_dir) / figure_file_name(run_id);
      write_text(path.string(), svg);
      std::cout << path.string() << "\n";
    } catch (const std::exception& e) {
      std::cerr << "figure " << run_id << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

int cmd_all(const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  for (int id : {1, 2, 3, 4, 5, 6, 7, 8})
    for (const RunConfig& cfg : run_specs(id)) execute_batch(cfg, out_dir);
  write_grid_files(sensitivity_grid(), out_dir);
  std::cout << "run9 grid done\n";
  int rc = cmd_ostat(out_dir);
  rc |= cmd_tables(out_dir);
  rc |= cmd_figures(out_dir);
  const auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - start);
  std::cout << "all: completed in " << secs.count() << " s\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EDEM/DE market simulator and experiment harness"};
  app.require_subcommand(1);

  std::string out_flag;
  std::string target;
  std::string seeds_csv;

  auto* run = app.add_subcommand("run", "execute one preset (1-8, 5A, 5B) or a config file");
  run->add_option("target", target, "preset id or config path")->required();
  run->add_option("--seeds", seeds_csv, "comma-separated seed list override");
  run->add_option("--out", out_flag, "output directory");

  auto* grid = app.add_subcommand("grid", "run the 30-cell sensitivity sweep");
  grid->add_option("--out", out_flag, "output directory");

  auto* tables = app.add_subcommand("tables", "emit the multiplier and outcome tables");
  tables->add_option("--out", out_flag, "output directory");

  auto* ostat = app.add_subcommand("ostat", "closed-form vs Monte Carlo bias verification");
  ostat->add_option("--out", out_flag, "output directory");

  auto* figures = app.add_subcommand("figures", "render SVG figures from archived datasets");
  figures->add_option("--out", out_flag, "output directory");

  auto* all = app.add_subcommand("all", "reproduce every dataset, table, and figure");
  all->add_option("--out", out_flag, "output directory");

  CLI11_PARSE(app, argc, argv);
  const std::string out_dir = resolve_out_dir(out_flag);

  try {
    if (run->parsed()) return cmd_run(target, seeds_csv, out_dir);
    if (grid->parsed()) return cmd_grid(out_dir);
    if (tables->parsed()) return cmd_tables(out_dir);
    if (ostat->parsed()) return cmd_ostat(out_dir);
    if (figures->parsed()) return cmd_figures(out_dir);
    if (all->parsed()) return cmd_all(out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
