#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edem/dataset.hpp"

namespace edem {

// Preset parameter vector for one primary run. Run 5 needs a scenario;
// run 7 is a three-arm sweep (see run_specs) and run 9 is the grid.
RunConfig preset(int run_id, std::optional<char> scenario = std::nullopt);

// Labelled configs a `run <id>` invocation executes. Run 5 -> {run5A, run5B};
// run 7 -> {run7_cbp1, run7_cbm1} (its C_b = 0 arm is run 6's vector).
std::vector<RunConfig> run_specs(int run_id);

// Executes init + ticks * step for every seed (seeds run in parallel, results
// merged in seed order) and stacks the per-tick reporters.
RunDataset run_batch(const RunConfig& cfg);

struct GridCell {
  double c_b = 0.0;
  double sigma_bar = 0.0;
  double median_terminal = 0.0;  // median across seeds of terminal v/v*
};

struct GridSummary {
  std::vector<GridCell> cells;  // 5 x 6, c_b-major
  double fraction_gt_1_5 = 0.0;
  double fraction_gt_10 = 0.0;
  double max_cell = 0.0;
};

extern const std::vector<double> kGridCbValues;
extern const std::vector<double> kGridSigmaValues;

// Run-9 sweep: C_b x sigma_bar, 5 seeds x 1500 ticks per cell.
GridSummary sensitivity_grid();

// Second-half cross-seed median price (the deviation statistic's numerator).
double second_half_median_price(const RunDataset& ds);
// Terminal median v/v* for EDEM datasets.
double terminal_median_ratio(const RunDataset& ds);

// Per-epoch multiplier distribution report over the EDEM regime datasets
// present in `datasets`, and per-run outcome report; missing runs are flagged.
std::string rbar_table(const std::map<std::string, RunDataset>& datasets);
std::string summary_table(const std::map<std::string, RunDataset>& datasets);

std::string grid_table(const GridSummary& grid);

}  // namespace edem
