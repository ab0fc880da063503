#pragma once
#include <map>
#include <string>

#include "edem/dataset.hpp"
#include "edem/experiments.hpp"

namespace edem {

// One SVG per run: DE runs get a price
// panel (faint per-seed traces, 10-90 band, median, dashed implied
// equilibrium, red dashed shock verticals) over an agent-count panel; EDEM
// runs plot v/v* on a log axis; run 8 adds a sigma panel; run 9 is a heatmap.
std::string render_run_figure(int run_id, const std::map<std::string, RunDataset>& datasets);
std::string render_grid_figure(const GridSummary& grid);

// Figure file name for a run id (fig1_stable.svg ... fig9_sensitivity.svg).
std::string figure_file_name(int run_id);

}  // namespace edem
