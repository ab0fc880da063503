#include "edem/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <stdexcept>

#include "edem/ostat.hpp"

namespace edem {

namespace {

RunConfig de_base() {
  RunConfig cfg;
  cfg.variant = Variant::DE;
  cfg.schedules = {0.0, 0.5, 100.0, -0.5};
  cfg.sigma_bar = 0.05;
  cfg.max_patience = 50;
  cfg.balance_period = 100;
  cfg.window = 25;
  cfg.initial_sellers = 50;
  cfg.initial_buyers = 50;
  cfg.ticks = 20000;
  cfg.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  cfg.ask_decrement = 0.016;
  return cfg;
}

RunConfig edem_base() {
  RunConfig cfg;
  cfg.variant = Variant::EDEM;
  cfg.sigma_bar = 0.15;
  cfg.max_patience = 20;
  cfg.init_patience = 20;
  cfg.initial_sellers = 20;
  cfg.initial_buyers = 20;
  cfg.ticks = 3000;
  cfg.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  return cfg;
}

}  // namespace

RunConfig preset(int run_id, std::optional<char> scenario) {
  if (scenario && run_id != 5)
    throw std::invalid_argument("preset: scenario only applies to run 5");
  switch (run_id) {
    case 1: {
      RunConfig cfg = de_base();
      cfg.name = "run1";
      return cfg;
    }
    case 2: {
      RunConfig cfg = de_base();
      cfg.name = "run2";
      cfg.sigma_bar = 0.25;
      return cfg;
    }
    case 3: {
      RunConfig cfg = de_base();
      cfg.name = "run3";
      cfg.max_patience = 100;
      return cfg;
    }
    case 4: {
      RunConfig cfg = de_base();
      cfg.name = "run4";
      cfg.schedules.a_d = 50.0;
      cfg.initial_sellers = 25;
      cfg.initial_buyers = 25;
      return cfg;
    }
    case 5: {
      if (!scenario) throw std::invalid_argument("preset: run 5 needs scenario A or B");
      RunConfig cfg = de_base();
      cfg.ticks = 12000;
      if (*scenario == 'A') {
        cfg.name = "run5A";
        cfg.shocks = {{3000, Shock::Kind::SetDemandIntercept, 50.0},
                      {7000, Shock::Kind::SetMaxPatience, 165.0}};
      } else if (*scenario == 'B') {
        cfg.name = "run5B";
        for (long t = 2000; t < cfg.ticks; t += 2000)
          cfg.shocks.push_back(
              {t, Shock::Kind::SetDemandIntercept, (t / 2000) % 2 == 1 ? 125.0 : 75.0});
      } else {
        throw std::invalid_argument("preset: run 5 scenario must be A or B");
      }
      return cfg;
    }
    case 6: {
      RunConfig cfg = edem_base();
      cfg.name = "run6";
      cfg.c_b = 0.0;
      return cfg;
    }
    case 7: {
      RunConfig cfg = edem_base();
      cfg.name = "run7_cbp1";
      cfg.c_b = 1.0;
      return cfg;
    }
    case 8: {
      RunConfig cfg = edem_base();
      cfg.name = "run8";
      cfg.sigma_bar = 0.05;
      cfg.sigma_growth_per_epoch = 0.005;
      cfg.c_b = -1.0;
      return cfg;
    }
    case 9:
      throw std::invalid_argument("preset: run 9 is the sensitivity grid (use sensitivity_grid)");
    default:
      throw std::invalid_argument("preset: unknown run id " + std::to_string(run_id));
  }
}

std::vector<RunConfig> run_specs(int run_id) {
  if (run_id == 5) return {preset(5, 'A'), preset(5, 'B')};
  if (run_id == 7) {
    RunConfig plus = preset(7);
    RunConfig minus = plus;
    minus.name = "run7_cbm1";
    minus.c_b = -1.0;
    return {plus, minus};
  }
  return {preset(run_id)};
}

RunDataset run_batch(const RunConfig& cfg) {
  cfg.validate();
  RunDataset ds;
  ds.config = cfg;
  ds.seeds = cfg.seeds;
  ds.by_seed.resize(cfg.seeds.size());

  auto run_seed = [&cfg](std::uint64_t seed) {
    MarketState st = init_market(cfg, seed);
    for (long t = 0; t < cfg.ticks; ++t) step(st);
    return std::move(st.records);
  };

  std::vector<std::future<std::vector<TickRecord>>> futures;
  futures.reserve(cfg.seeds.size());
  for (std::uint64_t seed : cfg.seeds)
    futures.push_back(std::async(std::launch::async, run_seed, seed));
  for (std::size_t i = 0; i < futures.size(); ++i) ds.by_seed[i] = futures[i].get();
  return ds;
}

const std::vector<double> kGridCbValues = {-1.0, -0.5, 0.0, 0.5, 1.0};
const std::vector<double> kGridSigmaValues = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};

double terminal_median_ratio(const RunDataset& ds) {
  std::vector<double> terms;
  terms.reserve(ds.by_seed.size());
  for (const auto& series : ds.by_seed) terms.push_back(series.back().price / 100.0);
  return percentile(terms, 0.5);
}

double second_half_median_price(const RunDataset& ds) {
  std::vector<double> meds;
  meds.reserve(ds.by_seed.size());
  for (const auto& series : ds.by_seed) {
    std::vector<double> half;
    half.reserve(series.size() / 2 + 1);
    for (std::size_t i = series.size() / 2; i < series.size(); ++i)
      half.push_back(series[i].price);
    meds.push_back(percentile(half, 0.5));
  }
  return percentile(meds, 0.5);
}

GridSummary sensitivity_grid() {
  GridSummary grid;
  std::vector<std::future<GridCell>> futures;
  for (double cb : kGridCbValues) {
    for (double sigma : kGridSigmaValues) {
      futures.push_back(std::async(std::launch::async, [cb, sigma]() {
        RunConfig cfg = edem_base();
        char name[48];
        std::snprintf(name, sizeof(name), "run9_cb%+.1f_s%02d", cb,
                      static_cast<int>(std::lround(sigma * 100)));
        cfg.name = name;
        cfg.c_b = cb;
        cfg.sigma_bar = sigma;
        cfg.ticks = 1500;
        cfg.seeds = {0, 1, 2, 3, 4};
        const RunDataset ds = run_batch(cfg);
        return GridCell{cb, sigma, terminal_median_ratio(ds)};
      }));
    }
  }
  int gt15 = 0;
  int gt10 = 0;
  for (auto& f : futures) {
    GridCell cell = f.get();
    if (cell.median_terminal > 1.5) ++gt15;
    if (cell.median_terminal > 10.0) ++gt10;
    grid.max_cell = std::max(grid.max_cell, cell.median_terminal);
    grid.cells.push_back(cell);
  }
  grid.fraction_gt_1_5 = static_cast<double>(gt15) / grid.cells.size();
  grid.fraction_gt_10 = static_cast<double>(gt10) / grid.cells.size();
  return grid;
}

namespace {

const std::pair<const char*, const char*> kRbarRegimes[] = {
    {"run6", "Run 6 (C_b=0, sigma=15%)"},
    {"run7_cbp1", "Run 7 (C_b=+1, sigma=15%)"},
    {"run7_cbm1", "Run 7 (C_b=-1, sigma=15%)"},
    {"run8", "Run 8 (C_b=-1, sigma 5->80%)"},
};

}  // namespace

std::string rbar_table(const std::map<std::string, RunDataset>& datasets) {
  std::ostringstream out;
  out << "regime\tmean_rbar\tpr_gt_1\tmean_log_rbar\tmedian_rbar\n";
  for (const auto& [label, title] : kRbarRegimes) {
    auto it = datasets.find(label);
    if (it == datasets.end()) {
      out << title << "\tMISSING\t-\t-\t-\n";
      continue;
    }
    const RbarSample s = rbar_stats(it->second, it->second.config.init_patience);
    char row[160];
    std::snprintf(row, sizeof(row), "%s\t%.4f\t%.1f%%\t%+.4f\t%.3f\n", title, s.mean,
                  100.0 * s.prob_gt_one, s.mean_log, s.median);
    out << row;
  }
  return out.str();
}

std::string summary_table(const std::map<std::string, RunDataset>& datasets) {
  std::ostringstream out;
  out << "run\toutcome\tregime\n";
  auto de_row = [&](const char* label, const char* regime) {
    auto it = datasets.find(label);
    if (it == datasets.end()) {
      out << label << "\tMISSING\t" << regime << '\n';
      return;
    }
    const double p_star = it->second.config.schedules.equilibrium_price();
    const double dev = second_half_median_price(it->second) / p_star - 1.0;
    char row[128];
    std::snprintf(row, sizeof(row), "%s\t%+.1f%% vs p*=%g\t%s\n", label, 100.0 * dev, p_star,
                  regime);
    out << row;
  };
  auto edem_row = [&](const char* label, const char* regime) {
    auto it = datasets.find(label);
    if (it == datasets.end()) {
      out << label << "\tMISSING\t" << regime << '\n';
      return;
    }
    char row[128];
    std::snprintf(row, sizeof(row), "%s\t%.1fx v/v*\t%s\n", label,
                  terminal_median_ratio(it->second), regime);
    out << row;
  };
  de_row("run1", "band-stable");
  de_row("run2", "business-cycle");
  de_row("run3", "overshoot");
  de_row("run4", "undershoot");
  de_row("run5A", "transitional (deviation vs initial p*)");
  de_row("run5B", "transitional (deviation vs initial p*)");
  edem_row("run6", "runaway bubble");
  edem_row("run7_cbp1", "balancer-shaped (mean-reverting)");
  edem_row("run7_cbm1", "balancer-shaped (trend-following)");
  edem_row("run8", "sustained super-linear");
  return out.str();
}

std::string grid_table(const GridSummary& grid) {
  std::ostringstream out;
  out << "c_b\tsigma_bar\tmedian_terminal\tlog10\n";
  for (const auto& c : grid.cells) {
    char row[96];
    std::snprintf(row, sizeof(row), "%+.1f\t%.2f\t%.4g\t%.3f\n", c.c_b, c.sigma_bar,
                  c.median_terminal, std::log10(c.median_terminal));
    out << row;
  }
  char foot[160];
  std::snprintf(foot, sizeof(foot),
                "# cells > 1.5x: %.0f%%  cells > 10x: %.0f%%  max cell: %.4gx\n",
                100.0 * grid.fraction_gt_1_5, 100.0 * grid.fraction_gt_10, grid.max_cell);
  out << foot;
  return out.str();
}

}  // namespace edem
