#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "edem/config.hpp"
#include "edem/market.hpp"

namespace edem {

// Stacked multi-seed output of one batch, keyed (seed, tick).
struct RunDataset {
  RunConfig config;
  std::vector<std::uint64_t> seeds;
  std::vector<std::vector<TickRecord>> by_seed;  // parallel to seeds

  long ticks() const { return by_seed.empty() ? 0 : static_cast<long>(by_seed.front().size()); }
};

struct Band {
  double p10 = 0.0;
  double median = 0.0;
  double p90 = 0.0;
};

// Per-tick cross-seed median and 10th/90th percentiles for each reporter.
struct AggregateSeries {
  std::vector<long> tick;
  std::vector<Band> price;
  std::vector<Band> sellers;
  std::vector<Band> buyers;
};

// Linear-interpolation percentile on a sorted copy: h = (n-1)q,
// x[floor(h)] + (h - floor(h)) * (x[floor(h)+1] - x[floor(h)]).
double percentile(std::vector<double> values, double q);

// Warns to stderr on single-seed datasets (degenerate bands).
AggregateSeries aggregate(const RunDataset& ds);

// Dataset file: '#'-prefixed header (artifact version, config echo, seed
// list, draw-order registry hash) followed by one CSV row per (seed, tick).
// Reporters not applicable to the variant are written as empty fields.
// Doubles use shortest round-trip formatting, so read-back is bit-exact.
std::string dataset_header(const RunConfig& cfg);
void write_dataset(const RunDataset& ds, const std::string& path);
RunDataset read_dataset(const std::string& path);

void write_aggregate(const AggregateSeries& agg, const std::string& path);

extern const char* const kArtifactVersion;

}  // namespace edem
