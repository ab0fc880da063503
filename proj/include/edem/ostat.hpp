#pragma once
#include <vector>

#include "edem/dataset.hpp"
#include "edem/rng.hpp"

namespace edem {

// Expected winning-bid-to-value ratio when n bidders draw iid uniform
// zero-mean errors with half-width sigma: 1 + sigma (n-1)/(n+1).
double max_bid_bias(int n, double sigma);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Brute-force oracle for max_bid_bias: `samples` independent groups of n
// uniform draws on [-sigma, +sigma], averaging 1 + max.
McEstimate max_bid_bias_mc(int n, double sigma, long samples, RandomStream& rng);

// Per-epoch multipliers with their summary statistics. Epochs with no
// winners contribute exactly 1 (the point mass stays in every statistic).
struct RbarSample {
  std::vector<double> values;
  double mean = 0.0;
  double median = 0.0;
  double prob_gt_one = 0.0;
  double mean_log = 0.0;
};

RbarSample rbar_sample_from_values(const std::vector<double>& rbars);

// Extracts rbar at every epoch boundary from the recorded value series
// (price column of an EDEM dataset), across all seeds.
RbarSample rbar_stats(const RunDataset& ds, int epoch_length);

struct JensenReport {
  double mean_log = 0.0;
  double log_mean = 0.0;
  bool holds = false;  // mean_log <= log_mean
};

JensenReport jensen_gap_check(const RbarSample& sample);

}  // namespace edem
