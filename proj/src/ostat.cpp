#include "edem/ostat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edem {

double max_bid_bias(int n, double sigma) {
  if (n < 1) throw std::invalid_argument("max_bid_bias: n must be >= 1");
  if (sigma < 0.0 || sigma >= 1.0)
    throw std::invalid_argument("max_bid_bias: sigma must be in [0, 1)");
  return 1.0 + sigma * static_cast<double>(n - 1) / static_cast<double>(n + 1);
}

McEstimate max_bid_bias_mc(int n, double sigma, long samples, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("max_bid_bias_mc: n must be >= 1");
  if (samples < 1) throw std::invalid_argument("max_bid_bias_mc: samples must be >= 1");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long i = 0; i < samples; ++i) {
    double max_eps = -sigma;
    for (int j = 0; j < n; ++j) {
      const double eps = rng.uniform(-sigma, sigma);
      if (eps > max_eps) max_eps = eps;
    }
    const double x = 1.0 + max_eps;
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

RbarSample rbar_sample_from_values(const std::vector<double>& rbars) {
  if (rbars.empty()) throw std::invalid_argument("rbar sample: empty");
  RbarSample s;
  s.values = rbars;
  double sum = 0.0;
  double sum_log = 0.0;
  long gt = 0;
  for (double r : rbars) {
    sum += r;
    sum_log += std::log(r);
    if (r > 1.0) ++gt;
  }
  const double n = static_cast<double>(rbars.size());
  s.mean = sum / n;
  s.mean_log = sum_log / n;
  s.prob_gt_one = static_cast<double>(gt) / n;
  std::vector<double> sorted = rbars;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  s.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  return s;
}

RbarSample rbar_stats(const RunDataset& ds, int epoch_length) {
  if (ds.config.variant != Variant::EDEM)
    throw std::invalid_argument("rbar_stats: dataset lacks an EDEM value series");
  std::vector<double> rbars;
  for (const auto& series : ds.by_seed) {
    if (series.empty()) throw std::invalid_argument("rbar_stats: empty value series");
    // v(0) = 100 by initialisation; the first update cannot fire before
    // tick epoch_length, so any earlier record carries the initial value.
    double prev = 100.0;
    for (std::size_t i = epoch_length - 1; i < series.size();
         i += static_cast<std::size_t>(epoch_length)) {
      const double v = series[i].price;
      rbars.push_back(v / prev);
      prev = v;
    }
  }
  return rbar_sample_from_values(rbars);
}

JensenReport jensen_gap_check(const RbarSample& sample) {
  JensenReport rep;
  rep.mean_log = sample.mean_log;
  rep.log_mean = std::log(sample.mean);
  rep.holds = rep.mean_log <= rep.log_mean + 1e-12;
  return rep;
}

}  // namespace edem
