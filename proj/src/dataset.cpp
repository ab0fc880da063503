#include "edem/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace edem {

const char* const kArtifactVersion = "edem-sim 1.0";

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile: empty input");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - lo) * (values[lo + 1] - values[lo]);
}

AggregateSeries aggregate(const RunDataset& ds) {
  if (ds.by_seed.empty()) throw std::invalid_argument("aggregate: empty dataset");
  if (ds.by_seed.size() < 2)
    std::cerr << "warning: single-seed dataset, percentile bands are degenerate\n";
  const std::size_t n_ticks = ds.by_seed.front().size();
  for (const auto& s : ds.by_seed)
    if (s.size() != n_ticks) throw std::invalid_argument("aggregate: ragged dataset");

  AggregateSeries agg;
  agg.tick.reserve(n_ticks);
  agg.price.reserve(n_ticks);
  agg.sellers.reserve(n_ticks);
  agg.buyers.reserve(n_ticks);
  std::vector<double> tmp(ds.by_seed.size());
  auto band_of = [&](auto get) {
    for (std::size_t s = 0; s < ds.by_seed.size(); ++s) tmp[s] = get(s);
    return Band{percentile(tmp, 0.1), percentile(tmp, 0.5), percentile(tmp, 0.9)};
  };
  for (std::size_t t = 0; t < n_ticks; ++t) {
    agg.tick.push_back(ds.by_seed.front()[t].tick);
    agg.price.push_back(band_of([&](std::size_t s) { return ds.by_seed[s][t].price; }));
    agg.sellers.push_back(
        band_of([&](std::size_t s) { return static_cast<double>(ds.by_seed[s][t].sellers); }));
    agg.buyers.push_back(
        band_of([&](std::size_t s) { return static_cast<double>(ds.by_seed[s][t].buyers); }));
  }
  return agg;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// empty field for reporters not applicable to the variant
void put_opt(std::string& out, double v) {
  if (!std::isnan(v)) out += fmt(v);
}

double get_opt(const std::string& field) {
  if (field.empty()) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc()) throw std::runtime_error("dataset: bad number: " + field);
  return v;
}

}  // namespace

std::string dataset_header(const RunConfig& cfg) {
  const std::string echo = serialize_config(cfg);
  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a64(std::string(draw_order_registry()) + echo)));
  std::ostringstream out;
  out << "# " << kArtifactVersion << " dataset\n";
  out << "# registry_hash=" << hash << '\n';
  out << "# seeds=";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) out << (i ? "," : "") << cfg.seeds[i];
  out << '\n';
  out << "# config:\n";
  std::istringstream lines(echo);
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
  out << "# end_config\n";
  out << "seed,tick,price,sellers,buyers,implied_equilibrium,window_fill,sigma_bar,rbar\n";
  return out.str();
}

void write_dataset(const RunDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dataset: cannot write " + path);
  out << dataset_header(ds.config);
  std::string row;
  for (std::size_t s = 0; s < ds.seeds.size(); ++s) {
    const std::string seed_str = std::to_string(ds.seeds[s]);
    for (const auto& r : ds.by_seed[s]) {
      row.clear();
      row += seed_str;
      row += ',';
      row += std::to_string(r.tick);
      row += ',';
      row += fmt(r.price);
      row += ',';
      row += std::to_string(r.sellers);
      row += ',';
      row += std::to_string(r.buyers);
      row += ',';
      put_opt(row, r.implied_equilibrium);
      row += ',';
      if (r.window_fill >= 0) row += std::to_string(r.window_fill);
      row += ',';
      put_opt(row, r.sigma_bar);
      row += ',';
      put_opt(row, r.rbar);
      row += '\n';
      out << row;
    }
  }
}

RunDataset read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("dataset: cannot read " + path);

  RunDataset ds;
  std::string line;
  std::string config_echo;
  bool in_config = false;
  while (in.peek() == '#' && std::getline(in, line)) {
    if (line == "# config:") {
      in_config = true;
    } else if (line == "# end_config") {
      in_config = false;
    } else if (in_config && line.size() > 2) {
      config_echo += line.substr(2);
      config_echo += '\n';
    }
  }
  ds.config = parse_config(config_echo);
  ds.seeds = ds.config.seeds;
  ds.by_seed.assign(ds.seeds.size(), {});

  if (!std::getline(in, line) || line.rfind("seed,tick,", 0) != 0)
    throw std::runtime_error("dataset: missing column header in " + path);

  std::size_t seed_idx = 0;
  std::string prev_seed;
  std::vector<std::string> fields;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    fields.clear();
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.emplace_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 9) throw std::runtime_error("dataset: bad row in " + path);
    if (fields[0] != prev_seed) {
      if (!prev_seed.empty()) ++seed_idx;
      prev_seed = fields[0];
      if (seed_idx >= ds.seeds.size() ||
          std::to_string(ds.seeds[seed_idx]) != fields[0])
        throw std::runtime_error("dataset: seed order mismatch in " + path);
    }
    TickRecord r;
    r.tick = std::stol(fields[1]);
    r.price = get_opt(fields[2]);
    r.sellers = std::stoi(fields[3]);
    r.buyers = std::stoi(fields[4]);
    r.implied_equilibrium = get_opt(fields[5]);
    r.window_fill = fields[6].empty() ? -1 : std::stoi(fields[6]);
    r.sigma_bar = get_opt(fields[7]);
    r.rbar = get_opt(fields[8]);
    ds.by_seed[seed_idx].push_back(r);
  }
  return ds;
}

void write_aggregate(const AggregateSeries& agg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("aggregate: cannot write " + path);
  out << "tick,price_p10,price_median,price_p90,sellers_p10,sellers_median,sellers_p90,"
         "buyers_p10,buyers_median,buyers_p90\n";
  for (std::size_t i = 0; i < agg.tick.size(); ++i) {
    out << agg.tick[i] << ',' << fmt(agg.price[i].p10) << ',' << fmt(agg.price[i].median)
        << ',' << fmt(agg.price[i].p90) << ',' << fmt(agg.sellers[i].p10) << ','
        << fmt(agg.sellers[i].median) << ',' << fmt(agg.sellers[i].p90) << ','
        << fmt(agg.buyers[i].p10) << ',' << fmt(agg.buyers[i].median) << ','
        << fmt(agg.buyers[i].p90) << '\n';
  }
}

}  // namespace edem
