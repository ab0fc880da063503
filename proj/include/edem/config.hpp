#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace edem {

enum class Variant { DE, EDEM };
enum class AcceptRule { Netlogo, Prose };

// Linear supply/demand targets Qs(p) = a_s + b_s p, Qd(p) = a_d + b_d p.
struct LinearSchedules {
  double a_s = 0.0;
  double b_s = 0.5;
  double a_d = 100.0;
  double b_d = -0.5;

  double supply_at(double p) const { return a_s + b_s * p; }
  double demand_at(double p) const { return a_d + b_d * p; }
  double equilibrium_price() const { return (a_d - a_s) / (b_s - b_d); }
  double equilibrium_quantity() const { return supply_at(equilibrium_price()); }
};

struct Shock {
  enum class Kind { SetDemandIntercept, SetSupplyIntercept, SetMaxPatience };
  long tick = 0;
  Kind kind = Kind::SetDemandIntercept;
  double value = 0.0;
};

// The structural parameter vector theta plus run bookkeeping. sigma values are
// stored as decimals; the config loader accepts "15%" and converts.
struct RunConfig {
  std::string name = "custom";
  Variant variant = Variant::DE;
  LinearSchedules schedules;
  double sigma_bar = 0.05;
  double sigma_growth_per_epoch = 0.0;  // decimal per epoch (Run 8: 0.005)
  double sigma_cap = 0.80;
  int max_patience = 50;      // patience draws are uniform-integer on [0, max_patience)
  int init_patience = 20;     // EDEM epoch length T
  int balance_period = 100;   // DE T_B
  int window = 25;            // DE sale window W
  double c_b = 0.0;           // EDEM balancer coefficient (C_s = C_b)
  int initial_sellers = 50;
  int initial_buyers = 50;
  long ticks = 20000;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<Shock> shocks;  // sorted by tick
  AcceptRule accept_rule = AcceptRule::Netlogo;
  double ask_decrement = 0.01;
  int decline_delay = 5;
  double bid_radius = 1.0;    // torus-Euclidean bid scan radius (home-cell centers)
  int grid_width = 32;
  int grid_height = 32;

  double initial_price() const {
    return variant == Variant::EDEM ? 100.0 : schedules.equilibrium_price();
  }

  // throws std::invalid_argument on violated invariants
  void validate() const;
};

std::string to_string(Variant v);
std::string to_string(AcceptRule r);
std::string to_string(Shock::Kind k);

// Flat key=value text format mirroring the field names above; '#' comments,
// "seeds" comma-separated, one "shock = <tick> <kind> <value>" line per event.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

}  // namespace edem
