#pragma once
#include <cstdint>
#include <map>
#include <vector>

#include "edem/agents.hpp"
#include "edem/clearing.hpp"
#include "edem/config.hpp"
#include "edem/grid.hpp"
#include "edem/rng.hpp"

namespace edem {

// One reporter sample per tick. NaN marks reporters not applicable to the
// variant (written as empty fields in dataset files).
struct TickRecord {
  long tick = 0;
  double price = 0.0;  // DE: rolling mean; EDEM: mean home value
  int sellers = 0;
  int buyers = 0;
  double implied_equilibrium = 0.0;  // from live schedules (DE), NaN in EDEM
  int window_fill = 0;               // m_t (DE), -1 in EDEM
  double sigma_bar = 0.0;            // current (EDEM), NaN in DE
  double rbar = 0.0;                 // epoch multiplier if one fired this tick, else NaN
};

// Complete market state plus the live (shock-mutable) parameters.
struct MarketState {
  RunConfig cfg;  // as configured; echoed into dataset headers
  RandomStream rng;
  Grid grid;
  std::map<int, Seller> sellers;
  std::map<int, Buyer> buyers;
  std::vector<int> seller_at;  // cell -> seller id, -1 if none
  int next_agent_id = 0;
  long tick = 0;
  int cycle_counter = 0;  // EDEM epoch countdown
  SaleWindow window;

  // live parameters (Run 5 shocks, Run 8 sigma growth)
  LinearSchedules schedules;
  int max_patience = 0;
  double sigma_bar = 0.0;
  std::size_t next_shock = 0;

  std::vector<double> boundary_prices;  // EDEM mean value at each epoch boundary
  std::vector<TickRecord> records;

  MarketState(const RunConfig& c, std::uint64_t seed);

  bool is_edem() const { return cfg.variant == Variant::EDEM; }
  double price() const;       // current market price
  double mean_home_value() const;
  int seller_id_at(int cell) const { return seller_at[static_cast<std::size_t>(cell)]; }

  Seller& spawn_seller(double anchor_price, bool sale_respawn);
  Buyer& spawn_buyer();
  void remove_seller(int id);
  void remove_buyer(int id);
};

// Build the initial market (validates config, consumes spawn draws).
MarketState init_market(const RunConfig& cfg, std::uint64_t seed);

// One tick: due shocks, shuffled activation of all agents, model phase
// (DE balancer / EDEM epoch machinery), then one TickRecord.
void step(MarketState& st);

// Exact stream-consumption order per tick; hashed into dataset headers.
const char* draw_order_registry();
std::uint64_t fnv1a64(const std::string& text);

}  // namespace edem
