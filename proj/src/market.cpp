#include "edem/market.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <utility>

#include "edem/balancer.hpp"

namespace edem {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

MarketState::MarketState(const RunConfig& c, std::uint64_t seed)
    : cfg(c),
      rng(seed),
      grid(c.grid_width, c.grid_height),
      seller_at(static_cast<std::size_t>(c.grid_width) * c.grid_height, -1),
      cycle_counter(c.init_patience - 1),
      window(c.window),
      schedules(c.schedules),
      max_patience(c.max_patience),
      sigma_bar(c.sigma_bar) {
  const double v0 = c.initial_price();
  for (auto& h : grid.homes()) {
    h.fair_value = 100.0;
    h.value = is_edem() ? 100.0 : v0;
  }
}

double MarketState::mean_home_value() const {
  double sum = 0.0;
  for (const auto& h : grid.homes()) sum += h.value;
  return sum / grid.cell_count();
}

double MarketState::price() const {
  if (is_edem()) return mean_home_value();
  return market_price(window, cfg.initial_price());
}

// Spawn draw order: cell slot, sigma fraction, patience, ask scale.
Seller& MarketState::spawn_seller(double anchor_price, bool sale_respawn) {
  int free_count = 0;
  for (int id : seller_at)
    if (id < 0) ++free_count;
  if (free_count == 0) throw std::runtime_error("spawn_seller: no free cell");
  std::uint64_t k = rng.uniform_int(static_cast<std::uint64_t>(free_count));
  int cell = -1;
  for (int c = 0; c < grid.cell_count(); ++c) {
    if (seller_at[static_cast<std::size_t>(c)] >= 0) continue;
    if (k == 0) {
      cell = c;
      break;
    }
    --k;
  }

  Seller s;
  s.id = next_agent_id++;
  s.home_cell = cell;
  s.sigma_frac = rng.uniform01();
  if (sale_respawn) {
    // replacement sellers arrive with at least 50 ticks of patience,
    // uniform on [50, max_patience) when the bound allows it
    s.patience_timer = max_patience <= 50
                           ? 50
                           : 50 + static_cast<int>(rng.uniform_int(
                                      static_cast<std::uint64_t>(max_patience - 50)));
  } else {
    s.patience_timer = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_patience)));
  }
  s.ask = anchor_price * (1.0 + rng.uniform(-sigma_bar, sigma_bar));
  if (!is_edem()) grid.home(cell).value = s.ask;  // listing price is the home's value signal
  seller_at[static_cast<std::size_t>(cell)] = s.id;
  auto [it, ok] = sellers.emplace(s.id, std::move(s));
  return it->second;
}

// Spawn draw order: x, y, sigma fraction, heading.
Buyer& MarketState::spawn_buyer() {
  Buyer b;
  b.id = next_agent_id++;
  b.pos.x = rng.uniform(0.0, grid.width());
  b.pos.y = rng.uniform(0.0, grid.height());
  b.sigma_frac = rng.uniform01();
  b.heading_deg = rng.uniform(0.0, 360.0);
  auto [it, ok] = buyers.emplace(b.id, std::move(b));
  return it->second;
}

void MarketState::remove_seller(int id) {
  auto it = sellers.find(id);
  if (it == sellers.end()) throw std::logic_error("remove_seller: unknown id");
  for (const auto& [buyer_id, bid] : it->second.bid_book) {
    auto bit = buyers.find(buyer_id);
    if (bit != buyers.end()) bit->second.outstanding.erase(id);
  }
  seller_at[static_cast<std::size_t>(it->second.home_cell)] = -1;
  sellers.erase(it);
}

void MarketState::remove_buyer(int id) {
  auto it = buyers.find(id);
  if (it == buyers.end()) throw std::logic_error("remove_buyer: unknown id");
  for (const auto& [seller_id, bid] : it->second.outstanding) {
    auto sit = sellers.find(seller_id);
    if (sit != sellers.end()) sit->second.bid_book.erase(id);
  }
  buyers.erase(it);
}

MarketState init_market(const RunConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  for (const auto& s : cfg.shocks)
    if (s.tick > cfg.ticks)
      std::cerr << "warning: shock at tick " << s.tick << " is beyond run length "
                << cfg.ticks << "\n";
  MarketState st(cfg, seed);
  const double p0 = cfg.initial_price();
  for (int i = 0; i < cfg.initial_sellers; ++i) st.spawn_seller(p0, false);
  for (int i = 0; i < cfg.initial_buyers; ++i) st.spawn_buyer();
  return st;
}

namespace {

void apply_due_shocks(MarketState& st) {
  while (st.next_shock < st.cfg.shocks.size() &&
         st.cfg.shocks[st.next_shock].tick == st.tick) {
    const Shock& s = st.cfg.shocks[st.next_shock];
    switch (s.kind) {
      case Shock::Kind::SetDemandIntercept: st.schedules.a_d = s.value; break;
      case Shock::Kind::SetSupplyIntercept: st.schedules.a_s = s.value; break;
      case Shock::Kind::SetMaxPatience: st.max_patience = static_cast<int>(s.value); break;
    }
    ++st.next_shock;
  }
}

// Epoch boundary: value update, boundary price, population swaps, then the
// per-epoch resets. The ledger is read inside epoch_update before anything
// here touches buyer flags or books.
double edem_boundary(MarketState& st) {
  const double rbar = epoch_update(st);
  st.boundary_prices.push_back(st.mean_home_value());
  int delta = 0;
  const std::size_t n = st.boundary_prices.size();
  if (n >= 2) {
    const double d = st.boundary_prices[n - 1] - st.boundary_prices[n - 2];
    delta = (d > 0.0) - (d < 0.0);
  }
  edem_balance(st, delta);
  for (auto& [id, b] : st.buyers) {
    b.is_yellow = false;
    b.won_ratios.clear();
  }
  // epoch-scoped bids: wholesale reset keeps the mirror trivially intact
  for (auto& [id, s] : st.sellers) s.bid_book.clear();
  for (auto& [id, b] : st.buyers) b.outstanding.clear();
  st.sigma_bar = std::min(st.cfg.sigma_cap, st.sigma_bar + st.cfg.sigma_growth_per_epoch);
  st.cycle_counter = st.cfg.init_patience - 1;
  return rbar;
}

}  // namespace

void step(MarketState& st) {
  ++st.tick;
  apply_due_shocks(st);

  // fresh shuffle of the combined population: sellers ascending, then buyers
  // ascending, Fisher-Yates from the model stream
  std::vector<std::pair<char, int>> order;
  order.reserve(st.sellers.size() + st.buyers.size());
  for (const auto& [id, s] : st.sellers) order.emplace_back('s', id);
  for (const auto& [id, b] : st.buyers) order.emplace_back('b', id);
  st.rng.shuffle(order);

  for (const auto& [kind, id] : order) {
    if (kind == 's') {
      auto it = st.sellers.find(id);
      if (it != st.sellers.end()) seller_step(st, it->second);
    } else {
      auto it = st.buyers.find(id);
      if (it != st.buyers.end()) buyer_step(st, it->second);
    }
  }

  double rbar = kNaN;
  if (st.is_edem()) {
    if (st.cycle_counter == 0)
      rbar = edem_boundary(st);
    else
      --st.cycle_counter;
  } else {
    if (st.tick % st.cfg.balance_period == 0) de_balance(st);
  }

  TickRecord rec;
  rec.tick = st.tick;
  rec.price = st.price();
  rec.sellers = static_cast<int>(st.sellers.size());
  rec.buyers = static_cast<int>(st.buyers.size());
  if (st.is_edem()) {
    rec.implied_equilibrium = kNaN;
    rec.window_fill = -1;
    rec.sigma_bar = st.sigma_bar;
    rec.rbar = rbar;
  } else {
    rec.implied_equilibrium = st.schedules.equilibrium_price();
    rec.window_fill = static_cast<int>(st.window.fill());
    rec.sigma_bar = kNaN;
    rec.rbar = kNaN;
  }
  st.records.push_back(rec);
}

const char* draw_order_registry() {
  return
      "draw-order registry v1\n"
      "stream: xoshiro256++ seeded by splitmix64(seed); uniform01 = (u64 >> 11) * 2^-53;\n"
      "  uniform(lo,hi) = lo + uniform01*(hi-lo); uniform_int(n) = (u64 * n) >> 64;\n"
      "  bernoulli(p) = uniform01 < p; shuffle = Fisher-Yates, i = n-1..1, j = uniform_int(i+1).\n"
      "init: per seller in spawn order [cell slot over free cells ascending, sigma fraction,\n"
      "  patience uniform_int(max_patience), ask scale uniform(1-sigma_bar, 1+sigma_bar)];\n"
      "  then per buyer [x, y, sigma fraction, heading uniform(0,360)].\n"
      "per tick: (1) activation shuffle over sellers ascending ++ buyers ascending;\n"
      "(2) per agent in shuffled order, skipping agents removed mid-tick:\n"
      "  buyer: none if delayed; else per unbidded seller within bid_radius, scanned in\n"
      "  (dy,dx) row-major cell order, one estimate draw; then one wiggle draw;\n"
      "  seller: none until patience expires; on expiry, offer resolution draws none;\n"
      "  a DE commit runs complete_sale spawns [seller: cell, sigma, patience (50 or\n"
      "  50+uniform_int(max_patience-50)), ask scale; buyer: x, y, sigma, heading];\n"
      "  otherwise reprice [EDEM relist: one uniform(0, sigma_bar) draw; DE decay: none]\n"
      "  then one patience redraw uniform_int(max_patience);\n"
      "(3) model phase: DE balancer every balance_period ticks [supply side first:\n"
      "  spawn draws on add, one uniform_int victim draw on remove; then demand side];\n"
      "  EDEM boundary when cycle_counter = 0: value update (no draws), then swaps\n"
      "  [one bernoulli(frac|C_b|) draw iff frac > 0 and direction != 0; per swap one\n"
      "  victim uniform_int draw then spawn draws; swaps blocked by the floor draw\n"
      "  nothing]; bid/flag resets draw nothing.\n";
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace edem
