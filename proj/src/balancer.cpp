#include "edem/balancer.hpp"

#include <cmath>

#include "edem/market.hpp"

namespace edem {

namespace {

// victim draw: k-th id in ascending order, k uniform on the current count
template <class Map>
int pick_victim(const Map& agents, RandomStream& rng) {
  std::uint64_t k = rng.uniform_int(static_cast<std::uint64_t>(agents.size()));
  for (const auto& [id, a] : agents) {
    if (k == 0) return id;
    --k;
  }
  return agents.rbegin()->first;
}

}  // namespace

void de_balance(MarketState& st) {
  const double p = st.price();
  const double supply_target = st.schedules.supply_at(p);
  const double demand_target = st.schedules.demand_at(p);

  const int n_sellers = static_cast<int>(st.sellers.size());
  if (n_sellers < static_cast<int>(std::floor(supply_target))) {
    st.spawn_seller(p, false);
  } else if (n_sellers > static_cast<int>(std::ceil(supply_target)) && n_sellers > 1) {
    st.remove_seller(pick_victim(st.sellers, st.rng));
  }

  const int n_buyers = static_cast<int>(st.buyers.size());
  if (n_buyers < static_cast<int>(std::floor(demand_target))) {
    st.spawn_buyer();
  } else if (n_buyers > static_cast<int>(std::ceil(demand_target)) && n_buyers > 1) {
    st.remove_buyer(pick_victim(st.buyers, st.rng));
  }
}

void edem_balance(MarketState& st, int delta_p_sign) {
  const double cb = st.cfg.c_b;
  const int cb_sign = (cb > 0.0) - (cb < 0.0);
  const int direction = cb_sign * delta_p_sign;
  if (direction == 0) return;  // no draws consumed

  int swaps = static_cast<int>(std::floor(std::fabs(cb)));
  const double frac = std::fabs(cb) - std::floor(std::fabs(cb));
  if (frac > 0.0 && st.rng.bernoulli(frac)) ++swaps;

  for (int i = 0; i < swaps; ++i) {
    if (direction > 0) {
      // rising-price mean reversion: one buyer becomes one new seller
      if (st.buyers.size() <= 1) continue;  // floor truncates the walk
      st.remove_buyer(pick_victim(st.buyers, st.rng));
      st.spawn_seller(st.price(), false);
    } else {
      if (st.sellers.size() <= 1) continue;
      st.remove_seller(pick_victim(st.sellers, st.rng));
      st.spawn_buyer();
    }
  }
}

}  // namespace edem
