#pragma once
#include <map>
#include <optional>
#include <vector>

#include "edem/config.hpp"
#include "edem/grid.hpp"
#include "edem/rng.hpp"

namespace edem {

struct MarketState;

struct BidEntry {
  double amount = 0.0;  // currency
  double ratio = 0.0;   // amount / home value at placement
  long tick = 0;
};

struct Buyer {
  int id = 0;
  double sigma_frac = 0.0;  // personal u_i; sigma_i = u_i * current sigma_bar
  Vec2 pos;
  double heading_deg = 0.0;
  int delay = 0;
  std::map<int, BidEntry> outstanding;  // seller id -> bid (mirrors seller books)
  bool is_yellow = false;               // holds a committed win this epoch (EDEM)
  std::vector<double> won_ratios;       // committed bid-to-value ratios this epoch
};

struct Seller {
  int id = 0;
  double sigma_frac = 0.0;
  int home_cell = 0;
  double ask = 0.0;
  int patience_timer = 0;
  std::map<int, BidEntry> bid_book;  // buyer id -> bid

  // highest amount, ties to the lowest buyer id
  std::optional<std::pair<int, BidEntry>> best_bid() const;
};

// Personal estimation: value * (1 + eps), eps fresh uniform on [-sigma_i, +sigma_i].
// Consumes exactly one draw per call, including sigma_i = 0.
double estimate(double value, double sigma_i, RandomStream& rng);

// Buyer commit rule. `offered` must be an element of `outstanding`.
// netlogo: commit iff offered >= mean(outstanding); prose inverts the sign.
bool accept(double offered, const std::vector<double>& outstanding, AcceptRule rule);

// Bid-book mirror is maintained by these two helpers only.
void place_bid(MarketState& st, Buyer& b, Seller& s, double amount, double ratio);
void remove_bid(MarketState& st, int buyer_id, int seller_id);

void buyer_step(MarketState& st, Buyer& b);
void seller_step(MarketState& st, Seller& s);

}  // namespace edem
