#include "edem/agents.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "edem/market.hpp"

namespace edem {

std::optional<std::pair<int, BidEntry>> Seller::best_bid() const {
  std::optional<std::pair<int, BidEntry>> best;
  for (const auto& [buyer_id, bid] : bid_book) {
    if (!best || bid.amount > best->second.amount) best = {buyer_id, bid};
    // ties: map iteration is ascending, so the lowest buyer id already won
  }
  return best;
}

double estimate(double value, double sigma_i, RandomStream& rng) {
  if (!(value > 0.0)) throw std::invalid_argument("estimate: value must be positive");
  if (sigma_i < 0.0 || sigma_i >= 1.0)
    throw std::invalid_argument("estimate: sigma_i must be in [0, 1)");
  return value * (1.0 + rng.uniform(-sigma_i, sigma_i));
}

bool accept(double offered, const std::vector<double>& outstanding, AcceptRule rule) {
  if (outstanding.empty()) throw std::invalid_argument("accept: empty outstanding set");
  double sum = 0.0;
  for (double x : outstanding) sum += x;
  const double mean = sum / static_cast<double>(outstanding.size());
  return rule == AcceptRule::Netlogo ? offered >= mean : offered < mean;
}

void place_bid(MarketState& st, Buyer& b, Seller& s, double amount, double ratio) {
  const BidEntry bid{amount, ratio, st.tick};
  b.outstanding[s.id] = bid;
  s.bid_book[b.id] = bid;
}

void remove_bid(MarketState& st, int buyer_id, int seller_id) {
  auto bit = st.buyers.find(buyer_id);
  if (bit != st.buyers.end()) bit->second.outstanding.erase(seller_id);
  auto sit = st.sellers.find(seller_id);
  if (sit != st.sellers.end()) sit->second.bid_book.erase(buyer_id);
}

// buy, then wiggle, then move. Bids go to every seller whose home
// center lies within bid_radius of the buyer (own cell only when radius = 0),
// one outstanding bid per (buyer, seller) pair.
void buyer_step(MarketState& st, Buyer& b) {
  if (b.delay > 0) {
    --b.delay;
    return;
  }

  const Grid& g = st.grid;
  const double radius = st.cfg.bid_radius;
  const int cx = (static_cast<int>(std::floor(b.pos.x))) % g.width();
  const int cy = (static_cast<int>(std::floor(b.pos.y))) % g.height();
  const int reach = radius <= 0.0 ? 0 : static_cast<int>(std::floor(radius + 0.5));
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const int cell = ((cx + dx + g.width()) % g.width()) +
                       g.width() * ((cy + dy + g.height()) % g.height());
      const int sid = st.seller_id_at(cell);
      if (sid < 0) continue;
      if (b.outstanding.count(sid)) continue;
      if (radius > 0.0 && g.dist2(b.pos, g.cell_center(cell)) > radius * radius) continue;
      Seller& s = st.sellers.at(sid);
      const double value = g.home(s.home_cell).value;
      const double sigma_i = b.sigma_frac * st.sigma_bar;
      const double amount = estimate(value, sigma_i, st.rng);
      place_bid(st, b, s, amount, amount / value);
    }
  }

  b.heading_deg += st.rng.uniform(-90.0, 90.0);
  const double rad = b.heading_deg * std::numbers::pi / 180.0;
  b.pos = g.wrap(Vec2{b.pos.x + std::cos(rad), b.pos.y + std::sin(rad)});
}

// Patience countdown; on expiry the seller offers to the best bidder if the
// best bid meets the ask, applying the commit rule, then reprices and redraws
// patience. DE commits clear through complete_sale and the seller leaves.
void seller_step(MarketState& st, Seller& s) {
  --s.patience_timer;
  if (s.patience_timer > 0) return;

  const auto best = s.best_bid();
  if (best && best->second.amount >= s.ask) {
    const int buyer_id = best->first;
    Buyer& b = st.buyers.at(buyer_id);
    std::vector<double> amounts;
    amounts.reserve(b.outstanding.size());
    for (const auto& [sid, bid] : b.outstanding) amounts.push_back(bid.amount);
    if (accept(best->second.amount, amounts, st.cfg.accept_rule)) {
      if (st.is_edem()) {
        commit_win(st, s, b, buyer_id);
      } else {
        complete_sale(st, s, b, best->second.amount);
        return;  // both counterparties are gone
      }
    } else {
      remove_bid(st, buyer_id, s.id);
      b.delay = st.cfg.decline_delay;
    }
  }

  if (st.is_edem()) {
    // listing renewal on every expiry: fresh ask at or above the value level
    s.ask = st.price() * (1.0 + st.rng.uniform(0.0, st.sigma_bar));
  } else {
    // every timeout that ends unsold lowers the ask, declined offers included
    s.ask *= (1.0 - st.cfg.ask_decrement);
    st.grid.home(s.home_cell).value = s.ask;
  }
  s.patience_timer = static_cast<int>(st.rng.uniform_int(static_cast<std::uint64_t>(st.max_patience)));
}

}  // namespace edem
