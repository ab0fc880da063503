#include "edem/clearing.hpp"

#include <algorithm>
#include <stdexcept>

#include "edem/market.hpp"

namespace edem {

double market_price(const SaleWindow& window, double fallback) {
  if (window.entries().empty()) return fallback;
  double sum = 0.0;
  for (double p : window.entries()) sum += p;
  return sum / static_cast<double>(window.entries().size());
}

void complete_sale(MarketState& st, Seller& s, Buyer& b, double price) {
  if (!st.sellers.count(s.id) || !st.buyers.count(b.id))
    throw std::logic_error("complete_sale: counterparty already removed");

  st.window.append(price);
  Home& h = st.grid.home(s.home_cell);
  h.last_sale_price = price;
  h.last_sale_tick = st.tick;
  h.value = price;

  const int seller_id = s.id;
  const int buyer_id = b.id;
  st.remove_seller(seller_id);  // purges the book from all buyers
  st.remove_buyer(buyer_id);    // purges this buyer's bids from all sellers

  const double p = st.price();
  st.spawn_seller(p, /*sale_respawn=*/true);
  st.spawn_buyer();
}

void commit_win(MarketState& st, Seller& s, Buyer& b, int buyer_id) {
  b.is_yellow = true;
  b.won_ratios.push_back(s.bid_book.at(buyer_id).ratio);
  remove_bid(st, buyer_id, s.id);
}

double epoch_update(MarketState& st) {
  double sum = 0.0;
  int count = 0;
  for (const auto& [id, b] : st.buyers) {
    if (b.won_ratios.empty()) continue;
    sum += *std::min_element(b.won_ratios.begin(), b.won_ratios.end());
    ++count;
  }
  const double rbar = count > 0 ? sum / count : 1.0;
  for (auto& h : st.grid.homes()) h.value *= rbar;
  return rbar;
}

}  // namespace edem
