#pragma once
#include <cstddef>
#include <deque>

namespace edem {

struct MarketState;
struct Seller;
struct Buyer;

// Rolling window of the last W completed sale prices.
class SaleWindow {
public:
  explicit SaleWindow(int capacity) : capacity_(capacity) {}

  void append(double price) {
    entries_.push_back(price);
    if (entries_.size() > static_cast<std::size_t>(capacity_)) entries_.pop_front();
    ++total_sales_;
  }

  int capacity() const { return capacity_; }
  long total_sales() const { return total_sales_; }  // k(t)
  std::size_t fill() const { return entries_.size(); }  // m_t
  const std::deque<double>& entries() const { return entries_; }

private:
  int capacity_;
  std::deque<double> entries_;
  long total_sales_ = 0;
};

// Mean of the window entries; `fallback` (the config's initial p*) before the
// first sale. Ticks without sales leave the window, and hence the price,
// unchanged.
double market_price(const SaleWindow& window, double fallback);

// DE sale: record price, update the home's last-sale fields, remove both
// counterparties with their bids purged everywhere, spawn a replacement pair.
void complete_sale(MarketState& st, Seller& s, Buyer& b, double price);

// EDEM commit: mark the buyer yellow, record the committed bid-to-value
// ratio, consume the bid. No sale is recorded and nobody leaves the market.
void commit_win(MarketState& st, Seller& s, Buyer& b, int buyer_id);

// Per-epoch value update: rbar = mean over yellow buyers of their minimum
// committed ratio (1 if none); multiplies every home value by rbar.
// The ledger is read before any buyer flags/bids are reset.
double epoch_update(MarketState& st);

}  // namespace edem
