#include <doctest.h>

#include <cmath>

#include "edem/experiments.hpp"
#include "edem/market.hpp"

using namespace edem;

namespace {

// multiset of (buyer, seller, amount) triples must agree between the two
// book sides
void check_mirror(const MarketState& st) {
  std::size_t buyer_side = 0;
  for (const auto& [bid, b] : st.buyers) {
    buyer_side += b.outstanding.size();
    for (const auto& [sid, bid_entry] : b.outstanding) {
      auto sit = st.sellers.find(sid);
      REQUIRE(sit != st.sellers.end());
      auto eit = sit->second.bid_book.find(bid);
      REQUIRE(eit != sit->second.bid_book.end());
      REQUIRE(eit->second.amount == bid_entry.amount);
    }
  }
  std::size_t seller_side = 0;
  for (const auto& [sid, s] : st.sellers) seller_side += s.bid_book.size();
  REQUIRE(buyer_side == seller_side);
}

}  // namespace

TEST_CASE("estimate: zero dispersion is exact") {
  RandomStream rng(1);
  CHECK(estimate(100.0, 0.0, rng) == 100.0);
}

TEST_CASE("estimate: bounded by the dispersion") {
  RandomStream rng(2);
  for (int i = 0; i < 10000; ++i) {
    const double v = estimate(100.0, 0.05, rng);
    CHECK(v >= 95.0);
    CHECK(v <= 105.0);
  }
}

TEST_CASE("estimate: Monte Carlo mean is the anchor value") {
  RandomStream rng(3);
  double sum = 0.0;
  const long n = 1000000;
  for (long i = 0; i < n; ++i) sum += estimate(100.0, 0.25, rng);
  // standard error ~ 0.0144, so +-0.05 is ~3.5 sigma
  CHECK(std::fabs(sum / n - 100.0) < 0.05);
}

TEST_CASE("estimate: each call consumes exactly one draw") {
  RandomStream a(4), b(4);
  estimate(100.0, 0.1, a);
  b.next_u64();
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("estimate: contract violations") {
  RandomStream rng(5);
  CHECK_THROWS_AS(estimate(100.0, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(estimate(0.0, 0.1, rng), std::invalid_argument);
}

TEST_CASE("accept: netlogo and prose rules") {
  CHECK(accept(100.0, {100.0}, AcceptRule::Netlogo));
  CHECK(accept(100.0, {100.0, 90.0}, AcceptRule::Netlogo));   // mean 95
  CHECK(!accept(100.0, {100.0, 110.0}, AcceptRule::Netlogo)); // mean 105
  CHECK(!accept(100.0, {100.0, 90.0}, AcceptRule::Prose));
  CHECK(accept(100.0, {100.0, 110.0}, AcceptRule::Prose));
  CHECK(!accept(100.0, {100.0}, AcceptRule::Prose));
  CHECK_THROWS_AS(accept(100.0, {}, AcceptRule::Netlogo), std::invalid_argument);
}

TEST_CASE("singleton-commit property: one outstanding bid always commits") {
  RandomStream rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double beta = rng.uniform(1.0, 200.0);
    CHECK(accept(beta, {beta}, AcceptRule::Netlogo));
  }
}

TEST_CASE("buyer on an empty neighborhood advances one unit, no bid") {
  RunConfig cfg = preset(6);
  cfg.initial_sellers = 1;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 9);
  Buyer& b = st.buyers.begin()->second;
  Seller& s = st.sellers.begin()->second;
  // park the buyer far from the seller
  b.pos = st.grid.wrap({st.grid.cell_center(s.home_cell).x + 16.0,
                        st.grid.cell_center(s.home_cell).y + 16.0});
  const Vec2 before = b.pos;
  buyer_step(st, b);
  CHECK(b.outstanding.empty());
  const double step_len = std::sqrt(st.grid.dist2(before, b.pos));
  CHECK(step_len == doctest::Approx(1.0));
}

TEST_CASE("zero-dispersion buyer on a seller cell bids exactly the home value") {
  RunConfig cfg = preset(6);
  cfg.sigma_bar = 0.0;
  cfg.initial_sellers = 1;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 10);
  Buyer& b = st.buyers.begin()->second;
  Seller& s = st.sellers.begin()->second;
  b.pos = st.grid.cell_center(s.home_cell);
  buyer_step(st, b);
  REQUIRE(b.outstanding.size() == 1);
  CHECK(b.outstanding.at(s.id).amount == 100.0);
  CHECK(s.bid_book.at(b.id).amount == 100.0);
  CHECK(s.bid_book.at(b.id).ratio == 1.0);
}

TEST_CASE("landing again does not refresh or duplicate the bid") {
  RunConfig cfg = preset(6);
  cfg.initial_sellers = 1;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 11);
  Buyer& b = st.buyers.begin()->second;
  Seller& s = st.sellers.begin()->second;
  s.patience_timer = 1000;  // keep the seller passive
  b.pos = st.grid.cell_center(s.home_cell);
  buyer_step(st, b);
  REQUIRE(s.bid_book.size() == 1);
  const double amount = s.bid_book.at(b.id).amount;
  b.pos = st.grid.cell_center(s.home_cell);  // land again
  buyer_step(st, b);
  CHECK(s.bid_book.size() == 1);
  CHECK(s.bid_book.at(b.id).amount == amount);
}

TEST_CASE("delayed buyer only counts down") {
  RunConfig cfg = preset(6);
  cfg.initial_sellers = 1;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 12);
  Buyer& b = st.buyers.begin()->second;
  Seller& s = st.sellers.begin()->second;
  b.pos = st.grid.cell_center(s.home_cell);
  b.delay = 3;
  const Vec2 before = b.pos;
  buyer_step(st, b);
  CHECK(b.delay == 2);
  CHECK(b.pos.x == before.x);
  CHECK(b.outstanding.empty());
}

TEST_CASE("seller timer decrement is the only effect before timeout") {
  RunConfig cfg = preset(6);
  cfg.initial_sellers = 1;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 13);
  Seller& s = st.sellers.begin()->second;
  s.patience_timer = 5;
  const double ask = s.ask;
  seller_step(st, s);
  CHECK(s.patience_timer == 4);
  CHECK(s.ask == ask);
}

TEST_CASE("DE timeout with empty book decays the ask and redraws patience") {
  RunConfig cfg = preset(1);
  cfg.initial_sellers = 1;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 14);
  Seller& s = st.sellers.begin()->second;
  s.patience_timer = 1;
  const double ask = s.ask;
  seller_step(st, s);
  CHECK(s.ask == doctest::Approx(ask * (1.0 - cfg.ask_decrement)));
  CHECK(s.ask < ask);
  CHECK(s.patience_timer >= 0);
  CHECK(s.patience_timer < cfg.max_patience);
  CHECK(st.grid.home(s.home_cell).value == s.ask);
}

TEST_CASE("DE timeout with acceptable singleton bid completes the sale") {
  RunConfig cfg = preset(1);
  cfg.initial_sellers = 1;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 15);
  Buyer& b = st.buyers.begin()->second;
  Seller& s = st.sellers.begin()->second;
  const int buyer_id = b.id;
  const int seller_id = s.id;
  s.ask = 100.0;
  place_bid(st, b, s, 110.0, 1.1);
  s.patience_timer = 1;
  seller_step(st, s);
  // both parties replaced by a fresh pair
  CHECK(st.sellers.size() == 1);
  CHECK(st.buyers.size() == 1);
  CHECK(!st.sellers.count(seller_id));
  CHECK(!st.buyers.count(buyer_id));
  CHECK(st.window.total_sales() == 1);
  CHECK(st.window.entries().back() == 110.0);
}

TEST_CASE("declined offer removes the bid and delays the buyer") {
  RunConfig cfg = preset(1);
  cfg.initial_sellers = 2;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 16);
  Buyer& b = st.buyers.begin()->second;
  auto it = st.sellers.begin();
  Seller& s1 = it->second;
  Seller& s2 = std::next(it)->second;
  s1.ask = 100.0;
  place_bid(st, b, s1, 101.0, 1.01);
  place_bid(st, b, s2, 150.0, 1.5);  // mean 125.5 > offered 101 -> decline
  s1.patience_timer = 1;
  seller_step(st, s1);
  CHECK(st.sellers.size() == 2);  // no sale
  CHECK(!s1.bid_book.count(b.id));
  CHECK(!b.outstanding.count(s1.id));
  CHECK(b.outstanding.count(s2.id));
  CHECK(b.delay == cfg.decline_delay);
  check_mirror(st);
}

TEST_CASE("EDEM commit marks the buyer yellow and consumes the bid") {
  RunConfig cfg = preset(6);
  cfg.initial_sellers = 1;
  cfg.initial_buyers = 1;
  MarketState st = init_market(cfg, 17);
  Buyer& b = st.buyers.begin()->second;
  Seller& s = st.sellers.begin()->second;
  s.ask = 100.0;
  place_bid(st, b, s, 104.0, 1.04);
  s.patience_timer = 1;
  seller_step(st, s);
  CHECK(st.sellers.size() == 1);  // nobody leaves
  CHECK(st.buyers.size() == 1);
  CHECK(b.is_yellow);
  REQUIRE(b.won_ratios.size() == 1);
  CHECK(b.won_ratios[0] == 1.04);
  CHECK(b.outstanding.empty());
  CHECK(s.bid_book.empty());
  CHECK(st.window.total_sales() == 0);  // no sale recorded
}

TEST_CASE("best bid: ties break to the lowest buyer id") {
  Seller s;
  s.bid_book[7] = {100.0, 1.0, 0};
  s.bid_book[3] = {100.0, 1.0, 0};
  s.bid_book[5] = {90.0, 0.9, 0};
  const auto best = s.best_bid();
  REQUIRE(best.has_value());
  CHECK(best->first == 3);
  CHECK(best->second.amount == 100.0);
}

TEST_CASE("bid-book mirror invariant holds over fuzzed ticks") {
  // mixed DE activity (sales, declines, balancer) for 10^4 ticks
  RunConfig cfg = preset(1);
  cfg.ticks = 10000;
  MarketState st = init_market(cfg, 99);
  for (long t = 0; t < cfg.ticks; ++t) {
    step(st);
    if (t % 250 == 0) check_mirror(st);
  }
  check_mirror(st);

  RunConfig ecfg = preset(7);  // EDEM with swaps
  ecfg.ticks = 3000;
  MarketState est = init_market(ecfg, 99);
  for (long t = 0; t < ecfg.ticks; ++t) {
    step(est);
    if (t % 100 == 0) check_mirror(est);
  }
  check_mirror(est);
}

TEST_CASE("per-bid independence: paired draws are uncorrelated") {
  RandomStream rng(21);
  const int n = 100000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = estimate(100.0, 0.2, rng);
    const double y = estimate(100.0, 0.2, rng);
    sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double corr = cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) *
                                      (syy / n - (sy / n) * (sy / n)));
  CHECK(std::fabs(corr) < 0.02);
}
