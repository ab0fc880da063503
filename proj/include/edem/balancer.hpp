#pragma once

namespace edem {

struct MarketState;

// DE: restore populations toward the linear targets at the current rolling
// price, at most one agent added or removed per side per invocation.
void de_balance(MarketState& st);

// EDEM: floor(|C_b|) deterministic swaps plus one Bernoulli swap with
// probability frac(|C_b|); sign(C_b) * delta_p_sign = +1 converts a buyer
// into a new seller, -1 the reverse, 0 no swaps. A swap that would leave a
// side below one agent is skipped.
void edem_balance(MarketState& st, int delta_p_sign);

}  // namespace edem
