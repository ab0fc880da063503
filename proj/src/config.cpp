#include "edem/config.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace edem {

void RunConfig::validate() const {
  if (grid_width <= 0 || grid_height <= 0)
    throw std::invalid_argument("config: grid dimensions must be positive");
  if (initial_sellers > grid_width * grid_height)
    throw std::invalid_argument("config: requested seller count exceeds cell count");
  if (initial_sellers < 1 || initial_buyers < 1)
    throw std::invalid_argument("config: initial populations must be >= 1");
  if (sigma_bar < 0.0 || sigma_bar >= 1.0)
    throw std::invalid_argument("config: sigma_bar must be in [0, 1)");
  if (sigma_growth_per_epoch < 0.0)
    throw std::invalid_argument("config: sigma_growth_per_epoch must be >= 0");
  if (max_patience < 1) throw std::invalid_argument("config: max_patience must be >= 1");
  if (init_patience < 1) throw std::invalid_argument("config: init_patience must be >= 1");
  if (balance_period < 1) throw std::invalid_argument("config: balance_period must be >= 1");
  if (window < 1) throw std::invalid_argument("config: window must be >= 1");
  if (ticks < 1) throw std::invalid_argument("config: ticks must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("config: at least one seed required");
  if (ask_decrement <= 0.0 || ask_decrement >= 1.0)
    throw std::invalid_argument("config: ask_decrement must be in (0, 1)");
  if (decline_delay < 0) throw std::invalid_argument("config: decline_delay must be >= 0");
  if (bid_radius < 0.0) throw std::invalid_argument("config: bid_radius must be >= 0");
  if (variant == Variant::DE) {
    if (schedules.b_s <= 0.0 || schedules.b_d >= 0.0)
      throw std::invalid_argument("config: DE schedules need b_s > 0 and b_d < 0");
    const double p = schedules.equilibrium_price();
    const double q = schedules.equilibrium_quantity();
    if (!(std::isfinite(p) && p > 0.0 && std::isfinite(q) && q > 0.0))
      throw std::invalid_argument("config: implied equilibrium must be finite and positive");
  }
  for (std::size_t i = 1; i < shocks.size(); ++i)
    if (shocks[i].tick < shocks[i - 1].tick)
      throw std::invalid_argument("config: shock schedule must be sorted by tick");
}

std::string to_string(Variant v) { return v == Variant::DE ? "DE" : "EDEM"; }
std::string to_string(AcceptRule r) { return r == AcceptRule::Netlogo ? "netlogo" : "prose"; }
std::string to_string(Shock::Kind k) {
  switch (k) {
    case Shock::Kind::SetDemandIntercept: return "set_demand";
    case Shock::Kind::SetSupplyIntercept: return "set_supply";
    case Shock::Kind::SetMaxPatience: return "set_max_patience";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& raw, const std::string& key) {
  std::string t = trim(raw);
  bool percent = false;
  if (!t.empty() && t.back() == '%') {
    percent = true;
    t.pop_back();
    t = trim(t);
  }
  try {
    std::size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return percent ? v / 100.0 : v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for '" + key + "': " + raw);
  }
}

Shock parse_shock(const std::string& raw) {
  std::istringstream in(raw);
  long tick = 0;
  std::string kind;
  double value = 0.0;
  if (!(in >> tick >> kind >> value))
    throw std::invalid_argument("config: bad shock line: " + raw);
  Shock s;
  s.tick = tick;
  s.value = value;
  if (kind == "set_demand") s.kind = Shock::Kind::SetDemandIntercept;
  else if (kind == "set_supply") s.kind = Shock::Kind::SetSupplyIntercept;
  else if (kind == "set_max_patience") s.kind = Shock::Kind::SetMaxPatience;
  else throw std::invalid_argument("config: unknown shock kind: " + kind);
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "name") cfg.name = val;
    else if (key == "variant") {
      if (val == "DE") cfg.variant = Variant::DE;
      else if (val == "EDEM") cfg.variant = Variant::EDEM;
      else throw std::invalid_argument("config: unknown variant: " + val);
    }
    else if (key == "a_s") cfg.schedules.a_s = parse_number(val, key);
    else if (key == "b_s") cfg.schedules.b_s = parse_number(val, key);
    else if (key == "a_d") cfg.schedules.a_d = parse_number(val, key);
    else if (key == "b_d") cfg.schedules.b_d = parse_number(val, key);
    else if (key == "sigma_bar") cfg.sigma_bar = parse_number(val, key);
    else if (key == "sigma_growth_per_epoch") cfg.sigma_growth_per_epoch = parse_number(val, key);
    else if (key == "sigma_cap") cfg.sigma_cap = parse_number(val, key);
    else if (key == "max_patience") cfg.max_patience = static_cast<int>(parse_number(val, key));
    else if (key == "init_patience") cfg.init_patience = static_cast<int>(parse_number(val, key));
    else if (key == "balance_period") cfg.balance_period = static_cast<int>(parse_number(val, key));
    else if (key == "window") cfg.window = static_cast<int>(parse_number(val, key));
    else if (key == "c_b") cfg.c_b = parse_number(val, key);
    else if (key == "initial_sellers") cfg.initial_sellers = static_cast<int>(parse_number(val, key));
    else if (key == "initial_buyers") cfg.initial_buyers = static_cast<int>(parse_number(val, key));
    else if (key == "ticks") cfg.ticks = static_cast<long>(parse_number(val, key));
    else if (key == "seeds") {
      cfg.seeds.clear();
      std::istringstream ss(val);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) cfg.seeds.push_back(std::stoull(tok));
      }
    }
    else if (key == "shock") cfg.shocks.push_back(parse_shock(val));
    else if (key == "accept_rule") {
      if (val == "netlogo") cfg.accept_rule = AcceptRule::Netlogo;
      else if (val == "prose") cfg.accept_rule = AcceptRule::Prose;
      else throw std::invalid_argument("config: unknown accept_rule: " + val);
    }
    else if (key == "ask_decrement") cfg.ask_decrement = parse_number(val, key);
    else if (key == "decline_delay") cfg.decline_delay = static_cast<int>(parse_number(val, key));
    else if (key == "bid_radius") cfg.bid_radius = parse_number(val, key);
    else if (key == "grid_width") cfg.grid_width = static_cast<int>(parse_number(val, key));
    else if (key == "grid_height") cfg.grid_height = static_cast<int>(parse_number(val, key));
    else throw std::invalid_argument("config: unknown key: " + key);
  }
  std::stable_sort(cfg.shocks.begin(), cfg.shocks.end(),
                   [](const Shock& a, const Shock& b) { return a.tick < b.tick; });
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {
std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}
}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "name = " << cfg.name << '\n';
  out << "variant = " << to_string(cfg.variant) << '\n';
  out << "a_s = " << fmt_double(cfg.schedules.a_s) << '\n';
  out << "b_s = " << fmt_double(cfg.schedules.b_s) << '\n';
  out << "a_d = " << fmt_double(cfg.schedules.a_d) << '\n';
  out << "b_d = " << fmt_double(cfg.schedules.b_d) << '\n';
  out << "sigma_bar = " << fmt_double(cfg.sigma_bar) << '\n';
  out << "sigma_growth_per_epoch = " << fmt_double(cfg.sigma_growth_per_epoch) << '\n';
  out << "sigma_cap = " << fmt_double(cfg.sigma_cap) << '\n';
  out << "max_patience = " << cfg.max_patience << '\n';
  out << "init_patience = " << cfg.init_patience << '\n';
  out << "balance_period = " << cfg.balance_period << '\n';
  out << "window = " << cfg.window << '\n';
  out << "c_b = " << fmt_double(cfg.c_b) << '\n';
  out << "initial_sellers = " << cfg.initial_sellers << '\n';
  out << "initial_buyers = " << cfg.initial_buyers << '\n';
  out << "ticks = " << cfg.ticks << '\n';
  out << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
    out << (i ? "," : "") << cfg.seeds[i];
  out << '\n';
  for (const auto& s : cfg.shocks)
    out << "shock = " << s.tick << ' ' << to_string(s.kind) << ' ' << fmt_double(s.value) << '\n';
  out << "accept_rule = " << to_string(cfg.accept_rule) << '\n';
  out << "ask_decrement = " << fmt_double(cfg.ask_decrement) << '\n';
  out << "decline_delay = " << cfg.decline_delay << '\n';
  out << "bid_radius = " << fmt_double(cfg.bid_radius) << '\n';
  out << "grid_width = " << cfg.grid_width << '\n';
  out << "grid_height = " << cfg.grid_height << '\n';
  return out.str();
}

}  // namespace edem
