#include "edem/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace edem {

namespace {

constexpr double kWidth = 900.0;
constexpr double kPanelHeight = 250.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 30.0;
constexpr double kPanelGap = 40.0;
constexpr std::size_t kMaxPoints = 1500;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Linear (or log10) mapping from data space into one panel's plot area.
struct Panel {
  double x0, y0, w, h;
  double xmin, xmax, ymin, ymax;
  bool log_y = false;

  double tx(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double ty(double y) const {
    const double v = log_y ? std::log10(y) : y;
    const double lo = log_y ? std::log10(ymin) : ymin;
    const double hi = log_y ? std::log10(ymax) : ymax;
    return y0 + h - (v - lo) / (hi - lo) * h;
  }
};

class Svg {
public:
  void open(double width, double height) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
         << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
         << num(height) << "\">\n";
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  void close() { out_ << "</svg>\n"; }
  std::string str() const { return out_.str(); }

  void begin_panel() { out_ << "<g class=\"panel\">\n"; }
  void end_panel() { out_ << "</g>\n"; }

  void line(double x1, double y1, double x2, double y2, const std::string& style) {
    out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
         << "\" y2=\"" << num(y2) << "\" " << style << "/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& style) {
    out_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
         << "\" height=\"" << num(h) << "\" " << style << "/>\n";
  }
  void text(double x, double y, const std::string& s, const std::string& style) {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" " << style << '>' << s
         << "</text>\n";
  }
  void poly(const std::vector<std::pair<double, double>>& pts, bool closed,
            const std::string& style) {
    out_ << (closed ? "<polygon points=\"" : "<polyline points=\"");
    for (const auto& [x, y] : pts) out_ << num(x) << ',' << num(y) << ' ';
    out_ << "\" " << style << "/>\n";
  }

private:
  std::ostringstream out_;
};

std::size_t stride_for(std::size_t n) { return std::max<std::size_t>(1, n / kMaxPoints); }

void draw_series(Svg& svg, const Panel& p, const std::vector<long>& xs,
                 const std::vector<double>& ys, const std::string& style) {
  std::vector<std::pair<double, double>> pts;
  const std::size_t stride = stride_for(xs.size());
  for (std::size_t i = 0; i < xs.size(); i += stride)
    pts.emplace_back(p.tx(static_cast<double>(xs[i])), p.ty(ys[i]));
  svg.poly(pts, false, style);
}

void draw_band(Svg& svg, const Panel& p, const std::vector<long>& xs,
               const std::vector<double>& lo, const std::vector<double>& hi,
               const std::string& style) {
  std::vector<std::pair<double, double>> pts;
  const std::size_t stride = stride_for(xs.size());
  for (std::size_t i = 0; i < xs.size(); i += stride)
    pts.emplace_back(p.tx(static_cast<double>(xs[i])), p.ty(hi[i]));
  for (std::size_t i = xs.size(); i-- > 0;)
    if (i % stride == 0) pts.emplace_back(p.tx(static_cast<double>(xs[i])), p.ty(lo[i]));
  svg.poly(pts, true, style);
}

void draw_axes(Svg& svg, const Panel& p, const std::string& ylabel) {
  svg.rect(p.x0, p.y0, p.w, p.h, "fill=\"none\" stroke=\"#444\" stroke-width=\"1\"");
  const char* tstyle = "font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\"";
  for (int i = 0; i <= 4; ++i) {
    const double x = p.xmin + (p.xmax - p.xmin) * i / 4.0;
    svg.text(p.tx(x) - 10, p.y0 + p.h + 15, num(x), tstyle);
  }
  if (p.log_y) {
    const int lo = static_cast<int>(std::floor(std::log10(p.ymin)));
    const int hi = static_cast<int>(std::ceil(std::log10(p.ymax)));
    for (int e = lo; e <= hi; ++e) {
      const double v = std::pow(10.0, e);
      if (v < p.ymin || v > p.ymax) continue;
      svg.line(p.x0, p.ty(v), p.x0 + p.w, p.ty(v),
               "stroke=\"#ddd\" stroke-width=\"0.5\"");
      svg.text(p.x0 - 45, p.ty(v) + 4, num(v), tstyle);
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double v = p.ymin + (p.ymax - p.ymin) * i / 4.0;
      svg.text(p.x0 - 55, p.ty(v) + 4, num(v), tstyle);
    }
  }
  svg.text(p.x0, p.y0 - 8, ylabel, "font-family=\"sans-serif\" font-size=\"12\" fill=\"#000\"");
}

struct Extracted {
  std::vector<long> ticks;
  std::vector<double> med, p10, p90;
  std::vector<std::vector<double>> per_seed;
  std::vector<double> implied;
  std::vector<double> sellers_med, buyers_med;
  std::vector<double> sigma;
};

Extracted extract(const RunDataset& ds, double scale = 1.0) {
  const AggregateSeries agg = aggregate(ds);
  Extracted e;
  e.ticks = agg.tick;
  for (std::size_t i = 0; i < agg.tick.size(); ++i) {
    e.med.push_back(agg.price[i].median / scale);
    e.p10.push_back(agg.price[i].p10 / scale);
    e.p90.push_back(agg.price[i].p90 / scale);
    e.sellers_med.push_back(agg.sellers[i].median);
    e.buyers_med.push_back(agg.buyers[i].median);
  }
  for (const auto& series : ds.by_seed) {
    std::vector<double> s;
    s.reserve(series.size());
    for (const auto& r : series) s.push_back(r.price / scale);
    e.per_seed.push_back(std::move(s));
  }
  for (const auto& r : ds.by_seed.front()) {
    e.implied.push_back(r.implied_equilibrium);
    e.sigma.push_back(r.sigma_bar);
  }
  return e;
}

const RunDataset& need(const std::map<std::string, RunDataset>& datasets,
                       const std::string& label) {
  auto it = datasets.find(label);
  if (it == datasets.end() || it->second.by_seed.empty() || it->second.by_seed.front().empty())
    throw std::runtime_error("figures: dataset '" + label + "' missing or empty");
  return it->second;
}

void price_panel(Svg& svg, Panel& p, const Extracted& e, const std::vector<long>& shock_ticks) {
  double lo = e.p10[0], hi = e.p90[0];
  for (std::size_t i = 0; i < e.med.size(); ++i) {
    lo = std::min({lo, e.p10[i], e.implied[i]});
    hi = std::max({hi, e.p90[i], e.implied[i]});
  }
  for (const auto& s : e.per_seed)
    for (double v : s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  p.xmin = 0;
  p.xmax = static_cast<double>(e.ticks.back());
  p.ymin = lo - 0.05 * (hi - lo) - 1e-9;
  p.ymax = hi + 0.05 * (hi - lo) + 1e-9;

  svg.begin_panel();
  draw_axes(svg, p, "market price");
  for (const auto& s : e.per_seed)
    draw_series(svg, p, e.ticks, s, "fill=\"none\" stroke=\"#999\" stroke-width=\"0.6\" stroke-opacity=\"0.3\"");
  draw_band(svg, p, e.ticks, e.p10, e.p90, "fill=\"#4a90d9\" fill-opacity=\"0.25\" stroke=\"none\"");
  draw_series(svg, p, e.ticks, e.med, "fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"1.6\"");
  draw_series(svg, p, e.ticks, e.implied,
              "fill=\"none\" stroke=\"#333\" stroke-width=\"1\" stroke-dasharray=\"6,4\"");
  for (long t : shock_ticks)
    svg.line(p.tx(static_cast<double>(t)), p.y0, p.tx(static_cast<double>(t)), p.y0 + p.h,
             "stroke=\"red\" stroke-width=\"1\" stroke-dasharray=\"4,3\"");
  svg.end_panel();
}

void count_panel(Svg& svg, Panel& p, const std::vector<long>& ticks,
                 const std::vector<std::pair<std::string, const std::vector<double>*>>& series) {
  double hi = 1.0;
  for (const auto& [style, s] : series)
    for (double v : *s) hi = std::max(hi, v);
  p.xmin = 0;
  p.xmax = static_cast<double>(ticks.back());
  p.ymin = 0;
  p.ymax = hi * 1.1;
  svg.begin_panel();
  draw_axes(svg, p, "agent counts");
  for (const auto& [style, s] : series) draw_series(svg, p, ticks, *s, style);
  svg.end_panel();
}

double panel_bottom(int index) {
  return kMarginTop + index * (kPanelHeight + kPanelGap);
}

Panel make_panel(int index) {
  return Panel{kMarginLeft, panel_bottom(index), kWidth - kMarginLeft - kMarginRight,
               kPanelHeight, 0, 1, 0, 1, false};
}

std::string de_figure(const RunDataset& ds) {
  const Extracted e = extract(ds);
  std::vector<long> shocks;
  for (const auto& s : ds.config.shocks) shocks.push_back(s.tick);

  Svg svg;
  svg.open(kWidth, panel_bottom(2));
  Panel p0 = make_panel(0);
  price_panel(svg, p0, e, shocks);
  Panel p1 = make_panel(1);
  count_panel(svg, p1, e.ticks,
              {{"fill=\"none\" stroke=\"#b2322e\" stroke-width=\"1.4\"", &e.sellers_med},
               {"fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"1.4\" stroke-dasharray=\"5,3\"",
                &e.buyers_med}});
  svg.close();
  return svg.str();
}

void value_panel(Svg& svg, Panel& p, const std::vector<const Extracted*>& arms,
                 const std::vector<std::string>& colors) {
  double lo = 1e300, hi = 0;
  for (const auto* e : arms) {
    for (std::size_t i = 0; i < e->med.size(); ++i) {
      lo = std::min(lo, e->p10[i]);
      hi = std::max(hi, e->p90[i]);
    }
    for (const auto& s : e->per_seed)
      for (double v : s) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
  }
  p.log_y = true;
  p.xmin = 0;
  p.xmax = static_cast<double>(arms.front()->ticks.back());
  p.ymin = std::max(1e-3, lo * 0.9);
  p.ymax = hi * 1.1;

  svg.begin_panel();
  draw_axes(svg, p, "v / v* (log scale)");
  for (std::size_t a = 0; a < arms.size(); ++a) {
    const Extracted& e = *arms[a];
    for (const auto& s : e.per_seed)
      draw_series(svg, p, e.ticks, s,
                  "fill=\"none\" stroke=\"" + colors[a] +
                      "\" stroke-width=\"0.6\" stroke-opacity=\"0.25\"");
    draw_band(svg, p, e.ticks, e.p10, e.p90,
              "fill=\"" + colors[a] + "\" fill-opacity=\"0.18\" stroke=\"none\"");
    draw_series(svg, p, e.ticks, e.med,
                "fill=\"none\" stroke=\"" + colors[a] + "\" stroke-width=\"1.6\"");
  }
  svg.end_panel();
}

std::string edem_figure(const std::vector<const RunDataset*>& arms_ds, bool sigma_panel) {
  std::vector<Extracted> arms;
  arms.reserve(arms_ds.size());
  for (const auto* ds : arms_ds) arms.push_back(extract(*ds, 100.0));
  const std::vector<std::string> colors = {"#1f4e8c", "#b2322e", "#2e7d32"};

  const int n_panels = sigma_panel ? 3 : 2;
  Svg svg;
  svg.open(kWidth, panel_bottom(n_panels));

  Panel p0 = make_panel(0);
  std::vector<const Extracted*> refs;
  for (const auto& e : arms) refs.push_back(&e);
  value_panel(svg, p0, refs, colors);

  Panel p1 = make_panel(1);
  std::vector<std::pair<std::string, const std::vector<double>*>> counts;
  for (std::size_t a = 0; a < arms.size(); ++a) {
    counts.emplace_back("fill=\"none\" stroke=\"" + colors[a] + "\" stroke-width=\"1.4\"",
                        &arms[a].sellers_med);
    counts.emplace_back("fill=\"none\" stroke=\"" + colors[a] +
                            "\" stroke-width=\"1.4\" stroke-dasharray=\"5,3\"",
                        &arms[a].buyers_med);
  }
  count_panel(svg, p1, arms.front().ticks, counts);

  if (sigma_panel) {
    Panel p2 = make_panel(2);
    p2.xmin = 0;
    p2.xmax = static_cast<double>(arms.front().ticks.back());
    p2.ymin = 0;
    p2.ymax = 1.0;
    svg.begin_panel();
    draw_axes(svg, p2, "sigma_bar");
    draw_series(svg, p2, arms.front().ticks, arms.front().sigma,
                "fill=\"none\" stroke=\"#6a1b9a\" stroke-width=\"1.6\"");
    svg.end_panel();
  }
  svg.close();
  return svg.str();
}

std::string run5_figure(const RunDataset& a, const RunDataset& b) {
  Svg svg;
  svg.open(kWidth, panel_bottom(2));
  const Extracted ea = extract(a);
  const Extracted eb = extract(b);
  std::vector<long> sa, sb;
  for (const auto& s : a.config.shocks) sa.push_back(s.tick);
  for (const auto& s : b.config.shocks) sb.push_back(s.tick);
  Panel p0 = make_panel(0);
  price_panel(svg, p0, ea, sa);
  Panel p1 = make_panel(1);
  price_panel(svg, p1, eb, sb);
  svg.close();
  return svg.str();
}

}  // namespace

std::string render_grid_figure(const GridSummary& grid) {
  const std::size_t n_cb = kGridCbValues.size();
  const std::size_t n_sigma = kGridSigmaValues.size();
  const double cell_w = 110, cell_h = 64;
  const double x0 = 110, y0 = 60;
  const double width = x0 + n_sigma * cell_w + 40;
  const double height = y0 + n_cb * cell_h + 60;

  double max_log = 0;
  for (const auto& c : grid.cells) max_log = std::max(max_log, std::log10(c.median_terminal));

  Svg svg;
  svg.open(width, height);
  svg.begin_panel();
  svg.text(x0, 28, "median terminal v/v* (colour: log10, text: linear)",
           "font-family=\"sans-serif\" font-size=\"13\" fill=\"#000\"");
  for (const auto& c : grid.cells) {
    const std::size_t i =
        std::find(kGridCbValues.begin(), kGridCbValues.end(), c.c_b) - kGridCbValues.begin();
    const std::size_t j = std::find(kGridSigmaValues.begin(), kGridSigmaValues.end(), c.sigma_bar) -
                          kGridSigmaValues.begin();
    const double x = x0 + j * cell_w;
    const double y = y0 + i * cell_h;
    const double t = std::clamp(std::log10(c.median_terminal) / std::max(1e-9, max_log), 0.0, 1.0);
    const int r = static_cast<int>(255 * t);
    const int g = static_cast<int>(90 * (1 - t) + 30);
    const int b = static_cast<int>(255 * (1 - t));
    char fill[64];
    std::snprintf(fill, sizeof(fill), "fill=\"rgb(%d,%d,%d)\"", r, g, b);
    svg.rect(x, y, cell_w - 2, cell_h - 2, std::string(fill) + " stroke=\"#222\"");
    char label[32];
    std::snprintf(label, sizeof(label), "%.3g", c.median_terminal);
    svg.text(x + 8, y + cell_h / 2 + 4, label,
             "font-family=\"sans-serif\" font-size=\"13\" fill=\"white\"");
    // red squares mark the run 6/7 cells
    const bool marked = c.sigma_bar == 0.15 && (c.c_b == -1.0 || c.c_b == 0.0 || c.c_b == 1.0);
    if (marked)
      svg.rect(x + 2, y + 2, cell_w - 10, cell_h - 10,
               "fill=\"none\" stroke=\"red\" stroke-width=\"2.5\" class=\"run-marker\"");
  }
  const char* tstyle = "font-family=\"sans-serif\" font-size=\"12\" fill=\"#000\"";
  for (std::size_t j = 0; j < n_sigma; ++j) {
    char label[32];
    std::snprintf(label, sizeof(label), "%.0f%%", kGridSigmaValues[j] * 100);
    svg.text(x0 + j * cell_w + cell_w / 2 - 12, y0 + n_cb * cell_h + 20, label, tstyle);
  }
  for (std::size_t i = 0; i < n_cb; ++i) {
    char label[32];
    std::snprintf(label, sizeof(label), "C_b=%+.1f", kGridCbValues[i]);
    svg.text(18, y0 + i * cell_h + cell_h / 2 + 4, label, tstyle);
  }
  svg.text(x0 + n_sigma * cell_w / 2 - 30, y0 + n_cb * cell_h + 45, "sigma_bar", tstyle);
  svg.end_panel();
  svg.close();
  return svg.str();
}

std::string render_run_figure(int run_id, const std::map<std::string, RunDataset>& datasets) {
  switch (run_id) {
    case 1: return de_figure(need(datasets, "run1"));
    case 2: return de_figure(need(datasets, "run2"));
    case 3: return de_figure(need(datasets, "run3"));
    case 4: return de_figure(need(datasets, "run4"));
    case 5: return run5_figure(need(datasets, "run5A"), need(datasets, "run5B"));
    case 6: return edem_figure({&need(datasets, "run6")}, false);
    case 7:
      return edem_figure(
          {&need(datasets, "run6"), &need(datasets, "run7_cbp1"), &need(datasets, "run7_cbm1")},
          false);
    case 8: return edem_figure({&need(datasets, "run8")}, true);
    default:
      throw std::invalid_argument("render_run_figure: no figure for run " + std::to_string(run_id));
  }
}

std::string figure_file_name(int run_id) {
  switch (run_id) {
    case 1: return "fig1_stable.svg";
    case 2: return "fig2_high_error.svg";
    case 3: return "fig3_patience.svg";
    case 4: return "fig4_low_density.svg";
    case 5: return "fig5_shock.svg";
    case 6: return "fig6_bubble.svg";
    case 7: return "fig7_balancer_sweep.svg";
    case 8: return "fig8_double_exp.svg";
    case 9: return "fig9_sensitivity.svg";
    default: throw std::invalid_argument("figure_file_name: bad run id");
  }
}

}  // namespace edem
