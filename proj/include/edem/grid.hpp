#pragma once
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace edem {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Per-cell home state. fair_value is fixed at initialisation; value is the
// home's current market-value signal (the common speculative level in EDEM,
// the listing price while a seller occupies the cell in DE).
struct Home {
  double fair_value = 100.0;
  double value = 100.0;
  std::optional<double> last_sale_price;
  std::optional<long> last_sale_tick;
};

// Toroidal patch world. Cells are unit squares addressed row-major; agent
// positions are continuous and wrap on both axes.
class Grid {
public:
  Grid(int width, int height)
      : width_(width), height_(height), homes_(static_cast<std::size_t>(width) * height) {}

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  Home& home(int cell) { return homes_[static_cast<std::size_t>(cell)]; }
  const Home& home(int cell) const { return homes_[static_cast<std::size_t>(cell)]; }
  std::vector<Home>& homes() { return homes_; }
  const std::vector<Home>& homes() const { return homes_; }

  // Reduce a position into [0, width) x [0, height).
  Vec2 wrap(Vec2 p) const {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("wrap: non-finite position");
    p.x = std::fmod(p.x, width_);
    if (p.x < 0) p.x += width_;
    p.y = std::fmod(p.y, height_);
    if (p.y < 0) p.y += height_;
    return p;
  }

  int cell_of(Vec2 p) const {
    const int cx = static_cast<int>(std::floor(p.x)) % width_;
    const int cy = static_cast<int>(std::floor(p.y)) % height_;
    return cx + width_ * cy;
  }

  Vec2 cell_center(int cell) const {
    return Vec2{static_cast<double>(cell % width_) + 0.5,
                static_cast<double>(cell / width_) + 0.5};
  }

  // Squared torus distance (shortest wrap on each axis).
  double dist2(Vec2 a, Vec2 b) const {
    double dx = std::fabs(a.x - b.x);
    if (dx > width_ - dx) dx = width_ - dx;
    double dy = std::fabs(a.y - b.y);
    if (dy > height_ - dy) dy = height_ - dy;
    return dx * dx + dy * dy;
  }

private:
  int width_;
  int height_;
  std::vector<Home> homes_;
};

}  // namespace edem
