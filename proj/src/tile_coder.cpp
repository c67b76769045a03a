#include "loca/tile_coder.hpp"

#include <algorithm>
#include <cmath>

#include "loca/error.hpp"
#include "loca/mountain_car.hpp"

namespace loca {

TileCoder::TileCoder(double x_min, double x_max, double y_min, double y_max)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
  if (!(x_max > x_min && y_max > y_min)) throw Error(Errc::InvalidArgument, "empty tile coder box");
}

TileCoder::Active TileCoder::features(double x, double y) const {
  if (!(x >= x_min_ && x <= x_max_ && y >= y_min_ && y <= y_max_))
    throw Error(Errc::OutOfBounds, "tile coder input outside its box");
  const double tiles = static_cast<double>(kTilesPerDim);
  const double ux = (x - x_min_) / (x_max_ - x_min_) * tiles;
  const double uy = (y - y_min_) / (y_max_ - y_min_) * tiles;
  const auto last = static_cast<std::ptrdiff_t>(kTilesPerDim - 1);
  Active active{};
  for (std::size_t k = 0; k < kTilings; ++k) {
    const double offset = static_cast<double>(k) / static_cast<double>(kTilings);
    const auto tx = std::min(static_cast<std::ptrdiff_t>(std::floor(ux + offset)), last);
    const auto ty = std::min(static_cast<std::ptrdiff_t>(std::floor(uy + offset)), last);
    active[k] = k * kTilesPerTiling + static_cast<std::size_t>(ty) * kTilesPerDim + static_cast<std::size_t>(tx);
  }
  return active;
}

TileCoder mountain_car_tiles() {
  const MountainCarSpec spec;
  return {spec.position_min, spec.position_max, spec.velocity_min, spec.velocity_max};
}

}  // namespace loca
