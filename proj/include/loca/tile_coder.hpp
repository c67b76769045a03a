#pragma once

#include <array>
#include <cstddef>

namespace loca {

/// Grid tile coding over a 2-d box. Tiling k is displaced by k/tilings of a
/// tile width along both dimensions; tile coordinates past the upper edge are
/// clamped into the last tile.
class TileCoder {
 public:
  static constexpr std::size_t kTilings = 10;
  static constexpr std::size_t kTilesPerDim = 10;
  static constexpr std::size_t kTilesPerTiling = kTilesPerDim * kTilesPerDim;
  static constexpr std::size_t kFeatures = kTilings * kTilesPerTiling;

  using Active = std::array<std::size_t, kTilings>;

  TileCoder(double x_min, double x_max, double y_min, double y_max);

  /// One index per tiling; tiling k owns [k*100, (k+1)*100). Throws
  /// OutOfBounds outside the box.
  Active features(double x, double y) const;

 private:
  double x_min_, x_max_, y_min_, y_max_;
};

/// Tile coder over the Mountain Car position/velocity box.
TileCoder mountain_car_tiles();

}  // namespace loca
