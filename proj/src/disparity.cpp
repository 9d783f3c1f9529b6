#include "planestereo/disparity.hpp"

#include <algorithm>

namespace planestereo {

DisparityMap::DisparityMap(int width, int height)
    : width_(width),
      height_(height),
      value_(std::size_t(width) * height, 0.0f),
      valid_(std::size_t(width) * height, 0) {}

int DisparityMap::validCount() const {
    return int(std::count(valid_.begin(), valid_.end(), std::uint8_t(1)));
}

CostMap::CostMap(int width, int height, float fill)
    : width_(width), height_(height), cost_(std::size_t(width) * height, fill) {}

} // namespace planestereo
