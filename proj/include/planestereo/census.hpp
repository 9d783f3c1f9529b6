#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "planestereo/image.hpp"

namespace planestereo {

/// Per-pixel 24-bit census descriptors over a 5x5 window.
///
/// Bit k corresponds to the k-th neighbor of the window in row-major order
/// with the center excluded; the bit is set when that neighbor is strictly
/// darker than the center. Descriptors within 2 px of the border are
/// undefined and flagged invalid.
class CensusField {
public:
    static constexpr int kRadius = 2;
    static constexpr int kBits = 24;

    CensusField(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    bool valid(int u, int v) const {
        return u >= kRadius && u < width_ - kRadius && v >= kRadius && v < height_ - kRadius;
    }

    std::uint32_t at(int u, int v) const { return desc_[std::size_t(v) * width_ + u]; }
    std::uint32_t& at(int u, int v) { return desc_[std::size_t(v) * width_ + u]; }

    const std::uint32_t* row(int v) const { return desc_.data() + std::size_t(v) * width_; }

private:
    int width_;
    int height_;
    std::vector<std::uint32_t> desc_;
};

CensusField censusTransform(const GrayImage& image, int threads = 1);

/// Normalized hamming distance between two descriptors, in [0, 1].
inline float censusCost(std::uint32_t a, std::uint32_t b) {
    return float(std::popcount(a ^ b)) / float(CensusField::kBits);
}

} // namespace planestereo
