#include "planestereo/image.hpp"

#include <cstdlib>
#include <string>

namespace planestereo {

namespace {

void checkDimensions(int width, int height) {
    if (width < GrayImage::kMinDimension || height < GrayImage::kMinDimension) {
        throw DimensionTooSmall("image must be at least 16x16, got " + std::to_string(width) +
                                "x" + std::to_string(height));
    }
}

} // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), data_(std::size_t(width) * height, fill) {
    checkDimensions(width, height);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    checkDimensions(width, height);
    if (data_.size() != std::size_t(width) * height) {
        throw DimensionMismatch("pixel buffer size does not match image dimensions");
    }
}

GradientMask::GradientMask(int width, int height)
    : width_(width), height_(height), member_(std::size_t(width) * height, 0) {}

void GradientMask::add(int u, int v) {
    std::uint8_t& cell = member_[std::size_t(v) * width_ + u];
    if (!cell) {
        cell = 1;
        points_.push_back({u, v});
    }
}

GradientMask gradientMask(const GrayImage& image, int threshold) {
    const int w = image.width();
    const int h = image.height();
    GradientMask mask(w, h);
    for (int v = GradientMask::kMargin; v < h - GradientMask::kMargin; ++v) {
        const std::uint8_t* above = image.row(v - 1);
        const std::uint8_t* cur = image.row(v);
        const std::uint8_t* below = image.row(v + 1);
        for (int u = GradientMask::kMargin; u < w - GradientMask::kMargin; ++u) {
            const int grad = std::abs(int(cur[u + 1]) - int(cur[u - 1])) +
                             std::abs(int(below[u]) - int(above[u]));
            if (grad >= threshold) {
                mask.add(u, v);
            }
        }
    }
    return mask;
}

} // namespace planestereo
