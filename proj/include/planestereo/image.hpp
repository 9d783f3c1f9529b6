#pragma once

#include <cstdint>
#include <vector>

#include "planestereo/error.hpp"

namespace planestereo {

struct Pixel {
    int u = 0;
    int v = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Rectified 8-bit intensity image, row-major storage.
class GrayImage {
public:
    static constexpr int kMinDimension = 16;

    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int u, int v) const { return data_[std::size_t(v) * width_ + u]; }
    std::uint8_t& at(int u, int v) { return data_[std::size_t(v) * width_ + u]; }

    const std::uint8_t* row(int v) const { return data_.data() + std::size_t(v) * width_; }
    std::uint8_t* row(int v) { return data_.data() + std::size_t(v) * width_; }

    const std::vector<std::uint8_t>& data() const { return data_; }

    bool sameSize(const GrayImage& other) const {
        return width_ == other.width_ && height_ == other.height_;
    }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> data_;
};

/// Set of high-gradient pixels kept at least 2 px away from every border,
/// so census descriptors exist at every member.
class GradientMask {
public:
    static constexpr int kMargin = 2;

    GradientMask(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    int count() const { return int(points_.size()); }

    bool contains(int u, int v) const { return member_[std::size_t(v) * width_ + u] != 0; }

    /// Members in row-major order.
    const std::vector<Pixel>& points() const { return points_; }

    void add(int u, int v);

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> member_;
    std::vector<Pixel> points_;
};

/// Marks pixels whose central-difference L1 gradient magnitude
/// |I(u+1,v) - I(u-1,v)| + |I(u,v+1) - I(u,v-1)| reaches the threshold.
GradientMask gradientMask(const GrayImage& image, int threshold);

} // namespace planestereo
