#pragma once

#include <cstdint>
#include <vector>

namespace planestereo {

/// Per-pixel real-valued disparity with a validity flag.
class DisparityMap {
public:
    DisparityMap(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    float at(int u, int v) const { return value_[index(u, v)]; }
    bool valid(int u, int v) const { return valid_[index(u, v)] != 0; }

    void set(int u, int v, float disparity) {
        value_[index(u, v)] = disparity;
        valid_[index(u, v)] = 1;
    }
    void invalidate(int u, int v) {
        value_[index(u, v)] = 0.0f;
        valid_[index(u, v)] = 0;
    }

    int validCount() const;

    const std::vector<float>& values() const { return value_; }
    const std::vector<std::uint8_t>& validity() const { return valid_; }

private:
    std::size_t index(int u, int v) const { return std::size_t(v) * width_ + u; }

    int width_;
    int height_;
    std::vector<float> value_;
    std::vector<std::uint8_t> valid_;
};

/// Per-pixel normalized matching cost in [0, 1].
class CostMap {
public:
    CostMap(int width, int height, float fill);

    int width() const { return width_; }
    int height() const { return height_; }

    float at(int u, int v) const { return cost_[index(u, v)]; }
    void set(int u, int v, float cost) { cost_[index(u, v)] = cost; }

    const std::vector<float>& values() const { return cost_; }

private:
    std::size_t index(int u, int v) const { return std::size_t(v) * width_ + u; }

    int width_;
    int height_;
    std::vector<float> cost_;
};

} // namespace planestereo
