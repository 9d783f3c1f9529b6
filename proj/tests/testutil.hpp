#pragma once

#include <random>
#include <vector>

#include "planestereo/image.hpp"

namespace testutil {

inline planestereo::GrayImage randomImage(int width, int height, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<std::uint8_t> data(std::size_t(width) * height);
    for (auto& px : data) {
        px = std::uint8_t(rng() & 0xffu);
    }
    return planestereo::GrayImage(width, height, std::move(data));
}

inline std::vector<planestereo::Pixel> randomPoints(int count, int range, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coord(0, range - 1);
    std::vector<planestereo::Pixel> pts;
    pts.reserve(count);
    while (int(pts.size()) < count) {
        planestereo::Pixel p{coord(rng), coord(rng)};
        bool duplicate = false;
        for (const auto& q : pts) {
            if (q == p) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            pts.push_back(p);
        }
    }
    return pts;
}

} // namespace testutil
