#include "planestereo/census.hpp"

#include "planestereo/parallel.hpp"

namespace planestereo {

CensusField::CensusField(int width, int height)
    : width_(width), height_(height), desc_(std::size_t(width) * height, 0) {}

CensusField censusTransform(const GrayImage& image, int threads) {
    const int w = image.width();
    const int h = image.height();
    CensusField field(w, h);
    constexpr int r = CensusField::kRadius;

    auto rows = [&](int vBegin, int vEnd) {
        vBegin = std::max(vBegin, r);
        vEnd = std::min(vEnd, h - r);
        for (int v = vBegin; v < vEnd; ++v) {
            std::uint32_t* out = &field.at(0, v);
            for (int u = r; u < w - r; ++u) {
                const std::uint8_t center = image.at(u, v);
                std::uint32_t desc = 0;
                int bit = 0;
                for (int dv = -r; dv <= r; ++dv) {
                    const std::uint8_t* line = image.row(v + dv) + (u - r);
                    for (int du = 0; du <= 2 * r; ++du) {
                        if (dv == 0 && du == r) {
                            continue;
                        }
                        desc |= std::uint32_t(line[du] < center) << bit;
                        ++bit;
                    }
                }
                out[u] = desc;
            }
        }
    };
    detail::parallelRows(h, threads, 1, rows);
    return field;
}

} // namespace planestereo
