#include "planestereo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "planestereo/census.hpp"
#include "planestereo/error.hpp"

namespace planestereo {

PlanarScene PlanarScene::flat(double d, int width, int height, std::uint32_t seed) {
    PlanarScene s;
    s.width = width;
    s.height = height;
    s.seed = seed;
    s.regions.push_back({0, 0, width, height, {0.0, 0.0, d}});
    return s;
}

PlanarScene PlanarScene::slanted(double a, double b, double c, int width, int height,
                                 std::uint32_t seed) {
    PlanarScene s;
    s.width = width;
    s.height = height;
    s.seed = seed;
    s.regions.push_back({0, 0, width, height, {a, b, c}});
    return s;
}

PlanarScene PlanarScene::steps(double dLeft, double dRight, int width, int height,
                               std::uint32_t seed) {
    PlanarScene s;
    s.width = width;
    s.height = height;
    s.seed = seed;
    const int mid = width / 2;
    s.regions.push_back({0, 0, mid, height, {0.0, 0.0, dLeft}});
    s.regions.push_back({mid, 0, width, height, {0.0, 0.0, dRight}});
    return s;
}

namespace {

/// Band-limited noise: uniform bytes, two 3x3 box passes, then a linear
/// stretch back to full range. Pure integer arithmetic keeps it exactly
/// reproducible for a seed.
GrayImage noiseTexture(int width, int height, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::vector<int> a(std::size_t(width) * height);
    for (auto& px : a) {
        px = int(rng() & 0xffu);
    }

    std::vector<int> b(a.size());
    auto blur = [&](const std::vector<int>& src, std::vector<int>& dst) {
        for (int v = 0; v < height; ++v) {
            for (int u = 0; u < width; ++u) {
                int sum = 0;
                int n = 0;
                for (int dv = -1; dv <= 1; ++dv) {
                    const int vv = v + dv;
                    if (vv < 0 || vv >= height) continue;
                    for (int du = -1; du <= 1; ++du) {
                        const int uu = u + du;
                        if (uu < 0 || uu >= width) continue;
                        sum += src[std::size_t(vv) * width + uu];
                        ++n;
                    }
                }
                dst[std::size_t(v) * width + u] = sum / n;
            }
        }
    };
    blur(a, b);
    blur(b, a);

    const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
    const int span = std::max(1, *hi - *lo);
    std::vector<std::uint8_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = std::uint8_t((a[i] - *lo) * 255 / span);
    }
    return GrayImage(width, height, std::move(out));
}

} // namespace

RenderedScene renderScene(const PlanarScene& scene) {
    const int w = scene.width;
    const int h = scene.height;

    std::vector<std::uint8_t> covered(std::size_t(w) * h, 0);
    for (const SceneRegion& r : scene.regions) {
        if (r.u0 < 0 || r.v0 < 0 || r.u1 > w || r.v1 > h || r.u0 >= r.u1 || r.v0 >= r.v1) {
            throw Error("scene region outside image bounds");
        }
        for (int v = r.v0; v < r.v1; ++v) {
            for (int u = r.u0; u < r.u1; ++u) {
                if (covered[std::size_t(v) * w + u]++) {
                    throw Error("scene regions overlap");
                }
            }
        }
    }
    if (std::count(covered.begin(), covered.end(), 1) != int(covered.size())) {
        throw Error("scene regions must cover the image");
    }

    DisparityMap gt(w, h);
    for (const SceneRegion& r : scene.regions) {
        for (int v = r.v0; v < r.v1; ++v) {
            for (int u = r.u0; u < r.u1; ++u) {
                const double d = r.plane.at(u, v);
                if (d < 0.0 || d >= scene.maxDisparity) {
                    throw InvalidPlane("plane value " + std::to_string(d) + " at (" +
                                       std::to_string(u) + "," + std::to_string(v) +
                                       ") outside [0, " + std::to_string(scene.maxDisparity) +
                                       ")");
                }
                gt.set(u, v, float(d));
            }
        }
    }

    GrayImage left = noiseTexture(w, h, scene.seed);
    GrayImage right = noiseTexture(w, h, scene.seed + 1);
    std::vector<std::uint8_t> occluded(std::size_t(w) * h, 0);

    // Forward splat: nearest (largest-disparity) source wins each right
    // pixel; losing sources are occluded, sources mapping off-image are
    // simply not visible in the right view.
    std::vector<float> bestD(w);
    std::vector<int> bestU(w);
    for (int v = 0; v < h; ++v) {
        std::fill(bestD.begin(), bestD.end(), -1.0f);
        std::fill(bestU.begin(), bestU.end(), -1);
        for (int u = 0; u < w; ++u) {
            const float d = gt.at(u, v);
            const int uRight = int(std::lround(double(u) - d));
            if (uRight < 0 || uRight >= w) {
                gt.invalidate(u, v);
                continue;
            }
            if (d > bestD[uRight] || (d == bestD[uRight] && u > bestU[uRight])) {
                bestD[uRight] = d;
                bestU[uRight] = u;
            }
        }
        for (int uRight = 0; uRight < w; ++uRight) {
            if (bestU[uRight] >= 0) {
                right.at(uRight, v) = left.at(bestU[uRight], v);
            }
        }
        for (int u = 0; u < w; ++u) {
            if (!gt.valid(u, v)) {
                continue;
            }
            const int uRight = int(std::lround(double(u) - gt.at(u, v)));
            if (bestU[uRight] != u) {
                gt.invalidate(u, v);
                occluded[std::size_t(v) * w + u] = 1;
            }
        }
    }

    return {std::move(left), std::move(right), std::move(gt), std::move(occluded)};
}

std::pair<DisparityMap, CostMap> wtaOracle(const GrayImage& left, const GrayImage& right,
                                           const GradientMask& mask, int maxDisparity) {
    const CensusField cl = censusTransform(left);
    const CensusField cr = censusTransform(right);

    DisparityMap disparity(left.width(), left.height());
    CostMap costs(left.width(), left.height(), 1.0f);

    for (const Pixel& p : mask.points()) {
        const std::uint32_t ref = cl.at(p.u, p.v);
        const std::uint32_t* rrow = cr.row(p.v);
        const int dMax = std::min(maxDisparity, p.u - CensusField::kRadius);
        int bestD = -1;
        float bestCost = 2.0f;
        for (int d = 0; d <= dMax; ++d) {
            const float c = censusCost(ref, rrow[p.u - d]);
            if (c < bestCost) {
                bestCost = c;
                bestD = d;
            }
        }
        if (bestD >= 0) {
            disparity.set(p.u, p.v, float(bestD));
            costs.set(p.u, p.v, bestCost);
        }
    }
    return {std::move(disparity), std::move(costs)};
}

} // namespace planestereo
