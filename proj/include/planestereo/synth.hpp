#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "planestereo/disparity.hpp"
#include "planestereo/image.hpp"
#include "planestereo/mesh.hpp"

namespace planestereo {

/// Axis-aligned region [u0, u1) x [v0, v1) carrying one disparity plane.
struct SceneRegion {
    int u0 = 0;
    int v0 = 0;
    int u1 = 0;
    int v1 = 0;
    DisparityPlane plane;
};

/// Piecewise-planar ground-truth scene; regions must partition the image.
struct PlanarScene {
    int width = 640;
    int height = 480;
    float maxDisparity = 128.0f;
    std::uint32_t seed = 1234;
    std::vector<SceneRegion> regions;

    static PlanarScene flat(double d, int width = 640, int height = 480,
                            std::uint32_t seed = 1234);
    static PlanarScene slanted(double a, double b, double c, int width = 640, int height = 480,
                               std::uint32_t seed = 1234);
    /// Left half at dLeft, right half at dRight.
    static PlanarScene steps(double dLeft, double dRight, int width = 640, int height = 480,
                             std::uint32_t seed = 1234);
};

struct RenderedScene {
    GrayImage left;
    GrayImage right;
    DisparityMap groundTruth; ///< invalid where occluded or out of the right view
    std::vector<std::uint8_t> occlusion; ///< 1 where a nearer surface hides the pixel
};

/// Renders a deterministic band-limited noise texture and forward-maps it
/// into the right view; collisions keep the largest disparity and flag the
/// losers occluded. Throws InvalidPlane when a region's plane leaves
/// [0, maxDisparity) inside the region.
RenderedScene renderScene(const PlanarScene& scene);

/// Exhaustive winner-take-all census matcher: per mask pixel the cost-minimal
/// integer disparity in [0, min(maxDisparity, u-2)], ties toward smaller d.
/// Serves as the lower-bound oracle for the pipeline's costs.
std::pair<DisparityMap, CostMap> wtaOracle(const GrayImage& left, const GrayImage& right,
                                           const GradientMask& mask, int maxDisparity);

} // namespace planestereo
