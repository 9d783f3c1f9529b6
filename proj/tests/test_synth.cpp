#include <doctest.h>

#include <cmath>

#include "planestereo/synth.hpp"
#include "testutil.hpp"

using namespace planestereo;

TEST_CASE("a fronto-parallel plane renders as a pure translation") {
    const RenderedScene scene = renderScene(PlanarScene::flat(20.0, 64, 48));
    for (int v = 0; v < 48; ++v) {
        for (int u = 0; u + 20 < 64; ++u) {
            REQUIRE(scene.right.at(u, v) == scene.left.at(u + 20, v));
        }
    }
    int occludedCount = 0;
    for (std::uint8_t o : scene.occlusion) {
        occludedCount += o;
    }
    CHECK(occludedCount == 0);
    for (int v = 0; v < 48; ++v) {
        for (int u = 0; u < 64; ++u) {
            CHECK(scene.groundTruth.at(u, v) == 20.0f);
            CHECK(scene.groundTruth.valid(u, v) == (u >= 20));
        }
    }
}

TEST_CASE("a slanted plane evaluates its ground truth exactly") {
    const RenderedScene scene = renderScene(PlanarScene::slanted(0.25, 0.0, 4.0, 64, 48));
    CHECK(scene.groundTruth.at(32, 10) == doctest::Approx(12.0));
    for (int v = 0; v < 48; ++v) {
        for (int u = 0; u < 64; ++u) {
            REQUIRE(scene.groundTruth.at(u, v) == doctest::Approx(0.25 * u + 4.0));
        }
    }
}

TEST_CASE("a near surface on the right occludes a band of the far left region") {
    // Left half at d=10 (far), right half at d=30 (near): the near half's
    // footprint shifts left over the far half's targets.
    const int w = 64, h = 48;
    const RenderedScene scene = renderScene(PlanarScene::steps(10.0, 30.0, w, h));
    const int boundary = w / 2;
    for (int v = 0; v < h; ++v) {
        int rowOccluded = 0;
        for (int u = 0; u < w; ++u) {
            if (scene.occlusion[std::size_t(v) * w + u]) {
                ++rowOccluded;
                CHECK(u >= boundary - 20);
                CHECK(u < boundary);
                CHECK_FALSE(scene.groundTruth.valid(u, v));
            }
        }
        REQUIRE(rowOccluded == 20);
    }
}

TEST_CASE("planes leaving the disparity range are rejected") {
    CHECK_THROWS_AS(renderScene(PlanarScene::flat(-1.0, 64, 48)), InvalidPlane);
    CHECK_THROWS_AS(renderScene(PlanarScene::flat(130.0, 64, 48)), InvalidPlane);
    // Slant that exits the range inside the image.
    CHECK_THROWS_AS(renderScene(PlanarScene::slanted(2.0, 0.0, 10.0, 64, 48)), InvalidPlane);
}

TEST_CASE("rendering is deterministic for a seed") {
    const RenderedScene a = renderScene(PlanarScene::flat(12.0, 64, 48, 99));
    const RenderedScene b = renderScene(PlanarScene::flat(12.0, 64, 48, 99));
    CHECK(a.left.data() == b.left.data());
    CHECK(a.right.data() == b.right.data());
    CHECK(a.groundTruth.values() == b.groundTruth.values());
}

TEST_CASE("textures have dense gradients for the default threshold") {
    const RenderedScene scene = renderScene(PlanarScene::flat(5.0, 64, 48));
    const GradientMask mask = gradientMask(scene.left, 20);
    CHECK(mask.count() > (64 - 4) * (48 - 4) / 2);
}

TEST_CASE("wta oracle returns zero disparity for identical images") {
    GrayImage img = renderScene(PlanarScene::flat(0.0, 64, 48)).left;
    const GradientMask mask = gradientMask(img, 20);
    const auto [disparity, costs] = wtaOracle(img, img, mask, 128);
    for (const Pixel& p : mask.points()) {
        REQUIRE(disparity.valid(p.u, p.v));
        REQUIRE(disparity.at(p.u, p.v) == 0.0f);
        REQUIRE(costs.at(p.u, p.v) == 0.0f);
    }
}

TEST_CASE("wta oracle recovers a rendered constant shift almost everywhere") {
    const RenderedScene scene = renderScene(PlanarScene::flat(7.0, 96, 64));
    const GradientMask mask = gradientMask(scene.left, 20);
    const auto [disparity, costs] = wtaOracle(scene.left, scene.right, mask, 128);
    int evaluated = 0;
    int exact = 0;
    for (const Pixel& p : mask.points()) {
        if (!scene.groundTruth.valid(p.u, p.v) || !disparity.valid(p.u, p.v)) {
            continue;
        }
        ++evaluated;
        exact += (disparity.at(p.u, p.v) == 7.0f);
    }
    REQUIRE(evaluated > 500);
    CHECK(double(exact) / evaluated >= 0.99);
}
