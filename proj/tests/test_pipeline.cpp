#include <doctest.h>

#include <chrono>
#include <cmath>
#include <vector>

#include "planestereo/eval.hpp"
#include "planestereo/pipeline.hpp"
#include "planestereo/synth.hpp"
#include "testutil.hpp"

using namespace planestereo;

namespace {

DisparityMap constantMap(int w, int h, float d) {
    DisparityMap map(w, h);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            map.set(u, v, d);
        }
    }
    return map;
}

} // namespace

TEST_CASE("cost evaluation is zero for a self-match at zero disparity") {
    GrayImage img = testutil::randomImage(64, 48, 4);
    const GradientMask mask = gradientMask(img, 20);
    const CensusField census = censusTransform(img);
    const CostMap costs = costEvaluation(census, census, constantMap(64, 48, 0.0f), mask);
    REQUIRE(mask.count() > 0);
    for (const Pixel& p : mask.points()) {
        REQUIRE(costs.at(p.u, p.v) == 0.0f);
    }
}

TEST_CASE("cost evaluation is zero at the true shift of a rendered pair") {
    const RenderedScene scene = renderScene(PlanarScene::flat(7.0, 64, 48));
    const GradientMask mask = gradientMask(scene.left, 20);
    const CensusField cl = censusTransform(scene.left);
    const CensusField cr = censusTransform(scene.right);
    const CostMap costs = costEvaluation(cl, cr, constantMap(64, 48, 7.0f), mask);
    for (const Pixel& p : mask.points()) {
        if (scene.groundTruth.valid(p.u, p.v) && p.u - 7 >= 2 && p.u + 2 < 64 - 7) {
            REQUIRE(costs.at(p.u, p.v) == 0.0f);
        }
    }
}

TEST_CASE("cost evaluation emits the sentinel for unusable disparities") {
    GrayImage img = testutil::randomImage(64, 48, 8);
    const GradientMask mask = gradientMask(img, 20);
    const CensusField census = censusTransform(img);

    DisparityMap tooFar(64, 48);
    for (int v = 0; v < 48; ++v) {
        for (int u = 0; u < 64; ++u) {
            tooFar.set(u, v, float(u + 5)); // right column would be negative
        }
    }
    const CostMap farCosts = costEvaluation(census, census, tooFar, mask);
    for (const Pixel& p : mask.points()) {
        REQUIRE(farCosts.at(p.u, p.v) == 1.0f);
    }

    const DisparityMap invalid(64, 48);
    const CostMap invalidCosts = costEvaluation(census, census, invalid, mask);
    for (const Pixel& p : mask.points()) {
        REQUIRE(invalidCosts.at(p.u, p.v) == 1.0f);
    }
}

TEST_CASE("cost evaluation matches its sequential result when threaded") {
    const RenderedScene scene = renderScene(PlanarScene::slanted(0.1, 0.05, 5.0, 96, 64));
    const GradientMask mask = gradientMask(scene.left, 20);
    const CensusField cl = censusTransform(scene.left);
    const CensusField cr = censusTransform(scene.right);
    const DisparityMap guess = constantMap(96, 64, 5.0f);
    const CostMap seq = costEvaluation(cl, cr, guess, mask, 1);
    const CostMap par = costEvaluation(cl, cr, guess, mask, 4);
    REQUIRE(seq.values() == par.values());
}

TEST_CASE("refinement folds lower costs into the final state") {
    PipelineConfig cfg;
    GradientMask mask(32, 32);
    mask.add(10, 10);
    mask.add(11, 10); // same 32x32 cell
    mask.add(20, 12);

    DisparityMap interpolated(32, 32);
    interpolated.set(10, 10, 6.0f);
    interpolated.set(11, 10, 6.5f);
    interpolated.set(20, 12, 9.0f);

    CostMap costs(32, 32, 1.0f);
    costs.set(10, 10, 0.10f);
    costs.set(11, 10, 0.05f);
    costs.set(20, 12, 0.30f); // between costLow and costHigh

    DisparityMap finalDisp(32, 32);
    CostMap finalCost(32, 32, cfg.costHigh);

    const RefinementGrids grids =
        disparityRefinement(interpolated, costs, finalDisp, finalCost, mask, 32, cfg);

    // (a) every cost below the running best updates the final state.
    CHECK(finalDisp.at(10, 10) == 6.0f);
    CHECK(finalCost.at(10, 10) == 0.10f);
    CHECK(finalDisp.at(20, 12) == 9.0f);
    CHECK(finalCost.at(20, 12) == 0.30f);

    // (b) the confident grid keeps the per-cell minimum.
    const OccupancyCell& confident = grids.confident.cellForPixel(10, 10);
    REQUIRE(confident.occupied);
    CHECK(confident.u == 11);
    CHECK(confident.v == 10);
    CHECK(confident.cost == 0.05f);
    CHECK(confident.disparity == 6.5f);

    // (c) a cost between the thresholds enters neither grid.
    CHECK_FALSE(grids.invalid.cellForPixel(20, 12).occupied);

    // Sentinel costs land in the invalid grid and keep the per-cell maximum.
    GradientMask mask2(32, 32);
    mask2.add(5, 5);
    mask2.add(6, 5);
    CostMap costs2(32, 32, 1.0f);
    costs2.set(5, 5, 0.8f);
    costs2.set(6, 5, 0.9f);
    DisparityMap interp2(32, 32);
    interp2.set(5, 5, 1.0f);
    interp2.set(6, 5, 1.0f);
    const RefinementGrids grids2 =
        disparityRefinement(interp2, costs2, finalDisp, finalCost, mask2, 32, cfg);
    const OccupancyCell& invalid = grids2.invalid.cellForPixel(5, 5);
    REQUIRE(invalid.occupied);
    CHECK(invalid.u == 6);
    CHECK(invalid.cost == 0.9f);
}

TEST_CASE("occupancy grid uses ceiling division for its dimensions") {
    const OccupancyGrid grid(100, 70, 32, 0.5f);
    CHECK(grid.cols() == 4);
    CHECK(grid.rows() == 3);
}

TEST_CASE("support resampling keeps existing supports and adds confident cells") {
    GrayImage img = testutil::randomImage(64, 48, 10);
    const CensusField census = censusTransform(img);
    PipelineConfig cfg;

    const std::vector<SupportPoint> supports{{10, 10, 3.0}, {40, 30, 5.0}};

    OccupancyGrid empty(64, 48, 32, cfg.costLow);
    OccupancyGrid emptyBad(64, 48, 32, cfg.costHigh);
    CHECK(supportResampling(empty, emptyBad, supports, census, census, cfg) == supports);

    OccupancyGrid confident(64, 48, 32, cfg.costLow);
    confident.cell(1, 1) = {40, 40, 12.3f, 0.08f, true};
    const auto grown = supportResampling(confident, emptyBad, supports, census, census, cfg);
    REQUIRE(grown.size() == 3);
    CHECK(grown[2].u == 40);
    CHECK(grown[2].v == 40);
    CHECK(grown[2].d == doctest::Approx(12.3));

    // A confident cell at an already-supported pixel keeps the earlier entry.
    OccupancyGrid duplicate(64, 48, 32, cfg.costLow);
    duplicate.cell(0, 0) = {10, 10, 9.0f, 0.01f, true};
    const auto unchanged = supportResampling(duplicate, emptyBad, supports, census, census, cfg);
    REQUIRE(unchanged.size() == 2);
    CHECK(unchanged[0].d == 3.0);
}

TEST_CASE("full runs succeed on a rendered constant-disparity scene") {
    const RenderedScene scene = renderScene(PlanarScene::flat(20.0, 160, 120));
    PipelineConfig cfg;
    const StereoResult result = run(scene.left, scene.right, cfg);

    const GradientMask mask = gradientMask(scene.left, cfg.gradientThreshold);
    int evaluated = 0;
    int close = 0;
    for (const Pixel& p : mask.points()) {
        if (!result.disparity.valid(p.u, p.v) || !scene.groundTruth.valid(p.u, p.v)) {
            continue;
        }
        ++evaluated;
        close += std::abs(result.disparity.at(p.u, p.v) - 20.0f) < 1.0f;
    }
    REQUIRE(evaluated > 1000);
    CHECK(double(close) / evaluated >= 0.99);
    REQUIRE(result.trace.size() == 1);
    CHECK(result.trace[0].supportCount >= 3);
    CHECK(result.trace[0].occupancyCellSize == 32);
}

TEST_CASE("the occupancy cell size halves down to one across seven iterations") {
    const RenderedScene scene = renderScene(PlanarScene::flat(10.0, 128, 96));
    PipelineConfig cfg;
    cfg.iterations = 7;
    const StereoResult result = run(scene.left, scene.right, cfg);
    REQUIRE(result.trace.size() == 7);
    const std::vector<int> expected{32, 16, 8, 4, 2, 1, 1};
    for (int i = 0; i < 7; ++i) {
        CHECK(result.trace[i].occupancyCellSize == expected[i]);
    }
}

TEST_CASE("final costs never increase across iterations") {
    for (std::uint32_t seed = 0; seed < 3; ++seed) {
        const RenderedScene scene =
            renderScene(PlanarScene::steps(5.0, 17.0, 96, 80, 100 + seed));
        PipelineConfig cfg;
        cfg.iterations = 4;

        std::vector<std::vector<float>> costHistory;
        run(scene.left, scene.right, cfg,
            [&](int, const DisparityMap&, const CostMap& finalCost) {
                costHistory.push_back(finalCost.values());
            });
        REQUIRE(costHistory.size() == 4);
        for (std::size_t it = 1; it < costHistory.size(); ++it) {
            for (std::size_t i = 0; i < costHistory[it].size(); ++i) {
                REQUIRE(costHistory[it][i] <= costHistory[it - 1][i]);
            }
        }
    }
}

TEST_CASE("support counts never shrink and the mean cost never rises") {
    const RenderedScene scene = renderScene(PlanarScene::slanted(0.08, 0.02, 6.0, 128, 96));
    PipelineConfig cfg;
    cfg.iterations = 5;
    const StereoResult result = run(scene.left, scene.right, cfg);
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
        CHECK(result.trace[i].supportCount >= result.trace[i - 1].supportCount);
        CHECK(result.trace[i].meanCost <= result.trace[i - 1].meanCost + 1e-9);
    }
}

TEST_CASE("valid output pixels are exactly those with final cost below the threshold") {
    const RenderedScene scene = renderScene(PlanarScene::flat(9.0, 96, 64));
    PipelineConfig cfg;
    cfg.iterations = 2;
    const StereoResult result = run(scene.left, scene.right, cfg);
    for (int v = 0; v < 64; ++v) {
        for (int u = 0; u < 96; ++u) {
            REQUIRE(result.disparity.valid(u, v) == (result.costs.at(u, v) < cfg.costHigh));
        }
    }
}

TEST_CASE("final cost is bounded below by the exhaustive winner-take-all cost") {
    const RenderedScene scene = renderScene(PlanarScene::flat(11.0, 64, 64));
    PipelineConfig cfg;
    cfg.iterations = 3;
    const StereoResult result = run(scene.left, scene.right, cfg);

    const GradientMask mask = gradientMask(scene.left, cfg.gradientThreshold);
    const auto [wtaDisp, wtaCost] = wtaOracle(scene.left, scene.right, mask, cfg.maxDisparity);
    for (const Pixel& p : mask.points()) {
        if (result.disparity.valid(p.u, p.v)) {
            REQUIRE(result.costs.at(p.u, p.v) >= wtaCost.at(p.u, p.v));
        }
    }
}

TEST_CASE("runs are deterministic") {
    const RenderedScene scene = renderScene(PlanarScene::steps(4.0, 12.0, 96, 64));
    PipelineConfig cfg;
    cfg.iterations = 3;
    const StereoResult a = run(scene.left, scene.right, cfg);
    const StereoResult b = run(scene.left, scene.right, cfg);
    CHECK(a.disparity.values() == b.disparity.values());
    CHECK(a.disparity.validity() == b.disparity.validity());
    CHECK(a.costs.values() == b.costs.values());
    CHECK(a.dense.values() == b.dense.values());
}

TEST_CASE("threaded runs reproduce the sequential result") {
    const RenderedScene scene = renderScene(PlanarScene::flat(6.0, 96, 64));
    PipelineConfig cfg;
    cfg.iterations = 2;
    const StereoResult seq = run(scene.left, scene.right, cfg);
    cfg.threads = 4;
    const StereoResult par = run(scene.left, scene.right, cfg);
    CHECK(seq.disparity.values() == par.disparity.values());
    CHECK(seq.costs.values() == par.costs.values());
}

TEST_CASE("seeding fails on textureless input") {
    GrayImage flat(64, 48, 128);
    PipelineConfig cfg;
    CHECK_THROWS_AS(run(flat, flat, cfg), SeedingFailed);
}

TEST_CASE("mismatched dimensions are rejected") {
    GrayImage a(64, 48, 0);
    GrayImage b(48, 64, 0);
    PipelineConfig cfg;
    CHECK_THROWS_AS(run(a, b, cfg), DimensionMismatch);
}

TEST_CASE("invalid configuration is rejected before any work") {
    const RenderedScene scene = renderScene(PlanarScene::flat(5.0, 64, 48));
    PipelineConfig cfg;
    cfg.iterations = 0;
    CHECK_THROWS_AS(run(scene.left, scene.right, cfg), InvalidConfig);
}

TEST_CASE("iteration stage times are consistent with the total wall clock") {
    const RenderedScene scene = renderScene(PlanarScene::flat(8.0, 96, 64));
    PipelineConfig cfg;
    cfg.iterations = 3;
    const auto tic = std::chrono::steady_clock::now();
    const StereoResult result = run(scene.left, scene.right, cfg);
    const auto toc = std::chrono::steady_clock::now();
    const double totalMs = std::chrono::duration<double, std::milli>(toc - tic).count();
    double stagesMs = 0.0;
    for (const auto& stats : result.trace) {
        stagesMs += stats.millis;
    }
    CHECK(stagesMs <= totalMs + 1.0);
}
