#include <doctest.h>

#include <map>

#include "planestereo/sparse.hpp"
#include "testutil.hpp"

using namespace planestereo;

namespace {

GrayImage shiftLeftBy(const GrayImage& img, int shift, std::uint32_t fillSeed) {
    GrayImage out = testutil::randomImage(img.width(), img.height(), fillSeed);
    for (int v = 0; v < img.height(); ++v) {
        for (int u = 0; u + shift < img.width(); ++u) {
            out.at(u, v) = img.at(u + shift, v);
        }
    }
    return out;
}

} // namespace

TEST_CASE("constant image produces no corner candidates") {
    GrayImage img(64, 48, 120);
    PipelineConfig cfg;
    CHECK(detectCandidates(img, cfg).empty());
}

TEST_CASE("a single bright dot is the only candidate") {
    GrayImage img(16, 16, 0);
    img.at(8, 8) = 255;
    PipelineConfig cfg;
    const auto candidates = detectCandidates(img, cfg);
    REQUIRE(candidates.size() == 1);
    CHECK(candidates[0].u == 8);
    CHECK(candidates[0].v == 8);
    CHECK(candidates[0].score > 0.0f);
}

TEST_CASE("per-bin cap bounds the candidates of every spatial bin") {
    GrayImage img = testutil::randomImage(96, 80, 6);
    PipelineConfig cfg;
    cfg.perBinCap = 5;
    const auto candidates = detectCandidates(img, cfg);
    std::map<std::pair<int, int>, int> perBin;
    for (const auto& c : candidates) {
        const int bu = std::min(11, c.u * 12 / img.width());
        const int bv = std::min(9, c.v * 10 / img.height());
        ++perBin[{bu, bv}];
    }
    CHECK(!perBin.empty());
    for (const auto& [bin, count] : perBin) {
        CHECK(count <= 5);
    }
    // Checkerboard: the cap holds trivially on every non-empty bin.
    GrayImage board(96, 80, 0);
    for (int v = 0; v < 80; ++v) {
        for (int u = 0; u < 96; ++u) {
            board.at(u, v) = ((u / 8 + v / 8) % 2) ? 255 : 0;
        }
    }
    std::map<std::pair<int, int>, int> boardBins;
    for (const auto& c : detectCandidates(board, cfg)) {
        const int bu = std::min(11, c.u * 12 / board.width());
        const int bv = std::min(9, c.v * 10 / board.height());
        CHECK(++boardBins[{bu, bv}] <= 5);
    }
}

TEST_CASE("candidate ordering is score-descending with row-major ties") {
    GrayImage img = testutil::randomImage(64, 64, 9);
    PipelineConfig cfg;
    const auto candidates = detectCandidates(img, cfg);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const auto& a = candidates[i - 1];
        const auto& b = candidates[i];
        const bool ordered =
            a.score > b.score || (a.score == b.score && (a.v < b.v || (a.v == b.v && a.u < b.u)));
        REQUIRE(ordered);
    }
}

TEST_CASE("matching an image against itself yields zero disparities") {
    GrayImage img = testutil::randomImage(80, 64, 12);
    PipelineConfig cfg;
    const auto supports = matchEpipolar(img, img, detectCandidates(img, cfg), cfg);
    REQUIRE(!supports.empty());
    for (const auto& s : supports) {
        CHECK(s.d == 0.0);
    }
}

TEST_CASE("a 7 px shift is recovered exactly at every accepted point") {
    for (std::uint32_t seed : {21u, 22u, 23u}) {
        GrayImage left = testutil::randomImage(96, 64, seed);
        GrayImage right = shiftLeftBy(left, 7, seed + 1000);
        PipelineConfig cfg;
        const auto supports = matchEpipolar(left, right, detectCandidates(left, cfg), cfg);
        REQUIRE(!supports.empty());
        for (const auto& s : supports) {
            REQUIRE(s.d == 7.0);
        }
    }
}

TEST_CASE("the search range collapses near the left border") {
    GrayImage left = testutil::randomImage(64, 48, 5);
    GrayImage right = shiftLeftBy(left, 9, 77);
    PipelineConfig cfg;
    // Candidates at u = 3 can only search d in {0, 1}; the true shift of 9
    // is unreachable there.
    std::vector<CandidatePixel> candidates{{3, 20, 1.0f}, {3, 30, 1.0f}, {3, 40, 1.0f}};
    for (const auto& s : matchEpipolar(left, right, candidates, cfg)) {
        CHECK(s.d <= 1.0);
    }
}

TEST_CASE("supports satisfy their invariants on random inputs") {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        GrayImage left = testutil::randomImage(72, 56, seed);
        GrayImage right = testutil::randomImage(72, 56, seed + 50);
        PipelineConfig cfg;
        for (const auto& s : matchEpipolar(left, right, detectCandidates(left, cfg), cfg)) {
            CHECK(s.d >= 0.0);
            CHECK(s.d < cfg.maxDisparity);
            CHECK(s.u - s.d >= 2.0);
            CHECK(s.u >= 2);
            CHECK(s.u < 70);
            CHECK(s.v >= 2);
            CHECK(s.v < 54);
        }
    }
}

TEST_CASE("matching is deterministic") {
    GrayImage left = testutil::randomImage(80, 60, 1);
    GrayImage right = shiftLeftBy(left, 4, 2);
    PipelineConfig cfg;
    const auto candidates = detectCandidates(left, cfg);
    const auto a = matchEpipolar(left, right, candidates, cfg);
    const auto b = matchEpipolar(left, right, candidates, cfg);
    REQUIRE(a == b);
}

TEST_CASE("duplicate candidates collapse to one support per pixel") {
    GrayImage left = testutil::randomImage(64, 48, 3);
    PipelineConfig cfg;
    std::vector<CandidatePixel> twice{{20, 20, 1.0f}, {20, 20, 2.0f}, {30, 25, 1.0f}};
    const auto supports = matchEpipolar(left, left, twice, cfg);
    int at2020 = 0;
    for (const auto& s : supports) {
        at2020 += (s.u == 20 && s.v == 20);
    }
    CHECK(at2020 <= 1);
}
