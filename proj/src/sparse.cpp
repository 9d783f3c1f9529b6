#include "planestereo/sparse.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

namespace planestereo {

namespace {

// Bresenham circle of radius 3, clockwise from 12 o'clock.
constexpr int kCircle[16][2] = {
    {0, -3}, {1, -3},  {2, -2},  {3, -1},  {3, 0},   {3, 1},   {2, 2},   {1, 3},
    {0, 3},  {-1, 3},  {-2, 2},  {-3, 1},  {-3, 0},  {-3, -1}, {-2, -2}, {-1, -3},
};
constexpr int kCircleRadius = 3;
constexpr int kArcLength = 9;

constexpr int kBinsU = 12;
constexpr int kBinsV = 10;

bool hasArc(unsigned mask16) {
    // Contiguous run of at least kArcLength set bits on the 16-bit ring.
    const unsigned ring = mask16 | (mask16 << 16);
    int run = 0;
    for (int i = 0; i < 32; ++i) {
        if (ring & (1u << i)) {
            if (++run >= kArcLength) {
                return true;
            }
        } else {
            run = 0;
        }
    }
    return false;
}

struct BestMatch {
    int disparity = -1;
    float cost = 2.0f;
    float secondCost = 2.0f; // best among |d - winner| > 1
};

BestMatch searchLeftToRight(const CensusField& left, const CensusField& right, int u, int v,
                            int dMax) {
    BestMatch best;
    const std::uint32_t ref = left.at(u, v);
    const std::uint32_t* rrow = right.row(v);
    for (int d = 0; d <= dMax; ++d) {
        const float c = censusCost(ref, rrow[u - d]);
        if (c < best.cost) {
            best.cost = c;
            best.disparity = d;
        }
    }
    for (int d = 0; d <= dMax; ++d) {
        if (std::abs(d - best.disparity) <= 1) {
            continue;
        }
        const float c = censusCost(ref, rrow[u - d]);
        best.secondCost = std::min(best.secondCost, c);
    }
    return best;
}

int searchRightToLeft(const CensusField& left, const CensusField& right, int uRight, int v,
                      int dMax) {
    const std::uint32_t ref = right.at(uRight, v);
    const std::uint32_t* lrow = left.row(v);
    int bestD = 0;
    float bestCost = 2.0f;
    for (int d = 0; d <= dMax; ++d) {
        const float c = censusCost(ref, lrow[uRight + d]);
        if (c < bestCost) {
            bestCost = c;
            bestD = d;
        }
    }
    return bestD;
}

} // namespace

std::vector<CandidatePixel> detectCandidates(const GrayImage& image,
                                             const PipelineConfig& config) {
    const int w = image.width();
    const int h = image.height();
    const int t = config.cornerThreshold;

    std::vector<std::vector<CandidatePixel>> bins(kBinsU * kBinsV);

    for (int v = kCircleRadius; v < h - kCircleRadius; ++v) {
        for (int u = kCircleRadius; u < w - kCircleRadius; ++u) {
            const int center = image.at(u, v);
            const int hi = center + t;
            const int lo = center - t;

            // Compass pre-test: a 9-long arc must contain at least two of
            // the four compass pixels.
            int compassBright = 0;
            int compassDark = 0;
            for (int k = 0; k < 16; k += 4) {
                const int p = image.at(u + kCircle[k][0], v + kCircle[k][1]);
                compassBright += (p > hi);
                compassDark += (p < lo);
            }
            if (compassBright < 2 && compassDark < 2) {
                continue;
            }

            unsigned brightMask = 0;
            unsigned darkMask = 0;
            int score = 0;
            for (int k = 0; k < 16; ++k) {
                const int p = image.at(u + kCircle[k][0], v + kCircle[k][1]);
                brightMask |= unsigned(p > hi) << k;
                darkMask |= unsigned(p < lo) << k;
                score += std::max(0, std::abs(p - center) - t);
            }
            if (!hasArc(brightMask) && !hasArc(darkMask)) {
                continue;
            }

            const int bu = std::min(kBinsU - 1, u * kBinsU / w);
            const int bv = std::min(kBinsV - 1, v * kBinsV / h);
            bins[bv * kBinsU + bu].push_back({u, v, float(score)});
        }
    }

    auto byScoreThenRowMajor = [](const CandidatePixel& lhs, const CandidatePixel& rhs) {
        if (lhs.score != rhs.score) return lhs.score > rhs.score;
        if (lhs.v != rhs.v) return lhs.v < rhs.v;
        return lhs.u < rhs.u;
    };

    std::vector<CandidatePixel> out;
    for (auto& bin : bins) {
        std::sort(bin.begin(), bin.end(), byScoreThenRowMajor);
        if (int(bin.size()) > config.perBinCap) {
            bin.resize(config.perBinCap);
        }
        out.insert(out.end(), bin.begin(), bin.end());
    }
    std::sort(out.begin(), out.end(), byScoreThenRowMajor);
    return out;
}

std::vector<SupportPoint> matchEpipolar(const CensusField& left, const CensusField& right,
                                        const std::vector<CandidatePixel>& candidates,
                                        const PipelineConfig& config) {
    const int w = left.width();

    std::vector<SupportPoint> accepted;
    std::vector<float> acceptedCost;
    std::unordered_map<long long, std::size_t> byPixel;

    for (const CandidatePixel& cand : candidates) {
        const int u = cand.u;
        const int v = cand.v;
        if (!left.valid(u, v)) {
            continue;
        }
        const int dMax = std::min(config.maxDisparity - 1, u - CensusField::kRadius);
        if (dMax < 0) {
            continue;
        }

        const BestMatch match = searchLeftToRight(left, right, u, v, dMax);
        if (match.disparity < 0 || match.cost > config.sparseAcceptCost) {
            continue;
        }
        if (match.secondCost <= 1.0f && match.cost > config.uniquenessRatio * match.secondCost) {
            continue;
        }

        const int uRight = u - match.disparity;
        const int backMax = std::min(config.maxDisparity - 1, w - 1 - CensusField::kRadius - uRight);
        const int backD = searchRightToLeft(left, right, uRight, v, backMax);
        if (std::abs(uRight + backD - u) > 1) {
            continue;
        }

        const long long key = (long long)v * w + u;
        const auto it = byPixel.find(key);
        if (it == byPixel.end()) {
            byPixel.emplace(key, accepted.size());
            accepted.push_back({u, v, double(match.disparity)});
            acceptedCost.push_back(match.cost);
        } else if (match.cost < acceptedCost[it->second]) {
            accepted[it->second] = {u, v, double(match.disparity)};
            acceptedCost[it->second] = match.cost;
        }
    }
    return accepted;
}

std::vector<SupportPoint> matchEpipolar(const GrayImage& left, const GrayImage& right,
                                        const std::vector<CandidatePixel>& candidates,
                                        const PipelineConfig& config) {
    const CensusField cl = censusTransform(left, config.threads);
    const CensusField cr = censusTransform(right, config.threads);
    return matchEpipolar(cl, cr, candidates, config);
}

} // namespace planestereo
