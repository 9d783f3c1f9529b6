#include "planestereo/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <unordered_set>

#include "planestereo/error.hpp"
#include "planestereo/parallel.hpp"

namespace planestereo {

namespace {

constexpr float kSentinelCost = 1.0f;

int ceilDivPositive(int a, int b) {
    return (a + b - 1) / b;
}

} // namespace

OccupancyGrid::OccupancyGrid(int imageWidth, int imageHeight, int cellSize, float initialCost)
    : cellSize_(cellSize),
      cols_(ceilDivPositive(imageWidth, cellSize)),
      rows_(ceilDivPositive(imageHeight, cellSize)) {
    cells_.resize(std::size_t(cols_) * rows_);
    for (auto& c : cells_) {
        c.cost = initialCost;
    }
}

CostMap costEvaluation(const CensusField& left, const CensusField& right,
                       const DisparityMap& interpolated, const GradientMask& mask, int threads) {
    CostMap costs(left.width(), left.height(), kSentinelCost);

    const auto& points = mask.points();
    auto span = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const Pixel p = points[i];
            if (!interpolated.valid(p.u, p.v)) {
                continue;
            }
            const int d = int(std::lround(interpolated.at(p.u, p.v)));
            const int uRight = p.u - d;
            if (d < 0 || uRight < CensusField::kRadius) {
                continue;
            }
            costs.set(p.u, p.v, censusCost(left.at(p.u, p.v), right.at(uRight, p.v)));
        }
    };
    detail::parallelRows(int(points.size()), threads, 1, span);
    return costs;
}

RefinementGrids disparityRefinement(const DisparityMap& interpolated, const CostMap& costs,
                                    DisparityMap& finalDisparity, CostMap& finalCost,
                                    const GradientMask& mask, int cellSize,
                                    const PipelineConfig& config) {
    RefinementGrids grids{
        OccupancyGrid(costs.width(), costs.height(), cellSize, config.costLow),
        OccupancyGrid(costs.width(), costs.height(), cellSize, config.costHigh),
    };

    for (const Pixel& p : mask.points()) {
        const float cost = costs.at(p.u, p.v);

        if (cost < finalCost.at(p.u, p.v)) {
            finalDisparity.set(p.u, p.v, interpolated.at(p.u, p.v));
            finalCost.set(p.u, p.v, cost);
        }

        if (cost < config.costLow) {
            OccupancyCell& cell = grids.confident.cellForPixel(p.u, p.v);
            if (cost < cell.cost) {
                cell = {p.u, p.v, interpolated.at(p.u, p.v), cost, true};
            }
        } else if (cost > config.costHigh) {
            OccupancyCell& cell = grids.invalid.cellForPixel(p.u, p.v);
            if (cost > cell.cost) {
                cell = {p.u, p.v, 0.0f, cost, true};
            }
        }
    }
    return grids;
}

std::vector<SupportPoint> supportResampling(const OccupancyGrid& confident,
                                            const OccupancyGrid& invalid,
                                            const std::vector<SupportPoint>& supports,
                                            const CensusField& left, const CensusField& right,
                                            const PipelineConfig& config) {
    const long long w = left.width();
    std::unordered_set<long long> taken;
    taken.reserve(supports.size() * 2);

    std::vector<SupportPoint> result = supports;
    for (const SupportPoint& s : supports) {
        taken.insert((long long)s.v * w + s.u);
    }

    for (int cv = 0; cv < confident.rows(); ++cv) {
        for (int cu = 0; cu < confident.cols(); ++cu) {
            const OccupancyCell& cell = confident.cell(cu, cv);
            if (!cell.occupied || cell.u - cell.disparity < CensusField::kRadius) {
                continue;
            }
            if (taken.insert((long long)cell.v * w + cell.u).second) {
                result.push_back({cell.u, cell.v, double(cell.disparity)});
            }
        }
    }

    std::vector<CandidatePixel> toRematch;
    for (int cv = 0; cv < invalid.rows(); ++cv) {
        for (int cu = 0; cu < invalid.cols(); ++cu) {
            const OccupancyCell& cell = invalid.cell(cu, cv);
            if (cell.occupied) {
                toRematch.push_back({cell.u, cell.v, cell.cost});
            }
        }
    }
    for (const SupportPoint& s : matchEpipolar(left, right, toRematch, config)) {
        if (taken.insert((long long)s.v * w + s.u).second) {
            result.push_back(s);
        }
    }
    return result;
}

StereoResult run(const GrayImage& left, const GrayImage& right, const PipelineConfig& config,
                 const IterationObserver& observer) {
    config.validate();
    if (!left.sameSize(right)) {
        throw DimensionMismatch("stereo pair dimensions differ");
    }

    const int w = left.width();
    const int h = left.height();

    const GradientMask mask = gradientMask(left, config.gradientThreshold);
    const CensusField censusLeft = censusTransform(left, config.threads);
    const CensusField censusRight = censusTransform(right, config.threads);

    DisparityMap finalDisparity(w, h);
    CostMap finalCost(w, h, config.costHigh);
    int cellSize = config.occupancyCellSize;

    std::vector<SupportPoint> supports =
        matchEpipolar(censusLeft, censusRight, detectCandidates(left, config), config);
    if (supports.size() < 3) {
        throw SeedingFailed("only " + std::to_string(supports.size()) +
                            " seed matches survived; need at least 3");
    }

    StereoResult result{DisparityMap(w, h), CostMap(w, h, config.costHigh), DisparityMap(w, h), {}};

    for (int it = 1; it <= config.iterations; ++it) {
        const auto tic = std::chrono::steady_clock::now();

        const DisparityMesh mesh = triangulate(supports, w, h);
        const DisparityMap interpolated = interpolate(mesh, mask, float(config.maxDisparity));
        const CostMap costs =
            costEvaluation(censusLeft, censusRight, interpolated, mask, config.threads);
        const RefinementGrids grids = disparityRefinement(interpolated, costs, finalDisparity,
                                                          finalCost, mask, cellSize, config);

        if (it != config.iterations) {
            supports = supportResampling(grids.confident, grids.invalid, supports, censusLeft,
                                         censusRight, config);
            cellSize = std::max(1, cellSize / 2);
        } else {
            result.dense = interpolate(mesh, float(config.maxDisparity));
        }

        const auto toc = std::chrono::steady_clock::now();

        IterationStats stats;
        stats.iteration = it;
        stats.supportCount = int(mesh.vertices().size());
        stats.triangleCount = int(mesh.triangles().size());
        stats.occupancyCellSize = grids.confident.cellSize();
        double costSum = 0.0;
        int valid = 0;
        for (const Pixel& p : mask.points()) {
            const float c = finalCost.at(p.u, p.v);
            costSum += c;
            valid += (c < config.costHigh);
        }
        stats.meanCost = mask.count() > 0 ? costSum / mask.count() : 0.0;
        stats.validCount = valid;
        stats.millis = std::chrono::duration<double, std::milli>(toc - tic).count();
        result.trace.push_back(stats);

        if (observer) {
            observer(it, finalDisparity, finalCost);
        }
    }

    result.disparity = std::move(finalDisparity);
    result.costs = std::move(finalCost);
    return result;
}

} // namespace planestereo
