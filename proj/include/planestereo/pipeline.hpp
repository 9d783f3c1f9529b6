#pragma once

#include <functional>
#include <vector>

#include "planestereo/census.hpp"
#include "planestereo/config.hpp"
#include "planestereo/disparity.hpp"
#include "planestereo/image.hpp"
#include "planestereo/mesh.hpp"
#include "planestereo/sparse.hpp"

namespace planestereo {

/// One cell of the resampling grid: the best confident match (or the worst
/// invalid match) seen among the cell's pixels.
struct OccupancyCell {
    int u = 0;
    int v = 0;
    float disparity = 0.0f;
    float cost = 0.0f;
    bool occupied = false;
};

/// Coarse grid over the image; cell (u', v') covers pixels
/// [u'*size, (u'+1)*size) x [v'*size, (v'+1)*size), edge cells partial.
class OccupancyGrid {
public:
    OccupancyGrid(int imageWidth, int imageHeight, int cellSize, float initialCost);

    int cellSize() const { return cellSize_; }
    int cols() const { return cols_; }
    int rows() const { return rows_; }

    const OccupancyCell& cell(int cu, int cv) const { return cells_[std::size_t(cv) * cols_ + cu]; }
    OccupancyCell& cell(int cu, int cv) { return cells_[std::size_t(cv) * cols_ + cu]; }

    const OccupancyCell& cellForPixel(int u, int v) const {
        return cell(u / cellSize_, v / cellSize_);
    }
    OccupancyCell& cellForPixel(int u, int v) { return cell(u / cellSize_, v / cellSize_); }

private:
    int cellSize_;
    int cols_;
    int rows_;
    std::vector<OccupancyCell> cells_;
};

struct IterationStats {
    int iteration = 0;
    int supportCount = 0;
    int triangleCount = 0;
    int occupancyCellSize = 0;
    double meanCost = 0.0; ///< mean final cost over the gradient mask
    int validCount = 0;    ///< mask pixels with final cost below costHigh
    double millis = 0.0;
};

using IterationTrace = std::vector<IterationStats>;

struct StereoResult {
    DisparityMap disparity;  ///< final semi-dense disparities (valid iff cost < costHigh)
    CostMap costs;           ///< final matching costs
    DisparityMap dense;      ///< last iteration's full-image interpolation (unvalidated)
    IterationTrace trace;
};

/// Census cost of the interpolated disparity at every mask pixel; pixels
/// without a usable disparity (invalid, or the rounded right column would
/// leave the census interior) get the sentinel cost 1.
CostMap costEvaluation(const CensusField& left, const CensusField& right,
                       const DisparityMap& interpolated, const GradientMask& mask,
                       int threads = 1);

struct RefinementGrids {
    OccupancyGrid confident; ///< per-cell best match with cost below costLow
    OccupancyGrid invalid;   ///< per-cell worst match with cost above costHigh
};

/// Folds the iteration's costs into the running best state and fills the
/// two resampling grids.
RefinementGrids disparityRefinement(const DisparityMap& interpolated, const CostMap& costs,
                                    DisparityMap& finalDisparity, CostMap& finalCost,
                                    const GradientMask& mask, int cellSize,
                                    const PipelineConfig& config);

/// Grows the support set: confident cells join directly with their stored
/// disparity, invalid cells are re-matched along their epipolar lines.
/// Existing supports win ties at the same pixel.
std::vector<SupportPoint> supportResampling(const OccupancyGrid& confident,
                                            const OccupancyGrid& invalid,
                                            const std::vector<SupportPoint>& supports,
                                            const CensusField& left, const CensusField& right,
                                            const PipelineConfig& config);

/// Called after each iteration's refinement with the running state.
using IterationObserver =
    std::function<void(int iteration, const DisparityMap& finalDisparity, const CostMap& finalCost)>;

/// Full iterative reconstruction of a rectified pair.
/// Throws SeedingFailed when fewer than three seed matches survive.
StereoResult run(const GrayImage& left, const GrayImage& right, const PipelineConfig& config,
                 const IterationObserver& observer = {});

} // namespace planestereo
