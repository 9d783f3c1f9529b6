#include "planestereo/config.hpp"

#include <string>

#include "planestereo/error.hpp"

namespace planestereo {

namespace {

bool isPowerOfTwo(int x) {
    return x > 0 && (x & (x - 1)) == 0;
}

} // namespace

void PipelineConfig::validate() const {
    if (iterations < 1) {
        throw InvalidConfig("iterations must be >= 1, got " + std::to_string(iterations));
    }
    if (maxDisparity < 1) {
        throw InvalidConfig("max disparity must be >= 1, got " + std::to_string(maxDisparity));
    }
    if (!(costLow > 0.0f && costLow < costHigh && costHigh <= 1.0f)) {
        throw InvalidConfig("cost thresholds must satisfy 0 < low < high <= 1");
    }
    if (!isPowerOfTwo(occupancyCellSize)) {
        throw InvalidConfig("occupancy cell size must be a power of two, got " +
                            std::to_string(occupancyCellSize));
    }
    if (gradientThreshold < 0) {
        throw InvalidConfig("gradient threshold must be non-negative");
    }
    if (cornerThreshold < 0) {
        throw InvalidConfig("corner threshold must be non-negative");
    }
    if (perBinCap < 1) {
        throw InvalidConfig("per-bin cap must be >= 1");
    }
    if (!(sparseAcceptCost > 0.0f && sparseAcceptCost <= 1.0f)) {
        throw InvalidConfig("sparse accept cost must lie in (0, 1]");
    }
    if (!(uniquenessRatio > 0.0f && uniquenessRatio <= 1.0f)) {
        throw InvalidConfig("uniqueness ratio must lie in (0, 1]");
    }
    if (threads < 1) {
        throw InvalidConfig("threads must be >= 1");
    }
}

} // namespace planestereo
