#pragma once

#include <vector>

#include "planestereo/census.hpp"
#include "planestereo/config.hpp"
#include "planestereo/image.hpp"

namespace planestereo {

/// A pixel with a trusted disparity, used as a mesh vertex. Seed matching
/// produces integer disparities; resampling of confident interpolated pixels
/// may carry fractional ones.
struct SupportPoint {
    int u = 0;
    int v = 0;
    double d = 0.0;

    friend bool operator==(const SupportPoint&, const SupportPoint&) = default;
};

/// Corner candidate awaiting an epipolar match.
struct CandidatePixel {
    int u = 0;
    int v = 0;
    float score = 0.0f;
};

/// Segment-test corners, spatially binned into a 12x10 grid with at most
/// `perBinCap` strongest corners kept per bin. The result is ordered by
/// descending score, ties broken row-major.
std::vector<CandidatePixel> detectCandidates(const GrayImage& image, const PipelineConfig& config);

/// Matches candidates along their epipolar lines with census costs.
/// A candidate survives only if its best cost passes the accept threshold,
/// the uniqueness ratio against the second-best non-adjacent disparity, and
/// a left-right consistency re-match within 1 px.
std::vector<SupportPoint> matchEpipolar(const GrayImage& left, const GrayImage& right,
                                        const std::vector<CandidatePixel>& candidates,
                                        const PipelineConfig& config);

/// Same matcher over precomputed census fields.
std::vector<SupportPoint> matchEpipolar(const CensusField& left, const CensusField& right,
                                        const std::vector<CandidatePixel>& candidates,
                                        const PipelineConfig& config);

} // namespace planestereo
