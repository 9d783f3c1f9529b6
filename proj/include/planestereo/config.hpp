#pragma once

namespace planestereo {

/// Tuning knobs for the iterative reconstruction. Defaults follow the
/// library's reference configuration; every field is overridable from the
/// CLI and the python bindings.
struct PipelineConfig {
    /// Number of refinement iterations (the accuracy-vs-speed knob).
    int iterations = 1;
    /// Disparity search range: valid disparities lie in [0, maxDisparity).
    int maxDisparity = 128;
    /// Costs below this mark a confident match (fraction of census bits).
    float costLow = 0.25f;
    /// Costs above this mark an invalid match; also the initial final cost.
    float costHigh = 0.5f;
    /// Minimum L1 central-difference gradient for a pixel to enter the mask.
    int gradientThreshold = 20;
    /// Initial occupancy-grid cell size in pixels; halved every iteration.
    int occupancyCellSize = 32;
    /// Corner detector contrast threshold.
    int cornerThreshold = 20;
    /// Maximum seed candidates kept per spatial bin.
    int perBinCap = 5;
    /// Maximum census cost for an epipolar seed match to be accepted.
    float sparseAcceptCost = 0.25f;
    /// Best cost must be at most this fraction of the second-best cost.
    float uniquenessRatio = 0.9f;
    /// Worker threads for the per-pixel stages (1 = fully sequential).
    int threads = 1;

    /// Throws InvalidConfig when any field is out of its documented range.
    void validate() const;
};

} // namespace planestereo
