#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "planestereo/disparity.hpp"
#include "planestereo/image.hpp"

namespace planestereo {

/// Fractions of evaluated pixels whose absolute error is strictly below each
/// threshold, plus the mean absolute error.
struct AccuracyReport {
    std::vector<double> thresholds;
    std::vector<double> fractions;
    long evaluated = 0;
    double meanAbsError = 0.0;
};

/// Compares prediction against ground truth over the pixels valid in both
/// and inside the mask. Throws NoOverlap when that set is empty.
AccuracyReport accuracy(const DisparityMap& prediction, const DisparityMap& groundTruth,
                        const GradientMask& mask, const std::vector<double>& thresholds);

/// Same without a gradient mask (all jointly valid pixels).
AccuracyReport accuracy(const DisparityMap& prediction, const DisparityMap& groundTruth,
                        const std::vector<double>& thresholds);

void writeTable(std::ostream& out, const AccuracyReport& report);
std::string toCsv(const AccuracyReport& report);
std::string toJson(const AccuracyReport& report);

/// Wall-clock statistics over repeated runs of a closure.
struct TimingReport {
    std::string label;
    int repeats = 0;
    double meanMs = 0.0;
    double medianMs = 0.0;
    double minMs = 0.0;
    double hz = 0.0; ///< 1000 / medianMs
};

/// Runs one warm-up pass plus `repeats` timed passes. With `pinToCore` the
/// calling thread is pinned to a single logical processor for the duration.
/// Requires repeats >= 3.
TimingReport benchmark(const std::function<void()>& fn, int repeats, bool pinToCore = true,
                       const std::string& label = {});

std::string toCsv(const TimingReport& report);
std::string toJson(const TimingReport& report);

} // namespace planestereo
