#include "planestereo/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#ifdef __linux__
#include <sched.h>
#endif

#include "planestereo/error.hpp"

namespace planestereo {

namespace {

AccuracyReport accuracyImpl(const DisparityMap& prediction, const DisparityMap& groundTruth,
                            const GradientMask* mask, const std::vector<double>& thresholds) {
    if (prediction.width() != groundTruth.width() ||
        prediction.height() != groundTruth.height()) {
        throw DimensionMismatch("prediction and ground truth dimensions differ");
    }
    if (mask && (mask->width() != prediction.width() || mask->height() != prediction.height())) {
        throw DimensionMismatch("mask dimensions differ from the disparity maps");
    }

    AccuracyReport report;
    report.thresholds = thresholds;
    report.fractions.assign(thresholds.size(), 0.0);

    std::vector<long> hits(thresholds.size(), 0);
    double errSum = 0.0;
    for (int v = 0; v < prediction.height(); ++v) {
        for (int u = 0; u < prediction.width(); ++u) {
            if (!prediction.valid(u, v) || !groundTruth.valid(u, v)) {
                continue;
            }
            if (mask && !mask->contains(u, v)) {
                continue;
            }
            const double err = std::abs(double(prediction.at(u, v)) - groundTruth.at(u, v));
            ++report.evaluated;
            errSum += err;
            for (std::size_t i = 0; i < thresholds.size(); ++i) {
                hits[i] += (err < thresholds[i]);
            }
        }
    }
    if (report.evaluated == 0) {
        throw NoOverlap("no jointly valid pixels to evaluate");
    }
    report.meanAbsError = errSum / double(report.evaluated);
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        report.fractions[i] = double(hits[i]) / double(report.evaluated);
    }
    return report;
}

} // namespace

AccuracyReport accuracy(const DisparityMap& prediction, const DisparityMap& groundTruth,
                        const GradientMask& mask, const std::vector<double>& thresholds) {
    return accuracyImpl(prediction, groundTruth, &mask, thresholds);
}

AccuracyReport accuracy(const DisparityMap& prediction, const DisparityMap& groundTruth,
                        const std::vector<double>& thresholds) {
    return accuracyImpl(prediction, groundTruth, nullptr, thresholds);
}

void writeTable(std::ostream& out, const AccuracyReport& report) {
    out << "evaluated pixels: " << report.evaluated << "\n";
    out << "mean abs error:   " << report.meanAbsError << " px\n";
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
        out << "  <" << report.thresholds[i] << "px: " << report.fractions[i] * 100.0 << " %\n";
    }
}

std::string toCsv(const AccuracyReport& report) {
    std::ostringstream out;
    out << "threshold_px,fraction\n";
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
        out << report.thresholds[i] << ',' << report.fractions[i] << '\n';
    }
    out << "evaluated," << report.evaluated << "\nmean_abs_error," << report.meanAbsError << '\n';
    return out.str();
}

std::string toJson(const AccuracyReport& report) {
    std::ostringstream out;
    out << "{\"evaluated\":" << report.evaluated << ",\"mean_abs_error\":" << report.meanAbsError
        << ",\"fractions\":{";
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
        if (i) out << ',';
        out << '"' << report.thresholds[i] << "\":" << report.fractions[i];
    }
    out << "}}";
    return out.str();
}

namespace {

#ifdef __linux__
class ScopedAffinity {
public:
    explicit ScopedAffinity(bool enable) : active_(false) {
        if (!enable) {
            return;
        }
        if (sched_getaffinity(0, sizeof(previous_), &previous_) != 0) {
            return;
        }
        cpu_set_t one;
        CPU_ZERO(&one);
        for (int cpu = 0; cpu < CPU_SETSIZE; ++cpu) {
            if (CPU_ISSET(cpu, &previous_)) {
                CPU_SET(cpu, &one);
                break;
            }
        }
        active_ = sched_setaffinity(0, sizeof(one), &one) == 0;
    }
    ~ScopedAffinity() {
        if (active_) {
            sched_setaffinity(0, sizeof(previous_), &previous_);
        }
    }

private:
    cpu_set_t previous_;
    bool active_;
};
#else
class ScopedAffinity {
public:
    explicit ScopedAffinity(bool) {}
};
#endif

} // namespace

TimingReport benchmark(const std::function<void()>& fn, int repeats, bool pinToCore,
                       const std::string& label) {
    if (repeats < 3) {
        throw InvalidConfig("benchmark needs at least 3 repeats");
    }
    ScopedAffinity pin(pinToCore);

    fn(); // warm-up

    std::vector<double> samples;
    samples.reserve(repeats);
    for (int i = 0; i < repeats; ++i) {
        const auto tic = std::chrono::steady_clock::now();
        fn();
        const auto toc = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(toc - tic).count());
    }
    std::sort(samples.begin(), samples.end());

    TimingReport report;
    report.label = label;
    report.repeats = repeats;
    report.minMs = samples.front();
    report.meanMs = 0.0;
    for (double s : samples) {
        report.meanMs += s;
    }
    report.meanMs /= repeats;
    report.medianMs = (repeats % 2 == 1)
                          ? samples[repeats / 2]
                          : 0.5 * (samples[repeats / 2 - 1] + samples[repeats / 2]);
    report.hz = report.medianMs > 0.0 ? 1000.0 / report.medianMs : 0.0;
    return report;
}

std::string toCsv(const TimingReport& report) {
    std::ostringstream out;
    out << report.label << ',' << report.repeats << ',' << report.meanMs << ','
        << report.medianMs << ',' << report.minMs << ',' << report.hz << '\n';
    return out.str();
}

std::string toJson(const TimingReport& report) {
    std::ostringstream out;
    out << "{\"label\":\"" << report.label << "\",\"repeats\":" << report.repeats
        << ",\"mean_ms\":" << report.meanMs << ",\"median_ms\":" << report.medianMs
        << ",\"min_ms\":" << report.minMs << ",\"hz\":" << report.hz << "}";
    return out.str();
}

} // namespace planestereo
