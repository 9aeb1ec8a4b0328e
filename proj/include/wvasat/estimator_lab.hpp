// Copyright 2026 The wvasat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wvasat/beam_model.hpp"
#include "wvasat/detector_channel.hpp"
#include "wvasat/fisher_engine.hpp"
#include "wvasat/poisson_window.hpp"

namespace wvasat {

/// Everything needed to describe one camera exposure.
struct CameraSetup {
    BeamSpec beam;
    MeasurementScheme scheme = MeasurementScheme::conventional();
    PixelGrid grid = PixelGrid::centered(100, 1.0);
    DetectorConfig detector;
    TruncationPolicy policy;
};

/// Counter-based generator: the stream for (seed, a, b) is a pure function
/// of those three values, so frames and pixels can be drawn in any order.
class CounterRng {
public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

private:
    std::uint64_t state_;
};

struct Frame {
    std::vector<std::int64_t> counts;  ///< one reported symbol per pixel
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

/// Draws one pixel's reading: N ~ Poisson(n_bar_j), then the symbol by
/// inverse CDF over the channel row p(. | N).
std::int64_t sample_pixel(double n_bar_j, const DetectorChannel &channel, CounterRng &rng);

/// Frame number `index` of the run seeded with `seed`.
Frame sample_frame(const CameraSetup &setup, std::uint64_t seed, std::uint64_t index);

enum class EstimatorKind { MaximumLikelihood, CenterOfMass };
std::string to_string(EstimatorKind kind);

struct SearchInterval {
    double lo = -0.2;
    double hi = 0.2;
};

/// Default MLE search interval: +/- 20 g around zero, or +/- 0.2 w when g = 0.
SearchInterval default_search_interval(const BeamSpec &beam);

/// Tabulated log p(k_j | g) for every pixel on a uniform grid of g values,
/// interpolated with cubic (Catmull-Rom) splines. Building the table costs
/// nodes x pixels marginalizations; evaluating a likelihood costs one spline
/// lookup per pixel.
class LikelihoodTable {
public:
    LikelihoodTable(const CameraSetup &setup, SearchInterval interval, std::size_t nodes = 201,
                    unsigned threads = 1);

    SearchInterval interval() const { return interval_; }
    std::size_t nodes() const { return nodes_; }
    double log_likelihood(const Frame &frame, double g) const;

private:
    double node_log_prob(std::size_t pixel, std::size_t node, std::int64_t symbol) const;

    struct NodeRow {
        std::int64_t first = 0;
        std::vector<double> log_p;
    };

    SearchInterval interval_;
    std::size_t nodes_;
    double spacing_;
    std::size_t pixels_;
    std::vector<NodeRow> rows_;  // pixel-major: rows_[pixel * nodes_ + node]
};

/// Exact log-likelihood sum_j ln p(k_j | g), no tabulation.
double exact_log_likelihood(const Frame &frame, const CameraSetup &setup, double g);

struct MleResult {
    double estimate = 0.0;
    double log_likelihood = 0.0;
    bool bracket_failure = false;  ///< best coarse-scan point on the interval boundary
    bool multimodal = false;       ///< coarse scan found more than one local maximum
};

/// 64-point coarse scan, then golden-section refinement to 1e-6 w.
MleResult mle_estimate(const Frame &frame, const LikelihoodTable &table, double w = 1.0);

/// Convenience overload that builds a table for a single frame.
MleResult mle_estimate(const Frame &frame, const CameraSetup &setup, SearchInterval interval);

struct ComCalibration {
    double offset = 0.0;
    double scale = 1.0;
};

/// Centroid of the frame with reported values as weights, corrected by the
/// calibration. Empty when the frame carries no signal.
std::optional<double> com_estimate(const Frame &frame, const PixelGrid &grid, const ComCalibration &calibration,
                                   const DetectorChannel &channel);

/// Expected raw centroid sum_j x_j E[k_j] / sum_j E[k_j] at shift g.
double expected_centroid(const CameraSetup &setup, double g);

/// Least-squares line through the expected raw centroid at 11 shifts
/// spanning +/- 5 / sqrt(fisher) around zero.
ComCalibration calibrate_com(const CameraSetup &setup, double fisher);

struct BenchmarkOptions {
    std::optional<SearchInterval> interval;
    std::size_t table_nodes = 201;
    unsigned threads = 1;
};

struct EstimatorReport {
    EstimatorKind estimator = EstimatorKind::MaximumLikelihood;
    std::size_t n_frames = 0;
    std::size_t n_valid = 0;
    double true_g = 0.0;
    double mean_estimate = 0.0;
    double variance = 0.0;
    double fisher = 0.0;
    double crb = 0.0;
    double efficiency = 0.0;
    std::size_t bracket_failures = 0;
    std::size_t missing = 0;
    bool reliable = true;
    std::vector<double> estimates;
};

/// Samples `n_frames` frames (n_frames >= 100), estimates g on each and
/// compares the spread to the Cramer-Rao bound 1 / F. Fully determined by
/// (setup, seed).
EstimatorReport benchmark(EstimatorKind estimator, const CameraSetup &setup, std::size_t n_frames,
                          std::uint64_t seed, const BenchmarkOptions &options = {});

}  // namespace wvasat
