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


#include "wvasat/estimator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wvasat/parallel.hpp"

namespace wvasat {

namespace {

constexpr double kLogFloor = -700.0;
constexpr std::size_t kCoarseScan = 64;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Frame sample_with(const std::vector<double> &means, const DetectorChannel &channel, std::uint64_t seed,
                  std::uint64_t index) {
    Frame frame;
    frame.seed = seed;
    frame.index = index;
    frame.counts.resize(means.size());
    for (std::size_t j = 0; j < means.size(); ++j) {
        CounterRng rng(seed, index, j);
        frame.counts[j] = sample_pixel(means[j], channel, rng);
    }
    return frame;
}

double catmull_rom(double p0, double p1, double p2, double p3, double u) {
    return 0.5 * (2.0 * p1 + (p2 - p0) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u * u +
                  (3.0 * (p1 - p2) + p3 - p0) * u * u * u);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
    : state_(mix64(seed ^ mix64(a + 0x632BE59BD9B4E019ull) ^ mix64(mix64(b) + 0x9E3779B97F4A7C15ull))) {}

CounterRng::result_type CounterRng::operator()() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
}

double CounterRng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::int64_t sample_pixel(double n_bar_j, const DetectorChannel &channel, CounterRng &rng) {
    std::int64_t photons = 0;
    if (n_bar_j > 0.0) {
        std::poisson_distribution<std::int64_t> poisson(n_bar_j);
        photons = poisson(rng);
    }
    if (channel.mode() == OutputMode::ExactResponse) {
        return photons;
    }
    thread_local std::vector<double> band;
    std::int64_t first = channel.band(photons, band);
    double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < band.size(); ++i) {
        cumulative += band[i];
        if (u < cumulative) {
            return first + static_cast<std::int64_t>(i);
        }
    }
    // u fell in the rounding slack above the last cumulative sum.
    for (std::size_t i = band.size(); i-- > 0;) {
        if (band[i] > 0.0) {
            return first + static_cast<std::int64_t>(i);
        }
    }
    return first;
}

Frame sample_frame(const CameraSetup &setup, std::uint64_t seed, std::uint64_t index) {
    DetectorChannel channel(setup.detector);
    return sample_with(pixel_mean_photons(setup.beam, setup.scheme, setup.grid), channel, seed, index);
}

std::string to_string(EstimatorKind kind) {
    return kind == EstimatorKind::MaximumLikelihood ? "MLE" : "CenterOfMass";
}

SearchInterval default_search_interval(const BeamSpec &beam) {
    double half = beam.g != 0.0 ? 20.0 * std::abs(beam.g) : 0.2 * beam.w;
    return {-half, half};
}

LikelihoodTable::LikelihoodTable(const CameraSetup &setup, SearchInterval interval, std::size_t nodes,
                                 unsigned threads)
    : interval_(interval), nodes_(nodes), pixels_(setup.grid.size()) {
    if (!(interval.lo <= interval.hi)) {
        throw std::invalid_argument("search interval must satisfy lo <= hi");
    }
    if (nodes < 4) {
        throw std::invalid_argument("likelihood table needs at least 4 nodes");
    }
    spacing_ = (interval.hi - interval.lo) / static_cast<double>(nodes - 1);
    DetectorChannel channel(setup.detector);
    rows_.resize(pixels_ * nodes_);
    parallel_for(nodes_, threads, [&](std::size_t node) {
        BeamSpec beam = setup.beam;
        beam.g = interval_.lo + spacing_ * static_cast<double>(node);
        auto means = pixel_mean_photons(beam, setup.scheme, setup.grid);
        for (std::size_t j = 0; j < pixels_; ++j) {
            auto dist = outcome_probs(means[j], 0.0, channel, setup.policy);
            auto &row = rows_[j * nodes_ + node];
            row.first = dist.first;
            row.log_p.resize(dist.p.size());
            for (std::size_t k = 0; k < dist.p.size(); ++k) {
                row.log_p[k] = dist.p[k] > 0.0 ? std::max(std::log(dist.p[k]), kLogFloor) : kLogFloor;
            }
        }
    });
}

double LikelihoodTable::node_log_prob(std::size_t pixel, std::size_t node, std::int64_t symbol) const {
    const auto &row = rows_[pixel * nodes_ + node];
    auto i = symbol - row.first;
    if (i < 0 || i >= static_cast<std::int64_t>(row.log_p.size())) {
        return kLogFloor;
    }
    return row.log_p[static_cast<std::size_t>(i)];
}

double LikelihoodTable::log_likelihood(const Frame &frame, double g) const {
    if (frame.counts.size() != pixels_) {
        throw std::invalid_argument("frame size does not match the likelihood table");
    }
    if (spacing_ == 0.0) {
        double total = 0.0;
        for (std::size_t j = 0; j < pixels_; ++j) {
            total += node_log_prob(j, 0, frame.counts[j]);
        }
        return total;
    }
    double t = std::clamp((g - interval_.lo) / spacing_, 0.0, static_cast<double>(nodes_ - 1));
    auto i = std::min(static_cast<std::size_t>(t), nodes_ - 2);
    double u = t - static_cast<double>(i);
    double total = 0.0;
    for (std::size_t j = 0; j < pixels_; ++j) {
        auto k = frame.counts[j];
        double p1 = node_log_prob(j, i, k);
        double p2 = node_log_prob(j, i + 1, k);
        double p0 = i > 0 ? node_log_prob(j, i - 1, k) : 2.0 * p1 - p2;
        double p3 = i + 2 < nodes_ ? node_log_prob(j, i + 2, k) : 2.0 * p2 - p1;
        total += catmull_rom(p0, p1, p2, p3, u);
    }
    return total;
}

double exact_log_likelihood(const Frame &frame, const CameraSetup &setup, double g) {
    BeamSpec beam = setup.beam;
    beam.g = g;
    DetectorChannel channel(setup.detector);
    auto means = pixel_mean_photons(beam, setup.scheme, setup.grid);
    double total = 0.0;
    for (std::size_t j = 0; j < means.size(); ++j) {
        auto dist = outcome_probs(means[j], 0.0, channel, setup.policy);
        double p = dist.prob(frame.counts[j]);
        total += p > 0.0 ? std::max(std::log(p), kLogFloor) : kLogFloor;
    }
    return total;
}

MleResult mle_estimate(const Frame &frame, const LikelihoodTable &table, double w) {
    auto [lo, hi] = table.interval();
    MleResult out;
    if (hi == lo) {
        out.estimate = lo;
        out.log_likelihood = table.log_likelihood(frame, lo);
        return out;
    }
    double mid = 0.5 * (lo + hi);
    double step = (hi - lo) / static_cast<double>(kCoarseScan - 1);
    std::vector<double> values(kCoarseScan);
    for (std::size_t i = 0; i < kCoarseScan; ++i) {
        values[i] = table.log_likelihood(frame, lo + step * static_cast<double>(i));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < kCoarseScan; ++i) {
        double x = lo + step * static_cast<double>(i);
        double xb = lo + step * static_cast<double>(best);
        if (values[i] > values[best] || (values[i] == values[best] && std::abs(x - mid) < std::abs(xb - mid))) {
            best = i;
        }
    }
    std::size_t peaks = 0;
    for (std::size_t i = 0; i < kCoarseScan; ++i) {
        bool left = i == 0 || values[i] > values[i - 1];
        bool right = i + 1 == kCoarseScan || values[i] >= values[i + 1];
        peaks += (left && right) ? 1 : 0;
    }
    out.multimodal = peaks > 1;
    if (best == 0 || best + 1 == kCoarseScan) {
        out.bracket_failure = true;
        out.estimate = lo + step * static_cast<double>(best);
        out.log_likelihood = values[best];
        return out;
    }

    const double inv_phi = 0.6180339887498949;
    double a = lo + step * static_cast<double>(best - 1);
    double b = lo + step * static_cast<double>(best + 1);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = table.log_likelihood(frame, c);
    double fd = table.log_likelihood(frame, d);
    double tol = 1e-6 * w;
    while (b - a > tol) {
        if (fc > fd || (fc == fd && std::abs(c - mid) <= std::abs(d - mid))) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = table.log_likelihood(frame, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = table.log_likelihood(frame, d);
        }
    }
    out.estimate = 0.5 * (a + b);
    out.log_likelihood = table.log_likelihood(frame, out.estimate);
    return out;
}

MleResult mle_estimate(const Frame &frame, const CameraSetup &setup, SearchInterval interval) {
    LikelihoodTable table(setup, interval);
    return mle_estimate(frame, table, setup.beam.w);
}

std::optional<double> com_estimate(const Frame &frame, const PixelGrid &grid, const ComCalibration &calibration,
                                   const DetectorChannel &channel) {
    if (frame.counts.size() != grid.size()) {
        throw std::invalid_argument("frame size does not match the camera grid");
    }
    double weight = 0.0;
    double moment = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double v = channel.symbol_value(frame.counts[j]);
        weight += v;
        moment += v * grid.pixel_center(j);
    }
    if (!(weight > 0.0)) {
        return std::nullopt;
    }
    return (moment / weight - calibration.offset) / calibration.scale;
}

double expected_centroid(const CameraSetup &setup, double g) {
    BeamSpec beam = setup.beam;
    beam.g = g;
    DetectorChannel channel(setup.detector);
    auto means = pixel_mean_photons(beam, setup.scheme, setup.grid);
    double weight = 0.0;
    double moment = 0.0;
    for (std::size_t j = 0; j < means.size(); ++j) {
        double e = expected_counts(means[j], channel, setup.policy);
        weight += e;
        moment += e * setup.grid.pixel_center(j);
    }
    if (!(weight > 0.0)) {
        throw std::domain_error("camera records no signal; centroid undefined");
    }
    return moment / weight;
}

ComCalibration calibrate_com(const CameraSetup &setup, double fisher) {
    if (!(fisher > 0.0)) {
        throw std::domain_error("calibration needs positive Fisher information");
    }
    double half = 5.0 / std::sqrt(fisher);
    constexpr int kPoints = 11;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        double g = -half + 2.0 * half * i / (kPoints - 1);
        double c = expected_centroid(setup, g);
        sx += g;
        sy += c;
        sxx += g * g;
        sxy += g * c;
    }
    double n = kPoints;
    ComCalibration out;
    out.scale = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.offset = (sy - out.scale * sx) / n;
    if (!(std::abs(out.scale) > 0.0)) {
        throw std::domain_error("centroid does not respond to the shift");
    }
    return out;
}

EstimatorReport benchmark(EstimatorKind estimator, const CameraSetup &setup, std::size_t n_frames,
                          std::uint64_t seed, const BenchmarkOptions &options) {
    if (n_frames < 100) {
        throw std::invalid_argument("benchmark needs at least 100 frames");
    }
    EstimatorReport report;
    report.estimator = estimator;
    report.n_frames = n_frames;
    report.true_g = setup.beam.g;
    report.fisher = fisher_total(setup.beam, setup.scheme, setup.grid, setup.detector, setup.policy, options.threads).total;
    report.crb = report.fisher > 0.0 ? 1.0 / report.fisher : INFINITY;

    DetectorChannel channel(setup.detector);
    auto means = pixel_mean_photons(setup.beam, setup.scheme, setup.grid);
    std::vector<std::optional<double>> estimates(n_frames);
    std::vector<char> bracket(n_frames, 0);

    if (estimator == EstimatorKind::MaximumLikelihood) {
        auto interval = options.interval.value_or(default_search_interval(setup.beam));
        LikelihoodTable table(setup, interval, options.table_nodes, options.threads);
        parallel_for(n_frames, options.threads, [&](std::size_t i) {
            auto frame = sample_with(means, channel, seed, i);
            auto result = mle_estimate(frame, table, setup.beam.w);
            estimates[i] = result.estimate;
            bracket[i] = result.bracket_failure ? 1 : 0;
        });
    } else {
        auto calibration = calibrate_com(setup, report.fisher);
        parallel_for(n_frames, options.threads, [&](std::size_t i) {
            auto frame = sample_with(means, channel, seed, i);
            estimates[i] = com_estimate(frame, setup.grid, calibration, channel);
        });
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < n_frames; ++i) {
        report.bracket_failures += static_cast<std::size_t>(bracket[i]);
        if (!estimates[i]) {
            ++report.missing;
            continue;
        }
        report.estimates.push_back(*estimates[i]);
        sum += *estimates[i];
    }
    report.n_valid = report.estimates.size();
    if (report.n_valid > 0) {
        report.mean_estimate = sum / static_cast<double>(report.n_valid);
    }
    if (report.n_valid > 1) {
        double ss = 0.0;
        for (double e : report.estimates) {
            double d = e - report.mean_estimate;
            ss += d * d;
        }
        report.variance = ss / static_cast<double>(report.n_valid - 1);
    }
    report.efficiency = report.variance * report.fisher;
    report.reliable = report.bracket_failures * 100 <= n_frames && report.missing * 100 <= n_frames;
    return report;
}

}  // namespace wvasat
