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


#include "wvasat/detector_channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wvasat {

namespace {

// Gaussian weights further than this many sigma from the mean are < 1e-21
// of the peak and are dropped from the band.
constexpr double kBandSigmas = 10.0;
// The multiplicative recurrence is re-anchored with an exact exp() this often.
constexpr int kResyncEvery = 32;

}  // namespace

OutputMode DetectorConfig::mode() const {
    if (digitize) {
        return OutputMode::Digitized;
    }
    return sigma > 0.0 ? OutputMode::ContinuousReadout : OutputMode::ExactResponse;
}

void DetectorConfig::validate() const {
    if (k_max < 2) {
        throw std::domain_error("k_max must be at least 2");
    }
    if (n_sat && !(*n_sat > 0.0 && std::isfinite(*n_sat))) {
        throw std::domain_error("N_sat must be positive");
    }
    if (!n_sat && !(n_ref > 0.0 && std::isfinite(n_ref))) {
        throw std::domain_error("linear response needs a positive n_ref");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::domain_error("sigma must be non-negative");
    }
    if (readout_oversampling < 1) {
        throw std::domain_error("readout_oversampling must be at least 1");
    }
    if (pixels && *pixels == 0) {
        throw std::domain_error("pixel count must be positive");
    }
}

double ChannelSlice::prob(std::int64_t symbol) const {
    auto i = symbol - first;
    if (i < 0 || i >= static_cast<std::int64_t>(probs.size())) {
        return 0.0;
    }
    return probs[static_cast<std::size_t>(i)];
}

std::vector<double> ChannelSlice::dense(int k_max) const {
    std::vector<double> out(static_cast<std::size_t>(k_max), 0.0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        auto k = first + static_cast<std::int64_t>(i);
        if (k >= 0 && k < k_max) {
            out[static_cast<std::size_t>(k)] = probs[i];
        }
    }
    return out;
}

DetectorChannel::DetectorChannel(DetectorConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    mode_ = cfg_.mode();
    if (mode_ == OutputMode::ContinuousReadout) {
        lattice_step_ = cfg_.sigma / cfg_.readout_oversampling;
    }
}

double DetectorChannel::mean_response(double photons) const {
    if (!(photons >= 0.0)) {
        throw std::domain_error("photon number must be non-negative");
    }
    if (cfg_.n_sat) {
        return -static_cast<double>(cfg_.k_max) * std::expm1(-photons / *cfg_.n_sat);
    }
    return static_cast<double>(cfg_.k_max) * photons / cfg_.n_ref;
}

std::int64_t DetectorChannel::response_band(double mu, std::vector<double> &buf) const {
    if (mode_ == OutputMode::ExactResponse) {
        throw std::logic_error("exact-response channel is indexed by photon number");
    }
    const bool bounded = mode_ == OutputMode::Digitized;
    const std::int64_t top = cfg_.k_max - 1;
    if (cfg_.sigma == 0.0) {
        auto k = std::clamp<std::int64_t>(std::llround(mu), 0, top);
        buf.assign(1, 1.0);
        return k;
    }

    const double h = lattice_step_;
    const double sigma = cfg_.sigma;
    std::int64_t k0 = std::llround(mu / h);
    double center = mu;
    if (bounded) {
        k0 = std::clamp<std::int64_t>(k0, 0, top);
        center = std::clamp(mu, 0.0, static_cast<double>(top));
    }
    auto first = static_cast<std::int64_t>(std::ceil((center - kBandSigmas * sigma) / h));
    auto last = static_cast<std::int64_t>(std::floor((center + kBandSigmas * sigma) / h));
    if (bounded) {
        first = std::max<std::int64_t>(first, 0);
        last = std::min(last, top);
    }
    first = std::min(first, k0);
    last = std::max(last, k0);

    buf.assign(static_cast<std::size_t>(last - first + 1), 0.0);
    const double delta = h / sigma;
    const double q = std::exp(-delta * delta);
    const double u0 = (static_cast<double>(k0) * h - mu) / sigma;
    auto exact = [&](std::int64_t k) {
        double u = (static_cast<double>(k) * h - mu) / sigma;
        return std::exp(-0.5 * (u * u - u0 * u0));
    };
    auto at = [&](std::int64_t k) -> double & { return buf[static_cast<std::size_t>(k - first)]; };

    at(k0) = 1.0;
    double g = 1.0;
    double r = std::exp(-u0 * delta - 0.5 * delta * delta);
    for (std::int64_t k = k0 + 1, step = 1; k <= last; ++k, ++step) {
        if (step % kResyncEvery == 0) {
            g = exact(k);
            double u = (static_cast<double>(k) * h - mu) / sigma;
            r = std::exp(-u * delta - 0.5 * delta * delta);
        } else {
            g *= r;
            r *= q;
        }
        at(k) = g;
    }
    g = 1.0;
    r = std::exp(u0 * delta - 0.5 * delta * delta);
    for (std::int64_t k = k0 - 1, step = 1; k >= first; --k, ++step) {
        if (step % kResyncEvery == 0) {
            g = exact(k);
            double u = (static_cast<double>(k) * h - mu) / sigma;
            r = std::exp(u * delta - 0.5 * delta * delta);
        } else {
            g *= r;
            r *= q;
        }
        at(k) = g;
    }

    double total = 0.0;
    for (double v : buf) {
        total += v;
    }
    for (double &v : buf) {
        v /= total;
    }
    return first;
}

std::int64_t DetectorChannel::response_band_reference(double mu, std::vector<double> &buf) const {
    if (mode_ == OutputMode::ExactResponse || cfg_.sigma == 0.0) {
        return response_band(mu, buf);
    }
    const double h = lattice_step_;
    std::int64_t first;
    std::int64_t last;
    if (mode_ == OutputMode::Digitized) {
        first = 0;
        last = cfg_.k_max - 1;
    } else {
        first = static_cast<std::int64_t>(std::floor((mu - 40.0 * cfg_.sigma) / h));
        last = static_cast<std::int64_t>(std::ceil((mu + 40.0 * cfg_.sigma) / h));
    }
    // Exponents taken relative to the largest weight so nothing underflows to
    // an all-zero row.
    double best = -INFINITY;
    for (auto k = first; k <= last; ++k) {
        double u = (static_cast<double>(k) * h - mu) / cfg_.sigma;
        best = std::max(best, -0.5 * u * u);
    }
    buf.assign(static_cast<std::size_t>(last - first + 1), 0.0);
    double total = 0.0;
    for (auto k = first; k <= last; ++k) {
        double u = (static_cast<double>(k) * h - mu) / cfg_.sigma;
        double v = std::exp(-0.5 * u * u - best);
        buf[static_cast<std::size_t>(k - first)] = v;
        total += v;
    }
    for (double &v : buf) {
        v /= total;
    }
    return first;
}

std::int64_t DetectorChannel::band(std::int64_t photons, std::vector<double> &buf) const {
    if (mode_ == OutputMode::ExactResponse) {
        buf.assign(1, 1.0);
        return photons;
    }
    return response_band(mean_response(static_cast<double>(photons)), buf);
}

ChannelSlice DetectorChannel::row(std::int64_t photons) const {
    ChannelSlice out;
    out.n = photons;
    out.mu = mean_response(static_cast<double>(photons));
    out.first = band(photons, out.probs);
    return out;
}

ChannelSlice DetectorChannel::row_for_mean(double mu) const {
    ChannelSlice out;
    out.n = -1;
    out.mu = mu;
    out.first = response_band(mu, out.probs);
    return out;
}

double DetectorChannel::symbol_value(std::int64_t symbol) const {
    switch (mode_) {
        case OutputMode::Digitized:
            return static_cast<double>(symbol);
        case OutputMode::ExactResponse:
            return mean_response(static_cast<double>(symbol));
        case OutputMode::ContinuousReadout:
            return static_cast<double>(symbol) * lattice_step_;
    }
    return 0.0;
}

double DetectorChannel::row_mean(std::int64_t photons) const {
    if (mode_ == OutputMode::ExactResponse) {
        return mean_response(static_cast<double>(photons));
    }
    std::vector<double> buf;
    auto first = band(photons, buf);
    double m = 0.0;
    for (std::size_t i = 0; i < buf.size(); ++i) {
        m += symbol_value(first + static_cast<std::int64_t>(i)) * buf[i];
    }
    return m;
}

double mean_response(double photons, const DetectorConfig &cfg) {
    return DetectorChannel(cfg).mean_response(photons);
}

ChannelSlice channel_row(std::int64_t photons, const DetectorConfig &cfg) {
    if (photons < 0) {
        throw std::domain_error("photon number must be non-negative");
    }
    return DetectorChannel(cfg).row(photons);
}

double expected_counts(double n_bar_j, const DetectorChannel &channel, const TruncationPolicy &policy) {
    auto window = poisson_window(n_bar_j, policy);
    double e = 0.0;
    for (std::int64_t i = 0; i < window.size(); ++i) {
        e += window.pmf[static_cast<std::size_t>(i)] * channel.row_mean(window.lo + i);
    }
    return e;
}

double expected_counts(double n_bar_j, const DetectorConfig &cfg, const TruncationPolicy &policy) {
    return expected_counts(n_bar_j, DetectorChannel(cfg), policy);
}

}  // namespace wvasat
