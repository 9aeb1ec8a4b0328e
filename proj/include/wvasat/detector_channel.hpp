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
#include <vector>

#include "wvasat/poisson_window.hpp"

namespace wvasat {

/// What a pixel reports for a given photon number.
enum class OutputMode {
    /// Levels {0, ..., k_max-1}; noise spread over the levels by the
    /// normalized discrete Gaussian, or rounding when sigma == 0.
    Digitized,
    /// No digitization, no noise: the exact response mu(N). Because mu is
    /// strictly increasing this is a relabeling of N.
    ExactResponse,
    /// No digitization, Gaussian noise: a real-valued readout. Evaluated on a
    /// lattice of spacing sigma / readout_oversampling, which integrates the
    /// Gaussian mixture to machine precision.
    ContinuousReadout,
};

struct DetectorConfig {
    int k_max = 256;
    /// Saturation photon number. Empty means linear response mu = k_max N / n_ref.
    std::optional<double> n_sat = 500.0;
    double n_ref = 0.0;
    double sigma = 0.0;  ///< pixel noise standard deviation in count units
    bool digitize = true;
    /// If set, the camera grid handed to the engine must have this many pixels.
    std::optional<std::size_t> pixels;
    int readout_oversampling = 4;

    OutputMode mode() const;
    void validate() const;
};

/// One row p(. | N) of the channel, stored as a band of symbols
/// [first, first + probs.size()). Symbols outside the band have probability
/// below 1e-20 relative to the row.
struct ChannelSlice {
    std::int64_t n = 0;
    double mu = 0.0;
    std::int64_t first = 0;
    std::vector<double> probs;

    double prob(std::int64_t symbol) const;
    /// Length-k_max vector for digitized channels.
    std::vector<double> dense(int k_max) const;
};

class DetectorChannel {
public:
    explicit DetectorChannel(DetectorConfig cfg);

    const DetectorConfig &config() const { return cfg_; }
    OutputMode mode() const { return mode_; }

    /// Mean response mu(N) in count units.
    double mean_response(double photons) const;

    /// Band of normalized weights for response mean `mu`; returns the first
    /// symbol. `buf` is overwritten. Not valid for ExactResponse.
    std::int64_t response_band(double mu, std::vector<double> &buf) const;

    /// Same as response_band(mean_response(photons)) but also handles
    /// ExactResponse, where the single symbol is the photon number itself.
    std::int64_t band(std::int64_t photons, std::vector<double> &buf) const;

    ChannelSlice row(std::int64_t photons) const;
    ChannelSlice row_for_mean(double mu) const;

    /// Count-unit value reported for a symbol.
    double symbol_value(std::int64_t symbol) const;

    /// E[reported value | N].
    double row_mean(std::int64_t photons) const;

    /// Reference band evaluation: every level within 40 sigma, no recurrence.
    /// Used to check the truncated band.
    std::int64_t response_band_reference(double mu, std::vector<double> &buf) const;

private:
    DetectorConfig cfg_;
    OutputMode mode_;
    double lattice_step_ = 1.0;
};

/// mu(N) for `cfg`; throws std::domain_error for negative N.
double mean_response(double photons, const DetectorConfig &cfg);

/// p(. | N) for `cfg`.
ChannelSlice channel_row(std::int64_t photons, const DetectorConfig &cfg);

/// Marginal mean of the reported value for a pixel with mean photon number
/// n_bar_j: sum_N Poisson(N; n_bar_j) E[k | N].
double expected_counts(double n_bar_j, const DetectorConfig &cfg, const TruncationPolicy &policy = {});
double expected_counts(double n_bar_j, const DetectorChannel &channel, const TruncationPolicy &policy = {});

}  // namespace wvasat
