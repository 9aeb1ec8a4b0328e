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
#include <vector>

#include "wvasat/beam_model.hpp"
#include "wvasat/detector_channel.hpp"
#include "wvasat/poisson_window.hpp"

namespace wvasat {

/// p(k) and dp(k)/dg for one pixel over the symbols [first, first + p.size()).
struct OutcomeDistribution {
    std::int64_t first = 0;
    std::vector<double> p;
    std::vector<double> dp_dg;
    PoissonWindow window;

    double prob(std::int64_t symbol) const;
    double deriv(std::int64_t symbol) const;
    std::int64_t last() const { return first + static_cast<std::int64_t>(p.size()) - 1; }
};

struct PixelDiagnostics {
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
    double tail_mass = 0.0;
    double tail_fisher_weight = 0.0;
    std::size_t skipped_terms = 0;
    /// FI carried by the outcomes skipped under prob_floor: each term is
    /// d^2/p capped by its Cauchy-Schwarz bound sum_N P(N) t_N^2 p(k|N).
    double skipped_bound = 0.0;
};

struct PixelFisher {
    double fisher = 0.0;
    PixelDiagnostics diagnostics;
};

struct FIResult {
    std::vector<double> per_pixel;
    double total = 0.0;
    std::vector<PixelDiagnostics> diagnostics;

    double max_tail_mass() const;
    double skipped_bound() const;
};

/// Smallest mean photon number the engine works with; smaller means are
/// clamped here to keep (N - mean) / mean finite.
inline constexpr double kMinPixelMean = 1e-300;

OutcomeDistribution outcome_probs(double n_bar_j, double dn_bar_j, const DetectorChannel &channel,
                                  const TruncationPolicy &policy = {});

PixelFisher fisher_per_pixel(double n_bar_j, double dn_bar_j, const DetectorChannel &channel,
                             const TruncationPolicy &policy = {});

/// Per-pixel FI summed over the camera. Pixels are independent and may be
/// evaluated on `threads` workers; the sum is always taken in pixel order.
/// Throws std::invalid_argument if cfg.pixels is set and differs from the grid.
FIResult fisher_total(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid,
                      const DetectorConfig &cfg, const TruncationPolicy &policy = {}, unsigned threads = 1);

/// FI of ideal photon counting (no channel): sum_j (dn_j/dg)^2 / n_j.
double poisson_fisher_total(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid);

struct FdCheck {
    double analytic_total = 0.0;
    double fd_total = 0.0;
    double total_deviation = 0.0;      ///< |fd - analytic| / analytic
    double max_pixel_deviation = 0.0;  ///< per pixel, relative to max(F_j, 1e-9 total)
    double max_deviation = 0.0;
    bool flagged = false;  ///< deviation above 10%: step too coarse for g
    /// Round-off floor of the central differences, M (eps / step)^2. Totals
    /// below 1e8 times this cannot be checked in double precision.
    double resolution = 0.0;
    bool resolvable = true;
};

/// Recomputes the FI with central differences of p(k | g +/- step) in place
/// of the analytic derivatives and compares.
FdCheck fisher_fd_check(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid,
                        const DetectorConfig &cfg, const TruncationPolicy &policy, double step,
                        unsigned threads = 1);

}  // namespace wvasat
