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

#include <cstdint>
#include <vector>

namespace wvasat {

/// Controls how much of the Poisson photon-number distribution is dropped.
struct TruncationPolicy {
    double tail_epsilon = 1e-12;  ///< max discarded probability mass (and Fisher weight)
    double prob_floor = 1e-15;    ///< outcomes below this probability are left out of the FI sum

    void validate() const;
};

/// Contiguous range of photon numbers [lo, hi] kept for one pixel.
///
/// The window grows outward from the mode until both the discarded
/// probability mass and the discarded Fisher weight
/// sum_N p(N) (N - mean)^2 / mean (which totals 1 over all N) are at most
/// tail_epsilon. The second condition matters only for means well below 1,
/// where a single omitted N = 1 term would carry almost all of the
/// information about the mean.
struct PoissonWindow {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    double mean = 0.0;
    double tail_mass = 0.0;
    double tail_fisher_weight = 0.0;
    std::vector<double> pmf;  ///< pmf[i] = P(N = lo + i)

    std::int64_t size() const { return hi - lo + 1; }
    double mass() const;
};

PoissonWindow poisson_window(double mean, const TruncationPolicy &policy);

}  // namespace wvasat
