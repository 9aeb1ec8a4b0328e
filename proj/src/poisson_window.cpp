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


#include "wvasat/poisson_window.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wvasat/numeric.hpp"

namespace wvasat {

namespace {

// Terms this small (relative to a total of 1) are treated as exactly zero
// when locating the support of the distribution.
constexpr double kNegligible = 1e-40;

double fisher_weight(double pmf, std::int64_t n, double mean) {
    double d = static_cast<double>(n) - mean;
    return pmf * d * d / mean;
}

}  // namespace

void TruncationPolicy::validate() const {
    if (!(tail_epsilon > 0.0) || tail_epsilon > 1e-6) {
        throw std::domain_error("tail_epsilon must lie in (0, 1e-6]");
    }
    if (!(prob_floor >= 0.0)) {
        throw std::domain_error("prob_floor must be non-negative");
    }
}

double PoissonWindow::mass() const {
    double s = 0.0;
    for (double p : pmf) {
        s += p;
    }
    return s;
}

PoissonWindow poisson_window(double mean, const TruncationPolicy &policy) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::domain_error("Poisson mean must be non-negative and finite");
    }
    PoissonWindow out;
    out.mean = mean;
    if (mean == 0.0) {
        out.pmf = {1.0};
        return out;
    }

    auto mode = static_cast<std::int64_t>(std::floor(mean));

    // Support: every N whose mass or Fisher weight is not negligible.
    std::vector<double> below;  // pmf at mode-1, mode-2, ...
    for (std::int64_t n = mode - 1; n >= 0; --n) {
        double p = std::exp(log_poisson_pmf(n, mean));
        if (static_cast<double>(n) < mean && p < kNegligible && fisher_weight(p, n, mean) < kNegligible) {
            break;
        }
        below.push_back(p);
    }
    std::vector<double> above;  // pmf at mode, mode+1, ...
    for (std::int64_t n = mode;; ++n) {
        double p = std::exp(log_poisson_pmf(n, mean));
        if (static_cast<double>(n) > mean && p < kNegligible && fisher_weight(p, n, mean) < kNegligible) {
            break;
        }
        above.push_back(p);
    }

    std::int64_t support_lo = mode - static_cast<std::int64_t>(below.size());
    std::vector<double> pmf(below.rbegin(), below.rend());
    pmf.insert(pmf.end(), above.begin(), above.end());
    auto count = static_cast<std::int64_t>(pmf.size());

    // Tail sums accumulated from the far ends inward, smallest terms first.
    // lower_mass[i] = sum of pmf[0..i), upper_mass[i] = sum of pmf(i..count).
    std::vector<double> lower_mass(count + 1, 0.0), lower_fisher(count + 1, 0.0);
    for (std::int64_t i = 0; i < count; ++i) {
        lower_mass[i + 1] = lower_mass[i] + pmf[i];
        lower_fisher[i + 1] = lower_fisher[i] + fisher_weight(pmf[i], support_lo + i, mean);
    }
    std::vector<double> upper_mass(count + 1, 0.0), upper_fisher(count + 1, 0.0);
    for (std::int64_t i = count - 1; i >= 0; --i) {
        upper_mass[i] = upper_mass[i + 1] + (i + 1 < count ? pmf[i + 1] : 0.0);
        upper_fisher[i] = upper_fisher[i + 1] + (i + 1 < count ? fisher_weight(pmf[i + 1], support_lo + i + 1, mean) : 0.0);
    }

    std::int64_t lo = mode - support_lo;
    std::int64_t hi = lo;
    double eps = policy.tail_epsilon;
    while (true) {
        double low_tail = lower_mass[lo] + lower_fisher[lo];
        double high_tail = upper_mass[hi] + upper_fisher[hi];
        if (lower_mass[lo] + upper_mass[hi] <= eps && lower_fisher[lo] + upper_fisher[hi] <= eps) {
            break;
        }
        bool can_lower = lo > 0;
        bool can_raise = hi + 1 < count;
        if (!can_lower && !can_raise) {
            break;
        }
        if (can_lower && (!can_raise || low_tail > high_tail)) {
            --lo;
        } else {
            ++hi;
        }
    }

    out.lo = support_lo + lo;
    out.hi = support_lo + hi;
    out.tail_mass = lower_mass[lo] + upper_mass[hi];
    out.tail_fisher_weight = lower_fisher[lo] + upper_fisher[hi];
    out.pmf.assign(pmf.begin() + lo, pmf.begin() + hi + 1);
    return out;
}

}  // namespace wvasat
