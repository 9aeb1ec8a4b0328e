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

#include <cmath>
#include <cstdint>

namespace wvasat {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Probability mass of the standard normal distribution on [a, b].
/// Uses erf/erfc branches chosen so the absolute error stays near machine
/// epsilon even when both bounds sit deep in the same tail.
double standard_normal_mass(double a, double b);

/// ln(n!) - ln(sqrt(2 pi n) (n/e)^n), the Stirling series remainder.
double stirling_error(double n);

/// x ln(x/m) + m - x, evaluated without cancellation when x is close to m.
double deviance_term(double x, double m);

/// Natural log of the Poisson probability mass P(N = count | mean).
/// Accurate to a few ulps in relative terms up to means of ~1e8; returns
/// -inf for impossible outcomes (mean == 0 and count > 0).
double log_poisson_pmf(std::int64_t count, double mean);

inline double poisson_pmf(std::int64_t count, double mean) {
    return std::exp(log_poisson_pmf(count, mean));
}

}  // namespace wvasat
