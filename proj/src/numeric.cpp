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


#include "wvasat/numeric.hpp"

#include <cmath>
#include <limits>

namespace wvasat {

double standard_normal_mass(double a, double b) {
    if (!(a < b)) {
        return 0.0;
    }
    if (a >= 0.0) {
        return 0.5 * (std::erfc(a / kSqrt2) - std::erfc(b / kSqrt2));
    }
    if (b <= 0.0) {
        return 0.5 * (std::erfc(-b / kSqrt2) - std::erfc(-a / kSqrt2));
    }
    return 1.0 - 0.5 * std::erfc(-a / kSqrt2) - 0.5 * std::erfc(b / kSqrt2);
}

double stirling_error(double n) {
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    if (n <= 15.0) {
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * kPi);
    }
    double nn = n * n;
    if (n > 500.0) {
        return (s0 - s1 / nn) / n;
    }
    if (n > 80.0) {
        return (s0 - (s1 - s2 / nn) / nn) / n;
    }
    if (n > 35.0) {
        return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    }
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

double deviance_term(double x, double m) {
    if (std::abs(x - m) < 0.1 * (x + m)) {
        double v = (x - m) / (x + m);
        double s = (x - m) * v;
        double ej = 2.0 * x * v;
        double v2 = v * v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v2;
            double next = s + ej / (2 * j + 1);
            if (next == s) {
                return next;
            }
            s = next;
        }
        return s;
    }
    return x * std::log(x / m) + m - x;
}

double log_poisson_pmf(std::int64_t count, double mean) {
    if (count < 0) {
        return -std::numeric_limits<double>::infinity();
    }
    if (mean == 0.0) {
        return count == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    if (count == 0) {
        return -mean;
    }
    double x = static_cast<double>(count);
    if (count <= 15) {
        return x * std::log(mean) - mean - std::lgamma(x + 1.0);
    }
    return -stirling_error(x) - deviance_term(x, mean) - 0.5 * std::log(2.0 * kPi * x);
}

}  // namespace wvasat
