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

// Direct enumeration of the camera model in long double, written without the
// library so tests can compare against it:
//   pixel means from the Gaussian CDF, Poisson photon numbers summed over a
//   fixed range, the channel row built level by level, and d/dm of the
//   Poisson pmf through P(N-1) - P(N).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace brute {

struct Camera {
    std::size_t pixels = 3;
    double x_min = -1.5;
    double x_max = 1.5;
    double w = 1.0;
    double n_bar = 3.0;
    double g = 0.1;
    double a_w = 1.0;
    double p_ps = 1.0;
    int k_max = 4;
    std::optional<double> n_sat = 2.0;
    double n_ref = 0.0;
    double sigma = 1.0;
};

inline long double phi_cdf(long double x) { return 0.5L * std::erfc(-x / std::sqrt(2.0L)); }

inline long double phi_pdf(long double x) {
    return std::exp(-0.5L * x * x) / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
}

inline long double edge(const Camera &c, std::size_t j) {
    return c.x_min + (static_cast<long double>(c.x_max) - c.x_min) * static_cast<long double>(j) /
                         static_cast<long double>(c.pixels);
}

inline long double pixel_mean(const Camera &c, std::size_t j) {
    long double s = static_cast<long double>(c.a_w) * c.g;
    long double a = (edge(c, j) - s) / c.w;
    long double b = (edge(c, j + 1) - s) / c.w;
    return static_cast<long double>(c.n_bar) * c.p_ps * (phi_cdf(b) - phi_cdf(a));
}

inline long double pixel_mean_deriv(const Camera &c, std::size_t j) {
    long double s = static_cast<long double>(c.a_w) * c.g;
    long double a = (edge(c, j) - s) / c.w;
    long double b = (edge(c, j + 1) - s) / c.w;
    return static_cast<long double>(c.n_bar) * c.p_ps * c.a_w / c.w * (phi_pdf(a) - phi_pdf(b));
}

inline long double poisson(long n, long double m) {
    if (n < 0) {
        return 0.0L;
    }
    if (m == 0.0L) {
        return n == 0 ? 1.0L : 0.0L;
    }
    return std::exp(static_cast<long double>(n) * std::log(m) - m - std::lgamma(static_cast<long double>(n) + 1.0L));
}

inline long double response(const Camera &c, long n) {
    if (c.n_sat) {
        return c.k_max * (1.0L - std::exp(-static_cast<long double>(n) / *c.n_sat));
    }
    return c.k_max * static_cast<long double>(n) / c.n_ref;
}

inline std::vector<long double> channel(const Camera &c, long n) {
    std::vector<long double> row(static_cast<std::size_t>(c.k_max), 0.0L);
    long double mu = response(c, n);
    if (c.sigma == 0.0) {
        long k = std::lround(static_cast<double>(mu));
        k = std::max(0L, std::min(k, static_cast<long>(c.k_max) - 1));
        row[static_cast<std::size_t>(k)] = 1.0L;
        return row;
    }
    long double z = 0.0L;
    for (int k = 0; k < c.k_max; ++k) {
        long double d = (k - mu) / c.sigma;
        row[static_cast<std::size_t>(k)] = std::exp(-0.5L * d * d);
        z += row[static_cast<std::size_t>(k)];
    }
    for (auto &v : row) {
        v /= z;
    }
    return row;
}

struct Pixel {
    long double mean = 0.0L;
    long double dmean = 0.0L;
    std::vector<long double> p;
    std::vector<long double> dp_dg;
    long double fisher = 0.0L;
};

/// Everything for pixel j, summing N over [0, n_max].
inline Pixel pixel(const Camera &c, std::size_t j, long n_max) {
    Pixel out;
    out.mean = pixel_mean(c, j);
    out.dmean = pixel_mean_deriv(c, j);
    out.p.assign(static_cast<std::size_t>(c.k_max), 0.0L);
    out.dp_dg.assign(static_cast<std::size_t>(c.k_max), 0.0L);
    for (long n = 0; n <= n_max; ++n) {
        long double pn = poisson(n, out.mean);
        long double dpn = poisson(n - 1, out.mean) - pn;
        auto row = channel(c, n);
        for (int k = 0; k < c.k_max; ++k) {
            out.p[static_cast<std::size_t>(k)] += pn * row[static_cast<std::size_t>(k)];
            out.dp_dg[static_cast<std::size_t>(k)] += dpn * out.dmean * row[static_cast<std::size_t>(k)];
        }
    }
    for (int k = 0; k < c.k_max; ++k) {
        long double p = out.p[static_cast<std::size_t>(k)];
        if (p > 0.0L) {
            long double d = out.dp_dg[static_cast<std::size_t>(k)];
            out.fisher += d * d / p;
        }
    }
    return out;
}

}  // namespace brute
