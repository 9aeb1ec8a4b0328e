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


#include "wvasat/fisher_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wvasat/parallel.hpp"

namespace wvasat {

namespace {

// Marginal outcome distribution of one pixel and its derivatives with respect
// to the pixel's mean photon number m:
//   p[k]      = sum_N P(N; m) p(k|N)
//   dp_dm[k]  = sum_N P(N; m) t_N p(k|N),    t_N = (N - m) / m
//   bound[k]  = sum_N P(N; m) t_N^2 p(k|N)   (dp_dm[k]^2 / p[k] <= bound[k])
struct Marginal {
    std::int64_t first = 0;
    std::vector<double> p;
    std::vector<double> dp_dm;
    std::vector<double> bound;
    PoissonWindow window;
};

void marginalize(double mean, const DetectorChannel &channel, const TruncationPolicy &policy, Marginal &out) {
    double m = std::max(mean, kMinPixelMean);
    out.window = poisson_window(m, policy);
    const auto &window = out.window;

    thread_local std::vector<double> band;
    std::int64_t sym_lo = channel.band(window.lo, band);
    std::int64_t sym_hi = sym_lo + static_cast<std::int64_t>(band.size()) - 1;
    std::int64_t f = channel.band(window.hi, band);
    sym_lo = std::min(sym_lo, f);
    sym_hi = std::max(sym_hi, f + static_cast<std::int64_t>(band.size()) - 1);

    auto width = static_cast<std::size_t>(sym_hi - sym_lo + 1);
    out.first = sym_lo;
    out.p.assign(width, 0.0);
    out.dp_dm.assign(width, 0.0);
    out.bound.assign(width, 0.0);

    for (std::int64_t i = 0; i < window.size(); ++i) {
        std::int64_t n = window.lo + i;
        double w = window.pmf[static_cast<std::size_t>(i)];
        if (w == 0.0) {
            continue;
        }
        double t = (static_cast<double>(n) - m) / m;
        double wt = w * t;
        double wtt = wt * t;
        std::int64_t first = channel.band(n, band);
        if (first < sym_lo || first + static_cast<std::int64_t>(band.size()) - 1 > sym_hi) {
            throw std::logic_error("channel band is not monotone in photon number");
        }
        double *p = out.p.data() + (first - sym_lo);
        double *d = out.dp_dm.data() + (first - sym_lo);
        double *e = out.bound.data() + (first - sym_lo);
        for (std::size_t k = 0; k < band.size(); ++k) {
            double c = band[k];
            p[k] += w * c;
            d[k] += wt * c;
            e[k] += wtt * c;
        }
    }
}

}  // namespace

double OutcomeDistribution::prob(std::int64_t symbol) const {
    auto i = symbol - first;
    if (i < 0 || i >= static_cast<std::int64_t>(p.size())) {
        return 0.0;
    }
    return p[static_cast<std::size_t>(i)];
}

double OutcomeDistribution::deriv(std::int64_t symbol) const {
    auto i = symbol - first;
    if (i < 0 || i >= static_cast<std::int64_t>(dp_dg.size())) {
        return 0.0;
    }
    return dp_dg[static_cast<std::size_t>(i)];
}

double FIResult::max_tail_mass() const {
    double m = 0.0;
    for (const auto &d : diagnostics) {
        m = std::max(m, d.tail_mass);
    }
    return m;
}

double FIResult::skipped_bound() const {
    double s = 0.0;
    for (const auto &d : diagnostics) {
        s += d.skipped_bound;
    }
    return s;
}

OutcomeDistribution outcome_probs(double n_bar_j, double dn_bar_j, const DetectorChannel &channel,
                                  const TruncationPolicy &policy) {
    if (!(n_bar_j >= 0.0)) {
        throw std::domain_error("pixel mean photon number must be non-negative");
    }
    Marginal marginal;
    marginalize(n_bar_j, channel, policy, marginal);
    OutcomeDistribution out;
    out.first = marginal.first;
    out.p = std::move(marginal.p);
    out.dp_dg = std::move(marginal.dp_dm);
    for (double &d : out.dp_dg) {
        d *= dn_bar_j;
    }
    out.window = std::move(marginal.window);
    return out;
}

PixelFisher fisher_per_pixel(double n_bar_j, double dn_bar_j, const DetectorChannel &channel,
                             const TruncationPolicy &policy) {
    if (!(n_bar_j >= 0.0)) {
        throw std::domain_error("pixel mean photon number must be non-negative");
    }
    thread_local Marginal marginal;
    marginalize(n_bar_j, channel, policy, marginal);

    PixelFisher out;
    auto &diag = out.diagnostics;
    diag.n_lo = marginal.window.lo;
    diag.n_hi = marginal.window.hi;
    diag.tail_mass = marginal.window.tail_mass;
    diag.tail_fisher_weight = marginal.window.tail_fisher_weight;

    double info = 0.0;
    double skipped = 0.0;
    for (std::size_t k = 0; k < marginal.p.size(); ++k) {
        double p = marginal.p[k];
        double d = marginal.dp_dm[k];
        if (p < policy.prob_floor || p == 0.0) {
            if (marginal.bound[k] > 0.0) {
                ++diag.skipped_terms;
                skipped += p > 0.0 ? std::min(d * d / p, marginal.bound[k]) : marginal.bound[k];
            }
            continue;
        }
        info += d * d / p;
    }
    double scale = dn_bar_j * dn_bar_j;
    out.fisher = scale * info;
    diag.skipped_bound = scale * skipped;
    return out;
}

FIResult fisher_total(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid,
                      const DetectorConfig &cfg, const TruncationPolicy &policy, unsigned threads) {
    if (cfg.pixels && *cfg.pixels != grid.size()) {
        throw std::invalid_argument("detector pixel count does not match the camera grid");
    }
    policy.validate();
    DetectorChannel channel(cfg);
    auto means = pixel_mean_photons(beam, scheme, grid);
    auto derivs = pixel_mean_photons_deriv(beam, scheme, grid);

    FIResult out;
    out.per_pixel.assign(grid.size(), 0.0);
    out.diagnostics.assign(grid.size(), {});
    parallel_for(grid.size(), threads, [&](std::size_t j) {
        auto pixel = fisher_per_pixel(means[j], derivs[j], channel, policy);
        out.per_pixel[j] = pixel.fisher;
        out.diagnostics[j] = pixel.diagnostics;
    });
    for (double f : out.per_pixel) {
        out.total += f;
    }
    return out;
}

double poisson_fisher_total(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid) {
    auto means = pixel_mean_photons(beam, scheme, grid);
    auto derivs = pixel_mean_photons_deriv(beam, scheme, grid);
    double total = 0.0;
    for (std::size_t j = 0; j < means.size(); ++j) {
        if (means[j] > 0.0) {
            total += derivs[j] * derivs[j] / means[j];
        }
    }
    return total;
}

FdCheck fisher_fd_check(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid,
                        const DetectorConfig &cfg, const TruncationPolicy &policy, double step, unsigned threads) {
    if (!(step > 0.0)) {
        throw std::domain_error("finite-difference step must be positive");
    }
    auto analytic = fisher_total(beam, scheme, grid, cfg, policy, threads);
    DetectorChannel channel(cfg);
    BeamSpec plus = beam;
    plus.g += step;
    BeamSpec minus = beam;
    minus.g -= step;
    auto means = pixel_mean_photons(beam, scheme, grid);
    auto means_plus = pixel_mean_photons(plus, scheme, grid);
    auto means_minus = pixel_mean_photons(minus, scheme, grid);

    std::vector<double> fd(grid.size(), 0.0);
    parallel_for(grid.size(), threads, [&](std::size_t j) {
        auto center = outcome_probs(means[j], 0.0, channel, policy);
        auto hi = outcome_probs(means_plus[j], 0.0, channel, policy);
        auto lo = outcome_probs(means_minus[j], 0.0, channel, policy);
        // A probability near 1 cannot be differenced at this step; its
        // derivative is taken as minus the sum of all the others.
        std::int64_t first = std::min({center.first, hi.first, lo.first});
        std::int64_t last = std::max({center.last(), hi.last(), lo.last()});
        std::int64_t dominant = center.first;
        for (std::int64_t k = center.first; k <= center.last(); ++k) {
            if (center.prob(k) > center.prob(dominant)) {
                dominant = k;
            }
        }
        double info = 0.0;
        double rest = 0.0;
        for (std::int64_t k = first; k <= last; ++k) {
            if (k == dominant) {
                continue;
            }
            double d = (hi.prob(k) - lo.prob(k)) / (2.0 * step);
            rest += d;
            double p = center.prob(k);
            if (p < policy.prob_floor || p == 0.0) {
                continue;
            }
            info += d * d / p;
        }
        double p_dom = center.prob(dominant);
        if (p_dom >= policy.prob_floor && p_dom > 0.0) {
            info += rest * rest / p_dom;
        }
        fd[j] = info;
    });

    FdCheck out;
    out.analytic_total = analytic.total;
    for (double f : fd) {
        out.fd_total += f;
    }
    if (analytic.total > 0.0) {
        out.total_deviation = std::abs(out.fd_total - analytic.total) / analytic.total;
        for (std::size_t j = 0; j < fd.size(); ++j) {
            double ref = std::max(analytic.per_pixel[j], 1e-9 * analytic.total);
            out.max_pixel_deviation = std::max(out.max_pixel_deviation, std::abs(fd[j] - analytic.per_pixel[j]) / ref);
        }
    } else if (out.fd_total > 0.0) {
        out.total_deviation = 1.0;
    }
    out.max_deviation = std::max(out.total_deviation, out.max_pixel_deviation);
    out.flagged = out.max_deviation > 0.1;
    double rel = std::numeric_limits<double>::epsilon() / step;
    out.resolution = static_cast<double>(grid.size()) * rel * rel;
    out.resolvable = analytic.total >= 1e8 * out.resolution;
    return out;
}

}  // namespace wvasat
