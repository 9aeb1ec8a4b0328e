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


#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "wvasat/beam_model.hpp"

namespace {

using namespace wvasat;

double sum(const std::vector<double> &v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(GaussianDensity, PeakValue) { EXPECT_NEAR(gaussian_density(0.0, 1.0), 0.3989422804, 5e-11); }

TEST(GaussianDensity, SymmetricAndVanishingTails) {
    for (double x : {0.1, 0.7, 2.5, 9.0}) {
        EXPECT_EQ(gaussian_density(x, 1.3), gaussian_density(-x, 1.3));
    }
    EXPECT_LT(gaussian_density(60.0, 1.0), 1e-300);
    EXPECT_EQ(gaussian_density(1e200, 1.0), 0.0);
}

TEST(GaussianDensity, RejectsNonPositiveWidth) {
    EXPECT_THROW(gaussian_density(0.0, 0.0), std::domain_error);
    EXPECT_THROW(gaussian_density(0.0, -1.0), std::domain_error);
}

TEST(GaussianDensity, IntegratesToOne) {
    // composite Simpson over +/- 10 w
    double w = 0.8;
    int n = 20000;
    double a = -10 * w, b = 10 * w, h = (b - a) / n;
    double s = gaussian_density(a, w) + gaussian_density(b, w);
    for (int i = 1; i < n; ++i) {
        s += (i % 2 ? 4.0 : 2.0) * gaussian_density(a + i * h, w);
    }
    EXPECT_NEAR(s * h / 3.0, 1.0, 1e-12);
}

TEST(PixelGrid, EdgesAndWidths) {
    PixelGrid grid(8, -2.0, 2.0);
    EXPECT_EQ(grid.size(), 8u);
    EXPECT_EQ(grid.edges().front(), -2.0);
    EXPECT_EQ(grid.edges().back(), 2.0);
    EXPECT_DOUBLE_EQ(grid.bin_width(), 0.5);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        EXPECT_NEAR(grid.upper_edge(j) - grid.lower_edge(j), 0.5, 1e-15);
    }
    EXPECT_THROW(PixelGrid(0, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(PixelGrid(4, 1.0, 1.0), std::invalid_argument);
}

TEST(PixelGrid, CenteredSpan) {
    auto grid = PixelGrid::centered(100, 0.8, 2.5, 0.1);
    EXPECT_DOUBLE_EQ(grid.x_min(), 0.1 - 2.0);
    EXPECT_DOUBLE_EQ(grid.x_max(), 0.1 + 2.0);
}

TEST(PixelGrid, SliceKeepsEdges) {
    PixelGrid grid(10, -1.0, 1.0);
    auto s = grid.slice(3, 7);
    ASSERT_EQ(s.size(), 4u);
    for (std::size_t j = 0; j <= 4; ++j) {
        EXPECT_EQ(s.edges()[j], grid.edges()[j + 3]);
    }
    EXPECT_THROW(grid.slice(5, 11), std::out_of_range);
}

TEST(Scheme, PostSelectionProbability) {
    EXPECT_EQ(MeasurementScheme::weak_value(1.0).p_ps, 0.5);
    EXPECT_NEAR(MeasurementScheme::weak_value(3.2).p_ps, 1.0 / 11.24, 1e-16);
    EXPECT_NEAR(MeasurementScheme::weak_value(3.2).p_ps, 0.088968, 1e-6);
    EXPECT_LT(MeasurementScheme::weak_value(1e8).p_ps, 1e-15);
    EXPECT_THROW(MeasurementScheme::weak_value(0.5), std::domain_error);
    EXPECT_THROW(MeasurementScheme::weak_value(-0.99), std::domain_error);
    EXPECT_NO_THROW(MeasurementScheme::weak_value(-2.0));
}

// Pre-selection (|H> + |V>)/sqrt(2), observable diag(+1, -1), real
// post-selection f = (cos t, -sin t). Scan t until <f|A|i>/<f|i> = A_w and
// read off p_ps = |<f|i>|^2.
double post_selection_by_angle(double a_w) {
    auto weak = [](double t) {
        double fi = (std::cos(t) - std::sin(t)) / std::sqrt(2.0);
        double fai = (std::cos(t) + std::sin(t)) / std::sqrt(2.0);
        return fai / fi;
    };
    // weak(t) rises from 1 at t = 0 towards +inf at t = pi/4
    double lo = 0.0, hi = std::atan(1.0);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (weak(mid) < a_w ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    double fi = (std::cos(t) - std::sin(t)) / std::sqrt(2.0);
    double fai = (std::cos(t) + std::sin(t)) / std::sqrt(2.0);
    EXPECT_NEAR(fi * fi + fai * fai, 1.0, 1e-14);
    return fi * fi;
}

TEST(Scheme, PostSelectionMatchesStateGeometry) {
    for (double a : {1.0, 1.2, 1.8, 2.4, 3.2, 3.9, 10.0}) {
        EXPECT_NEAR(MeasurementScheme::weak_value(a).p_ps, post_selection_by_angle(a), 1e-12) << a;
    }
}

TEST(Scheme, ValidateInvariants) {
    EXPECT_NO_THROW(MeasurementScheme::conventional().validate());
    MeasurementScheme bad = MeasurementScheme::weak_value(2.0);
    bad.p_ps = 0.3;
    EXPECT_THROW(bad.validate(), std::domain_error);
    MeasurementScheme cm = MeasurementScheme::conventional();
    cm.a_w = 2.0;
    EXPECT_THROW(cm.validate(), std::domain_error);
}

TEST(Scheme, WvaIdentityHoldsOnRandomWeakValues) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int i = 0; i < 500; ++i) {
        double a = 1.0 + u(rng) * u(rng);
        if (i % 2) {
            a = -a;
        }
        auto s = MeasurementScheme::weak_value(a);
        EXPECT_NEAR(s.p_ps * (1.0 + a * a), 1.0, 1e-15);
        EXPECT_NO_THROW(s.validate());
    }
}

TEST(PixelMeans, ZeroBrightness) {
    BeamSpec beam{1.0, 0.0, 0.01, 0.0};
    for (double m : pixel_mean_photons(beam, MeasurementScheme::conventional(), PixelGrid::centered(50, 1.0))) {
        EXPECT_EQ(m, 0.0);
    }
}

TEST(PixelMeans, SymmetricWhenCentered) {
    BeamSpec beam{1.0, 1000.0, 0.0, 0.0};
    auto grid = PixelGrid::centered(101, 1.0, 4.0);
    auto m = pixel_mean_photons(beam, MeasurementScheme::conventional(), grid);
    for (std::size_t j = 0; j < m.size(); ++j) {
        EXPECT_NEAR(m[j], m[m.size() - 1 - j], 1e-12 * std::max(1.0, m[j]));
    }
}

TEST(PixelMeans, WideCameraCollectsEverything) {
    BeamSpec beam{1.0, 1000.0, 0.0, 0.0};
    auto m = pixel_mean_photons(beam, MeasurementScheme::conventional(), PixelGrid::centered(200, 1.0, 10.0));
    EXPECT_NEAR(sum(m) / 1000.0, 1.0, 1e-8);
    EXPECT_LE(sum(m), 1000.0 * (1.0 + 1e-15));
}

TEST(PixelMeans, NormalizationOnRandomBeams) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        BeamSpec beam{0.3 + 2.0 * u(rng), 1.0 + 1e5 * u(rng), 0.2 * (u(rng) - 0.5), 0.0};
        double a = 1.0 + 3.0 * u(rng);
        auto scheme = i % 2 ? MeasurementScheme::weak_value(a) : MeasurementScheme::conventional();
        auto grid = PixelGrid::centered(1 + static_cast<std::size_t>(300 * u(rng)), beam.w, 10.0);
        auto m = pixel_mean_photons(beam, scheme, grid);
        double ratio = sum(m) / (beam.n_bar * scheme.p_ps);
        EXPECT_GE(ratio, 1.0 - 1e-8);
        EXPECT_LE(ratio, 1.0 + 1e-13);
        for (double v : m) {
            EXPECT_GE(v, 0.0);
        }
    }
}

TEST(PixelMeans, ShiftEquivariance) {
    auto grid = PixelGrid::centered(64, 1.0, 5.0);
    for (double a : {1.5, 2.4, 3.9}) {
        BeamSpec beam{1.0, 5000.0, 0.013, 0.0};
        auto wva = MeasurementScheme::weak_value(a);
        auto lhs = pixel_mean_photons(beam, wva, grid);
        BeamSpec moved = beam;
        moved.g = beam.g * a;
        auto rhs = pixel_mean_photons(moved, MeasurementScheme::conventional(), grid);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            EXPECT_NEAR(lhs[j], rhs[j] * wva.p_ps, 1e-15 * rhs[j] * wva.p_ps + 1e-300);
        }
    }
}

TEST(PixelMeanDeriv, TelescopesToBoundaryTerms) {
    BeamSpec beam{1.0, 2000.0, 0.05, 0.1};
    auto grid = PixelGrid::centered(40, 1.0, 2.0);
    for (auto scheme : {MeasurementScheme::conventional(), MeasurementScheme::weak_value(2.4)}) {
        auto d = pixel_mean_photons_deriv(beam, scheme, grid);
        double s = scheme.a_w * beam.g + beam.center;
        double expect = beam.n_bar * scheme.p_ps * scheme.a_w *
                        (gaussian_density(grid.x_min() - s, beam.w) - gaussian_density(grid.x_max() - s, beam.w));
        EXPECT_NEAR(sum(d), expect, 1e-10 * std::abs(expect) + 1e-12);
    }
}

TEST(PixelMeanDeriv, FarTailIsZero) {
    BeamSpec beam{1.0, 1e6, 0.0, 0.0};
    PixelGrid grid(4, 13.0, 20.0);
    for (double d : pixel_mean_photons_deriv(beam, MeasurementScheme::conventional(), grid)) {
        EXPECT_LT(std::abs(d), 1e-30);
    }
}

TEST(PixelMeanDeriv, MatchesCentralDifferences) {
    // the camera of the n_bar sweep figures
    auto grid = PixelGrid::centered(100, 1.0, 2.0);
    for (auto scheme : {MeasurementScheme::conventional(), MeasurementScheme::weak_value(1.8),
                        MeasurementScheme::weak_value(3.2)}) {
        BeamSpec beam{1.0, 1e5, 0.01, 0.0};
        auto d = pixel_mean_photons_deriv(beam, scheme, grid);
        double h = 1e-6 * beam.w;
        BeamSpec up = beam, down = beam;
        up.g += h;
        down.g -= h;
        auto mu = pixel_mean_photons(up, scheme, grid);
        auto md = pixel_mean_photons(down, scheme, grid);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (std::abs(d[j]) <= 1e-12) {
                continue;
            }
            double fd = (mu[j] - md[j]) / (2 * h);
            EXPECT_NEAR(fd / d[j], 1.0, 1e-6) << "pixel " << j;
        }
    }
}

TEST(BeamSpec, Validation) {
    EXPECT_THROW((BeamSpec{0.0, 1.0, 0.0, 0.0}.validate()), std::domain_error);
    EXPECT_THROW((BeamSpec{1.0, -1.0, 0.0, 0.0}.validate()), std::domain_error);
    EXPECT_THROW((BeamSpec{1.0, 1.0, NAN, 0.0}.validate()), std::domain_error);
    EXPECT_NO_THROW((BeamSpec{1.0, 0.0, 0.0, 0.0}.validate()));
}

}  // namespace
