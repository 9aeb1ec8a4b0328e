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
#include <map>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "wvasat/estimator_lab.hpp"

namespace {

using namespace wvasat;

CameraSetup saturating_camera(double n_bar, double sigma = 12.8) {
    CameraSetup s;
    s.beam = {1.0, n_bar, 0.01, 0.0};
    s.grid = PixelGrid::centered(100, 1.0, 2.0);
    s.detector.k_max = 256;
    s.detector.n_sat = 500.0;
    s.detector.sigma = sigma;
    return s;
}

CameraSetup linear_camera(double n_bar, double n_ref) {
    auto s = saturating_camera(n_bar);
    s.detector.n_sat.reset();
    s.detector.n_ref = n_ref;
    return s;
}

TEST(CounterRng, StreamsArePureFunctionsOfTheirKey) {
    CounterRng a(7, 3, 4), b(7, 3, 4), c(7, 3, 5), d(8, 3, 4);
    for (int i = 0; i < 100; ++i) {
        auto x = a();
        EXPECT_EQ(x, b());
        EXPECT_NE(x, c());
        EXPECT_NE(x, d());
    }
}

TEST(CounterRng, UniformMoments) {
    CounterRng rng(1, 0, 0);
    const int n = 200000;
    double s = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        s += u;
        ss += u * u;
    }
    EXPECT_NEAR(s / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
    EXPECT_NEAR(ss / n - (s / n) * (s / n), 1.0 / 12.0, 2e-3);
}

// Pearson test of sampled symbols against the marginal outcome probabilities,
// merging neighbouring symbols until each bin expects at least 5 draws.
TEST(SamplePixel, MatchesOutcomeDistribution) {
    auto setup = saturating_camera(2e4);
    DetectorChannel channel(setup.detector);
    auto means = pixel_mean_photons(setup.beam, setup.scheme, setup.grid);
    const int draws = 100000;
    for (std::size_t j : {10u, 35u, 50u}) {
        auto dist = outcome_probs(means[j], 0.0, channel, setup.policy);
        std::map<std::int64_t, int> seen;
        CounterRng rng(42, j, 0);
        for (int i = 0; i < draws; ++i) {
            ++seen[sample_pixel(means[j], channel, rng)];
        }
        double chi2 = 0.0;
        int bins = 0;
        double expected = 0.0, observed = 0.0;
        for (std::int64_t k = dist.first; k <= dist.last(); ++k) {
            expected += draws * dist.prob(k);
            observed += seen.count(k) ? seen[k] : 0;
            if (expected >= 5.0 || k == dist.last()) {
                chi2 += (observed - expected) * (observed - expected) / expected;
                ++bins;
                expected = observed = 0.0;
            }
        }
        ASSERT_GT(bins, 3);
        boost::math::chi_squared dist_chi(bins - 1);
        EXPECT_LT(chi2, boost::math::quantile(dist_chi, 0.99)) << "pixel " << j << " bins " << bins;
    }
}

TEST(SampleFrame, MeanCountsMatchExpectation) {
    auto setup = saturating_camera(2e4, 2.56);
    DetectorChannel channel(setup.detector);
    auto means = pixel_mean_photons(setup.beam, setup.scheme, setup.grid);
    const int frames = 2000;
    std::vector<double> sum(setup.grid.size(), 0.0);
    for (int f = 0; f < frames; ++f) {
        auto frame = sample_frame(setup, 9, static_cast<std::uint64_t>(f));
        for (std::size_t j = 0; j < sum.size(); ++j) {
            sum[j] += static_cast<double>(frame.counts[j]);
        }
    }
    for (std::size_t j = 0; j < sum.size(); ++j) {
        double e = expected_counts(means[j], channel, setup.policy);
        if (e > 20.0) {
            EXPECT_NEAR(sum[j] / frames, e, 0.02 * e) << j;
        }
    }
}

TEST(SampleFrame, DarkNoiselessCameraReadsZero) {
    auto setup = saturating_camera(0.0, 0.0);
    auto frame = sample_frame(setup, 1, 0);
    for (auto k : frame.counts) {
        EXPECT_EQ(k, 0);
    }
}

TEST(SampleFrame, Reproducible) {
    auto setup = saturating_camera(5e3);
    auto a = sample_frame(setup, 77, 12);
    auto b = sample_frame(setup, 77, 12);
    auto c = sample_frame(setup, 77, 13);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(a.counts, c.counts);
}

TEST(Likelihood, TableTracksExactLikelihood) {
    auto setup = saturating_camera(3e3);
    LikelihoodTable table(setup, {-0.1, 0.1}, 201);
    auto frame = sample_frame(setup, 5, 0);
    double base = exact_log_likelihood(frame, setup, 0.0);
    for (double g : {-0.08, -0.013, 0.0, 0.0071, 0.05}) {
        double exact = exact_log_likelihood(frame, setup, g) - base;
        double tab = table.log_likelihood(frame, g) - table.log_likelihood(frame, 0.0);
        EXPECT_NEAR(tab, exact, 1e-3 * std::max(1.0, std::abs(exact))) << g;
    }
}

TEST(Mle, NonSaturatingCameraIsWithinThreeSigma) {
    auto setup = linear_camera(1e5, 2000.0);
    double fisher = fisher_total(setup.beam, setup.scheme, setup.grid, setup.detector).total;
    LikelihoodTable table(setup, {-0.2, 0.2});
    for (std::uint64_t i = 0; i < 5; ++i) {
        auto frame = sample_frame(setup, 31, i);
        auto r = mle_estimate(frame, table);
        EXPECT_FALSE(r.bracket_failure);
        EXPECT_NEAR(r.estimate, setup.beam.g, 3.0 / std::sqrt(fisher)) << i;
    }
}

TEST(Mle, MirrorSymmetricFrameGivesZero) {
    auto setup = saturating_camera(2e3);
    setup.beam.g = 0.0;
    // rounded expected counts of the centred beam, mirrored exactly
    DetectorChannel channel(setup.detector);
    auto means = pixel_mean_photons(setup.beam, setup.scheme, setup.grid);
    Frame frame;
    frame.counts.resize(100);
    for (std::size_t j = 0; j < 50; ++j) {
        auto k = std::llround(expected_counts(means[j], channel));
        frame.counts[j] = k;
        frame.counts[99 - j] = k;
    }
    auto r = mle_estimate(frame, setup, {-0.5, 0.5});
    EXPECT_NEAR(r.estimate, 0.0, 1e-5);
}

TEST(Mle, UnbiasedOnWeakValueCamera) {
    auto setup = saturating_camera(2e4);
    setup.scheme = MeasurementScheme::weak_value(2.4);
    BenchmarkOptions opts;
    opts.interval = SearchInterval{-0.3, 0.3};
    auto rep = benchmark(EstimatorKind::MaximumLikelihood, setup, 1000, 3, opts);
    EXPECT_TRUE(rep.reliable);
    EXPECT_EQ(rep.n_valid, 1000u);
    EXPECT_NEAR(rep.mean_estimate, setup.beam.g, 5.0 * std::sqrt(rep.variance / 1000.0));
}

TEST(Mle, ZeroShiftMeanIsNearZero) {
    auto setup = saturating_camera(2e4);
    setup.beam.g = 0.0;
    auto rep = benchmark(EstimatorKind::MaximumLikelihood, setup, 500, 4);
    EXPECT_TRUE(rep.reliable);
    EXPECT_NEAR(rep.mean_estimate, 0.0, 3.0 * std::sqrt(rep.variance / 500.0));
}

TEST(Mle, IntervalMissingTheTruthIsUnreliable) {
    auto setup = saturating_camera(2e3);
    BenchmarkOptions opts;
    opts.interval = SearchInterval{0.5, 0.6};
    auto rep = benchmark(EstimatorKind::MaximumLikelihood, setup, 100, 4, opts);
    EXPECT_GT(rep.bracket_failures, 90u);
    EXPECT_FALSE(rep.reliable);
}

TEST(Benchmark, RejectsTooFewFrames) {
    EXPECT_THROW(benchmark(EstimatorKind::MaximumLikelihood, saturating_camera(1e3), 99, 1), std::invalid_argument);
}

TEST(Benchmark, DeterministicForSeed) {
    auto setup = saturating_camera(2e3);
    auto a = benchmark(EstimatorKind::MaximumLikelihood, setup, 200, 8);
    BenchmarkOptions opts;
    opts.threads = 3;
    auto b = benchmark(EstimatorKind::MaximumLikelihood, setup, 200, 8, opts);
    EXPECT_EQ(a.estimates, b.estimates);
}

TEST(CenterOfMass, SymmetricFrameGivesZero) {
    auto setup = saturating_camera(2e3);
    Frame frame;
    frame.counts.assign(100, 0);
    frame.counts[40] = frame.counts[59] = 17;
    frame.counts[50] = frame.counts[49] = 3;
    DetectorChannel channel(setup.detector);
    auto est = com_estimate(frame, setup.grid, {}, channel);
    ASSERT_TRUE(est.has_value());
    EXPECT_NEAR(*est, 0.0, 1e-12);
    frame.counts.assign(100, 0);
    EXPECT_FALSE(com_estimate(frame, setup.grid, {}, channel).has_value());
}

TEST(CenterOfMass, LinearCalibrationFollowsTheWeakValue) {
    CameraSetup setup;
    setup.beam = {1.0, 1e4, 0.0, 0.0};
    setup.grid = PixelGrid::centered(200, 1.0, 6.0);
    setup.detector.n_sat.reset();
    setup.detector.n_ref = 1e4;
    setup.detector.sigma = 0.0;
    setup.detector.digitize = false;
    for (double a : {1.0, 2.4}) {
        setup.scheme = a == 1.0 ? MeasurementScheme::conventional() : MeasurementScheme::weak_value(a);
        double f = fisher_total(setup.beam, setup.scheme, setup.grid, setup.detector).total;
        auto cal = calibrate_com(setup, f);
        EXPECT_NEAR(cal.scale, a, 1e-6 * a);
        EXPECT_NEAR(cal.offset, 0.0, 1e-12);
    }
}

TEST(CenterOfMass, LinearRegimeIsUnbiased) {
    CameraSetup setup;
    setup.beam = {1.0, 1e4, 0.01, 0.0};
    setup.grid = PixelGrid::centered(100, 1.0, 5.0);
    setup.scheme = MeasurementScheme::weak_value(2.4);
    setup.detector.n_sat.reset();
    setup.detector.n_ref = 1e4;
    auto rep = benchmark(EstimatorKind::CenterOfMass, setup, 10000, 12);
    EXPECT_EQ(rep.missing, 0u);
    EXPECT_NEAR(rep.mean_estimate, setup.beam.g, 4.0 * std::sqrt(rep.variance / 10000.0));
}

TEST(CenterOfMass, SaturationCostsEfficiency) {
    // ten times N_sat M photons: the centroid spreads wider than the bound
    auto setup = saturating_camera(5e5, 2.56);
    auto rep = benchmark(EstimatorKind::CenterOfMass, setup, 1000, 6);
    EXPECT_EQ(rep.missing, 0u);
    EXPECT_GT(rep.efficiency, 1.2);
}

}  // namespace
