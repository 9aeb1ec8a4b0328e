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


#include "wvasat/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "wvasat/parallel.hpp"

namespace wvasat {

namespace {

constexpr double kSkippedRelTol = 1e-8;

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_shortest(double x) {
    if (!std::isfinite(x)) {
        return format_double(x);
    }
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<MeasurementScheme> wva_schemes(const ExperimentConfig &cfg) {
    std::vector<MeasurementScheme> out;
    for (const auto &s : cfg.schemes) {
        if (s.kind == SchemeKind::WeakValue) {
            out.push_back(s);
        }
    }
    return out;
}

bool has_cm(const ExperimentConfig &cfg) {
    return std::any_of(cfg.schemes.begin(), cfg.schemes.end(),
                       [](const MeasurementScheme &s) { return s.kind == SchemeKind::Conventional; });
}

void check_diagnostics(const FIResult &r, const TruncationPolicy &policy, const MeasurementScheme &scheme,
                       double n_bar) {
    if (r.max_tail_mass() > policy.tail_epsilon) {
        throw NumericalDiagnosticError("Poisson tail mass " + format_double(r.max_tail_mass()) + " exceeds " +
                                       format_double(policy.tail_epsilon) + " (" + scheme.id() +
                                       ", n_bar=" + format_double(n_bar) + ")");
    }
    if (r.skipped_bound() > kSkippedRelTol * r.total) {
        throw NumericalDiagnosticError("FI skipped under prob_floor may reach " + format_double(r.skipped_bound()) +
                                       " of a total " + format_double(r.total) + " (" + scheme.id() +
                                       ", n_bar=" + format_double(n_bar) + ")");
    }
}

FIResult evaluate_on(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid,
                     const DetectorConfig &det, const TruncationPolicy &policy, unsigned threads) {
    auto r = fisher_total(beam, scheme, grid, det, policy, threads);
    check_diagnostics(r, policy, scheme, beam.n_bar);
    return r;
}

const SweepSpec &require_sweep(const ExperimentConfig &cfg, SweepVariable var, const char *op) {
    if (!cfg.sweep) {
        throw ConfigError(std::string(op) + ": config has no sweep section");
    }
    if (cfg.sweep->variable != var) {
        throw ConfigError(std::string(op) + ": sweep.variable must be \"" +
                          (var == SweepVariable::NBar ? "n_bar" : "a_w") + "\"");
    }
    return *cfg.sweep;
}

double wva_fi(const ExperimentConfig &cfg, double a_w, unsigned threads) {
    return evaluate_fi(cfg, cfg.beam.n_bar, MeasurementScheme::weak_value(a_w), threads).total;
}

constexpr std::array<Effect, 4> kEffects = {Effect::Saturation, Effect::Digitization, Effect::PixelNoise,
                                            Effect::Pixelation};

}  // namespace

FIResult evaluate_fi(const ExperimentConfig &cfg, double n_bar, const MeasurementScheme &scheme, unsigned threads) {
    BeamSpec beam = cfg.beam;
    beam.n_bar = n_bar;
    return evaluate_on(beam, scheme, cfg.grid.build(cfg.beam), cfg.detector, cfg.truncation, threads);
}

SweepResult run_fi_sweep(const ExperimentConfig &cfg, const RunOptions &options) {
    const auto &sweep = require_sweep(cfg, SweepVariable::NBar, "fi-sweep");
    if (cfg.schemes.empty()) {
        throw ConfigError("fi-sweep: no schemes configured");
    }
    auto values = sweep.values();
    SweepResult out;
    out.variable = SweepVariable::NBar;
    out.rows.resize(values.size() * cfg.schemes.size());
    parallel_for(out.rows.size(), options.threads, [&](std::size_t t) {
        std::size_t i = t / cfg.schemes.size();
        const auto &scheme = cfg.schemes[t % cfg.schemes.size()];
        auto r = evaluate_fi(cfg, values[i], scheme, 1);
        auto &row = out.rows[t];
        row.n_bar = values[i];
        row.scheme = scheme;
        row.fi_total = r.total;
        row.max_tail_mass = r.max_tail_mass();
        row.skipped_bound = r.skipped_bound();
        if (options.keep_per_pixel) {
            row.per_pixel = std::move(r.per_pixel);
        }
    });
    return out;
}

SweepResult run_aw_scan(const ExperimentConfig &cfg, const RunOptions &options) {
    const auto &sweep = require_sweep(cfg, SweepVariable::AW, "aw-scan");
    std::vector<MeasurementScheme> schemes;
    if (has_cm(cfg)) {
        schemes.push_back(MeasurementScheme::conventional());
    }
    for (double a : sweep.values()) {
        schemes.push_back(MeasurementScheme::weak_value(a));
    }
    SweepResult out;
    out.variable = SweepVariable::AW;
    out.rows.resize(schemes.size());
    parallel_for(schemes.size(), options.threads, [&](std::size_t t) {
        auto r = evaluate_fi(cfg, cfg.beam.n_bar, schemes[t], 1);
        auto &row = out.rows[t];
        row.n_bar = cfg.beam.n_bar;
        row.scheme = schemes[t];
        row.fi_total = r.total;
        row.max_tail_mass = r.max_tail_mass();
        row.skipped_bound = r.skipped_bound();
        if (options.keep_per_pixel) {
            row.per_pixel = std::move(r.per_pixel);
        }
    });
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        if (out.rows[i].scheme.kind != SchemeKind::WeakValue) {
            continue;
        }
        if (!out.argmax || out.rows[i].fi_total > out.rows[*out.argmax].fi_total) {
            out.argmax = i;
        }
    }
    return out;
}

OptimalAw grid_optimal_aw(const ExperimentConfig &cfg, double lo, double hi, std::size_t points,
                          const RunOptions &options) {
    if (!(lo <= hi) || !(std::abs(lo) >= 1.0) || points == 0) {
        throw ConfigError("optimal-aw: need 1 <= lo <= hi and at least one grid point");
    }
    std::size_t n = lo == hi ? 1 : points;
    std::vector<double> xs(n), fs(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    xs.back() = hi;
    parallel_for(n, options.threads, [&](std::size_t i) { fs[i] = wva_fi(cfg, xs[i], 1); });
    auto best = static_cast<std::size_t>(std::max_element(fs.begin(), fs.end()) - fs.begin());
    OptimalAw out;
    out.a_w = xs[best];
    out.fi = fs[best];
    out.evaluations = n;
    out.boundary = n > 1 && (best == 0 || best == n - 1);
    return out;
}

OptimalAw find_optimal_aw(const ExperimentConfig &cfg, double lo, double hi, double tol, const RunOptions &options) {
    if (!(lo <= hi) || !(lo >= 1.0)) {
        throw ConfigError("optimal-aw: interval must satisfy 1 <= lo <= hi");
    }
    if (!(tol > 0.0)) {
        throw ConfigError("optimal-aw: tolerance must be positive");
    }
    OptimalAw out;
    if (lo == hi) {
        out.a_w = lo;
        out.fi = wva_fi(cfg, lo, options.threads);
        out.evaluations = 1;
        return out;
    }

    constexpr std::size_t kCoarse = 16;
    std::array<double, kCoarse> xs{}, fs{};
    for (std::size_t i = 0; i < kCoarse; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kCoarse - 1);
    }
    xs.back() = hi;
    parallel_for(kCoarse, options.threads, [&](std::size_t i) { fs[i] = wva_fi(cfg, xs[i], 1); });

    // single peak: non-decreasing, then non-increasing
    std::size_t i = 1;
    while (i < kCoarse && fs[i] >= fs[i - 1]) {
        ++i;
    }
    while (i < kCoarse && fs[i] <= fs[i - 1]) {
        ++i;
    }
    if (i < kCoarse) {
        out = grid_optimal_aw(cfg, lo, hi, 512, options);
        out.grid_fallback = true;
        out.evaluations += kCoarse;
        return out;
    }

    auto best = static_cast<std::size_t>(std::max_element(fs.begin(), fs.end()) - fs.begin());
    double a = xs[best == 0 ? 0 : best - 1];
    double b = xs[best + 1 == kCoarse ? kCoarse - 1 : best + 1];
    out.a_w = xs[best];
    out.fi = fs[best];
    out.evaluations = kCoarse;

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = wva_fi(cfg, c, options.threads);
    double fd = wva_fi(cfg, d, options.threads);
    out.evaluations += 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = wva_fi(cfg, c, options.threads);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = wva_fi(cfg, d, options.threads);
        }
        ++out.evaluations;
    }
    double x = fc >= fd ? c : d;
    double fx = std::max(fc, fd);
    if (fx > out.fi) {
        out.a_w = x;
        out.fi = fx;
    }
    if (hi - out.a_w <= tol || out.a_w - lo <= tol) {
        double edge = hi - out.a_w <= tol ? hi : lo;
        double fe = edge == xs.back() ? fs.back() : fs.front();
        out.boundary = true;
        if (fe >= out.fi) {
            out.a_w = edge;
            out.fi = fe;
        }
    }
    return out;
}

std::string to_string(Effect e) {
    switch (e) {
    case Effect::Saturation:
        return "saturation";
    case Effect::Digitization:
        return "digitization";
    case Effect::PixelNoise:
        return "pixel_noise";
    case Effect::Pixelation:
        return "pixelation";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Advantage:
        return "advantage";
    case Verdict::NoAdvantage:
        return "no_advantage";
    case Verdict::InsufficientData:
        return "insufficient_data";
    }
    return "?";
}

const EffectCell &EffectMatrix::at(Effect a, Effect b) const {
    if (b < a) {
        std::swap(a, b);
    }
    for (const auto &c : cells) {
        if (c.first == a && c.second == b) {
            return c;
        }
    }
    throw std::out_of_range("effect pair not in matrix");
}

EffectCamera effect_camera(const ExperimentConfig &cfg, const std::vector<Effect> &active, double n_bar) {
    auto on = [&](Effect e) { return std::find(active.begin(), active.end(), e) != active.end(); };
    std::size_t ideal = cfg.effect_matrix ? cfg.effect_matrix->ideal_pixels : EffectMatrixSpec{}.ideal_pixels;
    GridSpec gs = cfg.grid;
    if (!on(Effect::Pixelation)) {
        gs.pixels = ideal;
    }
    EffectCamera cam{gs.build(cfg.beam), {}};
    DetectorConfig &det = cam.detector;
    det.k_max = cfg.detector.k_max;
    det.readout_oversampling = cfg.detector.readout_oversampling;
    det.digitize = on(Effect::Digitization);
    det.sigma = on(Effect::PixelNoise) ? cfg.detector.sigma : 0.0;
    if (on(Effect::PixelNoise) && !(cfg.detector.sigma > 0.0)) {
        throw ConfigError("effect-matrix: detector.sigma must be positive to switch pixel noise on");
    }
    if (on(Effect::Saturation)) {
        if (!cfg.detector.n_sat) {
            throw ConfigError("effect-matrix: detector.n_sat must be set to switch saturation on");
        }
        det.n_sat = cfg.detector.n_sat;
    } else {
        BeamSpec beam = cfg.beam;
        beam.n_bar = n_bar;
        auto means = pixel_mean_photons(beam, MeasurementScheme::conventional(), cam.grid);
        double brightest = means.empty() ? 0.0 : *std::max_element(means.begin(), means.end());
        auto window = poisson_window(brightest, cfg.truncation);
        det.n_sat.reset();
        det.n_ref = (static_cast<double>(window.hi) + 1.0) * det.k_max / (det.k_max - 1.0);
    }
    return cam;
}

EffectMatrix run_effect_matrix(const ExperimentConfig &cfg, const RunOptions &options) {
    EffectMatrix out;
    out.margin = cfg.effect_matrix ? cfg.effect_matrix->margin : EffectMatrixSpec{}.margin;
    std::vector<double> n_values;
    if (cfg.sweep && cfg.sweep->variable == SweepVariable::NBar) {
        n_values = cfg.sweep->values();
    }
    auto wva = wva_schemes(cfg);
    bool enough = !n_values.empty() && !wva.empty();

    for (std::size_t a = 0; a < kEffects.size(); ++a) {
        for (std::size_t b = a; b < kEffects.size(); ++b) {
            EffectCell cell;
            cell.first = kEffects[a];
            cell.second = kEffects[b];
            if (!enough) {
                out.cells.push_back(cell);
                continue;
            }
            std::vector<Effect> active = {kEffects[a]};
            if (b != a) {
                active.push_back(kEffects[b]);
            }
            std::size_t per_point = wva.size() + 1;
            std::vector<double> fi(n_values.size() * per_point, 0.0);
            std::vector<EffectCamera> cams;
            for (double n : n_values) {
                cams.push_back(effect_camera(cfg, active, n));
            }
            parallel_for(fi.size(), options.threads, [&](std::size_t t) {
                std::size_t i = t / per_point;
                std::size_t s = t % per_point;
                BeamSpec beam = cfg.beam;
                beam.n_bar = n_values[i];
                auto scheme = s == 0 ? MeasurementScheme::conventional() : wva[s - 1];
                fi[t] = evaluate_on(beam, scheme, cams[i].grid, cams[i].detector, cfg.truncation, 1).total;
            });
            cell.verdict = Verdict::NoAdvantage;
            for (std::size_t i = 0; i < n_values.size(); ++i) {
                double cm = fi[i * per_point];
                for (std::size_t s = 0; s < wva.size(); ++s) {
                    double f = fi[i * per_point + s + 1];
                    double ratio = 0.0;
                    if (cm > 0.0) {
                        ratio = f / cm;
                    } else if (f > 0.0) {
                        ratio = std::numeric_limits<double>::infinity();
                    }
                    if (ratio > cell.best_ratio) {
                        cell.best_ratio = ratio;
                        cell.n_bar = n_values[i];
                        cell.a_w = wva[s].a_w;
                    }
                    if (f > cm * (1.0 + out.margin)) {
                        cell.verdict = Verdict::Advantage;
                    }
                }
            }
            out.cells.push_back(cell);
        }
    }
    return out;
}

std::string format_effect_table(const EffectMatrix &matrix) {
    const char *labels[] = {"saturation", "digitization", "pixel noise", "pixelation"};
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-14s", "");
    os << buf;
    for (const char *l : labels) {
        std::snprintf(buf, sizeof buf, "%-14s", l);
        os << buf;
    }
    os << '\n';
    for (std::size_t a = 0; a < kEffects.size(); ++a) {
        std::snprintf(buf, sizeof buf, "%-14s", labels[a]);
        os << buf;
        for (std::size_t b = 0; b < kEffects.size(); ++b) {
            const auto &c = matrix.at(kEffects[a], kEffects[b]);
            const char *mark = c.verdict == Verdict::Advantage     ? "✓"
                               : c.verdict == Verdict::NoAdvantage ? "X"
                                                                   : "?";
            os << mark << std::string(13, ' ');
        }
        os << '\n';
    }
    return os.str();
}

std::vector<ProfileRow> render_profiles(const ExperimentConfig &cfg) {
    auto wva = wva_schemes(cfg);
    if (wva.empty()) {
        throw ConfigError("profiles: config needs a WVA scheme");
    }
    auto grid = cfg.grid.build(cfg.beam);
    DetectorChannel channel(cfg.detector);
    auto cm_in = pixel_mean_photons(cfg.beam, MeasurementScheme::conventional(), grid);
    auto wva_in = pixel_mean_photons(cfg.beam, wva.front(), grid);
    std::vector<ProfileRow> rows(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        rows[j].x_center = grid.pixel_center(j);
        rows[j].incident_cm = cm_in[j];
        rows[j].measured_cm = expected_counts(cm_in[j], channel, cfg.truncation);
        rows[j].incident_wva = wva_in[j];
        rows[j].measured_wva = expected_counts(wva_in[j], channel, cfg.truncation);
    }
    return rows;
}

std::vector<EstimateRow> run_estimates(const ExperimentConfig &cfg, const RunOptions &options) {
    if (!cfg.estimate) {
        throw ConfigError("estimate: config has no estimate section");
    }
    if (cfg.schemes.empty()) {
        throw ConfigError("estimate: no schemes configured");
    }
    std::vector<EstimateRow> out;
    for (const auto &scheme : cfg.schemes) {
        CameraSetup setup;
        setup.beam = cfg.beam;
        setup.scheme = scheme;
        setup.grid = cfg.grid.build(cfg.beam);
        setup.detector = cfg.detector;
        setup.policy = cfg.truncation;
        BenchmarkOptions bopt;
        bopt.interval = cfg.estimate->interval;
        bopt.table_nodes = cfg.estimate->table_nodes;
        bopt.threads = options.threads;
        for (auto kind : cfg.estimate->estimators) {
            out.push_back({scheme, benchmark(kind, setup, cfg.estimate->frames, cfg.seed, bopt)});
        }
    }
    return out;
}

Table sweep_table(const SweepResult &result) {
    Table t;
    t.columns = {"n_bar", "scheme", "A_w", "p_ps", "fi_total"};
    for (const auto &r : result.rows) {
        t.rows.push_back({r.n_bar, r.scheme.id(), r.scheme.a_w, r.scheme.p_ps, r.fi_total});
    }
    return t;
}

Table optimal_table(const OptimalAw &result) {
    Table t;
    t.columns = {"A_w", "p_ps", "fi_total", "boundary", "grid_fallback", "evaluations"};
    t.rows.push_back({result.a_w, 1.0 / (1.0 + result.a_w * result.a_w), result.fi, result.boundary,
                      result.grid_fallback, static_cast<std::int64_t>(result.evaluations)});
    return t;
}

Table effect_table(const EffectMatrix &matrix) {
    Table t;
    t.columns = {"effect_a", "effect_b", "verdict", "best_ratio", "n_bar", "A_w"};
    for (const auto &c : matrix.cells) {
        t.rows.push_back({to_string(c.first), to_string(c.second), to_string(c.verdict), c.best_ratio, c.n_bar, c.a_w});
    }
    return t;
}

Table profile_table(const std::vector<ProfileRow> &rows) {
    Table t;
    t.columns = {"x_center", "incident_cm", "measured_cm", "incident_wva", "measured_wva"};
    for (const auto &r : rows) {
        t.rows.push_back({r.x_center, r.incident_cm, r.measured_cm, r.incident_wva, r.measured_wva});
    }
    return t;
}

Table estimate_table(const std::vector<EstimateRow> &rows) {
    Table t;
    t.columns = {"scheme",   "A_w", "estimator", "n_frames",   "n_valid",          "true_g",  "mean_estimate",
                 "variance", "fisher", "crb",    "efficiency", "bracket_failures", "missing", "reliable"};
    for (const auto &r : rows) {
        const auto &e = r.report;
        t.rows.push_back({r.scheme.id(), r.scheme.a_w, to_string(e.estimator), static_cast<std::int64_t>(e.n_frames),
                          static_cast<std::int64_t>(e.n_valid), e.true_g, e.mean_estimate, e.variance, e.fisher, e.crb,
                          e.efficiency, static_cast<std::int64_t>(e.bracket_failures),
                          static_cast<std::int64_t>(e.missing), e.reliable});
    }
    return t;
}

void write_csv(const Table &table, std::ostream &out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    std::vector<bool> full(table.columns.size(), false);
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        full[i] = std::find(table.full_precision.begin(), table.full_precision.end(), table.columns[i]) !=
                  table.full_precision.end();
    }
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out << ',';
            }
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out << (i < full.size() && full[i] ? format_double(v) : format_shortest(v));
                    } else if constexpr (std::is_same_v<T, bool>) {
                        out << (v ? "true" : "false");
                    } else {
                        out << v;
                    }
                },
                row[i]);
        }
        out << '\n';
    }
}

void write_json_records(const Table &table, std::ostream &out) {
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto &row : table.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        // JSON has no inf/nan
                        rec[table.columns[i]] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(format_double(v));
                    } else {
                        rec[table.columns[i]] = v;
                    }
                },
                row[i]);
        }
        records.push_back(std::move(rec));
    }
    out << records.dump(2) << '\n';
}

}  // namespace wvasat
