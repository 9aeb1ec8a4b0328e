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
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "wvasat/estimator_lab.hpp"
#include "wvasat/experiment_config.hpp"
#include "wvasat/fisher_engine.hpp"

namespace wvasat {

struct RunOptions {
    unsigned threads = 1;
    bool keep_per_pixel = false;
};

struct SweepRow {
    double n_bar = 0.0;
    MeasurementScheme scheme;
    double fi_total = 0.0;
    std::vector<double> per_pixel;  ///< filled only with RunOptions::keep_per_pixel
    double max_tail_mass = 0.0;
    double skipped_bound = 0.0;
};

struct SweepResult {
    SweepVariable variable = SweepVariable::NBar;
    std::vector<SweepRow> rows;
    /// aw-scan only: index of the WVA row with the largest FI.
    std::optional<std::size_t> argmax;
};

/// FI of one scheme at total brightness n_bar with everything else taken from
/// `cfg`. Throws NumericalDiagnosticError when a pixel's Poisson window drops
/// more than tail_epsilon, or when outcomes skipped under prob_floor could
/// carry more than 1e-8 of the total.
FIResult evaluate_fi(const ExperimentConfig &cfg, double n_bar, const MeasurementScheme &scheme,
                     unsigned threads = 1);

/// One row per (n_bar, scheme), n_bar-major, schemes in config order.
SweepResult run_fi_sweep(const ExperimentConfig &cfg, const RunOptions &options = {});

/// FI versus A_w at the beam's n_bar. A CM reference row comes first when the
/// config lists CM among its schemes.
SweepResult run_aw_scan(const ExperimentConfig &cfg, const RunOptions &options = {});

struct OptimalAw {
    double a_w = 1.0;
    double fi = 0.0;
    bool boundary = false;       ///< optimum sits on an end of the interval
    bool grid_fallback = false;  ///< coarse scan not unimodal; value is a grid argmax
    std::size_t evaluations = 0;
};

/// Golden-section search for the A_w maximizing the WVA FI on [lo, hi], after
/// a 16-point scan confirms a single peak. Falls back to a 512-point grid.
OptimalAw find_optimal_aw(const ExperimentConfig &cfg, double lo, double hi, double tol,
                          const RunOptions &options = {});

/// Argmax of the WVA FI over `points` evenly spaced A_w values in [lo, hi].
OptimalAw grid_optimal_aw(const ExperimentConfig &cfg, double lo, double hi, std::size_t points,
                          const RunOptions &options = {});

enum class Effect { Saturation, Digitization, PixelNoise, Pixelation };
enum class Verdict { Advantage, NoAdvantage, InsufficientData };

std::string to_string(Effect e);
std::string to_string(Verdict v);

struct EffectCell {
    Effect first = Effect::Saturation;
    Effect second = Effect::Saturation;
    Verdict verdict = Verdict::InsufficientData;
    double best_ratio = 0.0;  ///< largest FI_WVA / FI_CM over the scan grid
    double n_bar = 0.0;
    double a_w = 0.0;
};

struct EffectMatrix {
    std::vector<EffectCell> cells;  ///< singletons and unordered pairs, row-major upper triangle
    double margin = 0.01;

    const EffectCell &at(Effect a, Effect b) const;
};

/// Camera with only the effects in `active` switched on.
///  saturation off:   linear response scaled so the brightest CM pixel's
///                    Poisson window just reaches the top level
///  digitization off: real-valued output (exact or noisy)
///  noise off:        sigma = 0
///  pixelation off:   effect_matrix.ideal_pixels over the same span
struct EffectCamera {
    PixelGrid grid;
    DetectorConfig detector;
};
EffectCamera effect_camera(const ExperimentConfig &cfg, const std::vector<Effect> &active, double n_bar);

/// Advantage of WVA over CM for each singleton and pair of effects, scanned
/// over the sweep's n_bar values and the config's WVA schemes.
EffectMatrix run_effect_matrix(const ExperimentConfig &cfg, const RunOptions &options = {});

/// 4 x 4 table with a check mark for an advantage, X otherwise.
std::string format_effect_table(const EffectMatrix &matrix);

struct ProfileRow {
    double x_center = 0.0;
    double incident_cm = 0.0;
    double measured_cm = 0.0;
    double incident_wva = 0.0;
    double measured_wva = 0.0;
};

/// Per-pixel incident photons and expected reported value for CM and for the
/// first WVA scheme of the config, at the beam's n_bar.
std::vector<ProfileRow> render_profiles(const ExperimentConfig &cfg);

struct EstimateRow {
    MeasurementScheme scheme;
    EstimatorReport report;
};

/// Estimator benchmarks for every (scheme, estimator) pair of the config.
std::vector<EstimateRow> run_estimates(const ExperimentConfig &cfg, const RunOptions &options = {});

/// Rows of mixed cells, written as CSV or as JSON records.
struct Table {
    using Cell = std::variant<std::string, double, std::int64_t, bool>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Columns whose doubles are always printed with 17 significant digits;
    /// other doubles use the shortest text that reads back exactly.
    std::vector<std::string> full_precision = {"fi_total"};
};

Table sweep_table(const SweepResult &result);
Table optimal_table(const OptimalAw &result);
Table effect_table(const EffectMatrix &matrix);
Table profile_table(const std::vector<ProfileRow> &rows);
Table estimate_table(const std::vector<EstimateRow> &rows);

void write_csv(const Table &table, std::ostream &out);
void write_json_records(const Table &table, std::ostream &out);

}  // namespace wvasat
