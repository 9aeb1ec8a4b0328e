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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wvasat/beam_model.hpp"
#include "wvasat/detector_channel.hpp"
#include "wvasat/estimator_lab.hpp"
#include "wvasat/poisson_window.hpp"

namespace wvasat {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical diagnostic (Poisson tail mass, skipped FI) exceeded its bound.
class NumericalDiagnosticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

enum class SweepVariable { NBar, AW };
enum class SweepSpacing { Log, Linear };

struct SweepSpec {
    SweepVariable variable = SweepVariable::NBar;
    SweepSpacing spacing = SweepSpacing::Log;
    double min = 1e2;
    double max = 1e6;
    std::size_t points = 40;
    /// Explicit sweep points; when set, spacing/min/max/points are ignored.
    std::optional<std::vector<double>> explicit_values;

    std::vector<double> values() const;
};

/// Camera of `pixels` bins spanning beam.center +/- half_span_w * beam.w.
struct GridSpec {
    std::size_t pixels = 100;
    double half_span_w = 5.0;

    PixelGrid build(const BeamSpec &beam) const {
        return PixelGrid::centered(pixels, beam.w, half_span_w, beam.center);
    }
};

struct OutputSpec {
    std::optional<std::string> csv;
    std::optional<std::string> json;
};

struct EffectMatrixSpec {
    std::size_t ideal_pixels = 1000;
    double margin = 0.01;
};

struct EstimateSpec {
    std::vector<EstimatorKind> estimators{EstimatorKind::MaximumLikelihood};
    std::size_t frames = 1000;
    std::optional<SearchInterval> interval;
    std::size_t table_nodes = 201;
};

struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    std::string name;
    BeamSpec beam;
    GridSpec grid;
    DetectorConfig detector;
    std::vector<MeasurementScheme> schemes;
    std::optional<SweepSpec> sweep;
    TruncationPolicy truncation;
    OutputSpec output;
    std::uint64_t seed = 1;
    std::optional<EffectMatrixSpec> effect_matrix;
    std::optional<EstimateSpec> estimate;

    /// Throws ConfigError on any violated invariant.
    void validate() const;
};

/// Strict parse: unknown keys, missing schema_version and out-of-range values
/// all raise ConfigError.
ExperimentConfig parse_config(const nlohmann::json &doc);
ExperimentConfig parse_config_text(const std::string &text);
ExperimentConfig load_config(const std::string &path);

/// Fully expanded config, every default written out.
nlohmann::ordered_json to_json(const ExperimentConfig &cfg);

/// Names of the embedded presets.
std::vector<std::string> preset_names();
/// Raw JSON text of a preset; throws ConfigError for unknown names.
const std::string &preset_text(const std::string &name);
ExperimentConfig load_preset(const std::string &name);

}  // namespace wvasat
