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


#include "wvasat/experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string_view>

namespace wvasat {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string at(std::string_view where, std::string_view key) {
    std::string s(where);
    if (!s.empty()) {
        s += '.';
    }
    s += key;
    return s;
}

const json &require_object(const json &node, std::string_view where) {
    if (!node.is_object()) {
        throw ConfigError(std::string(where) + ": expected an object");
    }
    return node;
}

void check_keys(const json &obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
    for (const auto &item : obj.items()) {
        bool known = false;
        for (auto k : allowed) {
            known = known || item.key() == k;
        }
        if (!known) {
            throw ConfigError("unknown key '" + at(where, item.key()) + "'");
        }
    }
}

double get_number(const json &obj, std::string_view where, const char *key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto &v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(at(where, key) + ": expected a number");
    }
    double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(at(where, key) + ": must be finite");
    }
    return x;
}

std::int64_t get_integer(const json &obj, std::string_view where, const char *key, std::int64_t fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto &v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(at(where, key) + ": expected an integer");
    }
    return v.get<std::int64_t>();
}

std::size_t get_count(const json &obj, std::string_view where, const char *key, std::size_t fallback) {
    auto v = get_integer(obj, where, key, static_cast<std::int64_t>(fallback));
    if (v < 0) {
        throw ConfigError(at(where, key) + ": must be non-negative");
    }
    return static_cast<std::size_t>(v);
}

std::string get_string(const json &obj, std::string_view where, const char *key, std::string fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto &v = obj.at(key);
    if (!v.is_string()) {
        throw ConfigError(at(where, key) + ": expected a string");
    }
    return v.get<std::string>();
}

std::optional<std::string> get_path(const json &obj, std::string_view where, const char *key) {
    if (!obj.contains(key) || obj.at(key).is_null()) {
        return std::nullopt;
    }
    return get_string(obj, where, key, {});
}

bool get_bool(const json &obj, std::string_view where, const char *key, bool fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const auto &v = obj.at(key);
    if (!v.is_boolean()) {
        throw ConfigError(at(where, key) + ": expected true or false");
    }
    return v.get<bool>();
}

BeamSpec parse_beam(const json &node) {
    require_object(node, "beam");
    check_keys(node, "beam", {"w", "g", "center", "n_bar"});
    BeamSpec beam;
    beam.w = get_number(node, "beam", "w", beam.w);
    beam.g = get_number(node, "beam", "g", beam.g);
    beam.center = get_number(node, "beam", "center", beam.center);
    beam.n_bar = get_number(node, "beam", "n_bar", beam.n_bar);
    return beam;
}

GridSpec parse_grid(const json &node) {
    require_object(node, "grid");
    check_keys(node, "grid", {"pixels", "half_span_w"});
    GridSpec grid;
    grid.pixels = get_count(node, "grid", "pixels", grid.pixels);
    grid.half_span_w = get_number(node, "grid", "half_span_w", grid.half_span_w);
    return grid;
}

DetectorConfig parse_detector(const json &node) {
    require_object(node, "detector");
    check_keys(node, "detector", {"k_max", "n_sat", "n_ref", "sigma", "digitize", "readout_oversampling"});
    DetectorConfig det;
    det.k_max = static_cast<int>(get_integer(node, "detector", "k_max", det.k_max));
    if (node.contains("n_sat") && node.at("n_sat").is_null()) {
        det.n_sat.reset();
    } else {
        det.n_sat = get_number(node, "detector", "n_sat", *det.n_sat);
    }
    det.n_ref = get_number(node, "detector", "n_ref", det.n_ref);
    det.sigma = get_number(node, "detector", "sigma", det.sigma);
    det.digitize = get_bool(node, "detector", "digitize", det.digitize);
    det.readout_oversampling =
        static_cast<int>(get_integer(node, "detector", "readout_oversampling", det.readout_oversampling));
    return det;
}

std::vector<MeasurementScheme> parse_schemes(const json &node) {
    if (!node.is_array()) {
        throw ConfigError("schemes: expected an array");
    }
    std::vector<MeasurementScheme> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        std::string where = "schemes[" + std::to_string(i) + "]";
        const auto &item = require_object(node[i], where);
        check_keys(item, where, {"kind", "a_w"});
        auto kind = get_string(item, where, "kind", "");
        if (kind == "CM") {
            if (item.contains("a_w")) {
                throw ConfigError(where + ": CM takes no a_w");
            }
            out.push_back(MeasurementScheme::conventional());
        } else if (kind == "WVA") {
            if (!item.contains("a_w")) {
                throw ConfigError(where + ".a_w: required for WVA");
            }
            double a = get_number(item, where, "a_w", 1.0);
            if (!(std::abs(a) >= 1.0)) {
                throw ConfigError(where + ".a_w: |A_w| must be at least 1");
            }
            out.push_back(MeasurementScheme::weak_value(a));
        } else {
            throw ConfigError(where + ".kind: expected \"CM\" or \"WVA\"");
        }
    }
    return out;
}

SweepSpec parse_sweep(const json &node) {
    require_object(node, "sweep");
    check_keys(node, "sweep", {"variable", "spacing", "min", "max", "points", "values"});
    SweepSpec sweep;
    auto var = get_string(node, "sweep", "variable", "n_bar");
    if (var == "n_bar") {
        sweep.variable = SweepVariable::NBar;
    } else if (var == "a_w") {
        sweep.variable = SweepVariable::AW;
    } else {
        throw ConfigError("sweep.variable: expected \"n_bar\" or \"a_w\"");
    }
    if (node.contains("values")) {
        for (auto key : {"spacing", "min", "max", "points"}) {
            if (node.contains(key)) {
                throw ConfigError(std::string("sweep.") + key + ": not allowed together with sweep.values");
            }
        }
        const auto &vals = node.at("values");
        if (!vals.is_array()) {
            throw ConfigError("sweep.values: expected an array of numbers");
        }
        std::vector<double> v;
        for (const auto &x : vals) {
            if (!x.is_number() || !std::isfinite(x.get<double>())) {
                throw ConfigError("sweep.values: expected an array of finite numbers");
            }
            v.push_back(x.get<double>());
        }
        sweep.explicit_values = std::move(v);
        return sweep;
    }
    auto spacing = get_string(node, "sweep", "spacing", "log");
    if (spacing == "log") {
        sweep.spacing = SweepSpacing::Log;
    } else if (spacing == "linear") {
        sweep.spacing = SweepSpacing::Linear;
    } else {
        throw ConfigError("sweep.spacing: expected \"log\" or \"linear\"");
    }
    sweep.min = get_number(node, "sweep", "min", sweep.min);
    sweep.max = get_number(node, "sweep", "max", sweep.max);
    sweep.points = get_count(node, "sweep", "points", sweep.points);
    return sweep;
}

TruncationPolicy parse_truncation(const json &node) {
    require_object(node, "truncation");
    check_keys(node, "truncation", {"tail_epsilon", "prob_floor"});
    TruncationPolicy p;
    p.tail_epsilon = get_number(node, "truncation", "tail_epsilon", p.tail_epsilon);
    p.prob_floor = get_number(node, "truncation", "prob_floor", p.prob_floor);
    return p;
}

OutputSpec parse_output(const json &node) {
    require_object(node, "output");
    check_keys(node, "output", {"csv", "json"});
    return {get_path(node, "output", "csv"), get_path(node, "output", "json")};
}

EffectMatrixSpec parse_effect_matrix(const json &node) {
    require_object(node, "effect_matrix");
    check_keys(node, "effect_matrix", {"ideal_pixels", "margin"});
    EffectMatrixSpec e;
    e.ideal_pixels = get_count(node, "effect_matrix", "ideal_pixels", e.ideal_pixels);
    e.margin = get_number(node, "effect_matrix", "margin", e.margin);
    return e;
}

EstimatorKind parse_estimator(const json &node, const std::string &where) {
    if (node.is_string()) {
        auto s = node.get<std::string>();
        if (s == "MLE") {
            return EstimatorKind::MaximumLikelihood;
        }
        if (s == "CenterOfMass") {
            return EstimatorKind::CenterOfMass;
        }
    }
    throw ConfigError(where + ": expected \"MLE\" or \"CenterOfMass\"");
}

EstimateSpec parse_estimate(const json &node) {
    require_object(node, "estimate");
    check_keys(node, "estimate", {"estimators", "frames", "interval", "table_nodes"});
    EstimateSpec e;
    if (node.contains("estimators")) {
        const auto &list = node.at("estimators");
        if (!list.is_array() || list.empty()) {
            throw ConfigError("estimate.estimators: expected a non-empty array");
        }
        e.estimators.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            e.estimators.push_back(parse_estimator(list[i], "estimate.estimators[" + std::to_string(i) + "]"));
        }
    }
    e.frames = get_count(node, "estimate", "frames", e.frames);
    e.table_nodes = get_count(node, "estimate", "table_nodes", e.table_nodes);
    if (node.contains("interval") && !node.at("interval").is_null()) {
        const auto &iv = node.at("interval");
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
            throw ConfigError("estimate.interval: expected [lo, hi]");
        }
        e.interval = SearchInterval{iv[0].get<double>(), iv[1].get<double>()};
    }
    return e;
}

}  // namespace

std::vector<double> SweepSpec::values() const {
    if (explicit_values) {
        return *explicit_values;
    }
    std::vector<double> out;
    out.reserve(points);
    if (points == 1) {
        out.push_back(min);
        return out;
    }
    for (std::size_t i = 0; i < points; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(points - 1);
        double v = 0.0;
        if (spacing == SweepSpacing::Log) {
            v = std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
        } else {
            double last = static_cast<double>(points - 1);
            double k = static_cast<double>(i);
            v = (min * (last - k) + max * k) / last;
        }
        out.push_back(v);
    }
    // endpoints exactly as written
    if (!out.empty()) {
        out.front() = min;
        out.back() = max;
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (schema_version != kSchemaVersion) {
        throw ConfigError("schema_version: unsupported version " + std::to_string(schema_version));
    }
    try {
        beam.validate();
        detector.validate();
        truncation.validate();
        for (const auto &s : schemes) {
            s.validate();
        }
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
    if (grid.pixels == 0) {
        throw ConfigError("grid.pixels: must be positive");
    }
    if (!(grid.half_span_w > 0.0)) {
        throw ConfigError("grid.half_span_w: must be positive");
    }
    if (detector.pixels && *detector.pixels != grid.pixels) {
        throw ConfigError("detector pixel count does not match grid.pixels");
    }
    if (sweep) {
        const auto &s = *sweep;
        if (!s.explicit_values) {
            if (!(s.min <= s.max)) {
                throw ConfigError("sweep: min must not exceed max");
            }
            if (s.spacing == SweepSpacing::Log && s.points > 0 && !(s.min > 0.0)) {
                throw ConfigError("sweep: log spacing needs min > 0");
            }
        }
        for (double v : s.values()) {
            if (s.variable == SweepVariable::NBar && !(v >= 0.0)) {
                throw ConfigError("sweep: n_bar values must be non-negative");
            }
            if (s.variable == SweepVariable::AW && !(std::abs(v) >= 1.0)) {
                throw ConfigError("sweep: A_w values must satisfy |A_w| >= 1");
            }
        }
    }
    if (effect_matrix) {
        if (effect_matrix->ideal_pixels == 0) {
            throw ConfigError("effect_matrix.ideal_pixels: must be positive");
        }
        if (!(effect_matrix->margin >= 0.0)) {
            throw ConfigError("effect_matrix.margin: must be non-negative");
        }
    }
    if (estimate) {
        if (estimate->frames < 100) {
            throw ConfigError("estimate.frames: at least 100 frames are required");
        }
        if (estimate->table_nodes < 4) {
            throw ConfigError("estimate.table_nodes: at least 4 nodes are required");
        }
        if (estimate->interval && !(estimate->interval->lo < estimate->interval->hi)) {
            throw ConfigError("estimate.interval: lo must be below hi");
        }
    }
}

ExperimentConfig parse_config(const json &doc) {
    require_object(doc, "config");
    check_keys(doc, "", {"schema_version", "name", "beam", "grid", "detector", "schemes", "sweep", "truncation",
                         "output", "seed", "effect_matrix", "estimate"});
    if (!doc.contains("schema_version")) {
        throw ConfigError("schema_version: missing");
    }
    ExperimentConfig cfg;
    cfg.schema_version = static_cast<int>(get_integer(doc, "", "schema_version", 0));
    if (cfg.schema_version != kSchemaVersion) {
        throw ConfigError("schema_version: unsupported version " + std::to_string(cfg.schema_version));
    }
    cfg.name = get_string(doc, "", "name", "");
    if (doc.contains("beam")) {
        cfg.beam = parse_beam(doc.at("beam"));
    }
    if (doc.contains("grid")) {
        cfg.grid = parse_grid(doc.at("grid"));
    }
    if (doc.contains("detector")) {
        cfg.detector = parse_detector(doc.at("detector"));
    }
    if (doc.contains("schemes")) {
        cfg.schemes = parse_schemes(doc.at("schemes"));
    } else {
        cfg.schemes = {MeasurementScheme::conventional()};
    }
    if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
        cfg.sweep = parse_sweep(doc.at("sweep"));
    }
    if (doc.contains("truncation")) {
        cfg.truncation = parse_truncation(doc.at("truncation"));
    }
    if (doc.contains("output")) {
        cfg.output = parse_output(doc.at("output"));
    }
    if (doc.contains("seed")) {
        const auto &s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
            throw ConfigError("seed: expected a non-negative integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("effect_matrix") && !doc.at("effect_matrix").is_null()) {
        cfg.effect_matrix = parse_effect_matrix(doc.at("effect_matrix"));
    }
    if (doc.contains("estimate") && !doc.at("estimate").is_null()) {
        cfg.estimate = parse_estimate(doc.at("estimate"));
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_text(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

nlohmann::ordered_json to_json(const ExperimentConfig &cfg) {
    ojson doc;
    doc["schema_version"] = cfg.schema_version;
    doc["name"] = cfg.name;
    doc["beam"] = {{"w", cfg.beam.w}, {"g", cfg.beam.g}, {"center", cfg.beam.center}, {"n_bar", cfg.beam.n_bar}};
    doc["grid"] = {{"pixels", cfg.grid.pixels}, {"half_span_w", cfg.grid.half_span_w}};
    ojson det = {{"k_max", cfg.detector.k_max},
                {"n_ref", cfg.detector.n_ref},
                {"sigma", cfg.detector.sigma},
                {"digitize", cfg.detector.digitize},
                {"readout_oversampling", cfg.detector.readout_oversampling}};
    det["n_sat"] = cfg.detector.n_sat ? ojson(*cfg.detector.n_sat) : ojson(nullptr);
    doc["detector"] = det;
    ojson schemes = ojson::array();
    for (const auto &s : cfg.schemes) {
        if (s.kind == SchemeKind::Conventional) {
            schemes.push_back({{"kind", "CM"}});
        } else {
            schemes.push_back({{"kind", "WVA"}, {"a_w", s.a_w}});
        }
    }
    doc["schemes"] = schemes;
    if (cfg.sweep) {
        const auto &s = *cfg.sweep;
        ojson sw = {{"variable", s.variable == SweepVariable::NBar ? "n_bar" : "a_w"}};
        if (s.explicit_values) {
            sw["values"] = *s.explicit_values;
        } else {
            sw["spacing"] = s.spacing == SweepSpacing::Log ? "log" : "linear";
            sw["min"] = s.min;
            sw["max"] = s.max;
            sw["points"] = s.points;
        }
        doc["sweep"] = sw;
    } else {
        doc["sweep"] = nullptr;
    }
    doc["truncation"] = {{"tail_epsilon", cfg.truncation.tail_epsilon}, {"prob_floor", cfg.truncation.prob_floor}};
    doc["output"] = {{"csv", cfg.output.csv ? ojson(*cfg.output.csv) : ojson(nullptr)},
                     {"json", cfg.output.json ? ojson(*cfg.output.json) : ojson(nullptr)}};
    doc["seed"] = cfg.seed;
    if (cfg.effect_matrix) {
        doc["effect_matrix"] = {{"ideal_pixels", cfg.effect_matrix->ideal_pixels},
                                {"margin", cfg.effect_matrix->margin}};
    }
    if (cfg.estimate) {
        ojson names = ojson::array();
        for (auto k : cfg.estimate->estimators) {
            names.push_back(to_string(k));
        }
        ojson e = {{"estimators", names}, {"frames", cfg.estimate->frames}, {"table_nodes", cfg.estimate->table_nodes}};
        if (cfg.estimate->interval) {
            e["interval"] = {cfg.estimate->interval->lo, cfg.estimate->interval->hi};
        } else {
            e["interval"] = nullptr;
        }
        doc["estimate"] = e;
    }
    return doc;
}

namespace {

// Camera shared by the figure presets: 100 pixels over +/- 2 beam widths,
// 8-bit digitization.
const std::map<std::string, std::string> &presets() {
    static const std::map<std::string, std::string> table = {
        {"fig1a", R"({
  "schema_version": 1,
  "name": "fig1a",
  "beam": {"w": 0.8, "g": 0.11375, "center": 0.0, "n_bar": 125000},
  "grid": {"pixels": 100, "half_span_w": 2.5},
  "detector": {"k_max": 256, "n_sat": 500, "sigma": 2.56, "digitize": true},
  "schemes": [{"kind": "CM"}, {"kind": "WVA", "a_w": 3.2}]
})"},
        {"fig1b", R"({
  "schema_version": 1,
  "name": "fig1b",
  "beam": {"w": 1.0, "g": 0.01, "center": 0.0},
  "grid": {"pixels": 100, "half_span_w": 2.0},
  "detector": {"k_max": 256, "n_sat": 500, "sigma": 12.8, "digitize": true},
  "schemes": [{"kind": "CM"}, {"kind": "WVA", "a_w": 1.8}, {"kind": "WVA", "a_w": 2.4}, {"kind": "WVA", "a_w": 3.2}],
  "sweep": {"variable": "n_bar", "spacing": "log", "min": 100, "max": 1e7, "points": 41}
})"},
        {"fig1c", R"({
  "schema_version": 1,
  "name": "fig1c",
  "beam": {"w": 1.0, "g": 0.01, "center": 0.0},
  "grid": {"pixels": 100, "half_span_w": 2.0},
  "detector": {"k_max": 256, "n_sat": 100000, "sigma": 12.8, "digitize": true},
  "schemes": [{"kind": "CM"}, {"kind": "WVA", "a_w": 1.8}, {"kind": "WVA", "a_w": 2.4}, {"kind": "WVA", "a_w": 3.2}],
  "sweep": {"variable": "n_bar", "spacing": "log", "min": 100, "max": 1e7, "points": 41}
})"},
        {"fig2a", R"({
  "schema_version": 1,
  "name": "fig2a",
  "beam": {"w": 1.0, "g": 0.01, "center": 0.0},
  "grid": {"pixels": 100, "half_span_w": 2.0},
  "detector": {"k_max": 4096, "n_sat": 500, "sigma": 0.0, "digitize": true},
  "schemes": [{"kind": "CM"}, {"kind": "WVA", "a_w": 1.8}, {"kind": "WVA", "a_w": 2.4}, {"kind": "WVA", "a_w": 3.2}],
  "sweep": {"variable": "n_bar", "spacing": "log", "min": 100, "max": 250000, "points": 41}
})"},
        {"fig2b", R"({
  "schema_version": 1,
  "name": "fig2b",
  "beam": {"w": 1.0, "g": 0.01, "center": 0.0},
  "grid": {"pixels": 100, "half_span_w": 2.0},
  "detector": {"k_max": 256, "n_sat": 500, "sigma": 0.0, "digitize": true},
  "schemes": [{"kind": "CM"}, {"kind": "WVA", "a_w": 1.8}, {"kind": "WVA", "a_w": 2.4}, {"kind": "WVA", "a_w": 3.2}],
  "sweep": {"variable": "n_bar", "spacing": "log", "min": 100, "max": 250000, "points": 41}
})"},
        {"fig3a", R"({
  "schema_version": 1,
  "name": "fig3a",
  "beam": {"w": 1.0, "g": 0.01, "center": 0.0},
  "grid": {"pixels": 100, "half_span_w": 2.0},
  "detector": {"k_max": 256, "n_sat": 500, "sigma": 2.56, "digitize": true},
  "schemes": [{"kind": "CM"}, {"kind": "WVA", "a_w": 1.2}, {"kind": "WVA", "a_w": 1.5}, {"kind": "WVA", "a_w": 1.8},
              {"kind": "WVA", "a_w": 2.1}, {"kind": "WVA", "a_w": 2.4}, {"kind": "WVA", "a_w": 2.7},
              {"kind": "WVA", "a_w": 3.2}, {"kind": "WVA", "a_w": 3.9}],
  "sweep": {"variable": "n_bar", "spacing": "log", "min": 100, "max": 1e7, "points": 41}
})"},
        {"fig3b", R"({
  "schema_version": 1,
  "name": "fig3b",
  "beam": {"w": 1.0, "g": 0.01, "center": 0.0, "n_bar": 11500},
  "grid": {"pixels": 100, "half_span_w": 2.0},
  "detector": {"k_max": 256, "n_sat": 500, "sigma": 2.56, "digitize": true},
  "schemes": [{"kind": "CM"}],
  "sweep": {"variable": "a_w", "spacing": "linear", "min": 1.1, "max": 4.5, "points": 35}
})"},
        {"table1", R"({
  "schema_version": 1,
  "name": "table1",
  "beam": {"w": 1.0, "g": 0.01, "center": 0.0},
  "grid": {"pixels": 100, "half_span_w": 2.0},
  "detector": {"k_max": 256, "n_sat": 500, "sigma": 12.8, "digitize": true},
  "schemes": [{"kind": "CM"}, {"kind": "WVA", "a_w": 1.2}, {"kind": "WVA", "a_w": 1.5}, {"kind": "WVA", "a_w": 1.8},
              {"kind": "WVA", "a_w": 2.4}, {"kind": "WVA", "a_w": 3.2}, {"kind": "WVA", "a_w": 3.9}],
  "sweep": {"variable": "n_bar", "spacing": "log", "min": 100, "max": 1e7, "points": 21},
  "effect_matrix": {"ideal_pixels": 1000, "margin": 0.01}
})"},
        {"estimator", R"({
  "schema_version": 1,
  "name": "estimator",
  "beam": {"w": 1.0, "g": 0.01, "center": 0.0, "n_bar": 2000},
  "grid": {"pixels": 100, "half_span_w": 2.0},
  "detector": {"k_max": 256, "n_sat": null, "n_ref": 200, "sigma": 12.8, "digitize": true},
  "schemes": [{"kind": "CM"}],
  "estimate": {"estimators": ["MLE", "CenterOfMass"], "frames": 10000, "interval": [-0.5, 0.5], "table_nodes": 201},
  "seed": 20260101
})"},
    };
    return table;
}

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto &[name, text] : presets()) {
        out.push_back(name);
    }
    return out;
}

const std::string &preset_text(const std::string &name) {
    const auto &table = presets();
    auto it = table.find(name);
    if (it == table.end()) {
        std::string known;
        for (const auto &[n, t] : table) {
            known += (known.empty() ? "" : ", ") + n;
        }
        throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

ExperimentConfig load_preset(const std::string &name) { return parse_config_text(preset_text(name)); }

}  // namespace wvasat
