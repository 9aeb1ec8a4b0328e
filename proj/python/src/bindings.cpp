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


#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wvasat/experiment.hpp"

namespace py = pybind11;
using namespace wvasat;

namespace {

std::string table_csv(const Table &table) {
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

ExperimentConfig config_from(const std::string &preset, const std::string &text) {
    if (!preset.empty() && !text.empty()) {
        throw ConfigError("pass either preset or config text, not both");
    }
    return text.empty() ? load_preset(preset) : parse_config_text(text);
}

}  // namespace

PYBIND11_MODULE(_wvasat, m) {
    m.doc() = "Fisher information of saturating, digitizing, noisy, pixelated cameras";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalDiagnosticError>(m, "NumericalDiagnosticError", PyExc_ArithmeticError);

    py::class_<BeamSpec>(m, "BeamSpec")
        .def(py::init([](double w, double n_bar, double g, double center) { return BeamSpec{w, n_bar, g, center}; }),
             py::arg("w") = 1.0, py::arg("n_bar") = 0.0, py::arg("g") = 0.0, py::arg("center") = 0.0)
        .def_readwrite("w", &BeamSpec::w)
        .def_readwrite("n_bar", &BeamSpec::n_bar)
        .def_readwrite("g", &BeamSpec::g)
        .def_readwrite("center", &BeamSpec::center);

    py::class_<MeasurementScheme>(m, "MeasurementScheme")
        .def_static("conventional", &MeasurementScheme::conventional)
        .def_static("weak_value", &MeasurementScheme::weak_value, py::arg("a_w"))
        .def_readonly("a_w", &MeasurementScheme::a_w)
        .def_readonly("p_ps", &MeasurementScheme::p_ps)
        .def_property_readonly("id", &MeasurementScheme::id)
        .def("__repr__", [](const MeasurementScheme &s) {
            return "<MeasurementScheme " + s.id() + " a_w=" + std::to_string(s.a_w) + ">";
        });

    py::class_<PixelGrid>(m, "PixelGrid")
        .def(py::init<std::size_t, double, double>(), py::arg("pixels"), py::arg("x_min"), py::arg("x_max"))
        .def_static("centered", &PixelGrid::centered, py::arg("pixels"), py::arg("w"), py::arg("half_span_w") = 5.0,
                    py::arg("center") = 0.0)
        .def("__len__", &PixelGrid::size)
        .def_property_readonly("edges", &PixelGrid::edges)
        .def("pixel_centers", &PixelGrid::pixel_centers);

    py::class_<DetectorConfig>(m, "DetectorConfig")
        .def(py::init<>())
        .def_readwrite("k_max", &DetectorConfig::k_max)
        .def_readwrite("n_sat", &DetectorConfig::n_sat)
        .def_readwrite("n_ref", &DetectorConfig::n_ref)
        .def_readwrite("sigma", &DetectorConfig::sigma)
        .def_readwrite("digitize", &DetectorConfig::digitize)
        .def_readwrite("readout_oversampling", &DetectorConfig::readout_oversampling);

    py::class_<TruncationPolicy>(m, "TruncationPolicy")
        .def(py::init<>())
        .def_readwrite("tail_epsilon", &TruncationPolicy::tail_epsilon)
        .def_readwrite("prob_floor", &TruncationPolicy::prob_floor);

    py::class_<FIResult>(m, "FIResult")
        .def_readonly("per_pixel", &FIResult::per_pixel)
        .def_readonly("total", &FIResult::total)
        .def_property_readonly("max_tail_mass", &FIResult::max_tail_mass);

    py::class_<FdCheck>(m, "FdCheck")
        .def_readonly("analytic_total", &FdCheck::analytic_total)
        .def_readonly("fd_total", &FdCheck::fd_total)
        .def_readonly("total_deviation", &FdCheck::total_deviation)
        .def_readonly("max_deviation", &FdCheck::max_deviation)
        .def_readonly("resolvable", &FdCheck::resolvable);

    m.def("pixel_mean_photons", &pixel_mean_photons, py::arg("beam"), py::arg("scheme"), py::arg("grid"));
    m.def("mean_response", &mean_response, py::arg("photons"), py::arg("cfg"));
    m.def("expected_counts",
          py::overload_cast<double, const DetectorConfig &, const TruncationPolicy &>(&expected_counts),
          py::arg("n_bar_j"), py::arg("cfg"), py::arg("policy") = TruncationPolicy{});
    m.def("fisher_total", &fisher_total, py::arg("beam"), py::arg("scheme"), py::arg("grid"), py::arg("cfg"),
          py::arg("policy") = TruncationPolicy{}, py::arg("threads") = 1u, py::call_guard<py::gil_scoped_release>());
    m.def("poisson_fisher_total", &poisson_fisher_total, py::arg("beam"), py::arg("scheme"), py::arg("grid"));
    m.def("fisher_fd_check", &fisher_fd_check, py::arg("beam"), py::arg("scheme"), py::arg("grid"), py::arg("cfg"),
          py::arg("policy") = TruncationPolicy{}, py::arg("step") = 1e-5, py::arg("threads") = 1u,
          py::call_guard<py::gil_scoped_release>());

    m.def("preset_names", &preset_names);
    m.def("dump_preset", [](const std::string &name) { return to_json(load_preset(name)).dump(2); }, py::arg("name"));

    m.def(
        "fi_sweep_csv",
        [](const std::string &preset, const std::string &config, unsigned threads) {
            auto cfg = config_from(preset, config);
            py::gil_scoped_release release;
            return table_csv(sweep_table(run_fi_sweep(cfg, {threads, false})));
        },
        py::arg("preset") = "", py::arg("config") = "", py::arg("threads") = 1u);
    m.def(
        "aw_scan_csv",
        [](const std::string &preset, const std::string &config, unsigned threads) {
            auto cfg = config_from(preset, config);
            py::gil_scoped_release release;
            return table_csv(sweep_table(run_aw_scan(cfg, {threads, false})));
        },
        py::arg("preset") = "", py::arg("config") = "", py::arg("threads") = 1u);
    m.def(
        "profiles_csv",
        [](const std::string &preset, const std::string &config) {
            return table_csv(profile_table(render_profiles(config_from(preset, config))));
        },
        py::arg("preset") = "", py::arg("config") = "");
}
