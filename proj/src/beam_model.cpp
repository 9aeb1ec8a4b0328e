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


#include "wvasat/beam_model.hpp"

#include <cmath>
#include <stdexcept>

#include "wvasat/numeric.hpp"

namespace wvasat {

void BeamSpec::validate() const {
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw std::domain_error("beam width must be positive and finite");
    }
    if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
        throw std::domain_error("mean photon number must be non-negative and finite");
    }
    if (!std::isfinite(g) || !std::isfinite(center)) {
        throw std::domain_error("beam shift and center must be finite");
    }
}

MeasurementScheme MeasurementScheme::conventional() {
    return {SchemeKind::Conventional, 1.0, 1.0};
}

MeasurementScheme MeasurementScheme::weak_value(double a_w) {
    if (!std::isfinite(a_w) || std::abs(a_w) < 1.0) {
        throw std::domain_error("weak value must satisfy |A_w| >= 1");
    }
    return {SchemeKind::WeakValue, a_w, 1.0 / (1.0 + a_w * a_w)};
}

std::string MeasurementScheme::id() const {
    return kind == SchemeKind::Conventional ? "CM" : "WVA";
}

void MeasurementScheme::validate() const {
    if (kind == SchemeKind::Conventional) {
        if (a_w != 1.0 || p_ps != 1.0) {
            throw std::domain_error("conventional measurement requires A_w = 1 and p_ps = 1");
        }
        return;
    }
    if (!std::isfinite(a_w) || std::abs(a_w) < 1.0) {
        throw std::domain_error("weak value must satisfy |A_w| >= 1");
    }
    if (std::abs(p_ps * (1.0 + a_w * a_w) - 1.0) > 1e-15) {
        throw std::domain_error("post-selection probability must equal 1/(1 + A_w^2)");
    }
}

PixelGrid::PixelGrid(std::size_t pixels, double x_min, double x_max) {
    if (pixels == 0) {
        throw std::invalid_argument("pixel grid needs at least one pixel");
    }
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw std::invalid_argument("pixel grid span must satisfy x_min < x_max");
    }
    edges_.resize(pixels + 1);
    double width = x_max - x_min;
    for (std::size_t j = 0; j < pixels; ++j) {
        edges_[j] = x_min + width * static_cast<double>(j) / static_cast<double>(pixels);
    }
    edges_[pixels] = x_max;
    for (std::size_t j = 0; j < pixels; ++j) {
        if (!(edges_[j] < edges_[j + 1])) {
            throw std::invalid_argument("pixel grid too fine for floating point span");
        }
    }
}

PixelGrid PixelGrid::centered(std::size_t pixels, double w, double half_span_w, double center) {
    if (!(w > 0.0) || !(half_span_w > 0.0)) {
        throw std::invalid_argument("centered grid needs positive width and span");
    }
    return PixelGrid(pixels, center - half_span_w * w, center + half_span_w * w);
}

std::vector<double> PixelGrid::pixel_centers() const {
    std::vector<double> out(size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = pixel_center(j);
    }
    return out;
}

PixelGrid PixelGrid::slice(std::size_t begin, std::size_t end) const {
    if (begin >= end || end > size()) {
        throw std::out_of_range("pixel slice out of range");
    }
    return PixelGrid(std::vector<double>(edges_.begin() + static_cast<std::ptrdiff_t>(begin),
                                         edges_.begin() + static_cast<std::ptrdiff_t>(end) + 1));
}

double gaussian_density(double x, double w) {
    if (!(w > 0.0)) {
        throw std::domain_error("gaussian width must be positive");
    }
    double u = x / w;
    return kInvSqrt2Pi / w * std::exp(-0.5 * u * u);
}

std::vector<double> pixel_mean_photons(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid) {
    beam.validate();
    double scale = beam.n_bar * scheme.p_ps;
    double s = scheme.effective_shift(beam.g) + beam.center;
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        double a = (grid.lower_edge(j) - s) / beam.w;
        double b = (grid.upper_edge(j) - s) / beam.w;
        out[j] = scale * standard_normal_mass(a, b);
    }
    return out;
}

std::vector<double> pixel_mean_photons_deriv(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid) {
    beam.validate();
    double scale = beam.n_bar * scheme.p_ps * scheme.a_w;
    double s = scheme.effective_shift(beam.g) + beam.center;
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = scale * (gaussian_density(grid.lower_edge(j) - s, beam.w) -
                          gaussian_density(grid.upper_edge(j) - s, beam.w));
    }
    return out;
}

}  // namespace wvasat
