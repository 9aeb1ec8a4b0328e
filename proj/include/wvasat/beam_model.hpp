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
#include <string>
#include <vector>

namespace wvasat {

/// Gaussian transverse beam profile plus the shift being estimated.
struct BeamSpec {
    double w = 1.0;       ///< beam width (standard deviation of the intensity profile)
    double n_bar = 0.0;   ///< total mean photon number of the coherent state
    double g = 0.0;       ///< true transverse shift
    double center = 0.0;  ///< nominal (unshifted) beam center

    /// Throws std::domain_error unless w > 0 and n_bar >= 0.
    void validate() const;
};

enum class SchemeKind { Conventional, WeakValue };

/// How the shift is read out. Conventional measurement sees the bare shift
/// with every photon; weak-value amplification sees the shift multiplied by
/// `a_w` but only the post-selected fraction `p_ps` of the photons.
struct MeasurementScheme {
    SchemeKind kind = SchemeKind::Conventional;
    double a_w = 1.0;
    double p_ps = 1.0;

    static MeasurementScheme conventional();

    /// Weak-value scheme for the pre-selection (|H> + |V>)/sqrt(2) with a real
    /// post-selection; forces p_ps = 1 / (1 + a_w^2). Requires |a_w| >= 1.
    static MeasurementScheme weak_value(double a_w);

    double effective_shift(double g) const { return a_w * g; }
    double effective_brightness(double n_bar) const { return p_ps * n_bar; }

    /// "CM" or "WVA".
    std::string id() const;

    /// Throws std::domain_error if the scheme violates its kind's invariants.
    void validate() const;
};

/// Uniform 1-D camera: `pixels` bins between x_min and x_max.
class PixelGrid {
public:
    PixelGrid(std::size_t pixels, double x_min, double x_max);

    /// Grid spanning center +/- half_span_w * w.
    static PixelGrid centered(std::size_t pixels, double w, double half_span_w = 5.0, double center = 0.0);

    std::size_t size() const { return edges_.size() - 1; }
    double x_min() const { return edges_.front(); }
    double x_max() const { return edges_.back(); }
    double bin_width() const { return (x_max() - x_min()) / static_cast<double>(size()); }
    const std::vector<double> &edges() const { return edges_; }
    double lower_edge(std::size_t j) const { return edges_[j]; }
    double upper_edge(std::size_t j) const { return edges_[j + 1]; }
    double pixel_center(std::size_t j) const { return 0.5 * (edges_[j] + edges_[j + 1]); }
    std::vector<double> pixel_centers() const;

    /// Pixels [begin, end) as a grid of their own; edges are copied exactly so
    /// per-pixel quantities computed on a slice match those of the full grid.
    PixelGrid slice(std::size_t begin, std::size_t end) const;

private:
    explicit PixelGrid(std::vector<double> edges) : edges_(std::move(edges)) {}
    std::vector<double> edges_;
};

/// Normalized Gaussian density e^{-x^2/(2w^2)} / (w sqrt(2 pi)).
double gaussian_density(double x, double w);

/// Mean photon number reaching each pixel.
std::vector<double> pixel_mean_photons(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid);

/// Derivative of each pixel's mean photon number with respect to g.
std::vector<double> pixel_mean_photons_deriv(const BeamSpec &beam, const MeasurementScheme &scheme, const PixelGrid &grid);

}  // namespace wvasat
