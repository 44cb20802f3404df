// SPDX-License-Identifier: Apache-2.0
//
// amafris: array-fed RIS multibeam base station simulation library
// Copyright (C) 2026 The amafris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Far-field response of planar standard rectangular arrays (SRA).
//
// All lengths here are in half-wavelength units. Arrays lie in the S2 x-z
// plane with boresight along +y. Elements are enumerated row by row:
// index k = m * n_x + n for column n (x) and row m (z).

#include "amafris/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace amafris {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

class ArrayLayout {
public:
    // n_x by n_z SRA centred on `center`, unit spacing.
    ArrayLayout(int n_x, int n_z, const Vec3& center = Vec3::Zero());

    int n_x() const { return n_x_; }
    int n_z() const { return n_z_; }
    std::size_t size() const { return static_cast<std::size_t>(n_x_) * static_cast<std::size_t>(n_z_); }
    const Vec3& center() const { return center_; }

    double x(int n) const { return center_.x() + n - 0.5 * (n_x_ - 1); }
    double z(int m) const { return center_.z() + m - 0.5 * (n_z_ - 1); }
    double y() const { return center_.y(); }

    Vec3 position(std::size_t k) const;
    std::vector<Vec3> positions() const;

    // Aperture width along x and z, counting one unit cell per element.
    double width_x() const { return n_x_; }
    double width_z() const { return n_z_; }

    ArrayLayout translated(const Vec3& offset) const { return ArrayLayout(n_x_, n_z_, center_ + offset); }

    bool operator==(const ArrayLayout&) const = default;

private:
    int n_x_;
    int n_z_;
    Vec3 center_;
};

using ElementPattern = std::function<double(const Direction&)>;

// Unit vector of a plane wave leaving along direction d.
Vec3 wavefront_normal(const Direction& d);

// a_k = exp(-j pi p_k . n(d)).
ComplexVector steering_vector(const ArrayLayout& layout, const Direction& d);

// Axisymmetric patch element, 4 cos^2(psi) with cos(psi) = cos(phi) cos(theta).
double patch_gain(const Direction& d);
double isotropic_gain(const Direction& d);

// a(d)^H w, evaluated with the separable row/column phase factors.
Complex array_factor(const ArrayLayout& layout, const ComplexVector& weights, const Direction& d);

// G(d) = element(d) |a(d)^H w|^2. Throws dimension_error on a length mismatch.
double radiation_pattern(const ArrayLayout& layout, const ComplexVector& weights, const Direction& d,
                         const ElementPattern& element = patch_gain);

// A set of RIS apertures radiating together, e.g. one column of a stacked
// transmission matrix spread over its K modules.
struct Aperture {
    ArrayLayout layout;
    ComplexVector weights;
};

Complex array_factor(std::span<const Aperture> apertures, const Direction& d);
double radiation_pattern(std::span<const Aperture> apertures, const Direction& d,
                         const ElementPattern& element = patch_gain);

// w / ||w||; zero vectors are returned unchanged.
ComplexVector unit_power(const ComplexVector& weights);

struct AngleRange {
    double min_deg = -90.0;
    double max_deg = 90.0;
};

// Gain sampled on a uniform (phi, theta) grid. gain(i, j) is the linear gain
// at theta_deg[i], phi_deg[j]: one row per elevation sample.
struct PatternGrid {
    std::vector<double> phi_deg;
    std::vector<double> theta_deg;
    Eigen::MatrixXd gain;

    Direction direction(Eigen::Index i, Eigen::Index j) const
    {
        return Direction::from_degrees(phi_deg[static_cast<std::size_t>(j)], theta_deg[static_cast<std::size_t>(i)]);
    }
};

// Uniform samples from min to max inclusive (the last sample is clipped to
// max when the span is not a multiple of the step).
std::vector<double> uniform_axis(double min, double max, double step);

PatternGrid pattern_grid(std::span<const Aperture> apertures, const AngleRange& phi, const AngleRange& theta,
                         double resolution_deg, const ElementPattern& element = patch_gain);
PatternGrid pattern_grid(const ArrayLayout& layout, const ComplexVector& weights, const AngleRange& phi,
                         const AngleRange& theta, double resolution_deg, const ElementPattern& element = patch_gain);

struct SidelobeReport {
    double peak_dbi = 0.0;
    Direction peak_direction;
    double sidelobe_rel_db = 0.0;   // max gain outside the exclusion cone, relative to peak
    double exclusion_deg = 0.0;     // half-angle of the cone actually used
    double beamwidth_3db_deg = 0.0; // full width estimated from the grid
};

// Angle between two directions in degrees.
double angular_separation_deg(const Direction& a, const Direction& b);

// Full 3 dB beamwidth: twice the largest angular distance from the peak over
// the connected half-power region containing the peak.
double estimate_beamwidth_3db_deg(const PatternGrid& grid);

// Default exclusion half-angle is 3x the estimated 3 dB beamwidth.
// Throws error if no grid point lies outside the exclusion cone.
SidelobeReport peak_and_sidelobe(const PatternGrid& grid, std::optional<double> mainlobe_exclusion_deg = std::nullopt);

// Ground-plane gain samples in S1. gain(i, j) is at y_m[i], x_m[j]; points
// outside the served sector hold NaN. Several beams combine by taking the
// maximum gain per point.
struct FootprintGrid {
    std::vector<double> x_m;
    std::vector<double> y_m;
    Eigen::MatrixXd gain;
};

struct FootprintPeak {
    double gain_dbi = 0.0;
    GroundPoint location;
};

FootprintGrid footprint_grid(std::span<const std::vector<Aperture>> beams, const ScenarioGeometry& g,
                             double resolution_m, const ElementPattern& element = patch_gain);

FootprintPeak footprint_peak(const FootprintGrid& grid);

// Local maxima of a footprint above `floor_rel_db` relative to the global peak.
std::vector<FootprintPeak> footprint_local_peaks(const FootprintGrid& grid, double floor_rel_db);

// CSV: header row with the phi (or x) axis, then one line per theta (or y)
// sample: the axis value followed by gain in dBi.
void write_pattern_csv(std::ostream& os, const PatternGrid& grid);
void write_footprint_csv(std::ostream& os, const FootprintGrid& grid);

} // namespace amafris
