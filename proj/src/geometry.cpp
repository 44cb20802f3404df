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

#include "amafris/geometry.hpp"

#include "amafris/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amafris {

void ScenarioGeometry::validate() const
{
    if (!(mast_height_m > 0.0))
        throw std::invalid_argument("mast height must be positive");
    if (!(r_min_m > 0.0) || !(r_max_m > 0.0) || !(r_min_m < r_max_m))
        throw std::invalid_argument("cell range requires 0 < r_min < r_max");
    if (!(downtilt_rad > 0.0) || !(downtilt_rad < std::numbers::pi / 2))
        throw std::invalid_argument("downtilt must lie in (0, pi/2)");
    if (!(azimuth_span_rad > 0.0) || azimuth_span_rad > std::numbers::pi)
        throw std::invalid_argument("azimuth half-span must lie in (0, pi]");
    if (!(wavelength_m > 0.0))
        throw std::invalid_argument("wavelength must be positive");
}

Mat3 downtilt_rotation(double downtilt_rad)
{
    const double c = std::cos(downtilt_rad);
    const double s = std::sin(downtilt_rad);
    Mat3 r;
    r << 1.0, 0.0, 0.0,
         0.0, c, -s,
         0.0, s, c;
    return r;
}

Vec3 s1_to_s2(const Vec3& p, const ScenarioGeometry& g)
{
    return downtilt_rotation(g.downtilt_rad) * (p - Vec3(0.0, 0.0, g.mast_height_m));
}

Vec3 s2_to_s1(const Vec3& p_check, const ScenarioGeometry& g)
{
    return downtilt_rotation(g.downtilt_rad).transpose() * p_check + Vec3(0.0, 0.0, g.mast_height_m);
}

SphericalPoint spherical_from_s2(const Vec3& p_check)
{
    const double rho = p_check.norm();
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw degenerate_direction_error();
    // asin of a clamped ratio keeps theta inside [-pi/2, pi/2] under rounding
    const double sin_theta = std::clamp(p_check.z() / rho, -1.0, 1.0);
    double phi = std::atan2(p_check.x(), p_check.y());
    if (phi <= -std::numbers::pi)
        phi = std::numbers::pi;
    return {rho, {phi, std::asin(sin_theta)}};
}

Vec3 s2_from_spherical(double rho, const Direction& d)
{
    const double ct = std::cos(d.theta);
    return rho * Vec3(std::sin(d.phi) * ct, std::cos(d.phi) * ct, std::sin(d.theta));
}

SphericalPoint ground_to_direction(const GroundPoint& p, const ScenarioGeometry& g)
{
    return spherical_from_s2(s1_to_s2(Vec3(p.x, p.y, 0.0), g));
}

GroundPoint direction_to_ground(const Direction& d, const ScenarioGeometry& g)
{
    const Vec3 ray = downtilt_rotation(g.downtilt_rad).transpose() * s2_from_spherical(1.0, d);
    if (!(ray.z() < -1e-12))
        throw no_intercept_error();
    const double t = g.mast_height_m / -ray.z();
    return {t * ray.x(), t * ray.y()};
}

double downlook_angle(double ground_range_m, double mast_height_m)
{
    return std::atan2(mast_height_m, ground_range_m);
}

double mean_downtilt(const ScenarioGeometry& g)
{
    return 0.5 * (downlook_angle(g.r_min_m, g.mast_height_m) + downlook_angle(g.r_max_m, g.mast_height_m));
}

double boresight_ground_intercept(const ScenarioGeometry& g)
{
    if (!(g.downtilt_rad > 0.0) || !(g.downtilt_rad < std::numbers::pi / 2))
        throw no_intercept_error();
    return g.mast_height_m / std::tan(g.downtilt_rad);
}

Direction cell_edge_composite_direction(const ScenarioGeometry& g)
{
    const double near = downlook_angle(g.r_min_m, g.mast_height_m);
    const double far = downlook_angle(g.r_max_m, g.mast_height_m);
    return {g.azimuth_span_rad, 0.5 * (near - far)};
}

ScenarioGeometry default_geometry()
{
    ScenarioGeometry g;
    g.downtilt_rad = mean_downtilt(g);
    return g;
}

GroundPoint ground_from_polar(double azimuth_rad, double range_m)
{
    return {range_m * std::sin(azimuth_rad), range_m * std::cos(azimuth_rad)};
}

} // namespace amafris
