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

// Coordinate systems of the picocell scenario.
//
// S1 is the ground frame: origin on the ground at the mast foot, z up.
// S2 is centred on the RIS at (0, 0, h) and rotated by -alpha in the y-z
// plane, so that the RIS boresight (S2 +y) points down at the ground.
// Directions in S2 are (phi, theta): phi = atan2(x, y) is the azimuth about
// the S2 z-axis, theta the elevation above the S2 x-y plane, positive toward
// +z. With this convention ground points nearer than the boresight
// intercept have theta < 0 and farther ones theta > 0.

#include <Eigen/Dense>

#include <numbers>

namespace amafris {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

constexpr double speed_of_light = 299792458.0;

struct Direction {
    double phi = 0.0;   // azimuth, radians, (-pi, pi]
    double theta = 0.0; // elevation, radians, [-pi/2, pi/2]

    static Direction from_degrees(double phi_deg, double theta_deg) {
        return {deg_to_rad(phi_deg), deg_to_rad(theta_deg)};
    }
    bool operator==(const Direction&) const = default;
};

struct SphericalPoint {
    double rho = 0.0;
    Direction direction;
};

struct GroundPoint {
    double x = 0.0; // meters
    double y = 0.0; // meters
};

struct ScenarioGeometry {
    double mast_height_m = 20.0;
    double downtilt_rad = 0.0;
    double r_min_m = 10.0;
    double r_max_m = 100.0;
    double azimuth_span_rad = deg_to_rad(60.0); // half-width of the served sector
    double wavelength_m = speed_of_light / 100e9;

    // Throws std::invalid_argument if any invariant is violated.
    void validate() const;
};

// Rotation taking S1 offsets to S2 coordinates for downtilt alpha.
Mat3 downtilt_rotation(double downtilt_rad);

Vec3 s1_to_s2(const Vec3& p, const ScenarioGeometry& g);
Vec3 s2_to_s1(const Vec3& p_check, const ScenarioGeometry& g);

// Throws degenerate_direction_error for the zero vector.
SphericalPoint spherical_from_s2(const Vec3& p_check);
Vec3 s2_from_spherical(double rho, const Direction& d);

SphericalPoint ground_to_direction(const GroundPoint& p, const ScenarioGeometry& g);

// Ground point seen along S2 direction d. Throws no_intercept_error when the
// ray does not descend toward the ground.
GroundPoint direction_to_ground(const Direction& d, const ScenarioGeometry& g);

// Downlook angle (below horizontal) of a ground point at range r: acot(r/h).
double downlook_angle(double ground_range_m, double mast_height_m);

// Mean of the downlook angles at r_min and r_max.
double mean_downtilt(const ScenarioGeometry& g);

// Ground range h / tan(alpha) hit by the RIS boresight.
double boresight_ground_intercept(const ScenarioGeometry& g);

// Worst-case composite cell-edge direction: the sector half-span in azimuth
// combined with the largest elevation offset from boresight. This is not
// the direction of any single ground point; use ground_to_direction for
// physical users.
Direction cell_edge_composite_direction(const ScenarioGeometry& g);

// Picocell defaults: h = 20 m, 10..100 m range, +/-60 deg, 100 GHz, and the
// downtilt set to mean_downtilt.
ScenarioGeometry default_geometry();

// Ground point from sector polar coordinates. Azimuth is measured from the
// boresight ground projection (+y) toward +x.
GroundPoint ground_from_polar(double azimuth_rad, double range_m);

} // namespace amafris
