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

#include "amafris/array_response.hpp"

#include "amafris/csv.hpp"
#include "amafris/errors.hpp"
#include "amafris/units.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace amafris {

namespace {

constexpr double pi = std::numbers::pi;

Complex phasor(double phase) { return {std::cos(phase), std::sin(phase)}; }

void check_length(const ArrayLayout& layout, const ComplexVector& weights)
{
    if (static_cast<std::size_t>(weights.size()) != layout.size())
        throw dimension_error("weight vector length " + std::to_string(weights.size()) +
                              " does not match array size " + std::to_string(layout.size()));
}

} // namespace

ArrayLayout::ArrayLayout(int n_x, int n_z, const Vec3& center) : n_x_(n_x), n_z_(n_z), center_(center)
{
    if (n_x < 1 || n_z < 1)
        throw std::invalid_argument("array dimensions must be positive");
}

Vec3 ArrayLayout::position(std::size_t k) const
{
    const auto n = static_cast<int>(k % static_cast<std::size_t>(n_x_));
    const auto m = static_cast<int>(k / static_cast<std::size_t>(n_x_));
    return {x(n), y(), z(m)};
}

std::vector<Vec3> ArrayLayout::positions() const
{
    std::vector<Vec3> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k)
        out.push_back(position(k));
    return out;
}

Vec3 wavefront_normal(const Direction& d)
{
    const double ct = std::cos(d.theta);
    return {std::sin(d.phi) * ct, std::cos(d.phi) * ct, std::sin(d.theta)};
}

ComplexVector steering_vector(const ArrayLayout& layout, const Direction& d)
{
    const Vec3 n = wavefront_normal(d);
    ComplexVector a(static_cast<Eigen::Index>(layout.size()));
    for (std::size_t k = 0; k < layout.size(); ++k)
        a(static_cast<Eigen::Index>(k)) = phasor(-pi * layout.position(k).dot(n));
    return a;
}

double patch_gain(const Direction& d)
{
    const double c = std::cos(d.phi) * std::cos(d.theta);
    return 4.0 * c * c;
}

double isotropic_gain(const Direction&) { return 1.0; }

Complex array_factor(const ArrayLayout& layout, const ComplexVector& weights, const Direction& d)
{
    check_length(layout, weights);
    const Vec3 n = wavefront_normal(d);
    const int nx = layout.n_x();
    const int nz = layout.n_z();

    // conj(a_k) = exp(+j pi (x_n n_x + y n_y + z_m n_z)) factors per row and column
    std::vector<Complex> col(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i)
        col[static_cast<std::size_t>(i)] = phasor(pi * layout.x(i) * n.x());

    Complex total = 0.0;
    for (int m = 0; m < nz; ++m) {
        Complex row_sum = 0.0;
        const Eigen::Index base = static_cast<Eigen::Index>(m) * nx;
        for (int i = 0; i < nx; ++i)
            row_sum += col[static_cast<std::size_t>(i)] * weights(base + i);
        total += phasor(pi * layout.z(m) * n.z()) * row_sum;
    }
    return phasor(pi * layout.y() * n.y()) * total;
}

double radiation_pattern(const ArrayLayout& layout, const ComplexVector& weights, const Direction& d,
                         const ElementPattern& element)
{
    return element(d) * std::norm(array_factor(layout, weights, d));
}

Complex array_factor(std::span<const Aperture> apertures, const Direction& d)
{
    Complex total = 0.0;
    for (const auto& ap : apertures)
        total += array_factor(ap.layout, ap.weights, d);
    return total;
}

double radiation_pattern(std::span<const Aperture> apertures, const Direction& d, const ElementPattern& element)
{
    return element(d) * std::norm(array_factor(apertures, d));
}

ComplexVector unit_power(const ComplexVector& weights)
{
    const double norm = weights.norm();
    if (norm == 0.0)
        return weights;
    return weights / norm;
}

std::vector<double> uniform_axis(double min, double max, double step)
{
    if (!(step > 0.0))
        throw std::invalid_argument("grid resolution must be positive");
    if (!(max >= min))
        throw std::invalid_argument("empty grid range");
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> axis(count);
    for (std::size_t i = 0; i < count; ++i)
        axis[i] = std::min(max, min + static_cast<double>(i) * step);
    return axis;
}

PatternGrid pattern_grid(std::span<const Aperture> apertures, const AngleRange& phi, const AngleRange& theta,
                         double resolution_deg, const ElementPattern& element)
{
    PatternGrid grid;
    grid.phi_deg = uniform_axis(phi.min_deg, phi.max_deg, resolution_deg);
    grid.theta_deg = uniform_axis(theta.min_deg, theta.max_deg, resolution_deg);
    grid.gain.resize(static_cast<Eigen::Index>(grid.theta_deg.size()), static_cast<Eigen::Index>(grid.phi_deg.size()));
    for (Eigen::Index i = 0; i < grid.gain.rows(); ++i)
        for (Eigen::Index j = 0; j < grid.gain.cols(); ++j)
            grid.gain(i, j) = radiation_pattern(apertures, grid.direction(i, j), element);
    return grid;
}

PatternGrid pattern_grid(const ArrayLayout& layout, const ComplexVector& weights, const AngleRange& phi,
                         const AngleRange& theta, double resolution_deg, const ElementPattern& element)
{
    check_length(layout, weights);
    const Aperture single[] = {{layout, weights}};
    return pattern_grid(single, phi, theta, resolution_deg, element);
}

double angular_separation_deg(const Direction& a, const Direction& b)
{
    const Vec3 na = wavefront_normal(a);
    const Vec3 nb = wavefront_normal(b);
    // atan2 form stays accurate for nearly parallel vectors
    return rad_to_deg(std::atan2(na.cross(nb).norm(), na.dot(nb)));
}

namespace {

struct GridIndex {
    Eigen::Index i = 0;
    Eigen::Index j = 0;
};

GridIndex argmax(const Eigen::MatrixXd& m)
{
    GridIndex best;
    m.maxCoeff(&best.i, &best.j);
    return best;
}

} // namespace

double estimate_beamwidth_3db_deg(const PatternGrid& grid)
{
    if (grid.gain.size() == 0)
        throw std::invalid_argument("empty pattern grid");
    const GridIndex peak = argmax(grid.gain);
    const double threshold = grid.gain(peak.i, peak.j) * from_db(-3.0);
    const Direction peak_dir = grid.direction(peak.i, peak.j);

    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(grid.gain.rows(), grid.gain.cols(), false);
    std::deque<GridIndex> queue{peak};
    seen(peak.i, peak.j) = true;
    double widest = 0.0;
    while (!queue.empty()) {
        const GridIndex cur = queue.front();
        queue.pop_front();
        widest = std::max(widest, angular_separation_deg(peak_dir, grid.direction(cur.i, cur.j)));
        const GridIndex neighbours[] = {{cur.i - 1, cur.j}, {cur.i + 1, cur.j}, {cur.i, cur.j - 1}, {cur.i, cur.j + 1}};
        for (const auto& nb : neighbours) {
            if (nb.i < 0 || nb.j < 0 || nb.i >= grid.gain.rows() || nb.j >= grid.gain.cols())
                continue;
            if (seen(nb.i, nb.j) || grid.gain(nb.i, nb.j) < threshold)
                continue;
            seen(nb.i, nb.j) = true;
            queue.push_back(nb);
        }
    }
    return 2.0 * widest;
}

SidelobeReport peak_and_sidelobe(const PatternGrid& grid, std::optional<double> mainlobe_exclusion_deg)
{
    if (grid.gain.size() == 0)
        throw std::invalid_argument("empty pattern grid");
    const GridIndex peak = argmax(grid.gain);
    const double peak_gain = grid.gain(peak.i, peak.j);

    SidelobeReport report;
    report.peak_direction = grid.direction(peak.i, peak.j);
    report.peak_dbi = to_db(peak_gain);
    report.beamwidth_3db_deg = estimate_beamwidth_3db_deg(grid);
    report.exclusion_deg = mainlobe_exclusion_deg.value_or(3.0 * report.beamwidth_3db_deg);

    double sidelobe = -1.0;
    for (Eigen::Index i = 0; i < grid.gain.rows(); ++i)
        for (Eigen::Index j = 0; j < grid.gain.cols(); ++j)
            if (angular_separation_deg(report.peak_direction, grid.direction(i, j)) > report.exclusion_deg)
                sidelobe = std::max(sidelobe, grid.gain(i, j));
    if (sidelobe < 0.0)
        throw error("pattern grid lies entirely inside the mainlobe exclusion cone");
    report.sidelobe_rel_db = to_db(sidelobe) - report.peak_dbi;
    return report;
}

FootprintGrid footprint_grid(std::span<const std::vector<Aperture>> beams, const ScenarioGeometry& g,
                             double resolution_m, const ElementPattern& element)
{
    if (!(resolution_m > 0.0))
        throw std::invalid_argument("grid resolution must be positive");
    const double x_max = g.r_max_m * std::sin(std::min(g.azimuth_span_rad, pi / 2));
    const double y_min = g.azimuth_span_rad >= pi / 2 ? -g.r_max_m : g.r_min_m * std::cos(g.azimuth_span_rad);

    FootprintGrid grid;
    // cells sit on integer multiples of the resolution so the mast foot is a grid node
    const double x_edge = std::floor(x_max / resolution_m + 1e-9) * resolution_m;
    grid.x_m = uniform_axis(-x_edge, x_edge, resolution_m);
    grid.y_m = uniform_axis(std::ceil(y_min / resolution_m - 1e-9) * resolution_m,
                            std::floor(g.r_max_m / resolution_m + 1e-9) * resolution_m, resolution_m);
    grid.gain.resize(static_cast<Eigen::Index>(grid.y_m.size()), static_cast<Eigen::Index>(grid.x_m.size()));

    for (std::size_t i = 0; i < grid.y_m.size(); ++i) {
        for (std::size_t j = 0; j < grid.x_m.size(); ++j) {
            const GroundPoint p{grid.x_m[j], grid.y_m[i]};
            const double range = std::hypot(p.x, p.y);
            double value = std::numeric_limits<double>::quiet_NaN();
            if (range >= g.r_min_m && range <= g.r_max_m && std::abs(std::atan2(p.x, p.y)) <= g.azimuth_span_rad + 1e-12) {
                const Direction d = ground_to_direction(p, g).direction;
                value = 0.0;
                for (const auto& beam : beams)
                    value = std::max(value, radiation_pattern(std::span<const Aperture>(beam), d, element));
            }
            grid.gain(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
        }
    }
    return grid;
}

FootprintPeak footprint_peak(const FootprintGrid& grid)
{
    FootprintPeak best{-std::numeric_limits<double>::infinity(), {}};
    for (Eigen::Index i = 0; i < grid.gain.rows(); ++i)
        for (Eigen::Index j = 0; j < grid.gain.cols(); ++j) {
            const double v = grid.gain(i, j);
            if (!std::isnan(v) && to_db(v) > best.gain_dbi)
                best = {to_db(v), {grid.x_m[static_cast<std::size_t>(j)], grid.y_m[static_cast<std::size_t>(i)]}};
        }
    if (!std::isfinite(best.gain_dbi))
        throw error("footprint grid holds no samples inside the sector");
    return best;
}

std::vector<FootprintPeak> footprint_local_peaks(const FootprintGrid& grid, double floor_rel_db)
{
    const double floor_dbi = footprint_peak(grid).gain_dbi + floor_rel_db;
    std::vector<FootprintPeak> peaks;
    const Eigen::Index rows = grid.gain.rows();
    const Eigen::Index cols = grid.gain.cols();
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double v = grid.gain(i, j);
            if (std::isnan(v) || to_db(v) < floor_dbi)
                continue;
            bool is_max = true;
            for (Eigen::Index di = -1; di <= 1 && is_max; ++di)
                for (Eigen::Index dj = -1; dj <= 1; ++dj) {
                    const Eigen::Index ni = i + di;
                    const Eigen::Index nj = j + dj;
                    if ((di == 0 && dj == 0) || ni < 0 || nj < 0 || ni >= rows || nj >= cols)
                        continue;
                    const double w = grid.gain(ni, nj);
                    // ties resolve toward the earlier sample so plateaus report once
                    if (!std::isnan(w) && (w > v || (w == v && (ni < i || (ni == i && nj < j))))) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max)
                peaks.push_back({to_db(v), {grid.x_m[static_cast<std::size_t>(j)], grid.y_m[static_cast<std::size_t>(i)]}});
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) { return a.gain_dbi > b.gain_dbi; });
    return peaks;
}

void write_pattern_csv(std::ostream& os, const PatternGrid& grid)
{
    os << "theta_deg\\phi_deg";
    for (double phi : grid.phi_deg)
        os << ',' << format_number(phi);
    os << '\n';
    for (Eigen::Index i = 0; i < grid.gain.rows(); ++i) {
        os << format_number(grid.theta_deg[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < grid.gain.cols(); ++j)
            os << ',' << format_fixed(to_db(grid.gain(i, j)), 4);
        os << '\n';
    }
}

void write_footprint_csv(std::ostream& os, const FootprintGrid& grid)
{
    os << "y_m\\x_m";
    for (double x : grid.x_m)
        os << ',' << format_number(x);
    os << '\n';
    for (Eigen::Index i = 0; i < grid.gain.rows(); ++i) {
        os << format_number(grid.y_m[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < grid.gain.cols(); ++j) {
            const double v = grid.gain(i, j);
            os << ',' << (std::isnan(v) ? std::string("nan") : format_fixed(to_db(v), 4));
        }
        os << '\n';
    }
}

} // namespace amafris
