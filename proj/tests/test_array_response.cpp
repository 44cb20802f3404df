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
#include "amafris/feeder_design.hpp"
#include "amafris/units.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace amafris;
using doctest::Approx;

namespace {

const FeederModule& reference_design()
{
    static const FeederModule m = design_feeder(ArrayLayout(16, 16), ArrayLayout(2, 2), 6.0);
    return m;
}

// Uniform N-element line array factor |sum_n exp(j pi n u)|^2 / N^2 in closed
// form (Dirichlet kernel).
double dirichlet_power(int n, double u)
{
    const double x = std::numbers::pi * u / 2.0;
    if (std::abs(std::sin(x)) < 1e-15)
        return 1.0;
    const double r = std::sin(n * x) / (n * std::sin(x));
    return r * r;
}

} // namespace

TEST_CASE("array layout enumeration")
{
    const ArrayLayout l(4, 3);
    CHECK(l.size() == 12);
    const auto p = l.positions();
    CHECK(p.front().x() == Approx(-1.5));
    CHECK(p.front().z() == Approx(-1.0));
    // row by row: index 1 is the next column of the first row
    CHECK(p[1].x() - p[0].x() == Approx(1.0));
    CHECK(p[4].z() - p[0].z() == Approx(1.0));
    for (const auto& q : p)
        CHECK(q.y() == 0.0);
    CHECK_THROWS_AS(ArrayLayout(0, 3), std::invalid_argument);
}

TEST_CASE("wavefront_normal")
{
    const Vec3 a = wavefront_normal({0, 0});
    CHECK(a.x() == Approx(0.0));
    CHECK(a.y() == Approx(1.0));
    const Vec3 b = wavefront_normal({std::numbers::pi / 2, 0});
    CHECK(b.x() == Approx(1.0));
    CHECK(b.y() == Approx(0.0).scale(1.0).epsilon(1e-15));
    const Vec3 c = wavefront_normal(Direction::from_degrees(60, 26.06));
    CHECK(c.x() == Approx(0.7780).epsilon(1e-4));
    CHECK(c.y() == Approx(0.4492).epsilon(1e-4));
    CHECK(c.z() == Approx(0.4393).epsilon(1e-4));
    CHECK(c.norm() == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("steering_vector")
{
    const ArrayLayout single(1, 1);
    CHECK(steering_vector(single, Direction::from_degrees(33, -12))(0) == Complex(1.0, 0.0));

    const ArrayLayout pair(2, 1, Vec3(0.5, 0, 0)); // elements at x = 0 and x = 1
    const ComplexVector a = steering_vector(pair, {std::numbers::pi / 2, 0});
    CHECK(a(0).real() == Approx(1.0));
    CHECK(a(1).real() == Approx(-1.0));
    CHECK(a(1).imag() == Approx(0.0).scale(1.0).epsilon(1e-15));

    const ComplexVector bore = steering_vector(ArrayLayout(16, 16), {0, 0});
    for (Eigen::Index k = 0; k < bore.size(); ++k)
        CHECK(std::abs(bore(k) - bore(0)) < 1e-15);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const ComplexVector s = steering_vector(ArrayLayout(7, 5, Vec3(3, 2, -1)), Direction{ang(rng), ang(rng) / 2});
        CHECK((s.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("patch_gain")
{
    CHECK(patch_gain({0, 0}) == Approx(4.0));
    CHECK(to_db(patch_gain({0, 0})) == Approx(6.02).epsilon(1e-3));
    CHECK(patch_gain(Direction::from_degrees(60, 0)) == Approx(1.0));
    CHECK(patch_gain(Direction::from_degrees(45, 45)) == Approx(1.0));
    CHECK(patch_gain(Direction::from_degrees(90, 0)) == Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("radiation_pattern")
{
    const ArrayLayout l(5, 3);
    const ComplexVector ones = ComplexVector::Ones(15);
    CHECK(radiation_pattern(l, ones, {0, 0}) == Approx(4.0 * 15 * 15));
    CHECK(radiation_pattern(l, ComplexVector::Zero(15), Direction::from_degrees(10, 5)) == 0.0);
    CHECK_THROWS_AS(radiation_pattern(l, ComplexVector::Ones(14), {0, 0}), dimension_error);

    SUBCASE("separable evaluation matches the direct a^H w sum")
    {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> nd;
        const ArrayLayout off(6, 4, Vec3(2.5, 1.0, -3.0));
        ComplexVector w(24);
        for (auto& x : w)
            x = Complex{nd(rng), nd(rng)};
        for (int i = 0; i < 20; ++i) {
            const Direction d{nd(rng), nd(rng) / 3};
            const Complex direct = steering_vector(off, d).dot(w);
            CHECK(std::abs(array_factor(off, w, d) - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
        }
    }

    SUBCASE("scaling the weights scales the gain by |c|^2")
    {
        const ComplexVector w = reference_design().template_w;
        const Complex c(0.3, -1.7);
        const Direction d = Direction::from_degrees(12, -7);
        const double g = radiation_pattern(reference_design().ris_layout, w, d);
        CHECK(radiation_pattern(reference_design().ris_layout, c * w, d) == Approx(std::norm(c) * g).epsilon(1e-12));
    }

    SUBCASE("real nonnegative weights at boresight give 4 (sum |w|)^2")
    {
        const ComplexVector w = reference_design().template_w;
        const double s = w.cwiseAbs().sum();
        CHECK(radiation_pattern(reference_design().ris_layout, w, {0, 0}) == Approx(4 * s * s).epsilon(1e-12));
    }
}

TEST_CASE("steering cancels the phase gradient at the steered direction")
{
    const FeederModule& m = reference_design();
    for (const Direction d0 : {Direction::from_degrees(60, 26.06), Direction::from_degrees(-20, 10),
                               Direction::from_degrees(5, -30)}) {
        const ComplexVector w = steer(m.template_w, d0, m.ris_layout);
        const Complex steered = array_factor(m.ris_layout, w, d0);
        const double template_sum = m.template_w.real().sum();
        CHECK(std::abs(steered) == Approx(template_sum).epsilon(1e-12));
    }
}

TEST_CASE("pattern_grid")
{
    const FeederModule& m = reference_design();
    const ComplexVector w = m.unit_template();

    SUBCASE("single-point grid reproduces radiation_pattern")
    {
        const PatternGrid g = pattern_grid(m.ris_layout, w, {0, 0}, {0, 0}, 0.25);
        REQUIRE(g.gain.rows() == 1);
        REQUIRE(g.gain.cols() == 1);
        CHECK(g.gain(0, 0) == radiation_pattern(m.ris_layout, w, {0, 0}));
    }
    SUBCASE("finer grid max dominates every coarse sample")
    {
        const PatternGrid coarse = pattern_grid(m.ris_layout, w, {-30, 30}, {-30, 30}, 2.0);
        const PatternGrid fine = pattern_grid(m.ris_layout, w, {-30, 30}, {-30, 30}, 0.5);
        CHECK(fine.gain.maxCoeff() >= coarse.gain.maxCoeff());
    }
    SUBCASE("steered array factor peaks within 0.2 deg of the target")
    {
        const Direction d0 = Direction::from_degrees(20, -10);
        const ComplexVector ws = steer(w, d0, m.ris_layout);
        const PatternGrid g = pattern_grid(m.ris_layout, ws, {10, 30}, {-20, 0}, 0.1, isotropic_gain);
        const SidelobeReport r = peak_and_sidelobe(g, 5.0);
        CHECK(angular_separation_deg(r.peak_direction, d0) <= 0.2);
    }
    SUBCASE("gain peak agrees with a fine local search oracle")
    {
        const Direction d0 = Direction::from_degrees(20, -10);
        const ComplexVector ws = steer(w, d0, m.ris_layout);
        const PatternGrid g = pattern_grid(m.ris_layout, ws, {10, 30}, {-20, 0}, 0.25);
        const SidelobeReport r = peak_and_sidelobe(g, 5.0);

        double best = -1.0;
        Direction best_dir;
        for (double dp = -1.5; dp <= 1.5; dp += 0.01)
            for (double dt = -1.5; dt <= 1.5; dt += 0.01) {
                const Direction d = Direction::from_degrees(20 + dp, -10 + dt);
                const double v = radiation_pattern(m.ris_layout, ws, d);
                if (v > best) {
                    best = v;
                    best_dir = d;
                }
            }
        CHECK(angular_separation_deg(r.peak_direction, best_dir) <= 0.2);
    }
    CHECK_THROWS_AS(pattern_grid(m.ris_layout, w, {0, 0}, {0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pattern_grid(m.ris_layout, w, {10, 0}, {0, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("peak_and_sidelobe")
{
    SUBCASE("uniform 8x8 principal-cut sidelobe matches the Dirichlet kernel")
    {
        const ArrayLayout l(8, 8);
        const ComplexVector ones = ComplexVector::Ones(64);
        // principal cut theta = 0, isotropic elements; exclude up to the first null
        const PatternGrid g = pattern_grid(l, ones, {-90, 90}, {0, 0}, 0.05, isotropic_gain);
        const double null_deg = rad_to_deg(std::asin(2.0 / 8.0));
        const SidelobeReport r = peak_and_sidelobe(g, null_deg);

        double oracle = 0.0;
        for (double u = 2.0 / 8.0 + 1e-9; u <= 1.0; u += 1e-6)
            oracle = std::max(oracle, dirichlet_power(8, u));
        CHECK(r.sidelobe_rel_db == Approx(to_db(oracle)).epsilon(0.005));
        CHECK(r.sidelobe_rel_db == Approx(-13.3).epsilon(0.05));
        CHECK(r.peak_dbi == Approx(to_db(64.0 * 64.0)));
    }
    SUBCASE("relative level is invariant to pattern scaling")
    {
        const FeederModule& m = reference_design();
        const PatternGrid g = pattern_grid(m.ris_layout, m.unit_template(), {-90, 90}, {-90, 90}, 1.0);
        PatternGrid scaled = g;
        scaled.gain *= 17.3;
        const auto a = peak_and_sidelobe(g);
        const auto b = peak_and_sidelobe(scaled);
        CHECK(a.sidelobe_rel_db == Approx(b.sidelobe_rel_db).epsilon(1e-12));
        CHECK(b.peak_dbi - a.peak_dbi == Approx(to_db(17.3)));
    }
    SUBCASE("grid inside the exclusion cone is an error")
    {
        const ArrayLayout l(4, 4);
        const PatternGrid g = pattern_grid(l, ComplexVector::Ones(16), {-5, 5}, {-5, 5}, 1.0);
        CHECK_THROWS_AS(peak_and_sidelobe(g, 30.0), error);
    }
}

TEST_CASE("reference PEM design pattern")
{
    const FeederModule& m = reference_design();
    const ComplexVector w = m.unit_template();
    CHECK(to_db(radiation_pattern(m.ris_layout, w, {0, 0})) == Approx(27.5).epsilon(0.5 / 27.5));

    const PatternGrid g = pattern_grid(m.ris_layout, w, {-90, 90}, {-90, 90}, 0.5);
    const SidelobeReport r = peak_and_sidelobe(g);
    CHECK(r.peak_direction.phi == Approx(0.0));
    CHECK(r.peak_direction.theta == Approx(0.0));
    CHECK(r.beamwidth_3db_deg == Approx(9.0).epsilon(0.05));
    CHECK(r.sidelobe_rel_db <= -35.0);
}

TEST_CASE("footprint grid and CSV export")
{
    const FeederModule& m = reference_design();
    const ScenarioGeometry geo = default_geometry();
    const std::vector<std::vector<Aperture>> beams{{Aperture{m.ris_layout, m.unit_template()}}};
    const FootprintGrid f = footprint_grid(beams, geo, 1.0);
    const FootprintPeak peak = footprint_peak(f);
    CHECK(std::abs(peak.location.x) <= 1.0);
    CHECK(std::abs(peak.location.y - boresight_ground_intercept(geo)) <= 1.0);
    CHECK(peak.gain_dbi == Approx(27.48).epsilon(0.1 / 27.5));
    CHECK(std::isnan(f.gain(0, 0))); // sector corner outside the served range

    std::ostringstream os;
    write_footprint_csv(os, f);
    std::string header;
    std::getline(std::istringstream(os.str()) >> std::ws, header);
    CHECK(header.rfind("y_m\\x_m,", 0) == 0);

    std::ostringstream pat;
    const ComplexVector w = m.unit_template();
    write_pattern_csv(pat, pattern_grid(m.ris_layout, w, {-1, 1}, {0, 1}, 1.0));
    std::ostringstream expected;
    expected << "theta_deg\\phi_deg,-1,0,1\n";
    for (int t : {0, 1}) {
        expected << t;
        for (int p : {-1, 0, 1})
            expected << ',' << format_fixed(to_db(radiation_pattern(m.ris_layout, w, Direction::from_degrees(p, t))), 4);
        expected << '\n';
    }
    CHECK(pat.str() == expected.str());
}
