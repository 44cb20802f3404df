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

// Acceptance runner: evaluates every acceptance criterion of the reference
// scenario and prints one PASS/FAIL line per criterion.

#include "amafris/array_response.hpp"
#include "amafris/csv.hpp"
#include "amafris/feeder_design.hpp"
#include "amafris/link_power.hpp"
#include "amafris/module_stack.hpp"
#include "amafris/mu_mimo_sim.hpp"
#include "amafris/units.hpp"
#include "support/jacobi_svd.hpp"
#include "support/properties.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace amafris;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    // Records `name = value` and whether it lies within target +- tol.
    void near(const std::string& name, double value, double target, double tol, const std::string& unit = "")
    {
        const bool ok = std::abs(value - target) <= tol;
        pass = pass && ok;
        sep();
        detail << name << ' ' << format_fixed(value, 4) << unit << " (want " << format_number(target, 6) << " +- "
               << format_number(tol, 3) << (ok ? ")" : ") MISS");
    }

    void at_most(const std::string& name, double value, double limit, const std::string& unit = "")
    {
        bound(name, value, limit, unit, value <= limit, " (want <= ");
    }

    void below(const std::string& name, double value, double limit, const std::string& unit = "")
    {
        bound(name, value, limit, unit, value < limit, " (want < ");
    }

    void holds(const std::string& name, bool ok, const std::string& note = "")
    {
        pass = pass && ok;
        sep();
        detail << name << (note.empty() ? "" : " " + note) << (ok ? " ok" : " MISS");
    }

private:
    void bound(const std::string& name, double value, double limit, const std::string& unit, bool ok, const char* want)
    {
        pass = pass && ok;
        sep();
        detail << name << ' ' << format_number(value, 6) << unit << want << format_number(limit, 6) << (ok ? ")" : ") MISS");
    }

    void sep()
    {
        if (detail.tellp() > 0)
            detail << "; ";
    }
};

struct Criterion {
    std::string id;
    std::string title;
    double budget_s; // 0 = no runtime limit
    std::function<void(Outcome&)> body;
};

std::shared_ptr<const FeederModule> reference_design()
{
    static const auto m =
        std::make_shared<const FeederModule>(design_feeder(ArrayLayout(16, 16), ArrayLayout(2, 2), 6.0));
    return m;
}

const StackedSystem& reference_stack()
{
    static const StackedSystem s(reference_design(), 4);
    return s;
}

SimConfig campaign(int users, double pointing_deg, int bits)
{
    SimConfig c;
    c.num_drops = 2000;
    c.users = users;
    c.pointing_error_std_deg = pointing_deg;
    c.quant_bits = bits;
    c.rng_seed = 20260101;
    c.threads = 1;
    return c;
}

void ac1(Outcome& o)
{
    const FeederModule m = design_feeder(ArrayLayout(16, 16), ArrayLayout(2, 2), 6.0);
    o.near("taper", taper_db(m.template_w), 13.92, 0.1, " dB");
}

void ac2(Outcome& o)
{
    const FeederModule& m = *reference_design();
    const PatternGrid g = pattern_grid(m.ris_layout, m.unit_template(), {-90, 90}, {-90, 90}, 0.25);
    const SidelobeReport r = peak_and_sidelobe(g);
    o.near("boresight gain", to_db(radiation_pattern(m.ris_layout, m.unit_template(), {0, 0})), 27.5, 0.5, " dBi");
    o.near("grid peak", r.peak_dbi, 27.5, 0.5, " dBi");
    o.at_most("sidelobe", r.sidelobe_rel_db, -34.0, " dB");
}

void ac3(Outcome& o)
{
    const FeederModule& m = *reference_design();
    double err = 0.0;
    for (Eigen::Index i = 0; i < m.v1.size(); ++i)
        err = std::max(err, std::abs(m.v1(i) - Complex(0.5, 0.0)));
    o.holds("v1 length 4", m.v1.size() == 4);
    o.at_most("max |v1_i - 0.5|", err, 1e-3);
}

void ac4(Outcome& o)
{
    const FeederModule& m = *reference_design();
    const ScenarioGeometry g = default_geometry();
    const Direction edge = cell_edge_composite_direction(g);
    const double gain = to_db(radiation_pattern(m.ris_layout, steer(m.unit_template(), edge, m.ris_layout), edge));
    o.near("edge phi", rad_to_deg(edge.phi), 60.0, 1e-9, " deg");
    o.near("edge theta", rad_to_deg(edge.theta), 26.06, 0.01, " deg");
    o.near("edge gain", gain, 20.7, 0.5, " dBi");
    o.near("P_RF", required_p_rf(LinkBudget{}, gain), 20.0, 0.5, " dBm");
}

void ac5(Outcome& o)
{
    const LinkBudget link;
    const ScenarioGeometry g = default_geometry();
    const double l_max = freespace_pathloss_db(std::hypot(g.r_max_m, g.mast_height_m), link.wavelength_m());
    o.near("L_max", l_max, 112.7, 0.1, " dB");
    o.near("noise floor", link.noise_floor_dbm(), -72.0, 0.1, " dBm");
    o.near("SNR", link.eirp_dbm - l_max - link.noise_floor_dbm(), 0.0, 0.2, " dB");
}

void ac6(Outcome& o)
{
    const FeederModule& m = *reference_design();
    const double eta = 0.3;
    const double p_rf = LinkBudget{}.p_rf_dbm;
    o.near("Arch1 P_DC", dc_power_arch1(p_rf, m.v1, eta).p_dc_w, 0.335, 0.01, " W");
    o.near("Arch2 P_DC", dc_power_arch2(p_rf, m.u1, 256, eta).p_dc_w, 2.92, 0.05, " W");
    o.near("max|u1|^2", to_db(m.u1.cwiseAbs2().maxCoeff()), -14.65, 0.1, " dB");
}

void ac7(Outcome& o)
{
    const ScenarioGeometry g = default_geometry();
    o.near("downtilt", rad_to_deg(mean_downtilt(g)), 37.37, 0.01, " deg");
    o.near("intercept", boresight_ground_intercept(g), 26.19, 0.02, " m");
}

void ac8(Outcome& o)
{
    const StackedSystem& stack = reference_stack();
    const auto k4 = run_campaign(campaign(4, 0.0, 0), stack).rates();
    const auto k1 = run_campaign(campaign(1, 0.0, 0), stack).rates();
    const auto q3 = run_campaign(campaign(4, 0.0, 3), stack).rates();
    const auto q1 = run_campaign(campaign(4, 0.0, 1), stack).rates();
    const auto pe = run_campaign(campaign(4, 2.5, 0), stack).rates();

    o.below("(a) KS K=4 vs K=1", ks_distance(k4, k1), 0.05);
    o.below("(b) KS 3-bit vs continuous", ks_distance(q3, k4), 0.05);
    const double p05 = percentile(q1, 0.05);
    const double p95 = percentile(q1, 0.95);
    o.holds("(c) 1-bit 5th-95th", p05 >= 0.3 && p95 <= 5.5,
            "[" + format_fixed(p05, 3) + ", " + format_fixed(p95, 3) + "] in [0.3, 5.5]");
    const double degradation = 1.0 - percentile(pe, 0.5) / percentile(k4, 0.5);
    o.below("(d) median loss at 2.5 deg", degradation, 0.15);
}

void ac9(Outcome& o)
{
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<int> rows(1, 32);
    std::uniform_int_distribution<int> cols(1, 8);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int r = rows(rng);
        const int c = cols(rng);
        ComplexMatrix t(r, c);
        for (Eigen::Index i = 0; i < t.rows(); ++i)
            for (Eigen::Index j = 0; j < t.cols(); ++j)
                t(i, j) = Complex{nd(rng), nd(rng)};
        const double ref = amafris::testing::jacobi_svd(t).singular_values(0);
        worst = std::max(worst, std::abs(principal_eigenmode(t).sigma1 - ref) / ref);
    }
    o.below("worst sigma1 rel err (50 matrices)", worst, 1e-8);

    const auto design = reference_design();
    const StackedSystem& stack = reference_stack();
    const ScenarioGeometry g = default_geometry();
    Rng urng(919);
    std::uniform_real_distribution<double> az(-deg_to_rad(60), deg_to_rad(60));
    std::uniform_real_distribution<double> range(10, 100);
    double worst_h = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double azimuth = az(urng);
        const UserPosition user = user_at(azimuth, range(urng), g);
        const auto masks = steered_masks(stack, {user.direction});
        const ComplexMatrix H = build_H(build_A(std::span(&user, 1), active_ris_layouts(stack, 1)),
                                        build_N(stack, masks, {design->v1}));
        const ComplexVector w = masks[0].weights().cwiseProduct(design->sigma1 * design->u1);
        const double pattern = radiation_pattern(design->ris_layout, w, user.direction);
        worst_h = std::max(worst_h, std::abs(std::norm(H(0, 0)) - pattern) / pattern);
    }
    o.below("worst |H11|^2 vs pattern rel err", worst_h, 1e-9);
}

void ac10(Outcome& o)
{
    using namespace amafris::testing;
    const std::pair<const char*, PropertyResult> suites[] = {
        {"rotation", check_rotation_orthonormal()},
        {"S1/S2 round trip", check_s1_s2_round_trip()},
        {"spherical round trip", check_spherical_round_trip()},
        {"theta sign", check_theta_sign()},
        {"steer amplitude", check_steer_preserves_amplitude()},
        {"quantization idempotent", check_quantization_idempotent()},
        {"NEXT monotone", check_next_monotone_in_separation()},
        {"thread determinism", check_thread_count_determinism(reference_stack())},
    };
    for (const auto& [name, r] : suites)
        o.holds(name, r.ok, r.ok ? "(" + std::to_string(r.cases) + " cases)" : r.detail);
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {"AC1", "PEM taper", 1.0, ac1},
        {"AC2", "boresight gain and sidelobe level", 10.0, ac2},
        {"AC3", "AMAF weights", 0.0, ac3},
        {"AC4", "cell-edge gain and required P_RF", 0.0, ac4},
        {"AC5", "link budget", 0.0, ac5},
        {"AC6", "DC power", 0.0, ac6},
        {"AC7", "downtilt geometry", 0.0, ac7},
        {"AC8", "rate statistics", 300.0, ac8},
        {"AC9", "oracle equivalence", 0.0, ac9},
        {"AC10", "invariant suites", 0.0, ac10},
    };

    reference_design(); // shared setup outside the timed sections
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = Clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.holds("exception", false, e.what());
        }
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (c.budget_s > 0.0 && elapsed >= c.budget_s)
            o.holds("runtime", false, format_fixed(elapsed, 2) + " s over " + format_number(c.budget_s) + " s");
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.title << ": " << o.detail.str() << " ["
                  << format_fixed(elapsed, 3) << " s]\n";
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << '/' << criteria.size()
              << " acceptance criteria passed\n";
    return failures == 0 ? 0 : 1;
}
