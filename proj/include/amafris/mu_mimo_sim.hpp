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

// Line-of-sight multiuser downlink served by a stack of AMAF-RIS modules:
// channel construction, per-user rates with interference treated as noise,
// user scheduling and seeded Monte Carlo campaigns.

#include "amafris/link_power.hpp"
#include "amafris/module_stack.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

namespace amafris {

using Rng = std::mt19937_64;

struct UserPosition {
    GroundPoint ground;
    double azimuth_rad = 0.0; // S1 azimuth from the boresight ground projection
    double range_m = 0.0;     // S1 ground range from the mast foot
    double rho = 0.0;         // distance to the RIS centre
    Direction direction;      // S2 angles
};

UserPosition make_user(const GroundPoint& p, const ScenarioGeometry& g);
UserPosition user_at(double azimuth_rad, double range_m, const ScenarioGeometry& g);

// Column k is 2 cos(phi_k) cos(theta_k) a(phi_k, theta_k) over the
// concatenated RIS elements of `ris_layouts`.
ComplexMatrix build_A(std::span<const UserPosition> users, std::span<const ArrayLayout> ris_layouts);

// RIS layouts of the first `active` modules of a stack.
std::vector<ArrayLayout> active_ris_layouts(const StackedSystem& stack, int active);

// H = A^H N.
ComplexMatrix build_H(const ComplexMatrix& A, const ComplexMatrix& N);

// log2(1 + |H_kk|^2 P / (W N0 / L_k + sum_{j != k} |H_kj|^2 P)).
double user_rate(const ComplexMatrix& H, int k, const LinkBudget& link, double rho_k);

// Interference-only signal-to-interference ratio of user k in dB (+inf
// without interferers).
double user_sir_db(const ComplexMatrix& H, int k);

// K users uniform in (azimuth, range) over the sector, redrawn as a set
// until every pair is at least min_azimuth_sep apart in azimuth. Returned
// sorted by azimuth. Throws infeasible_schedule_error when the constraint
// cannot be met.
std::vector<UserPosition> schedule_users(Rng& rng, int k, const ScenarioGeometry& g, double min_azimuth_sep_rad,
                                         long max_attempts = 100000);

// Independent zero-mean Gaussian errors on phi and theta.
Direction apply_pointing_error(Rng& rng, const Direction& d0, double sigma_deg);

struct SimConfig {
    int num_drops = 2000;
    int users = 4;
    double min_azimuth_sep_deg = 15.0;
    double pointing_error_std_deg = 0.0;
    int quant_bits = 0;
    std::uint64_t rng_seed = 1;
    int threads = 1;
    LinkBudget link;
    ScenarioGeometry geometry = default_geometry();

    void validate(const StackedSystem& stack) const;
};

struct RateSample {
    int drop_id = 0;
    int user_index = 0;
    double azimuth_deg = 0.0;
    double range_m = 0.0;
    double rate_bits = 0.0;
    double sir_db = 0.0;

    bool operator==(const RateSample&) const = default;
};

struct CampaignResult {
    std::vector<RateSample> samples; // drop-major, then user index

    std::vector<double> rates() const;
};

// Generator for drop `drop_id`; seeded from (master seed, drop index) only,
// so results do not depend on how drops are spread over threads.
Rng drop_rng(std::uint64_t master_seed, std::uint64_t drop_id);

// One drop: schedule, steer module k toward user k, build N and H, rate
// every user.
std::vector<RateSample> simulate_drop(const SimConfig& config, const StackedSystem& stack, int drop_id);

CampaignResult run_campaign(const SimConfig& config, const StackedSystem& stack);

struct CdfPoint {
    double value = 0.0;
    double probability = 0.0;
};

// Right-continuous empirical CDF at each distinct sample value.
std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);

// Kolmogorov-Smirnov sup-distance between two empirical CDFs.
double ks_distance(std::vector<double> a, std::vector<double> b);

// Linear interpolation between order statistics, q in [0, 1].
double percentile(std::vector<double> samples, double q);

void write_rates_csv(std::ostream& os, const CampaignResult& result);
void write_cdf_csv(std::ostream& os, const std::vector<CdfPoint>& cdf);

} // namespace amafris
