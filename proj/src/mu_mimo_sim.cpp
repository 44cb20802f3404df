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

#include "amafris/mu_mimo_sim.hpp"

#include "amafris/csv.hpp"
#include "amafris/errors.hpp"
#include "amafris/units.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace amafris {

UserPosition make_user(const GroundPoint& p, const ScenarioGeometry& g)
{
    const SphericalPoint s = ground_to_direction(p, g);
    return {p, std::atan2(p.x, p.y), std::hypot(p.x, p.y), s.rho, s.direction};
}

UserPosition user_at(double azimuth_rad, double range_m, const ScenarioGeometry& g)
{
    UserPosition u = make_user(ground_from_polar(azimuth_rad, range_m), g);
    u.azimuth_rad = azimuth_rad;
    u.range_m = range_m;
    return u;
}

ComplexMatrix build_A(std::span<const UserPosition> users, std::span<const ArrayLayout> ris_layouts)
{
    Eigen::Index rows = 0;
    for (const auto& l : ris_layouts)
        rows += static_cast<Eigen::Index>(l.size());
    ComplexMatrix A(rows, static_cast<Eigen::Index>(users.size()));
    for (std::size_t k = 0; k < users.size(); ++k) {
        const Direction& d = users[k].direction;
        const double element = 2.0 * std::cos(d.phi) * std::cos(d.theta);
        Eigen::Index offset = 0;
        for (const auto& l : ris_layouts) {
            const auto n = static_cast<Eigen::Index>(l.size());
            A.block(offset, static_cast<Eigen::Index>(k), n, 1) = element * steering_vector(l, d);
            offset += n;
        }
    }
    return A;
}

std::vector<ArrayLayout> active_ris_layouts(const StackedSystem& stack, int active)
{
    if (active < 1 || active > stack.module_count())
        throw dimension_error("active module count out of range");
    std::vector<ArrayLayout> out;
    out.reserve(static_cast<std::size_t>(active));
    for (int i = 0; i < active; ++i)
        out.push_back(stack.ris_layout(i));
    return out;
}

ComplexMatrix build_H(const ComplexMatrix& A, const ComplexMatrix& N)
{
    if (A.rows() != N.rows())
        throw dimension_error("A and N must have the same number of RIS elements");
    return A.adjoint() * N;
}

double user_rate(const ComplexMatrix& H, int k, const LinkBudget& link, double rho_k)
{
    if (k < 0 || k >= H.rows() || k >= H.cols())
        throw std::out_of_range("user index out of range");
    const double p_rf = link.p_rf_w();
    const double noise = link.bandwidth_hz * link.noise_psd_w_per_hz() / freespace_pathloss(rho_k, link.wavelength_m());
    double interference = 0.0;
    for (Eigen::Index j = 0; j < H.cols(); ++j)
        if (j != k)
            interference += std::norm(H(k, j)) * p_rf;
    return std::log2(1.0 + std::norm(H(k, k)) * p_rf / (noise + interference));
}

double user_sir_db(const ComplexMatrix& H, int k)
{
    double interference = 0.0;
    for (Eigen::Index j = 0; j < H.cols(); ++j)
        if (j != k)
            interference += std::norm(H(k, j));
    if (interference == 0.0)
        return std::numeric_limits<double>::infinity();
    return to_db(std::norm(H(k, k)) / interference);
}

std::vector<UserPosition> schedule_users(Rng& rng, int k, const ScenarioGeometry& g, double min_azimuth_sep_rad,
                                         long max_attempts)
{
    if (k < 1)
        throw std::invalid_argument("at least one user must be scheduled");
    if (k > 1 && static_cast<double>(k - 1) * min_azimuth_sep_rad > 2.0 * g.azimuth_span_rad)
        throw infeasible_schedule_error("azimuth separation cannot be met inside the sector");

    std::uniform_real_distribution<double> azimuth(-g.azimuth_span_rad, g.azimuth_span_rad);
    std::uniform_real_distribution<double> range(g.r_min_m, g.r_max_m);
    std::vector<double> az(static_cast<std::size_t>(k));
    std::vector<double> r(static_cast<std::size_t>(k));

    for (long attempt = 0; attempt < max_attempts; ++attempt) {
        for (std::size_t i = 0; i < az.size(); ++i) {
            az[i] = azimuth(rng);
            r[i] = range(rng);
        }
        std::vector<std::size_t> order(az.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return az[a] < az[b]; });

        bool ok = true;
        for (std::size_t i = 1; i < order.size() && ok; ++i)
            ok = az[order[i]] - az[order[i - 1]] >= min_azimuth_sep_rad;
        if (!ok)
            continue;

        std::vector<UserPosition> users;
        users.reserve(order.size());
        for (std::size_t i : order)
            users.push_back(user_at(az[i], r[i], g));
        return users;
    }
    throw infeasible_schedule_error("no compatible user set found after " + std::to_string(max_attempts) + " attempts");
}

Direction apply_pointing_error(Rng& rng, const Direction& d0, double sigma_deg)
{
    if (!(sigma_deg >= 0.0))
        throw std::invalid_argument("pointing error deviation must be nonnegative");
    if (sigma_deg == 0.0)
        return d0;
    std::normal_distribution<double> err(0.0, deg_to_rad(sigma_deg));
    const double dphi = err(rng);
    const double dtheta = err(rng);
    return {d0.phi + dphi, d0.theta + dtheta};
}

void SimConfig::validate(const StackedSystem& stack) const
{
    if (num_drops < 1)
        throw std::invalid_argument("campaign needs at least one drop");
    if (users < 1 || users > stack.module_count())
        throw std::invalid_argument("user count must lie between 1 and the module count");
    if (quant_bits < 0)
        throw std::invalid_argument("quantization bits must be nonnegative");
    if (!(pointing_error_std_deg >= 0.0) || !(min_azimuth_sep_deg >= 0.0))
        throw std::invalid_argument("angles must be nonnegative");
    if (threads < 1)
        throw std::invalid_argument("thread count must be positive");
    link.validate();
    geometry.validate();
}

std::vector<double> CampaignResult::rates() const
{
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples)
        out.push_back(s.rate_bits);
    return out;
}

Rng drop_rng(std::uint64_t master_seed, std::uint64_t drop_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(drop_id), static_cast<std::uint32_t>(drop_id >> 32)};
    return Rng(seq);
}

std::vector<RateSample> simulate_drop(const SimConfig& config, const StackedSystem& stack, int drop_id)
{
    Rng rng = drop_rng(config.rng_seed, static_cast<std::uint64_t>(drop_id));
    const auto users = schedule_users(rng, config.users, config.geometry, deg_to_rad(config.min_azimuth_sep_deg));

    std::vector<Direction> beams;
    beams.reserve(users.size());
    for (const auto& u : users)
        beams.push_back(apply_pointing_error(rng, u.direction, config.pointing_error_std_deg));

    const auto masks = steered_masks(stack, beams, config.quant_bits);
    const std::vector<ComplexVector> feeds(users.size(), stack.design().v1);
    const ComplexMatrix N = build_N(stack, masks, feeds);
    const auto layouts = active_ris_layouts(stack, config.users);
    const ComplexMatrix H = build_H(build_A(users, layouts), N);

    std::vector<RateSample> out;
    out.reserve(users.size());
    for (std::size_t k = 0; k < users.size(); ++k) {
        const int idx = static_cast<int>(k);
        out.push_back({drop_id, idx, rad_to_deg(users[k].azimuth_rad), users[k].range_m,
                       user_rate(H, idx, config.link, users[k].rho), user_sir_db(H, idx)});
    }
    return out;
}

CampaignResult run_campaign(const SimConfig& config, const StackedSystem& stack)
{
    config.validate(stack);
    std::vector<std::vector<RateSample>> per_drop(static_cast<std::size_t>(config.num_drops));
    const int workers = std::min(config.threads, config.num_drops);

    auto work = [&](int first) {
        for (int d = first; d < config.num_drops; d += workers)
            per_drop[static_cast<std::size_t>(d)] = simulate_drop(config, stack, d);
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                try {
                    work(t);
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        for (auto& th : pool)
            th.join();
        for (const auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    CampaignResult result;
    result.samples.reserve(static_cast<std::size_t>(config.num_drops * config.users));
    for (auto& drop : per_drop)
        result.samples.insert(result.samples.end(), drop.begin(), drop.end());
    return result;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> samples)
{
    if (samples.empty())
        throw std::invalid_argument("empirical CDF of an empty sample");
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    std::vector<CdfPoint> cdf;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i + 1 < samples.size() && samples[i + 1] == samples[i])
            continue;
        cdf.push_back({samples[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

double ks_distance(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("KS distance needs two nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double sup = 0.0;
    while (i < a.size() || j < b.size()) {
        const double x = j >= b.size() || (i < a.size() && a[i] <= b[j]) ? a[i] : b[j];
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        sup = std::max(sup, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return sup;
}

double percentile(std::vector<double> samples, double q)
{
    if (samples.empty())
        throw std::invalid_argument("percentile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("percentile rank must lie in [0, 1]");
    std::sort(samples.begin(), samples.end());
    const double pos = q * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

void write_rates_csv(std::ostream& os, const CampaignResult& result)
{
    os << "drop_id,user_index,azimuth_deg,range_m,rate_bits\n";
    for (const auto& s : result.samples)
        os << s.drop_id << ',' << s.user_index << ',' << format_number(s.azimuth_deg, 12) << ','
           << format_number(s.range_m, 12) << ',' << format_number(s.rate_bits, 12) << '\n';
}

void write_cdf_csv(std::ostream& os, const std::vector<CdfPoint>& cdf)
{
    os << "rate_bits,probability\n";
    for (const auto& p : cdf)
        os << format_number(p.value, 12) << ',' << format_number(p.probability, 12) << '\n';
}

} // namespace amafris
