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

#include "amafris/link_power.hpp"

#include "amafris/csv.hpp"
#include "amafris/units.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace amafris {

double LinkBudget::thermal_psd_dbm_per_hz() const { return watts_to_dbm(boltzmann * noise_temperature_k); }

double LinkBudget::thermal_noise_dbm() const { return watts_to_dbm(boltzmann * noise_temperature_k * bandwidth_hz); }

double LinkBudget::noise_floor_dbm() const { return watts_to_dbm(noise_psd_w_per_hz() * bandwidth_hz); }

double LinkBudget::noise_psd_w_per_hz() const { return boltzmann * noise_temperature_k * from_db(noise_figure_db); }

double LinkBudget::p_rf_w() const { return dbm_to_watts(p_rf_dbm); }

void LinkBudget::validate() const
{
    if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0) || !(noise_temperature_k > 0.0))
        throw std::invalid_argument("carrier, bandwidth and noise temperature must be positive");
    if (!std::isfinite(noise_figure_db) || !std::isfinite(eirp_dbm) || !std::isfinite(p_rf_dbm) ||
        !std::isfinite(target_snr_db))
        throw std::invalid_argument("link budget levels must be finite");
}

double friis_ratio(double a_tx_m2, double a_rx_m2, double distance_m, double wavelength_m)
{
    if (!(a_tx_m2 > 0.0) || !(a_rx_m2 > 0.0) || !(distance_m > 0.0) || !(wavelength_m > 0.0))
        throw std::invalid_argument("Friis inputs must be positive");
    const double dl = distance_m * wavelength_m;
    return a_tx_m2 * a_rx_m2 / (dl * dl);
}

double freespace_pathloss(double rho_m, double wavelength_m)
{
    if (!(rho_m > 0.0) || !(wavelength_m > 0.0))
        throw std::invalid_argument("pathloss needs positive range and wavelength");
    const double ratio = wavelength_m / (4.0 * std::numbers::pi * rho_m);
    return ratio * ratio;
}

double freespace_pathloss_db(double rho_m, double wavelength_m) { return -to_db(freespace_pathloss(rho_m, wavelength_m)); }

double required_p_rf(const LinkBudget& link, double edge_gain_dbi) { return link.eirp_dbm - edge_gain_dbi; }

double received_snr_db(double p_rf_dbm, double gain_dbi, double pathloss_db, double noise_floor_dbm)
{
    return p_rf_dbm + gain_dbi - pathloss_db - noise_floor_dbm;
}

namespace {

PowerReport dc_power(std::string name, double p_rf_dbm, const ComplexVector& x, int count, double eta)
{
    if (!(eta > 0.0) || eta > 1.0)
        throw std::invalid_argument("PA efficiency must lie in (0, 1]");
    if (x.size() == 0 || count < 1)
        throw std::invalid_argument("power report needs a nonempty excitation");
    PowerReport r;
    r.architecture = std::move(name);
    r.pa_count = count;
    r.efficiency = eta;
    r.p_pa_max_w = x.cwiseAbs2().maxCoeff() * dbm_to_watts(p_rf_dbm);
    r.p_pa_max_dbm = watts_to_dbm(r.p_pa_max_w);
    r.p_dc_w = count * r.p_pa_max_w / eta;
    return r;
}

} // namespace

PowerReport dc_power_arch1(double p_rf_dbm, const ComplexVector& amaf_weights, double eta)
{
    return dc_power("arch1_amaf_ris", p_rf_dbm, amaf_weights, static_cast<int>(amaf_weights.size()), eta);
}

PowerReport dc_power_arch2(double p_rf_dbm, const ComplexVector& ris_excitation, int element_count, double eta)
{
    return dc_power("arch2_active_array", p_rf_dbm, ris_excitation, element_count, eta);
}

void write_budget_text(std::ostream& os, const std::vector<BudgetLine>& lines)
{
    std::size_t width = 0;
    for (const auto& l : lines)
        width = std::max(width, l.name.size());
    for (const auto& l : lines)
        os << std::left << std::setw(static_cast<int>(width) + 2) << l.name << format_fixed(l.value, 4) << ' ' << l.unit
           << '\n';
}

void write_budget_csv(std::ostream& os, const std::vector<BudgetLine>& lines)
{
    os << "name,value,unit\n";
    for (const auto& l : lines)
        os << l.name << ',' << format_number(l.value, 12) << ',' << l.unit << '\n';
}

} // namespace amafris
