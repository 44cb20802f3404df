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

// Link budget and DC power comparison between the array-fed RIS
// (architecture 1) and a fully active array with one PA per element
// (architecture 2). Arithmetic runs in linear units; dB/dBm only at the
// boundaries.

#include "amafris/array_response.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace amafris {

constexpr double boltzmann = 1.380649e-23;

struct LinkBudget {
    double carrier_hz = 100e9;
    double bandwidth_hz = 5e9;
    double noise_figure_db = 5.0;
    double eirp_dbm = 40.7;
    double target_snr_db = 0.0;
    double p_rf_dbm = 20.0; // total AMAF output power per module
    double noise_temperature_k = 290.0;

    double wavelength_m() const { return speed_of_light / carrier_hz; }
    // kT in dBm/Hz.
    double thermal_psd_dbm_per_hz() const;
    // kT W in dBm.
    double thermal_noise_dbm() const;
    // kT W NF in dBm.
    double noise_floor_dbm() const;
    // N0 = kT NF in W/Hz.
    double noise_psd_w_per_hz() const;
    double p_rf_w() const;

    void validate() const;
    bool operator==(const LinkBudget&) const = default;
};

// P_rx / P_tx = A_tx A_rx / (d lambda)^2. Throws std::invalid_argument for
// nonpositive inputs.
double friis_ratio(double a_tx_m2, double a_rx_m2, double distance_m, double wavelength_m);

// L = (lambda / (4 pi rho))^2 as a linear factor and as a positive loss in dB.
double freespace_pathloss(double rho_m, double wavelength_m);
double freespace_pathloss_db(double rho_m, double wavelength_m);

// EIRP - G.
double required_p_rf(const LinkBudget& link, double edge_gain_dbi);

double received_snr_db(double p_rf_dbm, double gain_dbi, double pathloss_db, double noise_floor_dbm);

struct PowerReport {
    std::string architecture;
    int pa_count = 0;
    double p_pa_max_dbm = 0.0;
    double p_pa_max_w = 0.0;
    double efficiency = 0.0;
    double p_dc_w = 0.0;
};

// Every PA is biased for the strongest element: p_pa_max = max |x_i|^2 P_RF,
// P_DC = count * p_pa_max / eta.
PowerReport dc_power_arch1(double p_rf_dbm, const ComplexVector& amaf_weights, double eta);
PowerReport dc_power_arch2(double p_rf_dbm, const ComplexVector& ris_excitation, int element_count, double eta);

struct BudgetLine {
    std::string name;
    double value = 0.0;
    std::string unit;
};

void write_budget_text(std::ostream& os, const std::vector<BudgetLine>& lines);
void write_budget_csv(std::ostream& os, const std::vector<BudgetLine>& lines);

} // namespace amafris
