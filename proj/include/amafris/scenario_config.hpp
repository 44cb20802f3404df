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

// Flat JSON scenario document. Field names carry their units; unknown
// fields are rejected; every field is optional and defaults to the 100 GHz
// picocell reference scenario.

#include "amafris/module_stack.hpp"
#include "amafris/mu_mimo_sim.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace amafris {

enum class FootprintMode { boresight, ground_target, direction_target, multibeam };

struct ScenarioConfig {
    // geometry
    double mast_height_m = 20.0;
    double cell_range_min_m = 10.0;
    double cell_range_max_m = 100.0;
    double azimuth_half_span_deg = 60.0;
    std::optional<double> downtilt_deg; // unset: mean of the cell-edge downlook angles

    // link budget
    double carrier_hz = 100e9;
    double bandwidth_hz = 5e9;
    double noise_figure_db = 5.0;
    double noise_temperature_k = 290.0;
    double eirp_dbm = 40.7;
    double target_snr_db = 0.0;
    double p_rf_dbm = 20.0;
    double pa_efficiency = 0.3;

    // module design and stacking
    int ris_nx = 16;
    int ris_nz = 16;
    int amaf_nh = 2;
    int amaf_nv = 2;
    double focal_distance_halfwavelengths = 6.0;
    Illumination illumination = Illumination::front;
    int num_modules = 4;
    double module_separation_halfwavelengths = 1.0;
    StackAxis stacking_axis = StackAxis::x;

    // campaign
    int num_users = 4;
    int num_drops = 2000;
    double min_azimuth_sep_deg = 15.0;
    double pointing_error_std_deg = 0.0;
    int quant_bits = 0;
    std::uint64_t rng_seed = 1;
    int threads = 1;

    // pattern and footprint evaluation
    double pattern_resolution_deg = 0.25;
    std::optional<double> sidelobe_exclusion_deg; // unset: 3x the 3 dB beamwidth
    double footprint_resolution_m = 0.5;
    FootprintMode footprint_mode = FootprintMode::boresight;
    std::optional<double> footprint_target_x_m;
    std::optional<double> footprint_target_y_m;
    std::optional<double> footprint_target_phi_deg;
    std::optional<double> footprint_target_theta_deg;

    bool operator==(const ScenarioConfig&) const = default;

    // Throws config_error naming the offending field.
    void validate() const;

    ScenarioGeometry geometry() const;
    LinkBudget link() const;
    SimConfig sim() const;
    std::shared_ptr<const FeederModule> design() const;
    StackedSystem stack() const;
};

// Parse and validate. Throws config_error on malformed JSON, wrong types,
// unknown fields or invalid values.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Pretty-printed JSON listing every field; parse_config reads it back to an
// equal config.
std::string to_json(const ScenarioConfig& config);

} // namespace amafris
