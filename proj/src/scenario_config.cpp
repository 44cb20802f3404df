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

#include "amafris/scenario_config.hpp"

#include "amafris/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

namespace amafris {

namespace {

using json = nlohmann::json;

template <typename Config, typename F>
void visit_fields(Config& c, F&& f)
{
    f("mast_height_m", c.mast_height_m);
    f("cell_range_min_m", c.cell_range_min_m);
    f("cell_range_max_m", c.cell_range_max_m);
    f("azimuth_half_span_deg", c.azimuth_half_span_deg);
    f("downtilt_deg", c.downtilt_deg);
    f("carrier_hz", c.carrier_hz);
    f("bandwidth_hz", c.bandwidth_hz);
    f("noise_figure_db", c.noise_figure_db);
    f("noise_temperature_k", c.noise_temperature_k);
    f("eirp_dbm", c.eirp_dbm);
    f("target_snr_db", c.target_snr_db);
    f("p_rf_dbm", c.p_rf_dbm);
    f("pa_efficiency", c.pa_efficiency);
    f("ris_nx", c.ris_nx);
    f("ris_nz", c.ris_nz);
    f("amaf_nh", c.amaf_nh);
    f("amaf_nv", c.amaf_nv);
    f("focal_distance_halfwavelengths", c.focal_distance_halfwavelengths);
    f("illumination", c.illumination);
    f("num_modules", c.num_modules);
    f("module_separation_halfwavelengths", c.module_separation_halfwavelengths);
    f("stacking_axis", c.stacking_axis);
    f("num_users", c.num_users);
    f("num_drops", c.num_drops);
    f("min_azimuth_sep_deg", c.min_azimuth_sep_deg);
    f("pointing_error_std_deg", c.pointing_error_std_deg);
    f("quant_bits", c.quant_bits);
    f("rng_seed", c.rng_seed);
    f("threads", c.threads);
    f("pattern_resolution_deg", c.pattern_resolution_deg);
    f("sidelobe_exclusion_deg", c.sidelobe_exclusion_deg);
    f("footprint_resolution_m", c.footprint_resolution_m);
    f("footprint_mode", c.footprint_mode);
    f("footprint_target_x_m", c.footprint_target_x_m);
    f("footprint_target_y_m", c.footprint_target_y_m);
    f("footprint_target_phi_deg", c.footprint_target_phi_deg);
    f("footprint_target_theta_deg", c.footprint_target_theta_deg);
}

template <typename E>
struct EnumNames;

template <>
struct EnumNames<Illumination> {
    static constexpr std::pair<Illumination, std::string_view> values[] = {{Illumination::front, "front"},
                                                                          {Illumination::back, "back"}};
};

template <>
struct EnumNames<StackAxis> {
    static constexpr std::pair<StackAxis, std::string_view> values[] = {{StackAxis::x, "x"}, {StackAxis::z, "z"}};
};

template <>
struct EnumNames<FootprintMode> {
    static constexpr std::pair<FootprintMode, std::string_view> values[] = {
        {FootprintMode::boresight, "boresight"},
        {FootprintMode::ground_target, "ground_target"},
        {FootprintMode::direction_target, "direction_target"},
        {FootprintMode::multibeam, "multibeam"}};
};

[[noreturn]] void fail(std::string_view field, std::string_view what)
{
    throw config_error("config field '" + std::string(field) + "': " + std::string(what));
}

struct Reader {
    const json& doc;

    void read(std::string_view name, const json& v, double& out) const
    {
        if (!v.is_number())
            fail(name, "expected a number");
        out = v.get<double>();
        if (!std::isfinite(out))
            fail(name, "must be finite");
    }

    void read(std::string_view name, const json& v, int& out) const
    {
        if (!v.is_number_integer())
            fail(name, "expected an integer");
        const auto value = v.get<long long>();
        if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max())
            fail(name, "integer out of range");
        out = static_cast<int>(value);
    }

    void read(std::string_view name, const json& v, std::uint64_t& out) const
    {
        if (!v.is_number_unsigned())
            fail(name, "expected a nonnegative integer");
        out = v.get<std::uint64_t>();
    }

    void read(std::string_view name, const json& v, std::optional<double>& out) const
    {
        if (v.is_null()) {
            out.reset();
            return;
        }
        double value = 0.0;
        read(name, v, value);
        out = value;
    }

    template <typename E>
    void read(std::string_view name, const json& v, E& out) const
        requires std::is_enum_v<E>
    {
        if (!v.is_string())
            fail(name, "expected a string");
        const auto s = v.get<std::string>();
        for (const auto& [value, label] : EnumNames<E>::values)
            if (s == label) {
                out = value;
                return;
            }
        fail(name, "unknown value '" + s + "'");
    }

    template <typename T>
    void operator()(std::string_view name, T& field) const
    {
        const auto it = doc.find(std::string(name));
        if (it != doc.end())
            read(name, *it, field);
    }
};

struct Writer {
    json& doc;

    template <typename T>
    void operator()(std::string_view name, const T& field) const
    {
        if constexpr (std::is_enum_v<T>) {
            for (const auto& [value, label] : EnumNames<T>::values)
                if (value == field)
                    doc[std::string(name)] = std::string(label);
        } else if constexpr (std::is_same_v<T, std::optional<double>>) {
            doc[std::string(name)] = field ? json(*field) : json(nullptr);
        } else {
            doc[std::string(name)] = field;
        }
    }
};

void require(bool ok, std::string_view field, std::string_view what)
{
    if (!ok)
        fail(field, what);
}

} // namespace

void ScenarioConfig::validate() const
{
    require(mast_height_m > 0.0, "mast_height_m", "must be positive");
    require(cell_range_min_m > 0.0, "cell_range_min_m", "must be positive");
    require(cell_range_max_m > cell_range_min_m, "cell_range_max_m", "must exceed cell_range_min_m");
    require(azimuth_half_span_deg > 0.0 && azimuth_half_span_deg <= 90.0, "azimuth_half_span_deg", "must lie in (0, 90]");
    if (downtilt_deg)
        require(*downtilt_deg > 0.0 && *downtilt_deg < 90.0, "downtilt_deg", "must lie in (0, 90)");
    require(carrier_hz > 0.0, "carrier_hz", "must be positive");
    require(bandwidth_hz > 0.0, "bandwidth_hz", "must be positive");
    require(noise_temperature_k > 0.0, "noise_temperature_k", "must be positive");
    require(pa_efficiency > 0.0 && pa_efficiency <= 1.0, "pa_efficiency", "must lie in (0, 1]");
    require(ris_nx >= 1, "ris_nx", "must be at least 1");
    require(ris_nz >= 1, "ris_nz", "must be at least 1");
    require(amaf_nh >= 1, "amaf_nh", "must be at least 1");
    require(amaf_nv >= 1, "amaf_nv", "must be at least 1");
    require(focal_distance_halfwavelengths > 0.0, "focal_distance_halfwavelengths", "must be positive");
    require(num_modules >= 1, "num_modules", "must be at least 1");
    require(module_separation_halfwavelengths >= 0.0, "module_separation_halfwavelengths", "must be nonnegative");
    require(num_users >= 1 && num_users <= num_modules, "num_users", "must lie between 1 and num_modules");
    require(num_drops >= 1, "num_drops", "must be at least 1");
    require(min_azimuth_sep_deg >= 0.0, "min_azimuth_sep_deg", "must be nonnegative");
    require(pointing_error_std_deg >= 0.0, "pointing_error_std_deg", "must be nonnegative");
    require(quant_bits >= 0 && quant_bits <= 16, "quant_bits", "must lie in [0, 16]");
    require(threads >= 1, "threads", "must be at least 1");
    require(pattern_resolution_deg > 0.0, "pattern_resolution_deg", "must be positive");
    if (sidelobe_exclusion_deg)
        require(*sidelobe_exclusion_deg > 0.0, "sidelobe_exclusion_deg", "must be positive");
    require(footprint_resolution_m > 0.0, "footprint_resolution_m", "must be positive");
    if (footprint_mode == FootprintMode::ground_target)
        require(footprint_target_x_m && footprint_target_y_m, "footprint_target_x_m",
                "ground_target mode needs footprint_target_x_m and footprint_target_y_m");
    if (footprint_mode == FootprintMode::direction_target)
        require(footprint_target_phi_deg && footprint_target_theta_deg, "footprint_target_phi_deg",
                "direction_target mode needs footprint_target_phi_deg and footprint_target_theta_deg");
}

ScenarioGeometry ScenarioConfig::geometry() const
{
    ScenarioGeometry g;
    g.mast_height_m = mast_height_m;
    g.r_min_m = cell_range_min_m;
    g.r_max_m = cell_range_max_m;
    g.azimuth_span_rad = deg_to_rad(azimuth_half_span_deg);
    g.wavelength_m = speed_of_light / carrier_hz;
    g.downtilt_rad = downtilt_deg ? deg_to_rad(*downtilt_deg) : mean_downtilt(g);
    return g;
}

LinkBudget ScenarioConfig::link() const
{
    LinkBudget l;
    l.carrier_hz = carrier_hz;
    l.bandwidth_hz = bandwidth_hz;
    l.noise_figure_db = noise_figure_db;
    l.noise_temperature_k = noise_temperature_k;
    l.eirp_dbm = eirp_dbm;
    l.target_snr_db = target_snr_db;
    l.p_rf_dbm = p_rf_dbm;
    return l;
}

SimConfig ScenarioConfig::sim() const
{
    SimConfig s;
    s.num_drops = num_drops;
    s.users = num_users;
    s.min_azimuth_sep_deg = min_azimuth_sep_deg;
    s.pointing_error_std_deg = pointing_error_std_deg;
    s.quant_bits = quant_bits;
    s.rng_seed = rng_seed;
    s.threads = threads;
    s.link = link();
    s.geometry = geometry();
    return s;
}

std::shared_ptr<const FeederModule> ScenarioConfig::design() const
{
    return std::make_shared<const FeederModule>(design_feeder(ArrayLayout(ris_nx, ris_nz), ArrayLayout(amaf_nh, amaf_nv),
                                                              focal_distance_halfwavelengths, illumination));
}

StackedSystem ScenarioConfig::stack() const
{
    return StackedSystem(design(), num_modules, module_separation_halfwavelengths, stacking_axis);
}

ScenarioConfig parse_config(const std::string& json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed config JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw config_error("config must be a JSON object");

    ScenarioConfig config;
    std::set<std::string, std::less<>> known;
    visit_fields(config, [&](std::string_view name, auto&) { known.emplace(name); });
    for (const auto& [key, value] : doc.items())
        if (!known.contains(key))
            throw config_error("unknown config field '" + key + "'");

    visit_fields(config, Reader{doc});
    config.validate();
    return config;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string to_json(const ScenarioConfig& config)
{
    json doc = json::object();
    visit_fields(config, Writer{doc});
    return doc.dump(2) + "\n";
}

} // namespace amafris
