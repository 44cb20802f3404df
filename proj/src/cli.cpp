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

#include "amafris/cli.hpp"

#include "amafris/csv.hpp"
#include "amafris/errors.hpp"
#include "amafris/units.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace amafris::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& out_dir, const std::string& name)
{
    fs::create_directories(out_dir);
    std::ofstream os(out_dir / name, std::ios::binary);
    if (!os)
        throw error("cannot write " + (out_dir / name).string());
    return os;
}

void write_effective_config(const ScenarioConfig& config, const fs::path& out_dir)
{
    open_output(out_dir, "effective_config.json") << to_json(config);
}

std::string format_complex(const Complex& c)
{
    const auto clean = [](double v) { return std::abs(v) < 5e-7 ? 0.0 : v; };
    const double im = clean(c.imag());
    return format_fixed(clean(c.real()), 6) + (im < 0 ? "" : "+") + format_fixed(im, 6) + "j";
}

} // namespace

DesignSummary cmd_design(const ScenarioConfig& config, const fs::path& out_dir, std::ostream& log)
{
    const ScenarioGeometry g = config.geometry();
    const LinkBudget link = config.link();
    const StackedSystem stack = config.stack();
    const FeederModule& m = stack.design();
    const ComplexVector unit = m.unit_template();

    DesignSummary s;
    s.sigma1 = m.sigma1;
    s.v1 = m.v1;
    s.taper_db = taper_db(m.template_w);
    s.max_u1_sq_db = to_db(m.u1.cwiseAbs2().maxCoeff());

    const PatternGrid grid = pattern_grid(m.ris_layout, unit, {}, {}, config.pattern_resolution_deg);
    const SidelobeReport lobes = peak_and_sidelobe(grid, config.sidelobe_exclusion_deg);
    s.boresight_gain_dbi = to_db(radiation_pattern(m.ris_layout, unit, {0.0, 0.0}));
    s.sidelobe_rel_db = lobes.sidelobe_rel_db;
    s.beamwidth_3db_deg = lobes.beamwidth_3db_deg;
    s.exclusion_deg = lobes.exclusion_deg;

    const Direction edge = cell_edge_composite_direction(g);
    s.edge_gain_dbi = to_db(radiation_pattern(m.ris_layout, steer(unit, edge, m.ris_layout), edge));
    s.required_p_rf_dbm = required_p_rf(link, s.edge_gain_dbi);
    s.next_db = next_table(stack);

    std::vector<double> amplitude(m.ris_layout.size());
    for (std::size_t k = 0; k < amplitude.size(); ++k)
        amplitude[k] = m.template_w(static_cast<Eigen::Index>(k)).real();
    {
        auto os = open_output(out_dir, "template_amplitude.csv");
        write_element_csv(os, m.ris_layout, amplitude);
    }
    {
        auto os = open_output(out_dir, "boresight_phase_mask.csv");
        write_phase_mask_csv(os, m.ris_layout, steering_mask(m.ris_layout, {0.0, 0.0}, m.u1));
    }
    {
        auto os = open_output(out_dir, "amaf_weights.csv");
        os << "index,real,imag\n";
        for (Eigen::Index i = 0; i < m.v1.size(); ++i)
            os << i << ',' << format_number(m.v1(i).real(), 12) << ',' << format_number(m.v1(i).imag(), 12) << '\n';
    }
    {
        auto os = open_output(out_dir, "next_table.csv");
        write_next_csv(os, s.next_db);
    }

    std::vector<BudgetLine> lines = {
        {"sigma1", s.sigma1, ""},
        {"taper", s.taper_db, "dB"},
        {"max_u1_squared", s.max_u1_sq_db, "dB"},
        {"boresight_gain", s.boresight_gain_dbi, "dBi"},
        {"peak_gain", lobes.peak_dbi, "dBi"},
        {"beamwidth_3db", s.beamwidth_3db_deg, "deg"},
        {"mainlobe_exclusion", s.exclusion_deg, "deg"},
        {"sidelobe_level", s.sidelobe_rel_db, "dB"},
        {"edge_direction_phi", rad_to_deg(edge.phi), "deg"},
        {"edge_direction_theta", rad_to_deg(edge.theta), "deg"},
        {"edge_gain", s.edge_gain_dbi, "dBi"},
        {"required_p_rf", s.required_p_rf_dbm, "dBm"},
    };
    if (stack.module_count() > 1)
        lines.push_back({"adjacent_next", s.next_db(0, 1), "dB"});
    {
        auto os = open_output(out_dir, "design_report.csv");
        write_budget_csv(os, lines);
    }
    std::ostringstream text;
    text << "AMAF-RIS module design: " << m.ris_layout.n_x() << "x" << m.ris_layout.n_z() << " RIS, "
         << m.amaf_layout.n_x() << "x" << m.amaf_layout.n_z() << " AMAF, F = "
         << format_number(m.focal_distance) << " half-wavelengths\n";
    text << "v1 =";
    for (Eigen::Index i = 0; i < m.v1.size(); ++i)
        text << ' ' << format_complex(m.v1(i));
    text << '\n';
    write_budget_text(text, lines);
    open_output(out_dir, "design_report.txt") << text.str();
    write_effective_config(config, out_dir);
    log << text.str();
    return s;
}

FootprintSummary cmd_footprint(const ScenarioConfig& config, const fs::path& out_dir, std::ostream& log)
{
    const ScenarioGeometry g = config.geometry();
    const StackedSystem stack = config.stack();

    FootprintSummary s;
    s.resolution_m = config.footprint_resolution_m;
    switch (config.footprint_mode) {
    case FootprintMode::boresight:
        s.beams.push_back({0.0, 0.0});
        break;
    case FootprintMode::ground_target: {
        const GroundPoint p{*config.footprint_target_x_m, *config.footprint_target_y_m};
        const double range = std::hypot(p.x, p.y);
        if (range < g.r_min_m || range > g.r_max_m || std::abs(std::atan2(p.x, p.y)) > g.azimuth_span_rad)
            throw error("footprint target lies outside the served sector");
        s.beams.push_back(ground_to_direction(p, g).direction);
        break;
    }
    case FootprintMode::direction_target: {
        const Direction d = Direction::from_degrees(*config.footprint_target_phi_deg, *config.footprint_target_theta_deg);
        if (std::abs(d.phi) >= std::numbers::pi / 2 || std::abs(d.theta) >= std::numbers::pi / 2)
            throw error("footprint target direction lies outside the RIS front hemisphere");
        direction_to_ground(d, g); // throws when the beam never reaches the ground
        s.beams.push_back(d);
        break;
    }
    case FootprintMode::multibeam: {
        Rng rng = drop_rng(config.rng_seed, 0);
        for (const auto& u : schedule_users(rng, config.num_users, g, deg_to_rad(config.min_azimuth_sep_deg)))
            s.beams.push_back(u.direction);
        break;
    }
    }

    const auto masks = steered_masks(stack, s.beams, config.quant_bits);
    const std::vector<ComplexVector> feeds(s.beams.size(), stack.design().v1);
    // scale so a lone boresight beam matches the unit-power design gain
    const ComplexMatrix N = build_N(stack, masks, feeds) / stack.design().sigma1;
    std::vector<std::vector<Aperture>> beams;
    for (int j = 0; j < N.cols(); ++j)
        beams.push_back(column_apertures(stack, N, j));

    const FootprintGrid grid = footprint_grid(beams, g, config.footprint_resolution_m);
    s.peak = footprint_peak(grid);
    s.spots = footprint_local_peaks(grid, -10.0);

    {
        auto os = open_output(out_dir, "footprint.csv");
        write_footprint_csv(os, grid);
    }
    std::ostringstream text;
    text << "ground footprint, " << s.beams.size() << " beam(s), resolution " << format_number(s.resolution_m) << " m\n";
    for (const auto& b : s.beams)
        text << "beam phi " << format_fixed(rad_to_deg(b.phi), 3) << " deg, theta " << format_fixed(rad_to_deg(b.theta), 3)
             << " deg\n";
    text << "peak " << format_fixed(s.peak.gain_dbi, 3) << " dBi at x " << format_fixed(s.peak.location.x, 2) << " m, y "
         << format_fixed(s.peak.location.y, 2) << " m\n";
    for (const auto& spot : s.spots)
        text << "spot " << format_fixed(spot.gain_dbi, 3) << " dBi at x " << format_fixed(spot.location.x, 2) << " m, y "
             << format_fixed(spot.location.y, 2) << " m\n";
    open_output(out_dir, "footprint_report.txt") << text.str();
    write_effective_config(config, out_dir);
    log << text.str();
    return s;
}

SimulateSummary cmd_simulate(const ScenarioConfig& config, const fs::path& out_dir, std::ostream& log)
{
    const StackedSystem stack = config.stack();
    SimulateSummary s;
    s.result = run_campaign(config.sim(), stack);
    const auto rates = s.result.rates();
    s.p05 = percentile(rates, 0.05);
    s.median = percentile(rates, 0.5);
    s.p95 = percentile(rates, 0.95);
    s.mean = std::accumulate(rates.begin(), rates.end(), 0.0) / static_cast<double>(rates.size());

    {
        auto os = open_output(out_dir, "rates.csv");
        write_rates_csv(os, s.result);
    }
    {
        auto os = open_output(out_dir, "rate_cdf.csv");
        write_cdf_csv(os, empirical_cdf(rates));
    }
    std::ostringstream text;
    text << "campaign: " << config.num_drops << " drops, " << config.num_users << " users, pointing error "
         << format_number(config.pointing_error_std_deg) << " deg, quantization bits " << config.quant_bits << ", seed "
         << config.rng_seed << '\n';
    write_budget_text(text, {{"rate_p05", s.p05, "bit/symbol"},
                             {"rate_median", s.median, "bit/symbol"},
                             {"rate_p95", s.p95, "bit/symbol"},
                             {"rate_mean", s.mean, "bit/symbol"}});
    open_output(out_dir, "simulate_summary.txt") << text.str();
    write_effective_config(config, out_dir);
    log << text.str();
    return s;
}

PowerSummary cmd_power(const ScenarioConfig& config, const fs::path& out_dir, std::ostream& log)
{
    const ScenarioGeometry g = config.geometry();
    const LinkBudget link = config.link();
    const auto design = config.design();

    const Direction edge = cell_edge_composite_direction(g);
    const ComplexVector unit = design->unit_template();
    const double edge_gain = to_db(radiation_pattern(design->ris_layout, steer(unit, edge, design->ris_layout), edge));
    const double far_range = std::hypot(g.r_max_m, g.mast_height_m);
    const double l_max = freespace_pathloss_db(far_range, link.wavelength_m());

    PowerSummary s;
    s.arch1 = dc_power_arch1(link.p_rf_dbm, design->v1, config.pa_efficiency);
    s.arch2 = dc_power_arch2(link.p_rf_dbm, design->u1, static_cast<int>(design->ris_layout.size()), config.pa_efficiency);
    s.ratio = s.arch2.p_dc_w / s.arch1.p_dc_w;
    s.lines = {
        {"carrier_frequency", link.carrier_hz / 1e9, "GHz"},
        {"wavelength", link.wavelength_m() * 1e3, "mm"},
        {"bandwidth", link.bandwidth_hz / 1e9, "GHz"},
        {"thermal_noise", link.thermal_noise_dbm(), "dBm"},
        {"noise_figure", link.noise_figure_db, "dB"},
        {"receive_noise_power", link.noise_floor_dbm(), "dBm"},
        {"far_corner_range", far_range, "m"},
        {"path_loss_max", l_max, "dB"},
        {"eirp", link.eirp_dbm, "dBm"},
        {"receive_signal_power", link.eirp_dbm - l_max, "dBm"},
        {"receive_snr", link.eirp_dbm - l_max - link.noise_floor_dbm(), "dB"},
        {"edge_gain", edge_gain, "dBi"},
        {"required_p_rf", required_p_rf(link, edge_gain), "dBm"},
        {"p_rf", link.p_rf_dbm, "dBm"},
        {"pa_efficiency", config.pa_efficiency, ""},
        {"arch1_pa_count", static_cast<double>(s.arch1.pa_count), ""},
        {"arch1_max_weight_squared", to_db(design->v1.cwiseAbs2().maxCoeff()), "dB"},
        {"arch1_p_pa_max", s.arch1.p_pa_max_dbm, "dBm"},
        {"arch1_p_pa_max_mw", s.arch1.p_pa_max_w * 1e3, "mW"},
        {"arch1_p_dc", s.arch1.p_dc_w, "W"},
        {"arch2_pa_count", static_cast<double>(s.arch2.pa_count), ""},
        {"arch2_max_weight_squared", to_db(design->u1.cwiseAbs2().maxCoeff()), "dB"},
        {"arch2_p_pa_max", s.arch2.p_pa_max_dbm, "dBm"},
        {"arch2_p_pa_max_mw", s.arch2.p_pa_max_w * 1e3, "mW"},
        {"arch2_p_dc", s.arch2.p_dc_w, "W"},
        {"dc_power_ratio", s.ratio, ""},
    };
    {
        auto os = open_output(out_dir, "power_report.csv");
        write_budget_csv(os, s.lines);
    }
    std::ostringstream text;
    write_budget_text(text, s.lines);
    open_output(out_dir, "power_report.txt") << text.str();
    write_effective_config(config, out_dir);
    log << text.str();
    return s;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Array-fed RIS multibeam base station simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";

    const char* commands[][2] = {
        {"design", "PEM module design report and template CSVs"},
        {"footprint", "ground footprint grid of one or more steered beams"},
        {"simulate", "Monte Carlo multiuser rate campaign"},
        {"power", "link budget and DC power comparison"},
        {"validate", "check a config file and print the effective config"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "scenario JSON (defaults to the reference scenario)");
        sub->add_option("--seed", seed, "override rng_seed");
        sub->add_option("--out-dir", out_dir, "output directory");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : config_failure;
    }

    ScenarioConfig config;
    try {
        config = config_path.empty() ? ScenarioConfig{} : load_config(config_path);
        if (seed)
            config.rng_seed = *seed;
        config.validate();
    } catch (const config_error& e) {
        err << "config error: " << e.what() << '\n';
        return config_failure;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (command == "design")
            cmd_design(config, out_dir, out);
        else if (command == "footprint")
            cmd_footprint(config, out_dir, out);
        else if (command == "simulate")
            cmd_simulate(config, out_dir, out);
        else if (command == "power")
            cmd_power(config, out_dir, out);
        else
            out << to_json(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return runtime_failure;
    }
    return success;
}

} // namespace amafris::cli
