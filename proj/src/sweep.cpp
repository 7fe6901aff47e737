#include "udmdi/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "udmdi/errors.hpp"

namespace udmdi::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void parallel_for_index(std::size_t n, unsigned threads, auto&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += threads) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

double total_fiber_transmittance(const keyrate::ProtocolConfig& cfg) {
    return channel::fiber_transmittance(
        cfg.topology.l_ac_km + cfg.topology.l_bc_km,
        cfg.topology.alpha_db_per_km);
}

void assert_under_plob(double rate, double plob, const char* what) {
    if (std::isnan(rate)) return;
    if (rate > plob + 1e-12)
        throw std::logic_error(std::string(what) +
                               " exceeds the PLOB bound; model violation");
}

std::vector<double> make_grid(double start, double stop, double step) {
    const auto count =
        static_cast<std::size_t>(std::llround((stop - start) / step));
    std::vector<double> grid(count + 1);
    for (std::size_t i = 0; i <= count; ++i) grid[i] = start + step * i;
    return grid;
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

void SweepSpec::validate() const {
    if (grid.empty()) throw std::domain_error("sweep grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::domain_error("sweep grid must be strictly increasing");
    base.validate();
    for (double n : block_lengths)
        if (!(n >= 2.0))
            throw std::domain_error("block length must be >= 2");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();

    auto config_for = [&](double value, double& row_distance) {
        keyrate::ProtocolConfig cfg = spec.base;
        switch (spec.variable) {
            case Variable::distance:
                row_distance = value;
                break;
            case Variable::modulation_variance:
                cfg.v_m = value;
                row_distance = spec.distance_km;
                break;
            case Variable::block_length:
                row_distance = spec.distance_km;
                break;
        }
        if (!cfg.links_override) {
            cfg.topology = keyrate::topology_for(
                spec.scenario, row_distance, spec.base.topology.alpha_db_per_km,
                spec.base.topology.bob_side_efficiency);
        }
        return cfg;
    };

    std::vector<SweepRow> rows(spec.grid.size());
    parallel_for_index(spec.grid.size(), spec.threads, [&](std::size_t i) {
        const double value = spec.grid[i];
        SweepRow row;
        row.value = value;

        double distance = 0.0;
        const keyrate::ProtocolConfig cfg = config_for(value, distance);
        row.plob = keyrate::plob_bound(channel::fiber_transmittance(
            cfg.topology.l_ac_km + cfg.topology.l_bc_km,
            cfg.topology.alpha_db_per_km));

        try {
            const keyrate::KeyRateResult ud = keyrate::key_rate_ud(cfg);
            row.key_rate_ud = ud.key_rate;
            row.mutual_info = ud.mutual_info;
            row.holevo = ud.holevo;
            row.key_rate_gm = keyrate::key_rate_symmetric_gm(cfg).key_rate;

            if (spec.variable == Variable::block_length) {
                finite_size::FiniteSizeConfig fcfg = spec.fs_template;
                fcfg.n_total = value;
                fcfg.n_key = 0.5 * value;
                row.key_rate_finite.push_back(
                    finite_size::finite_size_key_rate(cfg, fcfg).key_rate);
            } else {
                for (double n : spec.block_lengths) {
                    finite_size::FiniteSizeConfig fcfg = spec.fs_template;
                    fcfg.n_total = n;
                    fcfg.n_key = 0.5 * n;
                    row.key_rate_finite.push_back(
                        finite_size::finite_size_key_rate(cfg, fcfg).key_rate);
                }
            }
        } catch (const PhysicalityError&) {
            row.physical = false;
            row.key_rate_ud = kNaN;
            row.key_rate_gm = kNaN;
            row.mutual_info = kNaN;
            row.holevo = kNaN;
            const std::size_t n_finite = spec.variable == Variable::block_length
                                             ? 1
                                             : spec.block_lengths.size();
            row.key_rate_finite.assign(n_finite, kNaN);
        }

        assert_under_plob(row.key_rate_ud, row.plob, "unidimensional rate");
        assert_under_plob(row.key_rate_gm, row.plob, "symmetric-GM rate");
        for (double kf : row.key_rate_finite)
            assert_under_plob(kf, row.plob, "finite-size rate");
        rows[i] = row;
    });
    return rows;
}

void write_csv(std::ostream& out, const SweepSpec& spec,
               const std::vector<SweepRow>& rows) {
    switch (spec.variable) {
        case Variable::distance:
            out << "distance (km)";
            break;
        case Variable::modulation_variance:
            out << "modulation_variance (SNU)";
            break;
        case Variable::block_length:
            out << "block_length (signals)";
            break;
    }
    out << ",key_rate_ud (bits/pulse),key_rate_gm (bits/pulse)"
        << ",plob_bound (bits/pulse),mutual_info (bits),holevo (bits),physical";
    if (spec.variable == Variable::block_length) {
        out << ",key_rate_finite (bits/pulse)";
    } else {
        for (double n : spec.block_lengths)
            out << ",key_rate_finite_" << format_number(n) << " (bits/pulse)";
    }
    out << "\n";

    for (const SweepRow& row : rows) {
        out << format_number(row.value) << ',' << format_number(row.key_rate_ud)
            << ',' << format_number(row.key_rate_gm) << ','
            << format_number(row.plob) << ',' << format_number(row.mutual_info)
            << ',' << format_number(row.holevo) << ',' << (row.physical ? 1 : 0);
        for (double kf : row.key_rate_finite) out << ',' << format_number(kf);
        out << "\n";
    }
}

double max_distance(const keyrate::ProtocolConfig& base,
                    keyrate::Scenario scenario, RateModel model,
                    double resolution_km) {
    if (!(resolution_km > 0.0))
        throw std::domain_error("resolution must be > 0");

    auto raw_rate = [&](double distance) {
        keyrate::ProtocolConfig cfg = base;
        cfg.links_override.reset();
        cfg.topology =
            keyrate::topology_for(scenario, distance,
                                  base.topology.alpha_db_per_km,
                                  base.topology.bob_side_efficiency);
        return model == RateModel::ud
                   ? keyrate::key_rate_ud(cfg).key_rate_raw
                   : keyrate::key_rate_symmetric_gm(cfg).key_rate_raw;
    };

    if (!(raw_rate(0.0) > 0.0))
        throw NoRangeError("rate is not positive at zero distance");

    double lo = 0.0;
    double hi = 1.0;
    while (raw_rate(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 16384.0)
            throw NoRangeError("rate stays positive beyond any fiber length");
    }
    while (hi - lo > resolution_km) {
        const double mid = 0.5 * (lo + hi);
        if (raw_rate(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = [] {
        std::vector<FigurePreset> table;

        FigurePreset fig4;
        fig4.name = "fig4";
        fig4.scenario = keyrate::Scenario::symmetric;
        fig4.betas = {0.98};
        fig4.distances_km = {2.0, 3.0, 4.0, 5.0};
        fig4.grid_start = 1.0;
        fig4.grid_stop = 300.0;
        fig4.grid_step = 1.0;
        table.push_back(fig4);

        FigurePreset fig5 = fig4;
        fig5.name = "fig5";
        fig5.scenario = keyrate::Scenario::asymmetric;
        fig5.bob_side_efficiency = 0.98;
        fig5.distances_km = {10.0, 13.0, 16.0, 20.0, 22.0};
        table.push_back(fig5);

        FigurePreset fig6;
        fig6.name = "fig6";
        fig6.scenario = keyrate::Scenario::symmetric;
        fig6.betas = {0.96, 0.98};
        fig6.gm_baseline = true;
        fig6.grid_start = 0.0;
        fig6.grid_stop = 16.0;
        fig6.grid_step = 0.05;
        table.push_back(fig6);

        FigurePreset fig7 = fig6;
        fig7.name = "fig7";
        fig7.scenario = keyrate::Scenario::asymmetric;
        fig7.bob_side_efficiency = 0.98;
        fig7.grid_stop = 45.0;
        fig7.grid_step = 0.1;
        table.push_back(fig7);

        FigurePreset fig8;
        fig8.name = "fig8";
        fig8.scenario = keyrate::Scenario::symmetric;
        fig8.betas = {0.98};
        fig8.block_lengths = {1e6, 1e7, 1e8, 1e9};
        fig8.grid_start = 0.0;
        fig8.grid_stop = 8.0;
        fig8.grid_step = 0.05;
        table.push_back(fig8);

        FigurePreset fig9 = fig8;
        fig9.name = "fig9";
        fig9.scenario = keyrate::Scenario::asymmetric;
        fig9.bob_side_efficiency = 0.98;
        fig9.grid_stop = 24.0;
        fig9.grid_step = 0.1;
        table.push_back(fig9);

        return table;
    }();
    return presets;
}

namespace {

keyrate::ProtocolConfig preset_config(const FigurePreset& preset,
                                      double distance, double v_m,
                                      double beta) {
    return keyrate::make_config(preset.scenario, distance, v_m, beta,
                                preset.eps, preset.alpha_db_per_km,
                                preset.bob_side_efficiency);
}

// fig4/fig5: one rate column, rows over (distance, V_m)
void reproduce_modulation_family(const FigurePreset& preset, std::ostream& out,
                                 unsigned threads) {
    const std::vector<double> vms =
        make_grid(preset.grid_start, preset.grid_stop, preset.grid_step);
    const double beta = preset.betas.front();

    out << "distance (km),modulation_variance (SNU),key_rate_ud (bits/pulse)\n";
    for (double distance : preset.distances_km) {
        std::vector<double> rates(vms.size());
        parallel_for_index(vms.size(), threads, [&](std::size_t i) {
            const auto cfg = preset_config(preset, distance, vms[i], beta);
            rates[i] = keyrate::key_rate_ud(cfg).key_rate;
        });
        const double plob = keyrate::plob_bound(channel::fiber_transmittance(
            distance, preset.alpha_db_per_km));
        for (std::size_t i = 0; i < vms.size(); ++i) {
            assert_under_plob(rates[i], plob, "unidimensional rate");
            out << format_number(distance) << ',' << format_number(vms[i])
                << ',' << format_number(rates[i]) << "\n";
        }
    }
}

// fig6/fig7: distance sweep with one column per beta plus baseline
void reproduce_distance_family(const FigurePreset& preset, std::ostream& out,
                               unsigned threads) {
    const std::vector<double> grid =
        make_grid(preset.grid_start, preset.grid_stop, preset.grid_step);

    out << "distance (km)";
    for (double beta : preset.betas)
        out << ",key_rate_ud_beta" << format_number(beta) << " (bits/pulse)";
    out << ",key_rate_gm_beta" << format_number(preset.betas.back())
        << " (bits/pulse),plob_bound (bits/pulse)\n";

    std::vector<std::vector<double>> table(grid.size());
    parallel_for_index(grid.size(), threads, [&](std::size_t i) {
        std::vector<double> cols;
        for (double beta : preset.betas) {
            const auto cfg = preset_config(preset, grid[i], preset.v_m, beta);
            cols.push_back(keyrate::key_rate_ud(cfg).key_rate);
        }
        const auto cfg =
            preset_config(preset, grid[i], preset.v_m, preset.betas.back());
        cols.push_back(keyrate::key_rate_symmetric_gm(cfg).key_rate);
        cols.push_back(keyrate::plob_bound(channel::fiber_transmittance(
            grid[i], preset.alpha_db_per_km)));
        table[i] = std::move(cols);
    });

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double plob = table[i].back();
        for (std::size_t c = 0; c + 1 < table[i].size(); ++c)
            assert_under_plob(table[i][c], plob, "emitted rate");
        out << format_number(grid[i]);
        for (double v : table[i]) out << ',' << format_number(v);
        out << "\n";
    }
}

// fig8/fig9: distance sweep with one finite-size column per block length
void reproduce_finite_family(const FigurePreset& preset, std::ostream& out,
                             unsigned threads) {
    const std::vector<double> grid =
        make_grid(preset.grid_start, preset.grid_stop, preset.grid_step);
    const double beta = preset.betas.front();

    out << "distance (km)";
    for (double n : preset.block_lengths)
        out << ",key_rate_finite_" << format_number(n) << " (bits/pulse)";
    out << ",key_rate_ud (bits/pulse),plob_bound (bits/pulse)\n";

    std::vector<std::vector<double>> table(grid.size());
    parallel_for_index(grid.size(), threads, [&](std::size_t i) {
        const auto cfg = preset_config(preset, grid[i], preset.v_m, beta);
        std::vector<double> cols;
        for (double n : preset.block_lengths) {
            const auto fcfg = finite_size::FiniteSizeConfig::half_split(n);
            cols.push_back(finite_size::finite_size_key_rate(cfg, fcfg).key_rate);
        }
        cols.push_back(keyrate::key_rate_ud(cfg).key_rate);
        cols.push_back(keyrate::plob_bound(channel::fiber_transmittance(
            grid[i], preset.alpha_db_per_km)));
        table[i] = std::move(cols);
    });

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double plob = table[i].back();
        for (std::size_t c = 0; c + 1 < table[i].size(); ++c)
            assert_under_plob(table[i][c], plob, "emitted rate");
        out << format_number(grid[i]);
        for (double v : table[i]) out << ',' << format_number(v);
        out << "\n";
    }
}

}  // namespace

void reproduce_figure(const FigurePreset& preset, std::ostream& out,
                      unsigned threads) {
    if (!preset.distances_km.empty())
        reproduce_modulation_family(preset, out, threads);
    else if (!preset.block_lengths.empty())
        reproduce_finite_family(preset, out, threads);
    else
        reproduce_distance_family(preset, out, threads);
}

}  // namespace udmdi::sweep
