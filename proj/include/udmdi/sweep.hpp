#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "udmdi/finite_size.hpp"
#include "udmdi/keyrate.hpp"

namespace udmdi::sweep {

enum class Variable { distance, modulation_variance, block_length };

/// Which rate a max-distance search targets.
enum class RateModel { ud, symmetric_gm };

struct SweepSpec {
    Variable variable = Variable::distance;
    std::vector<double> grid;  // strictly increasing, non-empty
    keyrate::Scenario scenario = keyrate::Scenario::symmetric;
    keyrate::ProtocolConfig base;  // distance field rewritten per row
    double distance_km = 0.0;      // fixed distance for non-distance sweeps
    /// Finite-size columns: one K_f per requested block length
    /// (half split, failure probabilities from fs_template).
    std::vector<double> block_lengths;
    finite_size::FiniteSizeConfig fs_template;
    unsigned threads = 1;

    void validate() const;
};

struct SweepRow {
    double value = 0.0;
    double key_rate_ud = 0.0;
    double key_rate_gm = 0.0;
    double plob = 0.0;
    double mutual_info = 0.0;
    double holevo = 0.0;
    bool physical = true;
    std::vector<double> key_rate_finite;
};

/// Evaluates the grid (optionally across a worker pool; row order is
/// always the grid order). Physicality violations mark the row and
/// leave its rates NaN instead of aborting the sweep. Every emitted
/// rate is checked against the PLOB bound.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_csv(std::ostream& out, const SweepSpec& spec,
               const std::vector<SweepRow>& rows);

/// Largest distance with a positive signed rate, found by bisection
/// at the given resolution. Throws NoRangeError if the rate is not
/// positive at zero distance.
double max_distance(const keyrate::ProtocolConfig& base,
                    keyrate::Scenario scenario, RateModel model,
                    double resolution_km = 0.01);

/// Fixed parameters of one figure-reproduction preset.
struct FigurePreset {
    std::string name;
    keyrate::Scenario scenario = keyrate::Scenario::symmetric;
    double v_m = 100.0;
    std::vector<double> betas;      // one rate column per beta
    double eps = 0.002;             // per-link excess noise
    double alpha_db_per_km = 0.2;
    double bob_side_efficiency = 1.0;
    std::vector<double> distances_km;   // fixed-distance family (fig4/fig5)
    double grid_start = 0.0;            // swept axis
    double grid_stop = 0.0;
    double grid_step = 0.0;
    std::vector<double> block_lengths;  // finite-size presets
    bool gm_baseline = false;           // add the symmetric-GM column
};

/// The preset table for `reproduce fig4..fig9`.
const std::vector<FigurePreset>& figure_presets();

/// Render one preset to CSV. Deterministic: identical inputs yield
/// byte-identical output.
void reproduce_figure(const FigurePreset& preset, std::ostream& out,
                      unsigned threads = 1);

/// Formats a double with 10 significant digits (CSV convention).
std::string format_number(double value);

}  // namespace udmdi::sweep
