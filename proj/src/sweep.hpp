// sweep.hpp: 1-D parameter sweeps over cycle configurations, truncation
// convergence studies, and the CSV serialization both share. Grid points are
// independent pure evaluations and run on a small worker pool; rows are
// buffered and written in (variant, value) order so output files are
// byte-stable across runs and thread counts.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cycle.hpp"

namespace qotto::sweep {

enum class SweepParam { EpsilonH, DeltaH, Alpha, BetaC };

std::string sweep_param_token(SweepParam p);
SweepParam parse_sweep_param(const std::string& token);

// One (coupling model, stroke mode, decoupling mode) combination.
struct Variant {
    cycle::CouplingModel coupling{cycle::CouplingModel::RcStrong};
    cycle::StrokeMode stroke{cycle::StrokeMode::Adiabatic};
    cycle::DecouplingMode decoupling{cycle::DecouplingMode::Instantaneous};
};

// "weak:adiabatic:instantaneous,rc-strong:adiabatic:adiabatic" and so on.
std::vector<Variant> parse_variants(const std::string& list);

struct SweepSpec {
    SweepParam param{SweepParam::EpsilonH};
    double from{0.0};
    double to{1.0};
    int steps{2}; // uniform grid inclusive of both endpoints
    cycle::CycleConfig base;
    std::vector<Variant> variants;

    void validate() const;
};

// Uniform grid value; sweeping alpha moves both reservoirs together.
double grid_value(const SweepSpec& spec, int step);
cycle::CycleConfig apply_sweep_value(const cycle::CycleConfig& base,
                                     SweepParam param, double value);

// Exact column set the CSV contract promises, in order.
extern const char* const kCsvHeader;

// One serialized row; numeric fields carry 12 significant digits and eta is
// empty when undefined.
std::string format_csv_row(const std::string& sweep_param, double value,
                           const Variant& variant, const cycle::CycleResult& result);

struct SweepOutcome {
    bool all_converged{true};
};

// Evaluates steps x |variants| cycles and writes the CSV to out_path
// ("-" means stdout). threads <= 0 picks the hardware concurrency.
SweepOutcome run_sweep(const SweepSpec& spec, const std::string& out_path,
                       int threads = 0);

struct ConvergeRow {
    int n{};
    double w_out{};
    double q_hot{};
    std::optional<double> eta;
    std::optional<double> rel_delta; // vs the previous row; empty on the first
};

struct ConvergeOutcome {
    std::vector<ConvergeRow> rows;
    bool converged{false}; // final rel_delta <= 1e-6
};

// Truncations n = 5, 10, ..., n_max (n_max appended when not a multiple of 5).
ConvergeOutcome run_converge(const cycle::CycleConfig& cfg, int n_max);
void write_converge_csv(const ConvergeOutcome& outcome, std::ostream& out);

// Single-cycle row for the `cycle` subcommand: sweep_param "none", value 0.
std::string cycle_csv_row(const cycle::CycleConfig& cfg);

} // namespace qotto::sweep
