#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jcpost/jc.hpp"

namespace jcpost {

enum class ChannelKind {
    Absorption,         // trace over the atom: rho11 + rho22
    PostselectGround,   // keep rho22, renormalize
    PostselectExcited,  // keep rho11, renormalize
};

const char* channel_name(ChannelKind kind);
std::optional<ChannelKind> parse_channel(std::string_view name);

struct ChannelOutcome {
    FieldState final_state;  // normalized
    double success_probability = 1.0;           // exactly 1 for Absorption
    std::vector<double> per_step_trace;         // length N, pre-normalization traces
    std::vector<double> mean_n_trajectory;      // length N+1: input mean, then after each atom
    std::optional<std::string> truncation_warning;
};

// Run N sequential atoms through one terminal channel.
ChannelOutcome apply_channel(const FieldState& rho0, const InteractionConfig& config,
                             ChannelKind kind);

// One sweep data point. `flag` is empty for valid rows; error rows carry the
// error kind instead of aborting the sweep.
struct SweepRow {
    double x = 0.0;  // r for coupling sweeps, |alpha| for amplitude sweeps
    ChannelKind kind = ChannelKind::Absorption;
    double mean_in = 0.0;
    double mean_out = 0.0;
    double fraction = 0.0;  // F = mean_out / mean_in
    double success = 0.0;
    int dim_used = 0;
    double top_population = 0.0;  // Re rho_{D-1,D-1} of the final state
    std::string flag;
};

// Sweep the coupling r over a fixed input state. Rows ordered by (r, kind).
std::vector<SweepRow> sweep_coupling(const FieldState& rho0, const std::vector<double>& r_values,
                                     int n_atoms, const std::vector<ChannelKind>& kinds);

// Sweep the coherent amplitude at fixed coupling. One truncation dimension,
// derived from the largest amplitude, is shared by all rows.
std::vector<SweepRow> sweep_amplitude(const std::vector<double>& alpha_values, double r,
                                      int n_atoms, const std::vector<ChannelKind>& kinds);

}  // namespace jcpost
