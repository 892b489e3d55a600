#include "jcpost/channels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace jcpost {

const char* channel_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::Absorption: return "absorption";
        case ChannelKind::PostselectGround: return "postselect-ground";
        case ChannelKind::PostselectExcited: return "postselect-excited";
    }
    return "unknown";
}

std::optional<ChannelKind> parse_channel(std::string_view name) {
    if (name == "absorption") return ChannelKind::Absorption;
    if (name == "postselect-ground") return ChannelKind::PostselectGround;
    if (name == "postselect-excited") return ChannelKind::PostselectExcited;
    return std::nullopt;
}

namespace {

std::string format_scientific(double value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", value);
    return buf;
}

// Deduplicate and order requested channels by enum value so sweep rows have a
// canonical layout.
std::vector<ChannelKind> canonical_kinds(std::vector<ChannelKind> kinds) {
    if (kinds.empty()) throw invalid_input_error("at least one channel kind is required");
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
    return kinds;
}

SweepRow run_row(const FieldState& rho0, double x, const InteractionConfig& config,
                 ChannelKind kind, double mean_in) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    SweepRow row;
    row.x = x;
    row.kind = kind;
    row.mean_in = mean_in;
    row.dim_used = config.dim;
    try {
        const ChannelOutcome outcome = apply_channel(rho0, config, kind);
        row.mean_out = outcome.mean_n_trajectory.back();
        row.fraction = row.mean_out / mean_in;  // NaN when the input mean is zero
        row.success = outcome.success_probability;
        row.top_population = outcome.final_state.matrix(config.dim - 1, config.dim - 1).real();
        if (mean_in == 0.0) row.flag = "degenerate";
    } catch (const error& e) {
        row.mean_out = nan;
        row.fraction = nan;
        row.success = nan;
        row.top_population = nan;
        row.flag = e.kind();
    }
    return row;
}

}  // namespace

ChannelOutcome apply_channel(const FieldState& rho0, const InteractionConfig& config,
                             ChannelKind kind) {
    config.validate();
    if (rho0.matrix.rows() != rho0.matrix.cols())
        throw invalid_input_error("density matrix must be square");
    if (rho0.dim() != config.dim)
        throw invalid_input_error("state dimension does not match config.dim");
    if (!rho0.matrix.allFinite()) throw invalid_input_error("density matrix must be finite");
    if (std::abs(rho0.trace() - 1.0) > 1e-6)
        throw invalid_input_error("input state must be normalized to unit trace");

    const int d = config.dim;
    ChannelOutcome out;
    out.per_step_trace.reserve(config.n_atoms);
    out.mean_n_trajectory.reserve(config.n_atoms + 1);

    FieldState rho = rho0;
    out.mean_n_trajectory.push_back(mean_photon_number_unnormalized(rho));
    double top_population = rho.matrix(d - 1, d - 1).real();

    for (int step = 0; step < config.n_atoms; ++step) {
        EvolvedBlocks blocks = evolve_one_atom(rho, config.r);
        if (kind == ChannelKind::Absorption) {
            rho.matrix = blocks.rho11 + blocks.rho22;
            out.per_step_trace.push_back(rho.trace());
        } else {
            Eigen::MatrixXcd& block =
                kind == ChannelKind::PostselectGround ? blocks.rho22 : blocks.rho11;
            const double t = block.trace().real();
            if (t < 1e-300)
                throw impossible_postselection_error(
                    std::string("post-selection probability vanished for ") + channel_name(kind));
            out.per_step_trace.push_back(t);
            rho.matrix = block / t;
        }
        out.mean_n_trajectory.push_back(mean_photon_number_unnormalized(rho));
        top_population = std::max(top_population, rho.matrix(d - 1, d - 1).real());
    }

    if (kind == ChannelKind::Absorption) {
        out.success_probability = 1.0;
    } else {
        double product = 1.0;
        for (double t : out.per_step_trace) product *= t;
        out.success_probability = product;
    }

    if (top_population > 1e-8)
        out.truncation_warning = "top Fock population reached " +
                                 format_scientific(top_population) +
                                 "; increase the truncation dimension";

    rho.is_normalized = std::abs(rho.trace() - 1.0) <= 1e-10;
    out.final_state = std::move(rho);
    return out;
}

std::vector<SweepRow> sweep_coupling(const FieldState& rho0, const std::vector<double>& r_values,
                                     int n_atoms, const std::vector<ChannelKind>& kinds) {
    if (r_values.empty()) throw invalid_input_error("r_values must be non-empty");
    for (double r : r_values)
        if (!std::isfinite(r) || r < 0.0)
            throw invalid_input_error("r values must be finite and >= 0");
    if (n_atoms < 1) throw invalid_input_error("n_atoms must be >= 1");
    const std::vector<ChannelKind> ks = canonical_kinds(kinds);

    const double mean_in = mean_photon_number_unnormalized(rho0);
    std::vector<SweepRow> rows;
    rows.reserve(r_values.size() * ks.size());
    for (double r : r_values) {
        for (ChannelKind kind : ks) {
            InteractionConfig config{r, n_atoms, rho0.dim()};
            rows.push_back(run_row(rho0, r, config, kind, mean_in));
        }
    }
    return rows;
}

std::vector<SweepRow> sweep_amplitude(const std::vector<double>& alpha_values, double r,
                                      int n_atoms, const std::vector<ChannelKind>& kinds) {
    if (alpha_values.empty()) throw invalid_input_error("alpha_values must be non-empty");
    for (double a : alpha_values)
        if (!std::isfinite(a) || a < 0.0)
            throw invalid_input_error("alpha values must be finite and >= 0");
    if (!std::isfinite(r) || r < 0.0)
        throw invalid_input_error("coupling r must be finite and >= 0");
    if (n_atoms < 1) throw invalid_input_error("n_atoms must be >= 1");
    const std::vector<ChannelKind> ks = canonical_kinds(kinds);

    const bool may_amplify =
        std::any_of(ks.begin(), ks.end(), [](ChannelKind k) { return k != ChannelKind::Absorption; });
    const double alpha_max = *std::max_element(alpha_values.begin(), alpha_values.end());
    const int dim = std::max(default_dim(alpha_max * alpha_max, may_amplify), 2);

    std::vector<SweepRow> rows;
    rows.reserve(alpha_values.size() * ks.size());
    for (double a : alpha_values) {
        const FieldState rho0 = pure_density(coherent_amplitudes(complexd(a, 0.0), dim));
        const double mean_in = mean_photon_number_unnormalized(rho0);
        for (ChannelKind kind : ks) {
            InteractionConfig config{r, n_atoms, dim};
            rows.push_back(run_row(rho0, a, config, kind, mean_in));
        }
    }
    return rows;
}

}  // namespace jcpost
