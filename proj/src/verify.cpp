#include "jcpost/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "jcpost/channels.hpp"
#include "jcpost/husimi.hpp"
#include "jcpost/oracles.hpp"
#include "jcpost/serialize.hpp"

namespace jcpost {

namespace {

const double kSqrt10 = std::sqrt(10.0);

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8g", value);
    return buf;
}

struct Band {
    double lo = 0.0;
    double hi = 0.0;
};

bool in_band(double value, Band band) { return value >= band.lo && value <= band.hi; }

std::string band_text(Band band) { return "[" + fmt(band.lo) + ", " + fmt(band.hi) + "]"; }

FieldState coherent_input(double alpha, int dim) {
    return pure_density(coherent_amplitudes(complexd(alpha, 0.0), dim));
}

struct TenAtomCase {
    ChannelOutcome absorption;
    ChannelOutcome ground;
};

// Context shared across criteria: the coherent sqrt(10) input and its
// ten-atom outcomes at the three pinned couplings.
struct SharedContext {
    int dim = 0;
    FieldState input;
    double mean_in = 0.0;
    TenAtomCase at_025, at_045, at_060;
};

SharedContext make_shared_context() {
    SharedContext ctx;
    ctx.dim = default_dim(10.0, true);
    ctx.input = coherent_input(kSqrt10, ctx.dim);
    ctx.mean_in = mean_photon_number_unnormalized(ctx.input);
    auto run = [&](double r) {
        const InteractionConfig config{r, 10, ctx.dim};
        return TenAtomCase{apply_channel(ctx.input, config, ChannelKind::Absorption),
                           apply_channel(ctx.input, config, ChannelKind::PostselectGround)};
    };
    ctx.at_025 = run(0.25);
    ctx.at_045 = run(0.45);
    ctx.at_060 = run(0.6);
    return ctx;
}

CriterionResult check_means_r025(const SharedContext& ctx) {
    const double mean_abs = ctx.at_025.absorption.mean_n_trajectory.back();
    const double mean_gnd = ctx.at_025.ground.mean_n_trajectory.back();
    const bool ok = std::abs(mean_abs - 5.88) <= 0.02 && std::abs(mean_gnd - 4.92) <= 0.02;
    return {1, "coherent-means-r025", ok,
            "absorption mean " + fmt(mean_abs) + " (target 5.88 +- 0.02), ground mean " +
                fmt(mean_gnd) + " (target 4.92 +- 0.02)"};
}

CriterionResult check_means_r045(const SharedContext& ctx) {
    const double mean_abs = ctx.at_045.absorption.mean_n_trajectory.back();
    const double mean_gnd = ctx.at_045.ground.mean_n_trajectory.back();
    const double success = ctx.at_045.ground.success_probability;
    const Band band{3e-5, 3e-4};
    const bool ok = std::abs(mean_abs - 2.72) <= 0.02 && std::abs(mean_gnd - 1.04) <= 0.02 &&
                    in_band(success, band);
    return {2, "coherent-means-r045", ok,
            "absorption mean " + fmt(mean_abs) + " (target 2.72 +- 0.02), ground mean " +
                fmt(mean_gnd) + " (target 1.04 +- 0.02), success " + fmt(success) + " in " +
                band_text(band)};
}

CriterionResult check_means_r060(const SharedContext& ctx) {
    const double mean_abs = ctx.at_060.absorption.mean_n_trajectory.back();
    const double mean_gnd = ctx.at_060.ground.mean_n_trajectory.back();
    const double success = ctx.at_060.ground.success_probability;
    const bool direct =
        std::abs(mean_abs - 2.39) <= 0.05 && std::abs(mean_gnd - 19.15) <= 0.05;
    const bool swapped =
        std::abs(mean_abs - 19.15) <= 0.05 && std::abs(mean_gnd - 2.39) <= 0.05;
    const double amplified = std::max(mean_abs, mean_gnd);
    const double gain = amplified / ctx.mean_in;
    const Band gain_band{1.9, 2.0};
    const Band success_band{3e-4, 3e-3};
    const bool ok = (direct || swapped) && in_band(gain, gain_band) &&
                    in_band(success, success_band);
    return {3, "amplified-means-r060", ok,
            "absorption mean " + fmt(mean_abs) + ", ground mean " + fmt(mean_gnd) +
                " (targets {2.39, 19.15} +- 0.05 as a set), gain " + fmt(gain) + " in " +
                band_text(gain_band) + ", success " + fmt(success) + " in " +
                band_text(success_band)};
}

CriterionResult check_success_band_r025(const SharedContext& ctx) {
    const double success = ctx.at_025.ground.success_probability;
    const Band band{3e-4, 3e-3};
    return {4, "success-band-r025", in_band(success, band),
            "ten-atom ground success " + fmt(success) + " against pinned band " + band_text(band)};
}

CriterionResult check_engine_matches_series() {
    std::mt19937_64 rng(20260816ull);
    std::uniform_real_distribution<double> alpha_sq_dist(0.0, 20.0);
    std::uniform_real_distribution<double> r_dist(0.0, 3.0);

    double worst_mean = 0.0;
    double worst_matrix = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double alpha_sq = alpha_sq_dist(rng);
        const double r = r_dist(rng);
        const int dim = default_dim(alpha_sq, true);
        const double alpha = std::sqrt(alpha_sq);
        const FieldState rho0 = coherent_input(alpha, dim);

        const InteractionConfig single{r, 1, dim};
        const double engine_abs =
            apply_channel(rho0, single, ChannelKind::Absorption).mean_n_trajectory.back();
        const double engine_gnd =
            apply_channel(rho0, single, ChannelKind::PostselectGround).mean_n_trajectory.back();
        SeriesParams params;
        params.alpha_sq = alpha_sq;
        params.r = r;
        worst_mean = std::max(worst_mean, std::abs(engine_abs - mean_n_absorption(params)));
        worst_mean = std::max(worst_mean, std::abs(engine_gnd - mean_n_postselect(params)));

        const InteractionConfig ten{r, 10, dim};
        const FieldState engine_state =
            apply_channel(rho0, ten, ChannelKind::PostselectGround).final_state;
        const FieldState closed = postselected_state_closed_form(alpha, r, 10, dim);
        worst_matrix = std::max(
            worst_matrix, (engine_state.matrix - closed.matrix).cwiseAbs().maxCoeff());
    }
    const bool ok = worst_mean <= 1e-10 && worst_matrix <= 1e-10;
    return {5, "engine-matches-series", ok,
            "50 random pairs: worst single-atom mean gap " + fmt(worst_mean) +
                ", worst ten-atom matrix entry gap " + fmt(worst_matrix) + " (bound 1e-10)"};
}

CriterionResult check_trace_conservation(const SharedContext& ctx) {
    const double input_trace = ctx.input.trace();
    double drift = 0.0;
    for (const TenAtomCase* c : {&ctx.at_025, &ctx.at_045, &ctx.at_060})
        drift = std::max(drift, std::abs(c->absorption.final_state.trace() - input_trace));
    return {6, "absorption-trace-conservation", drift <= 1e-10,
            "worst ten-atom trace drift " + fmt(drift) + " (bound 1e-10)"};
}

CriterionResult check_quartic_scaling() {
    bool ok = true;
    std::string detail = "gap(2r)/gap(r):";
    const Band band{12.8, 19.2};
    for (double r : {0.01, 0.02, 0.04}) {
        const double ratio =
            small_r_equivalence_gap(10.0, 2.0 * r) / small_r_equivalence_gap(10.0, r);
        ok = ok && in_band(ratio, band);
        detail += " r=" + fmt(r) + " -> " + fmt(ratio);
    }
    detail += ", band " + band_text(band);
    return {7, "small-r-quartic-scaling", ok, detail};
}

CriterionResult check_number_state_fixed_point() {
    const int dim = default_dim(5.0, true);
    const FieldState rho0 = number_state_density(5, dim);
    const InteractionConfig config{0.3, 10, dim};
    const ChannelOutcome outcome = apply_channel(rho0, config, ChannelKind::PostselectGround);
    const double fidelity = outcome.final_state.matrix(5, 5).real();
    return {8, "number-state-fixed-point", fidelity >= 1.0 - 1e-12,
            "ten-atom ground output fidelity with the input number state " + fmt(fidelity) +
                " (bound >= 1 - 1e-12)"};
}

struct Extremum {
    double x = 0.0;
    double value = 0.0;
    bool is_max = false;
};

// Local extrema whose prominence within +-half_window samples reaches
// min_prominence. NaN samples (error-flagged sweep rows) are skipped.
std::vector<Extremum> prominent_extrema(const std::vector<double>& xs,
                                        const std::vector<double>& ys, double min_prominence,
                                        int half_window) {
    std::vector<Extremum> out;
    const int n = static_cast<int>(ys.size());
    for (int i = 1; i + 1 < n; ++i) {
        if (std::isnan(ys[i - 1]) || std::isnan(ys[i]) || std::isnan(ys[i + 1])) continue;
        const bool is_max = ys[i] > ys[i - 1] && ys[i] >= ys[i + 1];
        const bool is_min = ys[i] < ys[i - 1] && ys[i] <= ys[i + 1];
        if (!is_max && !is_min) continue;
        const int lo = std::max(0, i - half_window);
        const int hi = std::min(n - 1, i + half_window);
        double reference = ys[i];
        for (int k = lo; k <= hi; ++k) {
            if (std::isnan(ys[k])) continue;
            reference = is_max ? std::min(reference, ys[k]) : std::max(reference, ys[k]);
        }
        const double prominence = is_max ? ys[i] - reference : reference - ys[i];
        if (prominence >= min_prominence) out.push_back({xs[i], ys[i], is_max});
    }
    return out;
}

std::vector<double> filter_extrema(const std::vector<Extremum>& all, bool maxima) {
    std::vector<double> xs;
    for (const Extremum& e : all)
        if (e.is_max == maxima) xs.push_back(e.x);
    return xs;
}

CriterionResult check_extrema_alternation(const SharedContext& ctx) {
    std::vector<double> r_values(301);
    for (int i = 0; i <= 300; ++i) r_values[i] = static_cast<double>(i) / 100.0;
    const std::vector<SweepRow> rows =
        sweep_coupling(ctx.input, r_values, 10,
                       {ChannelKind::PostselectGround, ChannelKind::PostselectExcited});

    std::vector<double> ground(301, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> excited(301, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        const int idx = static_cast<int>(i / 2);
        if (row.kind == ChannelKind::PostselectGround && row.flag.empty())
            ground[idx] = row.fraction;
        if (row.kind == ChannelKind::PostselectExcited && row.flag.empty())
            excited[idx] = row.fraction;
    }

    double ground_min = std::numeric_limits<double>::infinity();
    double ground_max = -std::numeric_limits<double>::infinity();
    for (double v : ground) {
        if (std::isnan(v)) continue;
        ground_min = std::min(ground_min, v);
        ground_max = std::max(ground_max, v);
    }
    const bool range_ok = ground_min < 0.5 && ground_max > 1.5;

    const auto ground_ext = prominent_extrema(r_values, ground, 0.25, 50);
    const auto excited_ext = prominent_extrema(r_values, excited, 0.25, 50);
    const auto g_max = filter_extrema(ground_ext, true);
    const auto g_min = filter_extrema(ground_ext, false);
    const auto e_max = filter_extrema(excited_ext, true);
    const auto e_min = filter_extrema(excited_ext, false);

    const bool counts_ok =
        g_max.size() >= 2 && g_min.size() >= 2 && e_max.size() >= 2 && e_min.size() >= 2;
    bool alternate_ok = false;
    if (counts_ok) {
        const bool maxima_chain = g_max[0] < e_max[0] && e_max[0] < g_max[1] && g_max[1] < e_max[1];
        const bool minima_chain = g_min[0] < e_min[0] && e_min[0] < g_min[1] && g_min[1] < e_min[1];
        alternate_ok = maxima_chain && minima_chain;
    }

    std::string detail = "ground fraction range [" + fmt(ground_min) + ", " + fmt(ground_max) +
                         "] (needs < 0.5 and > 1.5)";
    if (counts_ok) {
        detail += "; maxima chain g" + fmt(g_max[0]) + " < e" + fmt(e_max[0]) + " < g" +
                  fmt(g_max[1]) + " < e" + fmt(e_max[1]) + "; minima chain g" + fmt(g_min[0]) +
                  " < e" + fmt(e_min[0]) + " < g" + fmt(g_min[1]) + " < e" + fmt(e_min[1]);
    } else {
        detail += "; fewer than two prominent extrema of each type";
    }
    return {9, "fraction-extrema-alternation", range_ok && counts_ok && alternate_ok, detail};
}

CriterionResult check_husimi(const SharedContext& ctx) {
    const FieldState vacuum = number_state_density(0, 20);
    const QGrid vacuum_grid = q_function(vacuum, default_grid_spec(vacuum));
    const double center =
        vacuum_grid.values(vacuum_grid.spec.n_im / 2, vacuum_grid.spec.n_re / 2);
    const double inv_pi = 1.0 / std::numbers::pi;
    const bool vacuum_ok = std::abs(center - inv_pi) <= 1e-12;

    const FieldState& state_abs = ctx.at_025.absorption.final_state;
    const FieldState& state_gnd = ctx.at_025.ground.final_state;
    const QGrid grid_abs = q_function(state_abs, default_grid_spec(state_abs));
    const QGrid grid_gnd = q_function(state_gnd, default_grid_spec(state_gnd));
    const double integral_gnd = grid_gnd.integral();
    const Band integral_band{0.995, 1.001};
    const double radius_abs = std::abs(q_peak(grid_abs).alpha_peak);
    const double radius_gnd = std::abs(q_peak(grid_gnd).alpha_peak);

    const bool ok = vacuum_ok && in_band(integral_gnd, integral_band) && radius_gnd < radius_abs;
    return {10, "husimi-sanity", ok,
            "vacuum Q(0) " + fmt(center) + " vs 1/pi " + fmt(inv_pi) +
                " (tol 1e-12); ground integral " + fmt(integral_gnd) + " in " +
                band_text(integral_band) + "; peak radii ground " + fmt(radius_gnd) +
                " < absorption " + fmt(radius_abs)};
}

CriterionResult check_squeezed_gain(const SharedContext& ctx) {
    InputSpec spec;
    spec.alpha = complexd(kSqrt10, 0.0);
    spec.squeezing_s = 0.2;
    spec.squeezing_theta = 0.0;
    const double mean_estimate = std::norm(spec.alpha) + std::pow(std::sinh(spec.squeezing_s), 2);
    const int dim = default_dim(mean_estimate, true);
    const FieldState rho0 = pure_density(squeezed_coherent_amplitudes(spec, dim));
    const double mean_in = mean_photon_number_unnormalized(rho0);

    const InteractionConfig config{0.6, 10, dim};
    const ChannelOutcome outcome = apply_channel(rho0, config, ChannelKind::PostselectGround);
    const double mean_out = outcome.mean_n_trajectory.back();
    const double gain = mean_out / mean_in;

    const double coherent_gain =
        std::max(ctx.at_060.absorption.mean_n_trajectory.back(),
                 ctx.at_060.ground.mean_n_trajectory.back()) /
        ctx.mean_in;
    const bool ok = mean_out > mean_in && gain < coherent_gain;
    return {11, "squeezed-input-gain", ok,
            "squeezed input mean " + fmt(mean_in) + " -> output mean " + fmt(mean_out) +
                ", gain " + fmt(gain) + " vs coherent gain " + fmt(coherent_gain) +
                " (needs amplification, but less of it)"};
}

CriterionResult check_amplitude_extremes() {
    const auto fraction_gap = [](double alpha) {
        const int dim = default_dim(alpha * alpha, true);
        const FieldState rho0 = coherent_input(alpha, dim);
        const double mean_in = mean_photon_number_unnormalized(rho0);
        const InteractionConfig config{0.25, 1, dim};
        const double f_abs =
            apply_channel(rho0, config, ChannelKind::Absorption).mean_n_trajectory.back() /
            mean_in;
        const double f_gnd =
            apply_channel(rho0, config, ChannelKind::PostselectGround).mean_n_trajectory.back() /
            mean_in;
        return std::abs(f_gnd - f_abs);
    };
    const double gap_small = fraction_gap(0.3);
    const double gap_mid = fraction_gap(kSqrt10);
    const double gap_large = fraction_gap(8.0);
    const bool ok = gap_small < gap_mid && gap_large < gap_mid;
    return {12, "amplitude-extremes-gap", ok,
            "|F_post - F_abs| at alpha 0.3: " + fmt(gap_small) + ", sqrt(10): " + fmt(gap_mid) +
                ", 8: " + fmt(gap_large) + " (both extremes must fall below the middle value)"};
}

MetaList base_meta(const std::string& block) {
    return {{"tool", "jcpost"},
            {"version", kToolVersion},
            {"command", "verify"},
            {"block", block}};
}

// One deterministic emission pass; returns the relative names of the files
// written under dir.
std::vector<std::string> emit_run(const std::filesystem::path& dir) {
    std::vector<std::string> names;
    const auto emit_both = [&](const Table& table, const std::string& stem) {
        write_file((dir / (stem + ".csv")).string(), to_csv(table));
        write_file((dir / (stem + ".json")).string(), to_json(table));
        names.push_back(stem + ".csv");
        names.push_back(stem + ".json");
    };

    const int dim = default_dim(10.0, true);
    const FieldState input = coherent_input(kSqrt10, dim);

    std::vector<double> r_short(121);
    for (int i = 0; i <= 120; ++i) r_short[i] = static_cast<double>(i) / 100.0;
    MetaList meta = base_meta("sweep_r_single_atom");
    meta.emplace_back("alpha", format_double(kSqrt10));
    meta.emplace_back("atoms", "1");
    meta.emplace_back("dim", std::to_string(dim));
    emit_both(sweep_table(sweep_coupling(input, r_short, 1,
                                         {ChannelKind::Absorption, ChannelKind::PostselectGround}),
                          "r", meta),
              "sweep_r_single_atom");

    std::vector<double> r_long(301);
    for (int i = 0; i <= 300; ++i) r_long[i] = static_cast<double>(i) / 100.0;
    meta = base_meta("sweep_r_ten_atoms");
    meta.emplace_back("alpha", format_double(kSqrt10));
    meta.emplace_back("atoms", "10");
    meta.emplace_back("dim", std::to_string(dim));
    emit_both(sweep_table(sweep_coupling(input, r_long, 10,
                                         {ChannelKind::Absorption, ChannelKind::PostselectGround,
                                          ChannelKind::PostselectExcited}),
                          "r", meta),
              "sweep_r_ten_atoms");

    std::vector<double> alphas(40);
    for (int i = 1; i <= 40; ++i) alphas[i - 1] = static_cast<double>(i) / 5.0;
    meta = base_meta("sweep_alpha_single_atom");
    meta.emplace_back("r", format_double(0.25));
    meta.emplace_back("atoms", "1");
    emit_both(sweep_table(sweep_amplitude(alphas, 0.25, 1,
                                          {ChannelKind::Absorption, ChannelKind::PostselectGround}),
                          "alpha", meta),
              "sweep_alpha_single_atom");

    const InteractionConfig config{0.25, 10, dim};
    const FieldState ground =
        apply_channel(input, config, ChannelKind::PostselectGround).final_state;
    const QGrid grid = q_function(ground, default_grid_spec(ground));
    meta = base_meta("qfunc_ground_ten_atoms");
    meta.emplace_back("alpha", format_double(kSqrt10));
    meta.emplace_back("r", format_double(0.25));
    meta.emplace_back("atoms", "10");
    meta.emplace_back("dim", std::to_string(dim));
    write_file((dir / "qfunc_ground_ten_atoms.csv").string(), to_csv(qgrid_table(grid, meta)));
    names.push_back("qfunc_ground_ten_atoms.csv");
    return names;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string() + " for reading");
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

CriterionResult check_determinism(const std::string& out_dir) {
    const std::filesystem::path base(out_dir);
    const std::vector<std::string> first = emit_run(base / "run1");
    const std::vector<std::string> second = emit_run(base / "run2");

    bool ok = first == second && !first.empty();
    std::string mismatch;
    if (ok) {
        for (const std::string& name : first) {
            const std::string a = read_file(base / "run1" / name);
            const std::string b = read_file(base / "run2" / name);
            if (a.empty() || a != b) {
                ok = false;
                mismatch = name;
                break;
            }
        }
    }
    return {13, "deterministic-outputs", ok,
            ok ? std::to_string(first.size()) + " files emitted twice, byte-identical"
               : "mismatch in " + (mismatch.empty() ? std::string("file lists") : mismatch)};
}

}  // namespace

VerificationReport run_verification(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    const SharedContext ctx = make_shared_context();
    VerificationReport report;
    report.results.push_back(check_means_r025(ctx));
    report.results.push_back(check_means_r045(ctx));
    report.results.push_back(check_means_r060(ctx));
    report.results.push_back(check_success_band_r025(ctx));
    report.results.push_back(check_engine_matches_series());
    report.results.push_back(check_trace_conservation(ctx));
    report.results.push_back(check_quartic_scaling());
    report.results.push_back(check_number_state_fixed_point());
    report.results.push_back(check_extrema_alternation(ctx));
    report.results.push_back(check_husimi(ctx));
    report.results.push_back(check_squeezed_gain(ctx));
    report.results.push_back(check_amplitude_extremes());
    report.results.push_back(check_determinism(out_dir));

    Table table;
    table.meta = base_meta("criteria");
    table.columns = {"index", "name", "passed", "detail"};
    for (const CriterionResult& r : report.results)
        table.rows.push_back({static_cast<std::int64_t>(r.index), r.name,
                              std::string(r.passed ? "pass" : "fail"), r.detail});
    write_file((std::filesystem::path(out_dir) / "criteria.csv").string(), to_csv(table));
    return report;
}

std::string format_report(const VerificationReport& report) {
    std::string out;
    for (const CriterionResult& r : report.results) {
        char line[32];
        std::snprintf(line, sizeof line, "%s %2d ", r.passed ? "PASS" : "FAIL", r.index);
        out += line;
        out += r.name + " -- " + r.detail + "\n";
    }
    out += report.all_passed() ? "all criteria passed\n" : "one or more criteria FAILED\n";
    return out;
}

}  // namespace jcpost
