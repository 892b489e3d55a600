// jcpost: sequential Jaynes-Cummings interaction simulator CLI.

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jcpost/channels.hpp"
#include "jcpost/husimi.hpp"
#include "jcpost/serialize.hpp"
#include "jcpost/verify.hpp"

namespace {

using jcpost::complexd;

constexpr int kMaxDim = 4096;
constexpr std::size_t kMaxGridPoints = 100000;

std::optional<double> parse_double_strict(const std::string& text) {
    if (text.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE) return std::nullopt;
    return value;
}

// Accepts plain reals ("2", "-1.5e-2") and complex literals ("1+2i", "-3i",
// "i", "2.5-0.5i").
std::optional<complexd> parse_complex_literal(std::string text) {
    while (!text.empty() && text.front() == ' ') text.erase(text.begin());
    while (!text.empty() && text.back() == ' ') text.pop_back();
    if (text.empty()) return std::nullopt;

    if (text.back() == 'i' || text.back() == 'I') {
        const std::string body = text.substr(0, text.size() - 1);
        int split = -1;
        for (int k = static_cast<int>(body.size()) - 1; k > 0; --k) {
            const char ch = body[k];
            if ((ch == '+' || ch == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        std::string re_part = split < 0 ? "0" : body.substr(0, split);
        std::string im_part = split < 0 ? body : body.substr(split);
        if (im_part.empty() || im_part == "+") im_part = "1";
        if (im_part == "-") im_part = "-1";
        const auto re = parse_double_strict(re_part);
        const auto im = parse_double_strict(im_part);
        if (!re || !im) return std::nullopt;
        return complexd(*re, *im);
    }
    const auto re = parse_double_strict(text);
    if (!re) return std::nullopt;
    return complexd(*re, 0.0);
}

std::string complex_text(complexd z) {
    if (z.imag() == 0.0) return jcpost::format_double(z.real());
    std::string out = jcpost::format_double(z.real());
    if (z.imag() >= 0.0) out += "+";
    out += jcpost::format_double(z.imag()) + "i";
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<double> build_grid(double lo, double hi, double step) {
    const double span = hi - lo;
    const double count_est = span / step;
    if (count_est > static_cast<double>(kMaxGridPoints))
        throw jcpost::invalid_input_error("grid would exceed " + std::to_string(kMaxGridPoints) +
                                          " points");
    std::vector<double> xs;
    const long long count = static_cast<long long>(std::floor(count_est + 1e-9)) + 1;
    for (long long i = 0; i < count; ++i) xs.push_back(lo + static_cast<double>(i) * step);
    if (xs.back() > hi) xs.back() = hi;
    const double slack = step * 1e-9;
    if (hi - xs.back() > slack) xs.push_back(hi);
    return xs;
}

// Options shared by the data-producing subcommands. Each subcommand binds only
// the flags it supports.
struct Options {
    std::string alpha_text;
    double squeeze_s = 0.0;
    double squeeze_theta = 0.0;
    double r = 0.0;
    double r_min = 0.0, r_max = 0.0, r_step = 0.0;
    double alpha_min = 0.0, alpha_max = 0.0, alpha_step = 0.0;
    int atoms = 1;
    int dim = 0;  // 0 selects the default truncation rule
    std::vector<std::string> channel_names;
    std::string format = "csv";
    std::string out;
    std::string verify_dir;
};

struct ResolvedInput {
    complexd alpha;
    jcpost::FieldState state;
    int dim = 0;
    double tail_mass = 0.0;
    double mean_in = 0.0;
};

std::vector<jcpost::ChannelKind> resolve_channels(const std::vector<std::string>& names,
                                                  std::vector<jcpost::ChannelKind> fallback,
                                                  std::vector<std::string>& issues) {
    if (names.empty()) return fallback;
    std::vector<jcpost::ChannelKind> kinds;
    for (const std::string& name : names) {
        const auto kind = jcpost::parse_channel(name);
        if (!kind)
            issues.push_back("unknown channel '" + name +
                             "' (expected absorption, postselect-ground, or postselect-excited)");
        else
            kinds.push_back(*kind);
    }
    return kinds;
}

void check_common(const Options& opt, std::vector<std::string>& issues) {
    if (opt.atoms < 1) issues.push_back("--atoms must be >= 1");
    if (opt.dim != 0 && (opt.dim < 2 || opt.dim > kMaxDim))
        issues.push_back("--dim must be 0 (auto) or in [2, " + std::to_string(kMaxDim) + "]");
    if (!std::isfinite(opt.squeeze_s) || opt.squeeze_s < 0.0)
        issues.push_back("--squeeze-s must be finite and >= 0");
    if (!std::isfinite(opt.squeeze_theta)) issues.push_back("--squeeze-theta must be finite");
    if (opt.format != "csv" && opt.format != "json")
        issues.push_back("--format must be csv or json");
}

complexd check_alpha(const Options& opt, std::vector<std::string>& issues) {
    const auto alpha = parse_complex_literal(opt.alpha_text);
    if (!alpha) {
        issues.push_back("--alpha '" + opt.alpha_text + "' is not a real or complex literal");
        return complexd(0.0, 0.0);
    }
    if (!std::isfinite(alpha->real()) || !std::isfinite(alpha->imag()))
        issues.push_back("--alpha must be finite");
    return *alpha;
}

void check_r(double r, const char* flag, std::vector<std::string>& issues) {
    if (!std::isfinite(r) || r < 0.0)
        issues.push_back(std::string(flag) + " must be finite and >= 0");
}

void throw_if_issues(const std::vector<std::string>& issues) {
    if (!issues.empty()) throw jcpost::invalid_input_error(join(issues, "; "));
}

double wrap_theta(double theta) {
    const double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(theta, two_pi);
    if (wrapped < 0.0) wrapped += two_pi;
    if (wrapped >= two_pi) wrapped = 0.0;
    return wrapped;
}

ResolvedInput build_input(complexd alpha, double squeeze_s, double squeeze_theta, int dim_flag,
                          bool may_amplify) {
    jcpost::InputSpec spec;
    spec.alpha = alpha;
    spec.squeezing_s = squeeze_s;
    spec.squeezing_theta = wrap_theta(squeeze_theta);
    spec.validate();

    ResolvedInput input;
    input.alpha = alpha;
    const double mean_estimate = std::norm(alpha) + std::sinh(squeeze_s) * std::sinh(squeeze_s);
    input.dim = dim_flag != 0 ? dim_flag
                              : std::max(jcpost::default_dim(mean_estimate, may_amplify), 2);
    if (input.dim > kMaxDim)
        throw jcpost::invalid_input_error(
            "auto-selected dimension " + std::to_string(input.dim) + " exceeds the cap " +
            std::to_string(kMaxDim) + "; reduce the amplitude or pass --dim");
    const jcpost::AmplitudeVector amps = jcpost::squeezed_coherent_amplitudes(spec, input.dim);
    input.tail_mass = amps.tail_mass;
    input.state = jcpost::pure_density(amps);
    input.mean_in = jcpost::mean_photon_number_unnormalized(input.state);
    return input;
}

std::string resolve_out_path(const std::string& out_flag, const std::string& command,
                             const std::string& format) {
    if (!out_flag.empty()) return out_flag;
    const char* env = std::getenv("JCPOST_OUT_DIR");
    if (env != nullptr && *env != '\0') return std::string(env) + "/" + command + "." + format;
    return "";
}

void emit_table(const jcpost::Table& table, const std::string& format, const std::string& path) {
    const std::string content = format == "json" ? to_json(table) : to_csv(table);
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    jcpost::write_file(path, content);
    std::printf("wrote %s (%zu rows)\n", path.c_str(), table.rows.size());
}

jcpost::MetaList input_meta(const std::string& command, const ResolvedInput& input,
                            const Options& opt, const std::vector<jcpost::ChannelKind>& kinds) {
    jcpost::MetaList meta = {{"tool", "jcpost"},
                             {"version", jcpost::kToolVersion},
                             {"command", command},
                             {"alpha", complex_text(input.alpha)},
                             {"squeeze_s", jcpost::format_double(opt.squeeze_s)},
                             {"squeeze_theta", jcpost::format_double(wrap_theta(opt.squeeze_theta))},
                             {"atoms", std::to_string(opt.atoms)},
                             {"dim", std::to_string(input.dim)},
                             {"tail_mass", jcpost::format_double(input.tail_mass)}};
    std::vector<std::string> names;
    names.reserve(kinds.size());
    for (const auto kind : kinds) names.emplace_back(jcpost::channel_name(kind));
    meta.emplace_back("channels", join(names, ","));
    return meta;
}

int run_point(const Options& opt) {
    std::vector<std::string> issues;
    check_common(opt, issues);
    const complexd alpha = check_alpha(opt, issues);
    check_r(opt.r, "--r", issues);
    const auto kinds = resolve_channels(
        opt.channel_names,
        {jcpost::ChannelKind::Absorption, jcpost::ChannelKind::PostselectGround}, issues);
    throw_if_issues(issues);

    const bool may_amplify = std::any_of(kinds.begin(), kinds.end(), [](jcpost::ChannelKind k) {
        return k != jcpost::ChannelKind::Absorption;
    });
    const ResolvedInput input =
        build_input(alpha, opt.squeeze_s, opt.squeeze_theta, opt.dim, may_amplify);

    jcpost::Table table;
    table.meta = input_meta("point", input, opt, kinds);
    table.meta.emplace_back("r", jcpost::format_double(opt.r));
    table.columns = {"channel", "mean_in", "mean_out",       "fraction", "success",
                     "dim",     "steps",   "top_population", "warning"};
    for (const auto kind : kinds) {
        const jcpost::InteractionConfig config{opt.r, opt.atoms, input.dim};
        const jcpost::ChannelOutcome outcome = jcpost::apply_channel(input.state, config, kind);
        const double mean_out = outcome.mean_n_trajectory.back();
        table.rows.push_back({std::string(jcpost::channel_name(kind)), input.mean_in, mean_out,
                              mean_out / input.mean_in, outcome.success_probability,
                              static_cast<std::int64_t>(input.dim),
                              static_cast<std::int64_t>(opt.atoms),
                              outcome.final_state.matrix(input.dim - 1, input.dim - 1).real(),
                              outcome.truncation_warning.value_or("")});
    }
    emit_table(table, opt.format, resolve_out_path(opt.out, "point", opt.format));
    return 0;
}

int run_sweep_r(const Options& opt) {
    std::vector<std::string> issues;
    check_common(opt, issues);
    const complexd alpha = check_alpha(opt, issues);
    check_r(opt.r_min, "--r-min", issues);
    check_r(opt.r_max, "--r-max", issues);
    if (!std::isfinite(opt.r_step) || opt.r_step <= 0.0)
        issues.push_back("--r-step must be finite and > 0");
    if (std::isfinite(opt.r_min) && std::isfinite(opt.r_max) && opt.r_max < opt.r_min)
        issues.push_back("--r-max must be >= --r-min");
    const auto kinds = resolve_channels(
        opt.channel_names,
        {jcpost::ChannelKind::Absorption, jcpost::ChannelKind::PostselectGround}, issues);
    throw_if_issues(issues);

    const bool may_amplify = std::any_of(kinds.begin(), kinds.end(), [](jcpost::ChannelKind k) {
        return k != jcpost::ChannelKind::Absorption;
    });
    const ResolvedInput input =
        build_input(alpha, opt.squeeze_s, opt.squeeze_theta, opt.dim, may_amplify);
    const std::vector<double> grid = build_grid(opt.r_min, opt.r_max, opt.r_step);

    jcpost::Table table = jcpost::sweep_table(
        jcpost::sweep_coupling(input.state, grid, opt.atoms, kinds), "r",
        input_meta("sweep-r", input, opt, kinds));
    table.meta.emplace_back("r_min", jcpost::format_double(opt.r_min));
    table.meta.emplace_back("r_max", jcpost::format_double(opt.r_max));
    table.meta.emplace_back("r_step", jcpost::format_double(opt.r_step));
    emit_table(table, opt.format, resolve_out_path(opt.out, "sweep-r", opt.format));
    return 0;
}

int run_sweep_alpha(const Options& opt) {
    std::vector<std::string> issues;
    check_common(opt, issues);
    if (!std::isfinite(opt.alpha_min) || opt.alpha_min < 0.0)
        issues.push_back("--alpha-min must be finite and >= 0");
    if (!std::isfinite(opt.alpha_max) || opt.alpha_max < 0.0)
        issues.push_back("--alpha-max must be finite and >= 0");
    if (std::isfinite(opt.alpha_min) && std::isfinite(opt.alpha_max) &&
        opt.alpha_max < opt.alpha_min)
        issues.push_back("--alpha-max must be >= --alpha-min");
    if (!std::isfinite(opt.alpha_step) || opt.alpha_step <= 0.0)
        issues.push_back("--alpha-step must be finite and > 0");
    check_r(opt.r, "--r", issues);
    const auto kinds = resolve_channels(
        opt.channel_names,
        {jcpost::ChannelKind::Absorption, jcpost::ChannelKind::PostselectGround}, issues);
    throw_if_issues(issues);

    const std::vector<double> grid = build_grid(opt.alpha_min, opt.alpha_max, opt.alpha_step);
    const std::vector<jcpost::SweepRow> rows =
        jcpost::sweep_amplitude(grid, opt.r, opt.atoms, kinds);

    jcpost::MetaList meta = {{"tool", "jcpost"},
                             {"version", jcpost::kToolVersion},
                             {"command", "sweep-alpha"},
                             {"alpha_min", jcpost::format_double(opt.alpha_min)},
                             {"alpha_max", jcpost::format_double(opt.alpha_max)},
                             {"alpha_step", jcpost::format_double(opt.alpha_step)},
                             {"r", jcpost::format_double(opt.r)},
                             {"atoms", std::to_string(opt.atoms)},
                             {"dim", rows.empty() ? "0" : std::to_string(rows.front().dim_used)}};
    std::vector<std::string> names;
    for (const auto kind : kinds) names.emplace_back(jcpost::channel_name(kind));
    meta.emplace_back("channels", join(names, ","));

    emit_table(jcpost::sweep_table(rows, "alpha", meta), opt.format,
               resolve_out_path(opt.out, "sweep-alpha", opt.format));
    return 0;
}

int run_qfunc(const Options& opt) {
    std::vector<std::string> issues;
    check_common(opt, issues);
    const complexd alpha = check_alpha(opt, issues);
    check_r(opt.r, "--r", issues);
    if (opt.channel_names.size() > 1) issues.push_back("qfunc takes at most one --channel");
    const auto kinds =
        resolve_channels(opt.channel_names, {jcpost::ChannelKind::Absorption}, issues);
    throw_if_issues(issues);
    const jcpost::ChannelKind kind = kinds.front();

    const bool may_amplify = kind != jcpost::ChannelKind::Absorption;
    const ResolvedInput input =
        build_input(alpha, opt.squeeze_s, opt.squeeze_theta, opt.dim, may_amplify);
    const jcpost::InteractionConfig config{opt.r, opt.atoms, input.dim};
    const jcpost::ChannelOutcome outcome = jcpost::apply_channel(input.state, config, kind);
    const jcpost::QGrid grid =
        jcpost::q_function(outcome.final_state, jcpost::default_grid_spec(outcome.final_state));
    const jcpost::QPeak peak = jcpost::q_peak(grid);

    jcpost::MetaList meta = input_meta("qfunc", input, opt, kinds);
    meta.emplace_back("r", jcpost::format_double(opt.r));
    meta.emplace_back("success", jcpost::format_double(outcome.success_probability));
    meta.emplace_back("integral", jcpost::format_double(grid.integral()));
    meta.emplace_back("peak_re", jcpost::format_double(peak.alpha_peak.real()));
    meta.emplace_back("peak_im", jcpost::format_double(peak.alpha_peak.imag()));
    meta.emplace_back("q_max", jcpost::format_double(peak.q_max));

    emit_table(jcpost::qgrid_table(grid, meta), opt.format,
               resolve_out_path(opt.out, "qfunc", opt.format));
    return 0;
}

int run_verify(const Options& opt) {
    std::string dir = opt.verify_dir;
    if (dir.empty()) {
        const char* env = std::getenv("JCPOST_OUT_DIR");
        dir = env != nullptr && *env != '\0' ? std::string(env) + "/verify" : "jcpost_verify_out";
    }
    const jcpost::VerificationReport report = jcpost::run_verification(dir);
    const std::string text = jcpost::format_report(report);
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::printf("outputs under %s\n", dir.c_str());
    return report.all_passed() ? 0 : 1;
}

int exit_code_for(const std::string& kind) {
    if (kind == "invalid-input" || kind == "out-of-range") return 2;
    if (kind == "io") return 4;
    return 3;
}

void print_error_record(const std::string& kind, const std::string& message) {
    const nlohmann::json record{{"error", {{"kind", kind}, {"message", message}}}};
    std::fprintf(stderr, "%s\n", record.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential Jaynes-Cummings interaction simulator"};
    app.set_version_flag("--version", jcpost::kToolVersion);
    app.require_subcommand(1);

    Options opt;

    const auto add_state_flags = [&opt](CLI::App* cmd) {
        cmd->add_option("--alpha", opt.alpha_text,
                        "Coherent amplitude: real or complex literal like 1+0.5i")
            ->required();
        cmd->add_option("--squeeze-s", opt.squeeze_s, "Squeezing magnitude (default 0)");
        cmd->add_option("--squeeze-theta", opt.squeeze_theta,
                        "Squeezing phase in radians (wrapped into [0, 2pi))");
    };
    const auto add_run_flags = [&opt](CLI::App* cmd) {
        cmd->add_option("--atoms", opt.atoms, "Number of sequential atoms (default 1)");
        cmd->add_option("--dim", opt.dim, "Fock truncation dimension; 0 selects automatically");
        cmd->add_option("--channel", opt.channel_names,
                        "Channel: absorption, postselect-ground, postselect-excited (repeatable)");
        cmd->add_option("--format", opt.format, "Output format: csv or json (default csv)");
        cmd->add_option("--out", opt.out,
                        "Output file; default $JCPOST_OUT_DIR/<command>.<format> or stdout");
    };

    CLI::App* point = app.add_subcommand("point", "Evaluate channels at one parameter point");
    add_state_flags(point);
    point->add_option("--r", opt.r, "Coupling r = lambda * t")->required();
    add_run_flags(point);

    CLI::App* sweep_r = app.add_subcommand("sweep-r", "Sweep the coupling r");
    add_state_flags(sweep_r);
    sweep_r->add_option("--r-min", opt.r_min, "Sweep start (default 0)");
    sweep_r->add_option("--r-max", opt.r_max, "Sweep end")->required();
    sweep_r->add_option("--r-step", opt.r_step, "Sweep step")->required();
    add_run_flags(sweep_r);

    CLI::App* sweep_alpha =
        app.add_subcommand("sweep-alpha", "Sweep the coherent amplitude at fixed coupling");
    sweep_alpha->add_option("--alpha-min", opt.alpha_min, "Sweep start (default 0)");
    sweep_alpha->add_option("--alpha-max", opt.alpha_max, "Sweep end")->required();
    sweep_alpha->add_option("--alpha-step", opt.alpha_step, "Sweep step")->required();
    sweep_alpha->add_option("--r", opt.r, "Coupling r = lambda * t")->required();
    add_run_flags(sweep_alpha);

    CLI::App* qfunc = app.add_subcommand("qfunc", "Husimi Q of a channel output state");
    add_state_flags(qfunc);
    qfunc->add_option("--r", opt.r, "Coupling r = lambda * t")->required();
    add_run_flags(qfunc);

    CLI::App* verify = app.add_subcommand("verify", "Run the pinned verification suite");
    verify->add_option("--out", opt.verify_dir,
                       "Output directory; default $JCPOST_OUT_DIR/verify or jcpost_verify_out");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // help or version request
        print_error_record("invalid-input", e.what());
        return 2;
    }

    try {
        if (app.got_subcommand(point)) return run_point(opt);
        if (app.got_subcommand(sweep_r)) return run_sweep_r(opt);
        if (app.got_subcommand(sweep_alpha)) return run_sweep_alpha(opt);
        if (app.got_subcommand(qfunc)) return run_qfunc(opt);
        if (app.got_subcommand(verify)) return run_verify(opt);
        print_error_record("invalid-input", "no subcommand selected");
        return 2;
    } catch (const jcpost::error& e) {
        print_error_record(e.kind(), e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        print_error_record("internal", e.what());
        return 5;
    }
}
