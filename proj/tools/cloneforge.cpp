// cloneforge — build, evaluate, verify and optimize Weyl-Heisenberg
// covariant 1->2 cloning machines from the command line.
//
// Subcommands:
//   gen       emit a cloner descriptor (preset closed forms or a coefficient file)
//   eval      average and per-state fidelities of a descriptor on an ensemble
//   verify    trace preservation / covariance / extremality / strong covariance
//   optimize  symmetric, targeted-F_B or full Pareto-sweep optimization
//   twirl     group-average a Choi matrix file (optionally a seeded random channel)
//
// Exit codes: 0 success (all checks pass), 1 verification failure,
// 2 usage error, 3 numerical-domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cloneforge/io.hpp"

namespace cf = cloneforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

// flags > CLONEFORGE_TOL > per-command default
double resolve_tol(const std::optional<double>& flag, double fallback) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CLONEFORGE_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("CLONEFORGE_TOL", "not a number: " + std::string(env));
        }
    }
    return fallback;
}

// Writes to `path` when given, else to stdout.
void deliver(const std::optional<std::string>& path, const std::string& payload) {
    if (path) {
        std::ofstream out(*path);
        if (!out) throw std::runtime_error("cannot write '" + *path + "'");
        out << payload;
    } else {
        std::cout << payload;
    }
}

cf::VerificationReport verify_choi(const cf::ChoiOperator& r, double tol,
                                   const cf::CoefficientVector* pure) {
    cf::VerificationReport rep;
    rep.tolerance = tol;
    const auto tp = cf::is_trace_preserving(r, tol);
    rep.tp_residual = tp.residual;
    rep.pass_tp = tp.ok;
    const auto cov = cf::is_covariant(r, tol);
    rep.covariance_max = cov.residual;
    rep.pass_covariant = cov.ok;
    if (cov.ok) {
        const auto ext = cf::is_extremal(r, std::max(tol, 1e-12));
        rep.projector_residual = ext.projector_residual;
        rep.rank = ext.rank;
        rep.pass_extremal = ext.extremal;
    } else {
        rep.projector_residual = (r.m * r.m - r.m).norm();
        rep.rank = 0;
        rep.pass_extremal = false;
    }
    if (pure) {
        rep.has_strong_cov = true;
        rep.strong_cov_residual = cf::strong_covariance_residual(cf::joint_output_state(*pure), r.d);
        rep.pass_strong_cov = rep.strong_cov_residual <= tol;
    }
    rep.overall = rep.pass_tp && rep.pass_covariant && rep.pass_extremal &&
                  (!rep.has_strong_cov || rep.pass_strong_cov);
    return rep;
}

struct GenOptions {
    std::string preset;
    std::string coeffs_file;
    int d = 2;
    int grid_n = 8;
    std::optional<double> fb;
    std::optional<std::string> out;
};

int run_gen(const GenOptions& opt) {
    cf::ClonerDescriptor desc;
    if (!opt.coeffs_file.empty()) {
        desc = cf::load_descriptor(opt.coeffs_file);
        cf::to_coefficients(desc);  // validate
    } else {
        const cf::Preset preset = cf::preset_from_name(opt.preset);
        std::map<std::string, std::string> meta{{"preset", opt.preset},
                                                {"d", std::to_string(opt.d)}};
        cf::CoefficientVector a;
        if (preset == cf::Preset::multi_phase) {
            // no closed form published: optimize numerically over the grid ensemble
            const cf::Ensemble e = cf::preset_ensemble(preset, opt.d, opt.grid_n);
            const cf::TradeoffPoint pt =
                opt.fb ? cf::constrained_optimum(e, *opt.fb, 1e-8)
                       : cf::scalarized_optimum(cf::fidelity_matrix(e, cf::Clone::one),
                                                cf::fidelity_matrix(e, cf::Clone::two), 0.5);
            a = pt.a_opt;
            meta["method"] = "numerical";
            meta["f_b"] = cf::format_double(pt.f_b);
            meta["f_e"] = cf::format_double(pt.f_e);
        } else {
            const double fb = opt.fb ? *opt.fb : cf::symmetric_fidelity(preset, opt.d);
            a = cf::golden_coefficients(preset, fb, opt.d);
            meta["method"] = "closed-form";
            meta["f_b"] = cf::format_double(fb);
            meta["f_e"] = cf::format_double(cf::golden_tradeoff(preset, fb, opt.d));
        }
        desc = cf::to_descriptor(a, std::move(meta));
    }
    std::ostringstream os;
    cf::write_descriptor(os, desc);
    deliver(opt.out, os.str());
    return kExitOk;
}

struct EvalOptions {
    std::string descriptor;
    std::string ensemble;
    std::optional<int> d;
    int grid_n = 8;
    std::optional<std::string> out;
};

int run_eval(const EvalOptions& opt) {
    const cf::CoefficientVector a = cf::to_coefficients(cf::load_descriptor(opt.descriptor));
    if (opt.d && *opt.d != a.d) {
        throw CLI::ValidationError("--d", "descriptor has d = " + std::to_string(a.d));
    }
    const cf::Ensemble e =
        cf::preset_ensemble(cf::preset_from_name(opt.ensemble), a.d, opt.grid_n);
    const cf::FidelityReport rep = cf::fidelity_report(a, e);
    std::ostringstream os;
    cf::write_fidelity_report(os, rep, e.name);
    deliver(opt.out, os.str());
    return kExitOk;
}

struct VerifyOptions {
    std::string descriptor;
    std::vector<std::string> mix;  // file file weight
    std::optional<double> tol;
    std::optional<std::string> out;
};

int run_verify(const VerifyOptions& opt) {
    const double tol = resolve_tol(opt.tol, 1e-10);
    cf::VerificationReport rep;
    if (!opt.mix.empty()) {
        const double w = std::stod(opt.mix[2]);
        if (w < 0.0 || w > 1.0) throw CLI::ValidationError("--mix", "weight outside [0, 1]");
        const cf::CoefficientVector a1 = cf::to_coefficients(cf::load_descriptor(opt.mix[0]));
        const cf::CoefficientVector a2 = cf::to_coefficients(cf::load_descriptor(opt.mix[1]));
        if (a1.d != a2.d) throw CLI::ValidationError("--mix", "descriptor dimensions differ");
        const cf::ChoiOperator mixed{
            a1.d,
            w * cf::choi_from_coefficients(a1).m + (1.0 - w) * cf::choi_from_coefficients(a2).m};
        rep = verify_choi(mixed, tol, nullptr);
    } else {
        const cf::CoefficientVector a = cf::to_coefficients(cf::load_descriptor(opt.descriptor));
        rep = verify_choi(cf::choi_from_coefficients(a), tol, &a);
    }
    std::ostringstream os;
    cf::write_verification(os, rep);
    deliver(opt.out, os.str());
    return rep.overall ? kExitOk : kExitVerifyFail;
}

struct OptimizeOptions {
    std::string ensemble;
    int d = 2;
    int grid_n = 8;
    bool symmetric = false;
    std::optional<double> fb;
    std::optional<int> sweep;
    std::optional<double> tol;
    std::string format = "csv";
    std::optional<std::string> out;
};

int run_optimize(const OptimizeOptions& opt) {
    if (!opt.symmetric && !opt.fb && !opt.sweep) {
        throw CLI::ValidationError("optimize", "pick a mode: --symmetric, --fb or --sweep");
    }
    const double tol = resolve_tol(opt.tol, 1e-8);
    const cf::Ensemble e =
        cf::preset_ensemble(cf::preset_from_name(opt.ensemble), opt.d, opt.grid_n);
    std::ostringstream os;
    if (opt.sweep) {
        const cf::TradeoffCurve curve = cf::pareto_sweep(e, *opt.sweep);
        if (opt.format == "json") {
            cf::write_curve_json(os, curve);
        } else {
            cf::write_curve_csv(os, curve);
        }
    } else {
        cf::TradeoffPoint pt;
        if (opt.fb) {
            pt = cf::constrained_optimum(e, *opt.fb, tol);
        } else {
            pt = cf::scalarized_optimum(cf::fidelity_matrix(e, cf::Clone::one),
                                        cf::fidelity_matrix(e, cf::Clone::two), 0.5);
        }
        cf::write_tradeoff_point(os, pt, e.name);
    }
    deliver(opt.out, os.str());
    return kExitOk;
}

struct TwirlOptions {
    std::string choi_file;
    std::optional<unsigned long long> random_seed;
    int d = 2;
    std::optional<std::string> out;
    std::optional<double> tol;
};

cf::ChoiOperator random_tp_channel(int d, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    cf::Matrix g(d * d, d);
    for (int i = 0; i < d * d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = cf::Cx(gauss(rng), gauss(rng));
    const cf::Matrix v =
        Eigen::HouseholderQR<cf::Matrix>(g).householderQ() * cf::Matrix::Identity(d * d, d);
    cf::Vector vec(static_cast<Eigen::Index>(d) * d * d);
    for (int i12 = 0; i12 < d * d; ++i12)
        for (int m = 0; m < d; ++m) vec(static_cast<Eigen::Index>(i12) * d + m) = v(i12, m);
    return {d, vec * vec.adjoint()};
}

int run_twirl(const TwirlOptions& opt) {
    const double tol = resolve_tol(opt.tol, 1e-10);
    cf::ChoiOperator input;
    if (opt.random_seed) {
        input = random_tp_channel(opt.d, *opt.random_seed);
    } else {
        cf::RawChoi raw = cf::load_choi(opt.choi_file);
        input = {raw.d, std::move(raw.m)};
    }

    Eigen::SelfAdjointEigenSolver<cf::Matrix> es(input.m, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    const bool psd = min_eig >= -1e-10;
    const double pre_cov = cf::is_covariant(input, tol).residual;

    const cf::ChoiOperator twirled = cf::twirl(input);
    const double post_cov = cf::is_covariant(twirled, tol).residual;
    const double post_tp = cf::is_trace_preserving(twirled, tol).residual;

    std::ostringstream report;
    report << "{\n";
    report << "  \"input_psd\": " << (psd ? "true" : "false") << ",\n";
    report << "  \"input_min_eigenvalue\": " << cf::format_double(min_eig) << ",\n";
    report << "  \"covariance_before\": " << cf::format_double(pre_cov) << ",\n";
    report << "  \"covariance_after\": " << cf::format_double(post_cov) << ",\n";
    report << "  \"tp_residual_after\": " << cf::format_double(post_tp) << "\n";
    report << "}\n";

    std::ostringstream payload;
    cf::write_choi(payload, twirled.d, twirled.m);
    if (opt.out) {
        deliver(opt.out, payload.str());
        std::cout << report.str();
    } else {
        std::cout << payload.str();
        std::cerr << report.str();
    }
    if (!psd) std::cerr << "warning: input Choi matrix is not positive semidefinite\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extremal Weyl-Heisenberg covariant cloning machines"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "emit a cloner descriptor");
    auto* gen_preset = gen_cmd->add_option(
        "preset", gen.preset, "bb84|phase|six-state|cube|fourier|universal|multi-phase");
    auto* gen_coeffs = gen_cmd->add_option("--coeffs", gen.coeffs_file, "explicit coefficient file");
    gen_cmd->add_option("--d", gen.d, "Hilbert space dimension")->default_val(2);
    gen_cmd->add_option("--fb", gen.fb, "clone-2 fidelity F_B (default: symmetric optimum)");
    gen_cmd->add_option("--n", gen.grid_n, "torus grid order")->default_val(8);
    gen_cmd->add_option("--out", gen.out, "output file (default stdout)");
    gen_preset->excludes(gen_coeffs);

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "fidelity report on an ensemble");
    eval_cmd->add_option("descriptor", eval.descriptor, "cloner descriptor file")->required();
    eval_cmd->add_option("--ensemble", eval.ensemble, "ensemble name")->required();
    eval_cmd->add_option("--d", eval.d, "expected dimension (checked against the descriptor)");
    eval_cmd->add_option("--n", eval.grid_n, "torus grid order")->default_val(8);
    eval_cmd->add_option("--out", eval.out, "output file (default stdout)");

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "run the channel predicate suite");
    auto* verify_desc = verify_cmd->add_option("descriptor", verify.descriptor, "descriptor file");
    auto* verify_mix =
        verify_cmd
            ->add_option("--mix", verify.mix,
                         "two descriptor files and a weight: verify the convex mixture")
            ->expected(3);
    verify_cmd->add_option("--tol", verify.tol, "tolerance (default 1e-10 or CLONEFORGE_TOL)");
    verify_cmd->add_option("--out", verify.out, "output file (default stdout)");
    verify_desc->excludes(verify_mix);

    OptimizeOptions optimize;
    auto* opt_cmd = app.add_subcommand("optimize", "optimal cloners and trade-off curves");
    opt_cmd->add_option("ensemble", optimize.ensemble, "ensemble name")->required();
    opt_cmd->add_option("--d", optimize.d, "Hilbert space dimension")->default_val(2);
    opt_cmd->add_option("--n", optimize.grid_n, "torus grid order")->default_val(8);
    auto* opt_sym = opt_cmd->add_flag("--symmetric", optimize.symmetric, "symmetric optimum");
    auto* opt_fb = opt_cmd->add_option("--fb", optimize.fb, "pin F_B and maximize F_E");
    auto* opt_sweep = opt_cmd->add_option("--sweep", optimize.sweep, "lambda-grid size");
    opt_cmd->add_option("--tol", optimize.tol, "F_B bisection tolerance (default 1e-8)");
    opt_cmd->add_option("--format", optimize.format, "json|csv (sweep output)")
        ->check(CLI::IsMember({"json", "csv"}))
        ->default_val("csv");
    opt_cmd->add_option("--out", optimize.out, "output file (default stdout)");
    opt_sym->excludes(opt_fb);
    opt_sym->excludes(opt_sweep);
    opt_fb->excludes(opt_sweep);

    TwirlOptions twirl;
    auto* twirl_cmd = app.add_subcommand("twirl", "group-average a Choi matrix");
    auto* twirl_file = twirl_cmd->add_option("choi", twirl.choi_file, "Choi matrix file");
    auto* twirl_rand =
        twirl_cmd->add_option("--random-channel", twirl.random_seed, "seeded random TP channel");
    twirl_cmd->add_option("--d", twirl.d, "dimension for --random-channel")->default_val(2);
    twirl_cmd->add_option("--tol", twirl.tol, "tolerance for the report (default 1e-10)");
    twirl_cmd->add_option("--out", twirl.out, "twirled Choi output file");
    twirl_file->excludes(twirl_rand);

    try {
        app.parse(argc, argv);
        if (gen_cmd->parsed()) {
            if (gen.preset.empty() && gen.coeffs_file.empty()) {
                throw CLI::ValidationError("gen", "need a preset name or --coeffs");
            }
            return run_gen(gen);
        }
        if (eval_cmd->parsed()) return run_eval(eval);
        if (verify_cmd->parsed()) {
            if (verify.descriptor.empty() && verify.mix.empty()) {
                throw CLI::ValidationError("verify", "need a descriptor or --mix");
            }
            return run_verify(verify);
        }
        if (opt_cmd->parsed()) return run_optimize(optimize);
        if (twirl_cmd->parsed()) {
            if (twirl.choi_file.empty() && !twirl.random_seed) {
                throw CLI::ValidationError("twirl", "need a Choi file or --random-channel");
            }
            return run_twirl(twirl);
        }
        return kExitUsage;
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::domain_error& err) {
        std::cerr << "domain error: " << err.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    }
}
