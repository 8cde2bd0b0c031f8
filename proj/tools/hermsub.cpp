#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermsub/factor.hpp"
#include "hermsub/mask_io.hpp"
#include "hermsub/schemes.hpp"

using namespace hermsub;

namespace {

// Exit code contract: 0 pass, 1 check/precondition failure, 2 usage/parse
// error, 3 numeric failure.
constexpr int kOk = 0;
constexpr int kCheckFail = 1;
constexpr int kUsage = 2;
constexpr int kNumeric = 3;

struct Options {
    bool json = false;
    double tol = 1e-9;
    bool tol_given = false;
    long seed = 0;

    std::string scheme;       // example2 | example3 | (empty)
    std::string mask_path;
    int p = 0;
    bool p_given = false;
    std::vector<std::string> lambda_tokens;
    bool imag = false;
    int level = 0;
    std::string levels = "";
    std::string mode;
    std::string init = "delta";
    int column = 0;
    int iterations = 0;
    long window = 8;
    std::string out;
    std::string svg;
};

// "1.5" is a real frequency, "i1.5" an imaginary one; --imag marks plain
// tokens imaginary (the single-frequency convenience).
std::vector<Frequency> parse_freqs(const std::vector<std::string>& tokens, bool imag_all) {
    std::vector<Frequency> fs;
    for (std::string t : tokens) {
        Frequency f;
        if (!t.empty() && (t[0] == 'i' || t[0] == 'I')) {
            f.imaginary = true;
            t = t.substr(1);
        }
        if (imag_all) f.imaginary = true;
        size_t pos = 0;
        f.magnitude = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("bad frequency token: " + t);
        fs.push_back(f);
    }
    return fs;
}

std::pair<int, int> parse_levels(const std::string& s, int fallback) {
    if (s.empty()) return {fallback, fallback};
    const size_t pos = s.find(':');
    if (pos == std::string::npos) {
        const int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
}

int scheme_d(const std::string& scheme) {
    if (scheme == "example2") return 2;
    if (scheme == "example3") return 3;
    throw std::invalid_argument("unknown scheme: " + scheme + " (use example2 or example3)");
}

Frequency single_freq(const Options& opt) {
    auto fs = parse_freqs(opt.lambda_tokens, opt.imag);
    if (fs.empty()) return Frequency{1.0, opt.imag};
    if (fs.size() != 1) throw std::invalid_argument("this command takes a single --lambda");
    return fs[0];
}

// Space for a named example scheme: V_{2,lambda} has p = 0, V_{3,lambda} p = 1.
ExpPolySpace scheme_space(int d, Frequency lambda) {
    return ExpPolySpace(d - 2, {lambda});
}

ExpPolySpace space_from(const Options& opt) {
    auto fs = parse_freqs(opt.lambda_tokens, opt.imag);
    return ExpPolySpace(opt.p, std::move(fs));
}

int cmd_annihilator(const Options& opt) {
    ExpPolySpace space = space_from(opt);  // duplicate frequencies throw here
    const CancelOp op = cancel_level(space, opt.level);
    if (!opt.out.empty()) write_mask_file(opt.out, op.mask());
    if (opt.json) {
        nlohmann::json j;
        j["level"] = op.level();
        j["mask"] = mask_to_json(op.mask());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "H_{d," << (opt.level > 0 ? "2^-" + std::to_string(opt.level) + " " : "")
                  << "Lambda}* (d = " << space.d() << "):\n"
                  << to_string(op.mask().symbol());
    }
    return kOk;
}

int cmd_check(const Options& opt) {
    const bool use_scheme = !opt.scheme.empty();
    MatrixMask file_mask = MatrixMask::delta_identity(1);
    Frequency lam{1.0, false};
    int d = 0;
    ExpPolySpace space(0);
    if (use_scheme) {
        d = scheme_d(opt.scheme);
        lam = single_freq(opt);
        space = scheme_space(d, lam);
    } else {
        file_mask = read_mask_file(opt.mask_path);
        space = space_from(opt);
        if (file_mask.dim() != space.dim())
            throw std::invalid_argument("mask dimension does not match space dimension d+1");
    }
    const auto [lo, hi] = parse_levels(opt.levels, 0);
    const bool annihilation = (opt.mode == "annihilation");
    bool all_pass = true;
    nlohmann::json rows = nlohmann::json::array();
    for (int n = lo; n <= hi; ++n) {
        const MatrixMask mask = use_scheme ? closed_form_A(d, lam, n) : file_mask;
        const ResidualReport rep = annihilation ? check_annihilation(mask, space, n, opt.tol)
                                                : check_spectral(mask, space, n, opt.tol);
        all_pass = all_pass && rep.pass;
        if (opt.json) {
            nlohmann::json row;
            row["level"] = n;
            row["report"] = report_to_json(rep);
            rows.push_back(std::move(row));
        } else {
            std::printf("level %2d  max residual %.3e  max scaled %.3e  %s\n", n,
                        rep.max_residual(), rep.max_scaled(), rep.pass ? "pass" : "FAIL");
        }
    }
    if (opt.json) std::cout << rows.dump(2) << "\n";
    return all_pass ? kOk : kCheckFail;
}

int cmd_factorize(const Options& opt) {
    const bool use_scheme = !opt.scheme.empty();
    MatrixMask mask = MatrixMask::delta_identity(1);
    ExpPolySpace space(0);
    if (use_scheme) {
        const int d = scheme_d(opt.scheme);
        const Frequency lam = single_freq(opt);
        space = scheme_space(d, lam);
        mask = closed_form_A(d, lam, opt.level);
    } else {
        mask = read_mask_file(opt.mask_path);
        space = space_from(opt);
        if (mask.dim() != space.dim())
            throw std::invalid_argument("mask dimension does not match space dimension d+1");
    }
    const std::string mode = opt.mode.empty() ? (use_scheme ? "scheme" : "convolution") : opt.mode;
    try {
        FactorResult res;
        if (mode == "scheme") {
            res = factor_scheme(mask, space, opt.level, opt.tol);
        } else if (mode == "convolution") {
            res = factor_convolution(mask, space, opt.tol);
        } else if (mode == "subdivision") {
            res = factor_subdivision(mask, space, opt.level, opt.tol);
        } else if (mode == "division") {
            // raw division by the level annihilator symbol, no precondition
            const CancelOp H = cancel_level(space, opt.level);
            const DivisionResult div =
                solve_right_factor(mask.symbol(), H.mask().symbol(), opt.tol);
            res.B = MatrixMask::from_symbol(div.quotient);
            res.residual = div.residual;
            res.support_used = div.support;
        } else {
            throw std::invalid_argument("unknown --mode: " + mode);
        }
        if (!opt.out.empty()) write_mask_file(opt.out, res.B);
        if (opt.json)
            std::cout << factor_to_json(res).dump(2) << "\n";
        else
            std::printf("residual %.3e  support [%ld, %ld]\n", res.residual, res.support_used.lo,
                        res.support_used.hi);
        return kOk;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kCheckFail;
    } catch (const NotDivisibleError& e) {
        std::cerr << e.what() << "\n";
        return kNumeric;
    }
}

VectorSeq initial_data(const Options& opt, int d, Frequency lam, long window) {
    if (opt.init == "delta") {
        if (opt.column < 0 || opt.column > d)
            throw std::invalid_argument("--column out of range 0..d");
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d + 1);
        e(opt.column) = 1.0;
        return VectorSeq::delta(e);
    }
    // Hermite samples of a named function on [-window, window]
    const ExpPolySpace space = scheme_space(d, lam);
    int idx = -1;
    if (opt.init == "1") {
        idx = 0;
    } else if (opt.init == "x") {
        if (space.p() < 1)
            throw std::invalid_argument("--init x: the space has no linear part (p < 1)");
        idx = 1;
    } else if (opt.init == "exp") {
        idx = space.p() + 1;
    } else if (opt.init == "exp-") {
        idx = space.p() + 2;
    } else {
        throw std::invalid_argument("unknown --init (use delta, 1, x, exp, exp-)");
    }
    std::vector<Eigen::VectorXcd> vals;
    for (long a = -window; a <= window; ++a) {
        Eigen::VectorXcd v(d + 1);
        for (int j = 0; j <= d; ++j) v(j) = space.basis_deriv(idx, j, static_cast<double>(a));
        vals.push_back(std::move(v));
    }
    return VectorSeq(d + 1, -window, std::move(vals), false);
}

int cmd_run(const Options& opt) {
    SchemeSpec spec;
    Frequency lam{1.0, false};
    if (!opt.scheme.empty()) {
        lam = single_freq(opt);
        spec = SchemeSpec::example(scheme_d(opt.scheme), lam);
    } else {
        spec = SchemeSpec::stationary(read_mask_file(opt.mask_path));
        lam = single_freq(opt);
    }
    const VectorSeq c0 = initial_data(opt, spec.d, lam, opt.window);
    try {
        const IterateStack stack = run_scheme(spec, c0, opt.iterations);
        if (!opt.out.empty()) {
            std::ofstream f(opt.out);
            if (!f) throw std::invalid_argument("cannot open for writing: " + opt.out);
            write_csv(f, stack);
        } else {
            write_csv(std::cout, stack);
        }
        if (!opt.svg.empty()) {
            std::ofstream f(opt.svg);
            if (!f) throw std::invalid_argument("cannot open for writing: " + opt.svg);
            write_svg(f, stack, 0);
        }
        return kOk;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kCheckFail;
    }
}

int cmd_det(const Options& opt) {
    const int d = scheme_d(opt.scheme.empty() ? "example2" : opt.scheme);
    const Frequency lam = single_freq(opt);
    const auto [lo, hi] = parse_levels(opt.levels, opt.level);
    const double tol = opt.tol_given ? opt.tol : 1e-10;
    bool all_pass = true;
    nlohmann::json rows = nlohmann::json::array();
    for (int n = lo; n <= hi; ++n) {
        const DetIdentityReport rep = det_identity(d, lam, n, tol);
        all_pass = all_pass && rep.pass;
        if (opt.json)
            rows.push_back(det_report_to_json(rep));
        else
            std::printf("level %2d  max rel err %.3e  %s\n", n, rep.max_rel_err,
                        rep.pass ? "pass" : "FAIL");
    }
    if (opt.json) std::cout << rows.dump(2) << "\n";
    return all_pass ? kOk : kCheckFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite subdivision schemes, exponential-polynomial annihilators, and their factorizations"};
    app.require_subcommand(1);
    app.fallthrough();  // allow --json/--tol/--seed after the subcommand
    Options opt;

    app.add_flag("--json", opt.json, "emit JSON to stdout");
    auto* tol_opt = app.add_option("--tol", opt.tol, "residual tolerance (default 1e-9)");
    app.add_option("--seed", opt.seed, "seed for randomized suites");

    auto add_space_opts = [&](CLI::App* cmd) {
        cmd->add_option("--p", opt.p, "max polynomial degree p (-1 for none)");
        cmd->add_option("--lambda", opt.lambda_tokens,
                        "frequency magnitude; prefix i for imaginary (repeatable)");
        cmd->add_flag("--imag", opt.imag, "treat plain --lambda values as imaginary");
    };

    auto* ann = app.add_subcommand("annihilator", "construct a cancellation operator");
    add_space_opts(ann);
    ann->add_option("--level", opt.level, "level n (frequencies halved n times)");
    ann->add_option("--out", opt.out, "write MaskFile JSON here");

    auto* chk = app.add_subcommand("check", "check spectral condition or annihilation per level");
    chk->add_option("--scheme", opt.scheme, "example2 | example3");
    chk->add_option("--mask", opt.mask_path, "MaskFile JSON path");
    add_space_opts(chk);
    chk->add_option("--levels", opt.levels, "level or range a:b");
    chk->add_option("--mode", opt.mode, "spectral (default) | annihilation");

    auto* fac = app.add_subcommand("factorize", "factor a scheme or an annihilating mask");
    fac->add_option("--scheme", opt.scheme, "example2 | example3");
    fac->add_option("--mask", opt.mask_path, "MaskFile JSON path");
    add_space_opts(fac);
    fac->add_option("--level", opt.level, "level n");
    fac->add_option("--mode", opt.mode, "scheme | convolution | subdivision | division");
    fac->add_option("--out", opt.out, "write the factor B as MaskFile JSON");

    auto* run = app.add_subcommand("run", "iterate a scheme and emit CSV (and SVG)");
    run->add_option("--scheme", opt.scheme, "example2 | example3");
    run->add_option("--mask", opt.mask_path, "MaskFile JSON path (stationary scheme)");
    run->add_option("--lambda", opt.lambda_tokens, "frequency magnitude");
    run->add_flag("--imag", opt.imag, "imaginary frequency");
    run->add_option("--iterations", opt.iterations, "number of subdivision steps");
    run->add_option("--init", opt.init, "delta | 1 | x | exp | exp-");
    run->add_option("--column", opt.column, "delta identity column (default 0)");
    run->add_option("--window", opt.window, "half-width of the sample window for named inits");
    run->add_option("--out", opt.out, "CSV output path (stdout if omitted)");
    run->add_option("--svg", opt.svg, "SVG output path (component 0, final level)");

    auto* det = app.add_subcommand("det", "check the determinant factorization identity");
    det->add_option("--scheme", opt.scheme, "example2 | example3");
    det->add_option("--lambda", opt.lambda_tokens, "frequency magnitude");
    det->add_flag("--imag", opt.imag, "imaginary frequency");
    det->add_option("--levels", opt.levels, "level or range a:b");
    det->add_option("--level", opt.level, "single level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    opt.tol_given = tol_opt->count() > 0;

    try {
        if (app.got_subcommand(ann)) return cmd_annihilator(opt);
        if (app.got_subcommand(chk)) return cmd_check(opt);
        if (app.got_subcommand(fac)) return cmd_factorize(opt);
        if (app.got_subcommand(run)) return cmd_run(opt);
        if (app.got_subcommand(det)) return cmd_det(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NotDivisibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        // missing/malformed input files are usage errors; the rest numeric
        return std::string(e.what()).find("cannot open") != std::string::npos ||
                       std::string(e.what()).find("MaskFile") != std::string::npos ||
                       std::string(e.what()).find("parse") != std::string::npos
                   ? kUsage
                   : kNumeric;
    }
    return kUsage;
}
