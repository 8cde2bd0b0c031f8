// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 12's contraction check is a soft check and downgrades
// to a warning.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hermsub/factor.hpp"
#include "hermsub/mask_io.hpp"
#include "hermsub/schemes.hpp"

using namespace hermsub;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-58s %s\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

double mask_diff(const MatrixMask& a, const MatrixMask& b) {
    double mx = 0.0;
    const long lo = std::min(a.empty() ? 0 : a.lo(), b.empty() ? 0 : b.lo());
    const long hi = std::max(a.empty() ? 0 : a.hi(), b.empty() ? 0 : b.hi());
    for (long t = lo; t <= hi; ++t)
        mx = std::max(mx, (a.tap(t) - b.tap(t)).cwiseAbs().maxCoeff());
    return mx;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// 1. Annihilation across a panel of spaces and levels, scaled residual 1e-10.
void criterion_1() {
    const auto t0 = Clock::now();
    std::vector<ExpPolySpace> spaces;
    spaces.emplace_back(0, std::vector<Frequency>{{1.0, false}});
    spaces.emplace_back(1, std::vector<Frequency>{{1.0, false}});
    spaces.emplace_back(0, std::vector<Frequency>{{1.0, false}, {2.0, false}});
    spaces.emplace_back(2, std::vector<Frequency>{{0.5, false}, {1.0, true}});
    for (int d = 0; d <= 6; ++d) spaces.emplace_back(d, std::vector<Frequency>{});
    double worst = 0.0;
    for (const auto& space : spaces)
        for (int n = 0; n <= 3; ++n) {
            const CancelOp op = cancel_level(space, n);
            const ResidualReport rep = check_annihilation(op.mask(), space, n, 1e-10);
            worst = std::max(worst, rep.max_scaled());
        }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    report(1, worst <= 1e-10 && secs < 1.0, "annihilation panel, scaled residual <= 1e-10",
           "max " + fmt(worst) + ", " + fmt(secs) + " s");
}

// 2. cancel_single(2,1) and (3,1) equal the explicit H_2 / H_3 operators,
// evaluated independently, entrywise <= 1e-12.
void criterion_2() {
    const double e = std::exp(1.0);
    double worst = 0.0;
    {
        Eigen::MatrixXcd t0(3, 3);
        t0 << -1.0, (1.0 / e - e) / 2.0, -(1.0 / e + e - 2.0) / 2.0,  //
            0.0, -(1.0 / e + e) / 2.0, (1.0 / e - e) / 2.0,           //
            0.0, (1.0 / e - e) / 2.0, -(1.0 / e + e) / 2.0;
        const MatrixMask expect(3, -1, {Eigen::MatrixXcd::Identity(3, 3), t0});
        worst = std::max(worst, mask_diff(cancel_single(2, Frequency{1.0, false}).mask(), expect));
    }
    {
        Eigen::MatrixXcd t0 = Eigen::MatrixXcd::Zero(4, 4);
        t0(0, 0) = -1.0;
        t0(0, 1) = -1.0;
        t0(0, 2) = (2.0 - 1.0 / e - e) / 2.0;
        t0(0, 3) = (2.0 + 1.0 / e - e) / 2.0;
        t0(1, 1) = -1.0;
        t0(1, 2) = (1.0 / e - e) / 2.0;
        t0(1, 3) = -(1.0 / e + e - 2.0) / 2.0;
        t0(2, 2) = -(1.0 / e + e) / 2.0;
        t0(2, 3) = (1.0 / e - e) / 2.0;
        t0(3, 2) = (1.0 / e - e) / 2.0;
        t0(3, 3) = -(1.0 / e + e) / 2.0;
        const MatrixMask expect(4, -1, {Eigen::MatrixXcd::Identity(4, 4), t0});
        worst = std::max(worst, mask_diff(cancel_single(3, Frequency{1.0, false}).mask(), expect));
    }
    report(2, worst <= 1e-12, "explicit H_2 / H_3 match entrywise <= 1e-12", "max " + fmt(worst));
}

// 3. Taylor limit: log-log slope of |H_{d,lambda} - T_d| over lambda = 1e-1..1e-4
// lies in [1.9, 2.1].
void criterion_3() {
    bool pass = true;
    std::string detail;
    for (int d : {2, 3, 4}) {
        std::vector<double> xs, ys;
        for (int k = 1; k <= 4; ++k) {
            const double lam = std::pow(10.0, -k);
            const double dist = mask_diff(cancel_single(d, Frequency{lam, false}).mask(),
                                          taylor_mask(d));
            xs.push_back(-static_cast<double>(k));
            ys.push_back(std::log10(dist));
        }
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = xs.size();
        for (size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        pass = pass && slope >= 1.9 && slope <= 2.1;
        detail += "d=" + std::to_string(d) + ": " + fmt(slope) + "  ";
    }
    report(3, pass, "Taylor limit O(lambda^2), slope in [1.9, 2.1]", detail);
}

// 4. Column-shift identity h_{k-1,d-1} = h_{k,d}, d <= 8, four frequencies.
void criterion_4() {
    double worst = 0.0;
    for (int d = 2; d <= 8; ++d)
        for (const Frequency lam : {Frequency{0.3, false}, Frequency{1.0, false},
                                    Frequency{2.0, false}, Frequency{1.0, true}}) {
            const Eigen::MatrixXcd t0 = cancel_single(d, lam).mask().tap(0);
            for (int k = 1; k <= d - 2; ++k)
                worst = std::max(worst, std::abs(t0(k - 1, d - 1) - t0(k, d)));
        }
    report(4, worst <= 1e-14, "column-shift identity exact (<= 1e-14)", "max " + fmt(worst));
}

// 5. Spectral condition of the closed-form schemes, levels 0..5.
void criterion_5() {
    double worst = 0.0;
    for (int d : {2, 3}) {
        const ExpPolySpace space(d - 2, {Frequency{1.0, false}});
        for (int n = 0; n <= 5; ++n) {
            const ResidualReport rep =
                check_spectral(closed_form_A(d, Frequency{1.0, false}, n), space, n, 1e-9);
            worst = std::max(worst, rep.max_scaled());
        }
    }
    report(5, worst <= 1e-9, "spectral condition of A^[n], d in {2,3}, n = 0..5",
           "max scaled " + fmt(worst));
}

// 6. Cross-construction equality of the interpolatory and closed-form masks.
void criterion_6() {
    double worst = 0.0;
    for (int d : {2, 3})
        for (const Frequency lam : {Frequency{0.25, false}, Frequency{1.0, false},
                                    Frequency{1.0, true}})
            for (int n = 0; n <= 4; ++n)
                worst = std::max(worst,
                                 mask_diff(build_example_mask(d, lam, n), closed_form_A(d, lam, n)));
    report(6, worst <= 1e-10, "build_example_mask == closed_form_A (<= 1e-10)",
           "max " + fmt(worst));
}

// 7. factor_scheme returns the closed-form B; symbol identity at 10 sample z.
void criterion_7() {
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_b = 0.0, worst_id = 0.0;
    for (int d : {2, 3}) {
        const Frequency lam{1.0, false};
        const ExpPolySpace space(d - 2, {lam});
        for (int n = 0; n <= 4; ++n) {
            const FactorResult r = factor_scheme(closed_form_A(d, lam, n), space, n);
            worst_b = std::max(worst_b, mask_diff(r.B, closed_form_B(d, lam, n)));
            const LaurentMatrix lhs =
                cancel_level(space, n + 1).mask().symbol() * closed_form_A(d, lam, n).symbol();
            const LaurentMatrix rhs =
                r.B.symbol() * cancel_level(space, n).mask().symbol().subst_z2();
            for (int i = 0; i < 10; ++i) {
                const double radius = 0.5 + 1.1 * unif(gen);
                const cplx z = radius * std::exp(cplx(0.0, 6.28318 * unif(gen)));
                const Eigen::MatrixXcd l = lhs.eval(z), rr = rhs.eval(z);
                worst_id = std::max(worst_id, (l - rr).cwiseAbs().maxCoeff() /
                                                  (1.0 + rr.cwiseAbs().maxCoeff()));
            }
        }
    }
    report(7, worst_b <= 1e-9 && worst_id <= 1e-10, "factor_scheme reproduces closed_form_B",
           "B " + fmt(worst_b) + ", identity " + fmt(worst_id));
}

// 8. Determinant identities at 12 sample z, relative error <= 1e-10.
void criterion_8() {
    double worst = 0.0;
    for (int d : {2, 3})
        for (int n = 0; n <= 4; ++n)
            worst = std::max(worst, det_identity(d, Frequency{1.0, false}, n, 1e-10).max_rel_err);
    report(8, worst <= 1e-10, "determinant factorizations, d in {2,3}, n = 0..4",
           "max rel " + fmt(worst));
}

// 9. Limit symbols: contraction ratio 0.25 +- 0.02 for n = 8..11.
void criterion_9() {
    bool pass = true;
    std::string detail;
    for (int d : {2, 3}) {
        std::vector<double> dist;
        for (int n = 8; n <= 11; ++n)
            dist.push_back(mask_diff(closed_form_A(d, Frequency{1.0, false}, n), limit_symbol(d)));
        for (size_t i = 0; i + 1 < dist.size(); ++i) {
            const double ratio = dist[i + 1] / dist[i];
            pass = pass && std::abs(ratio - 0.25) <= 0.02;
        }
        detail += "d=" + std::to_string(d) + " last ratio " + fmt(dist[3] / dist[2]) + "  ";
    }
    report(9, pass, "A^[n] -> A^[inf] with ratio 0.25 +- 0.02, n = 8..11", detail);
}

// 10. Minimality as divisibility: 20 seeded products per space factor back;
// a corrupted product raises "not divisible".
void criterion_10() {
    const std::vector<ExpPolySpace> spaces{
        ExpPolySpace(0, {Frequency{1.0, false}}),
        ExpPolySpace(1, {Frequency{1.0, false}, Frequency{2.0, false}})};
    double worst = 0.0;
    bool corrupt_flagged = true;
    for (const auto& space : spaces) {
        const CancelOp h = cancel_multi(space.p(), space.freqs());
        for (unsigned seed = 0; seed < 20; ++seed) {
            std::mt19937 gen(7000 + seed);
            std::uniform_real_distribution<double> unif(-1.0, 1.0);
            std::vector<Eigen::MatrixXcd> taps;
            for (int t = 0; t < 3; ++t) {
                Eigen::MatrixXcd m(space.dim(), space.dim());
                for (int i = 0; i < space.dim(); ++i)
                    for (int j = 0; j < space.dim(); ++j) m(i, j) = cplx(unif(gen), unif(gen));
                taps.push_back(std::move(m));
            }
            const MatrixMask b0(space.dim(), -1, std::move(taps));
            const MatrixMask c = convolve(b0, h.mask());
            const FactorResult r = factor_convolution(c, space, 1e-9);
            worst = std::max(worst, mask_diff(r.B, b0) / (1.0 + b0.max_abs()));
            if (seed == 0) {
                std::vector<Eigen::MatrixXcd> bad;
                for (long t = c.lo(); t <= c.hi(); ++t) bad.push_back(c.tap(t));
                bad.front()(0, 0) += 1e-3 * c.max_abs();
                bool threw = false;
                try {
                    (void)solve_right_factor(MatrixMask(space.dim(), c.lo(), std::move(bad)).symbol(),
                                             h.mask().symbol());
                } catch (const NotDivisibleError&) {
                    threw = true;
                }
                corrupt_flagged = corrupt_flagged && threw;
            }
        }
    }
    report(10, worst <= 1e-9 && corrupt_flagged,
           "20 seeded products factor back; corruption flagged", "max " + fmt(worst));
}

// 11. Reproduction through iteration: 4 levels reproduce the Hermite samples.
void criterion_11() {
    double worst = 0.0;
    for (int d : {2, 3}) {
        const Frequency lam{1.0, false};
        const ExpPolySpace space(d - 2, {lam});
        const auto samples0 = sample_basis(space, 0, -20, 20);
        for (int idx = 0; idx < space.basis_count(); ++idx) {
            const IterateStack stack =
                run_scheme(SchemeSpec::example(d, lam), samples0[static_cast<size_t>(idx)], 4);
            const VectorSeq got = stack.scaled(4);
            const auto want = sample_basis(space, 4, got.lo(), got.hi())[static_cast<size_t>(idx)];
            for (long a = got.lo(); a <= got.hi(); ++a)
                worst = std::max(worst, (got.value(a) - want.value(a)).cwiseAbs().maxCoeff() /
                                            (1.0 + want.max_abs()));
        }
    }
    report(11, worst <= 1e-9, "run_scheme reproduces v_{f,n} over 4 iterations",
           "max scaled " + fmt(worst));
}

// 12. Desk-scale figures: CLI run of both schemes, 12 iterations, < 10 s,
// CSV + SVG written; B-scheme sup-norms non-increasing from level 3 (soft).
void criterion_12() {
    const auto t0 = Clock::now();
    const char* bin = std::getenv("HERMSUB_BIN");
    bool cli_ok = true;
    if (bin != nullptr) {
        for (const std::string scheme : {"example2", "example3"}) {
            const std::string cmd = std::string(bin) + " run --scheme " + scheme +
                                    " --lambda 1 --iterations 12 --init delta --out /tmp/acc_" +
                                    scheme + ".csv --svg /tmp/acc_" + scheme +
                                    ".svg > /dev/null 2>&1";
            cli_ok = cli_ok && (WEXITSTATUS(std::system(cmd.c_str())) == 0);
            std::ifstream csv("/tmp/acc_" + scheme + ".csv"), svg("/tmp/acc_" + scheme + ".svg");
            cli_ok = cli_ok && csv.good() && svg.good();
        }
    }
    // bounded values inside the support cone at the final level
    bool bounded = true;
    for (int d : {2, 3}) {
        for (int col = 0; col <= d; ++col) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d + 1);
            e(col) = 1.0;
            const IterateStack stack =
                run_scheme(SchemeSpec::example(d, Frequency{1.0, false}), VectorSeq::delta(e), 12);
            const VectorSeq& last = stack.levels.back().data;
            bounded = bounded && last.max_abs() < 100.0 &&
                      last.hi() <= (1L << 12) && last.lo() >= -(1L << 12);
        }
    }
    // soft contraction check on the difference schemes
    bool contracting = true;
    for (int d : {2, 3}) {
        SchemeSpec bspec;
        bspec.d = d;
        bspec.lambda = Frequency{1.0, false};
        bspec.provider = [d](int n) { return closed_form_B(d, Frequency{1.0, false}, n); };
        for (int col = 0; col <= d; ++col) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d + 1);
            e(col) = 1.0;
            const IterateStack stack = run_scheme(bspec, VectorSeq::delta(e), 12);
            double prev = -1.0;
            for (size_t lvl = 3; lvl < stack.levels.size(); ++lvl) {
                const double sup = stack.levels[lvl].data.max_abs();
                if (prev >= 0.0 && sup > prev * (1.0 + 1e-12)) contracting = false;
                prev = sup;
            }
        }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!contracting)
        std::printf("[WARN] criterion 12: B-scheme sup-norm not monotone (soft check)\n");
    report(12, cli_ok && bounded && secs < 10.0,
           "12-iteration runs: CSV+SVG, bounded, < 10 s",
           fmt(secs) + " s" + (bin == nullptr ? " (CLI skipped: HERMSUB_BIN unset)" : ""));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures > 0) {
        std::printf("%d criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
}
