#include "hermsub/annihilator.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace hermsub {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Exponent vector [1, s*lambda, ..., (s*lambda)^d].
Eigen::VectorXcd power_vector(cplx lam, int d) {
    Eigen::VectorXcd v(d + 1);
    cplx acc = 1.0;
    for (int j = 0; j <= d; ++j) {
        v(j) = acc;
        acc *= lam;
    }
    return v;
}

// Verifies H*(e^{-+lambda_j}) [1, +-lambda_j, ..., (+-lambda_j)^d]^T = 0.
void verify_cancellation(const MatrixMask& mask, const std::vector<Frequency>& freqs) {
    const int d = mask.dim() - 1;
    const LaurentMatrix sym = mask.symbol();
    for (const Frequency& f : freqs) {
        for (int s : {+1, -1}) {
            const cplx lam = f.value() * static_cast<double>(s);
            const Eigen::VectorXcd v = power_vector(lam, d);
            const double scale = 1.0 + v.cwiseAbs().maxCoeff();
            const double resid = (sym.eval(std::exp(-lam)) * v).cwiseAbs().maxCoeff();
            if (!(resid <= 1e-10 * scale))
                throw std::runtime_error("cancellation operator postcondition failed, residual " +
                                         std::to_string(resid));
        }
    }
}

}  // namespace

MatrixMask taylor_mask(int d) {
    if (d < 0) throw std::invalid_argument("taylor_mask: d must be >= 0");
    Eigen::MatrixXcd t0 = -Eigen::MatrixXcd::Identity(d + 1, d + 1);
    for (int j = 0; j <= d; ++j)
        for (int k = j + 1; k <= d; ++k) t0(j, k) = -1.0 / factorial(k - j);
    return MatrixMask(d + 1, -1, {Eigen::MatrixXcd::Identity(d + 1, d + 1), t0});
}

cplx truncated_exp(int k, cplx lambda) {
    if (k < 0) throw std::invalid_argument("truncated_exp: k must be >= 0");
    cplx sum = 0.0, term = 1.0;
    for (int j = 0; j <= k; ++j) {
        sum += term;
        term *= lambda / static_cast<double>(j + 1);
    }
    return sum;
}

cplx cancel_entry(int m, cplx lambda) {
    if (m < 0) throw std::invalid_argument("cancel_entry: m must be >= 0");
    if (std::abs(lambda) <= 8.0) {
        // series in lambda^2; no cancellation for real lambda, mild for
        // imaginary magnitudes in the operating range
        cplx sum = 0.0;
        cplx term = 1.0 / factorial(m);
        const cplx l2 = lambda * lambda;
        for (int i = 0; i < 60; ++i) {
            sum += term;
            const int j = m + 2 * i;
            term *= l2 / static_cast<double>((j + 1) * (j + 2));
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return -sum;
    }
    // closed form: tail of cosh/sinh past the Taylor sum of the same parity
    cplx head = (m % 2 == 0) ? std::cosh(lambda) : std::sinh(lambda);
    cplx term = 1.0, partial = 0.0;
    for (int j = 0; j < m; ++j) {
        if (j % 2 == m % 2) partial += term;
        term *= lambda / static_cast<double>(j + 1);
    }
    cplx lam_pow_m = 1.0;
    for (int j = 0; j < m; ++j) lam_pow_m *= lambda;
    return -(head - partial) / lam_pow_m;
}

namespace {

// Tails of the even/odd parts of e^{lambda .} past the order-p Taylor value:
// even: (e^l + e^-l) - t_p[e^{l.} + e^{-l.}](1), odd: the difference analog.
cplx parity_tail(int p, cplx lam, bool even) {
    const cplx tp = (p >= 0) ? truncated_exp(p, lam) : cplx(0.0);
    const cplx tm = (p >= 0) ? truncated_exp(p, -lam) : cplx(0.0);
    return even ? (std::exp(lam) + std::exp(-lam)) - (tp + tm)
                : (std::exp(lam) - std::exp(-lam)) - (tp - tm);
}

cplx int_pow(cplx z, int e) {
    cplx acc = 1.0;
    for (int i = 0; i < e; ++i) acc *= z;
    return acc;
}

}  // namespace

VandermondeData vandermonde_data(int p, const std::vector<Frequency>& freqs) {
    const int r = static_cast<int>(freqs.size());
    if (r == 0) throw std::invalid_argument("vandermonde_data: needs at least one frequency");
    VandermondeData v;
    v.L_freq.resize(r, r);
    v.L_full.resize(2 * r, 2 * r);
    v.w_plus.resize(r);
    v.w_minus.resize(r);
    for (int j = 0; j < r; ++j) {
        const cplx lam = freqs[static_cast<size_t>(j)].value();
        cplx acc = 1.0;
        for (int l = 0; l < r; ++l) {
            v.L_freq(j, l) = acc;
            acc *= lam * lam;
        }
        v.w_minus(j) = -parity_tail(p, lam, false) / (2.0 * int_pow(lam, p + 1));
        v.w_plus(j) = -parity_tail(p, lam, true) / (2.0 * int_pow(lam, p + 2));
        cplx pp = int_pow(lam, p + 1);
        cplx pm = int_pow(-lam, p + 1);
        for (int i = 0; i < 2 * r; ++i) {
            v.L_full(i, 2 * j) = pp;
            v.L_full(i, 2 * j + 1) = pm;
            pp *= lam;
            pm *= -lam;
        }
    }
    return v;
}

CancelOp::CancelOp(MatrixMask mask, ExpPolySpace space, int level)
    : mask_(std::move(mask)), space_(std::move(space)), level_(level) {
    if (mask_.dim() != space_.dim())
        throw std::invalid_argument("CancelOp: mask dimension must equal dim V = d+1");
}

Eigen::MatrixXcd CancelOp::q_block() const {
    const int t = taylor_block_size();
    const int e = exp_block_size();
    Eigen::MatrixXcd q(t, e);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < e; ++j) q(i, j) = mask_.tap(0)(i, t + j);
    return q;
}

LaurentMatrix CancelOp::r_block_symbol() const {
    const int t = taylor_block_size();
    const int e = exp_block_size();
    const LaurentMatrix sym = mask_.symbol();
    LaurentMatrix r(e, e);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) r.at(i, j) = sym.at(t + i, t + j);
    return r;
}

CancelOp cancel_single(int d, Frequency lambda) {
    if (d < 2) throw std::invalid_argument("cancel_single: unsupported d < 2 (no Taylor block)");
    const cplx lam = lambda.value();
    Eigen::MatrixXcd t0 = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    // T_{d-2} constant part
    for (int j = 0; j <= d - 2; ++j) {
        t0(j, j) = -1.0;
        for (int k = j + 1; k <= d - 2; ++k) t0(j, k) = -1.0 / factorial(k - j);
    }
    // Q columns h_{k,d-1}, h_{k,d}; both depend on column - row only
    for (int k = 0; k <= d - 2; ++k) {
        t0(k, d - 1) = cancel_entry(d - 1 - k, lam);
        t0(k, d) = cancel_entry(d - k, lam);
    }
    // R constant part
    const cplx ch = std::cosh(lam), sh = std::sinh(lam);
    t0(d - 1, d - 1) = -ch;
    t0(d - 1, d) = -sh / lam;
    t0(d, d - 1) = -lam * sh;
    t0(d, d) = -ch;
    MatrixMask mask(d + 1, -1, {Eigen::MatrixXcd::Identity(d + 1, d + 1), t0});
    verify_cancellation(mask, {lambda});
    return CancelOp(std::move(mask), ExpPolySpace(d - 2, {lambda}), 0);
}

CancelOp cancel_multi(int p, std::vector<Frequency> freqs) {
    const int r = static_cast<int>(freqs.size());
    if (r == 0) {
        if (p < 0) throw std::invalid_argument("cancel_multi: p = -1 requires frequencies");
        return CancelOp(taylor_mask(p), ExpPolySpace(p), 0);
    }
    ExpPolySpace space(p, freqs);
    const int d = space.d();
    Eigen::MatrixXcd t0 = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int j = 0; j <= p; ++j) {
        t0(j, j) = -1.0;
        for (int k = j + 1; k <= p; ++k) t0(j, k) = -1.0 / factorial(k - j);
    }
    if (p >= 0) {
        // row 0 of Q: L_freq^-1 applied to the parity-selected tail vectors.
        // For even p these are exactly w_- and w_+; odd p swaps the pairing
        // and the lambda^(p+1) / lambda^(p+2) scalings with it, as the r = 1
        // closed forms require.
        const VandermondeData v = vandermonde_data(p, freqs);
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(v.L_freq);
        Eigen::VectorXcd rhs_odd(r), rhs_even(r);
        for (int j = 0; j < r; ++j) {
            const cplx lam = freqs[static_cast<size_t>(j)].value();
            rhs_odd(j) = -parity_tail(p, lam, p % 2 != 0) / (2.0 * int_pow(lam, p + 1));
            rhs_even(j) = -parity_tail(p, lam, p % 2 == 0) / (2.0 * int_pow(lam, p + 2));
        }
        const Eigen::VectorXcd odd_cols = lu.solve(rhs_odd);
        const Eigen::VectorXcd even_cols = lu.solve(rhs_even);
        for (int l = 0; l < r; ++l) {
            t0(0, p + 2 * l + 1) = odd_cols(l);
            t0(0, p + 2 * l + 2) = even_cols(l);
        }
        // rows 1..p: the cancellation conditions restricted to row k give a
        // 2r x 2r Vandermonde system with the row-k Taylor remainder as rhs
        for (int k = 1; k <= p; ++k) {
            Eigen::MatrixXcd M(2 * r, 2 * r);
            Eigen::VectorXcd rhs(2 * r);
            for (int j = 0; j < r; ++j) {
                for (int s = 0; s < 2; ++s) {
                    const cplx mu = freqs[static_cast<size_t>(j)].value() * (s == 0 ? 1.0 : -1.0);
                    const int row = 2 * j + s;
                    cplx acc = 1.0;
                    for (int i = 0; i < p + 1 - k; ++i) acc *= mu;
                    for (int c = 0; c < 2 * r; ++c) {
                        M(row, c) = acc;
                        acc *= mu;
                    }
                    rhs(row) = truncated_exp(p - k, mu) - std::exp(mu);
                }
            }
            const Eigen::VectorXcd sol = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).solve(rhs);
            for (int c = 0; c < 2 * r; ++c) t0(k, p + 1 + c) = sol(c);
        }
    }
    // R constant part: L_full diag(e^{+-lambda_j}) L_full^-1
    const VandermondeData v = vandermonde_data(p, freqs);
    Eigen::VectorXcd expv(2 * r);
    for (int j = 0; j < r; ++j) {
        expv(2 * j) = std::exp(freqs[static_cast<size_t>(j)].value());
        expv(2 * j + 1) = std::exp(-freqs[static_cast<size_t>(j)].value());
    }
    const Eigen::MatrixXcd rconst =
        v.L_full * expv.asDiagonal() * v.L_full.partialPivLu().inverse();
    t0.block(p + 1, p + 1, 2 * r, 2 * r) = -rconst;
    MatrixMask mask(d + 1, -1, {Eigen::MatrixXcd::Identity(d + 1, d + 1), t0});
    verify_cancellation(mask, freqs);
    return CancelOp(std::move(mask), std::move(space), 0);
}

CancelOp cancel_level(const ExpPolySpace& space, int n) {
    if (n < 0) throw std::invalid_argument("cancel_level: n must be >= 0");
    const ExpPolySpace scaled = space.scaled(n);
    CancelOp base = cancel_multi(scaled.p(), scaled.freqs());
    return CancelOp(base.mask(), space, n);
}

LaurentPoly scalar_annihilator(int p, const std::vector<Frequency>& freqs) {
    ExpPolySpace space(p, freqs);  // validates
    LaurentPoly h = LaurentPoly::constant(1.0);
    const LaurentPoly zinv = LaurentPoly::monomial(-1);
    for (int i = 0; i <= p; ++i) h *= zinv - LaurentPoly::constant(1.0);
    for (const Frequency& f : freqs) {
        h *= zinv - LaurentPoly::constant(std::exp(f.value()));
        h *= zinv - LaurentPoly::constant(std::exp(-f.value()));
    }
    return h;
}

}  // namespace hermsub
