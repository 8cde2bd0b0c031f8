#include "hermsub/factor.hpp"

#include <cmath>

namespace hermsub {

namespace {

FactorResult divide_mask(const MatrixMask& C, const LaurentMatrix& divisor, double tol) {
    const DivisionResult div = solve_right_factor(C.symbol(), divisor, tol);
    FactorResult out;
    out.B = MatrixMask::from_symbol(div.quotient);
    out.residual = div.residual;
    out.support_used = div.support;
    return out;
}

}  // namespace

FactorResult factor_convolution(const MatrixMask& C, const ExpPolySpace& space, double tol) {
    const ResidualReport pre = check_annihilation(C, space, 0, tol);
    if (!pre.pass)
        throw PreconditionError("not an annihilator: max scaled residual " +
                                    std::to_string(pre.max_scaled()),
                                pre);
    const CancelOp H = cancel_multi(space.p(), space.freqs());
    return divide_mask(C, H.mask().symbol(), tol);
}

FactorResult factor_subdivision(const MatrixMask& C, const ExpPolySpace& space, int n, double tol) {
    const ResidualReport pre = check_subdivision_annihilation(C, space, n, tol);
    if (!pre.pass)
        throw PreconditionError("not an annihilator: max scaled residual " +
                                    std::to_string(pre.max_scaled()),
                                pre);
    const CancelOp H = cancel_level(space, n);
    return divide_mask(C, H.mask().symbol().subst_z2(), tol);
}

FactorResult factor_scheme(const MatrixMask& A, const ExpPolySpace& space, int n, double tol) {
    const ResidualReport pre = check_spectral(A, space, n, tol);
    if (!pre.pass)
        throw PreconditionError("spectral condition fails: max scaled residual " +
                                    std::to_string(pre.max_scaled()),
                                pre);
    const CancelOp Hnext = cancel_level(space, n + 1);
    const CancelOp Hcur = cancel_level(space, n);
    const MatrixMask composed = convolve(Hnext.mask(), A);  // mask of H^[n+1] after S_A
    return divide_mask(composed, Hcur.mask().symbol().subst_z2(), tol);
}

FactorResult scalar_factor_check(const LaurentPoly& a, const ExpPolySpace& space, double tol) {
    // divisor (z^-1 + 1)^(p+1) prod (z^-1 + e^{+-lambda_j/2}); division failure
    // doubles as the stepwise-preservation check
    LaurentPoly g = LaurentPoly::constant(1.0);
    const LaurentPoly zinv = LaurentPoly::monomial(-1);
    for (int i = 0; i <= space.p(); ++i) g *= zinv + LaurentPoly::constant(1.0);
    for (const Frequency& f : space.freqs()) {
        const cplx half = f.value() * 0.5;
        g *= zinv + LaurentPoly::constant(std::exp(half));
        g *= zinv + LaurentPoly::constant(std::exp(-half));
    }
    LaurentMatrix C(1, 1), G(1, 1);
    C.at(0, 0) = a;
    G.at(0, 0) = g;
    const DivisionResult div = solve_right_factor(C, G, tol);
    FactorResult out;
    out.B = MatrixMask::from_symbol(div.quotient);
    out.residual = div.residual;
    out.support_used = div.support;
    return out;
}

}  // namespace hermsub
