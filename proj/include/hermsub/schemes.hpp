#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hermsub/space.hpp"

namespace hermsub {

/// One of the interpolatory example schemes (d = 2 or 3), or a user-supplied
/// level-independent mask family.
struct SchemeSpec {
    int d = 2;
    Frequency lambda;
    std::function<MatrixMask(int)> provider;  // level n -> A^[n]

    static SchemeSpec example(int d, Frequency lambda);
    static SchemeSpec stationary(MatrixMask mask);
};

/// Retained subdivision levels. Level n holds c^[n], the actual Hermite data
/// (value and derivatives) attached to the abscissae 2^-n alpha; the
/// D^n-scaled samples v = D^n c are available via scaled().
struct IterateStack {
    struct Level {
        int n;
        VectorSeq data;
    };
    std::vector<Level> levels;

    VectorSeq scaled(size_t idx) const;
};

/// Coefficients of the unique interpolant g in V_{d,lambda} with
/// g^(j)(node) = data[j], in the basis {1, x, .., x^(d-2), psi_(d-1), psi_d}
/// where psi_m(x) = m! sum_i lambda^(2i) x^(m+2i)/(m+2i)! (the cosh/sinh pair
/// renormalized to tend to x^m as lambda -> 0; real for imaginary lambda).
/// Throws when the collocation matrix condition exceeds 1e12.
Eigen::VectorXd hermite_interpolant(int d, Frequency lambda, double node,
                                    const Eigen::VectorXd& data);

/// deriv-th derivative at x of the interpolant with the given coefficients.
double interpolant_eval(int d, Frequency lambda, const Eigen::VectorXd& coeffs, double x,
                        int deriv = 0);

/// Level-n mask of the interpolatory rules: even rule copies, odd rule takes
/// the Hermite data of the averaged neighbor interpolants at the midpoint.
/// A(0) = D and A(alpha) = 0 for even alpha != 0.
MatrixMask build_example_mask(int d, Frequency lambda, int n);

/// Closed-form level-n symbols (three taps, support {-1,0,1}); the
/// hyperbolic entries are normalized so that the interpolatory construction,
/// the determinant identity and the n -> infinity limit all agree.
MatrixMask closed_form_A(int d, Frequency lambda, int n);

/// The factorization quotient H^[n+1] S_A = S_B H^[n] in closed form.
MatrixMask closed_form_B(int d, Frequency lambda, int n);

/// The n -> infinity limit masks; purely polynomial Hermite schemes.
MatrixMask limit_symbol(int d);

struct DetIdentityReport {
    int d = 2;
    int level = 0;
    double max_rel_err = 0.0;
    bool pass = false;
    std::vector<std::pair<cplx, double>> samples;  // (z, relative error)
};

/// det (A^[n])*(z) against its closed-form factorization at 12 sample z.
DetIdentityReport det_identity(int d, Frequency lambda, int n, double tol = 1e-10);

/// Iterate D^(n+1) c^[n+1] = S_{A^[n]} (D^n c^[n]) from c0 = c^[0], retaining
/// every level. Throws std::runtime_error naming the deficit when the input
/// window is exhausted before the requested depth.
IterateStack run_scheme(const SchemeSpec& spec, const VectorSeq& c0, int iterations);

}  // namespace hermsub
