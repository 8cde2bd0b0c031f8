#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hermsub {

using cplx = std::complex<double>;

/// Relative coefficient pruning threshold applied after every arithmetic op.
inline constexpr double kPruneRel = 1e-13;

/// A finitely supported Laurent polynomial sum_i coeffs[i] * z^(lo+i) over
/// complex double coefficients. After normalization the first and last stored
/// coefficients are nonzero; the zero polynomial stores no coefficients.
class LaurentPoly {
public:
    LaurentPoly() = default;  // zero
    LaurentPoly(long lo, std::vector<cplx> coeffs);

    static LaurentPoly constant(cplx c) { return LaurentPoly(0, {c}); }
    static LaurentPoly monomial(long exponent, cplx c = 1.0) { return LaurentPoly(exponent, {c}); }

    bool is_zero() const { return coeffs_.empty(); }
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx coeff(long exponent) const;

    /// Evaluate at z != 0. Throws std::domain_error at z == 0 (negative
    /// exponents make 0 outside the domain even for nonnegative supports).
    cplx eval(cplx z) const;

    /// The substitution z -> z^2: every exponent doubled.
    LaurentPoly subst_z2() const;

    double max_abs_coeff() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& rhs);
    LaurentPoly& operator-=(const LaurentPoly& rhs);
    LaurentPoly& operator*=(const LaurentPoly& rhs);
    LaurentPoly& operator*=(cplx s);

private:
    void normalize();

    long lo_ = 0;
    std::vector<cplx> coeffs_;
};

LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs);
LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs);
LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs);
LaurentPoly operator*(cplx s, LaurentPoly p);

std::string to_string(const LaurentPoly& p);

/// Closed exponent interval [lo, hi] for an unknown factor's support.
struct ExponentRange {
    long lo = 0;
    long hi = -1;
    long width() const { return hi - lo + 1; }
    bool empty() const { return hi < lo; }
};

/// Rectangular matrix of Laurent polynomials; the symbol A*(z).
class LaurentMatrix {
public:
    LaurentMatrix() = default;
    LaurentMatrix(int rows, int cols);

    static LaurentMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    LaurentPoly& at(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    const LaurentPoly& at(int i, int j) const { return entries_[static_cast<size_t>(i) * cols_ + j]; }

    /// Entrywise evaluation at z != 0.
    Eigen::MatrixXcd eval(cplx z) const;

    LaurentMatrix subst_z2() const;

    /// Determinant by cofactor expansion with minors memoized over column
    /// subsets. Throws std::invalid_argument for non-square input.
    LaurentPoly det() const;

    bool is_zero() const;
    double max_abs_coeff() const;

    /// Smallest interval covering all entry supports; empty() for the zero matrix.
    ExponentRange exponent_range() const;

    LaurentMatrix& operator+=(const LaurentMatrix& rhs);
    LaurentMatrix& operator-=(const LaurentMatrix& rhs);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<LaurentPoly> entries_;
};

LaurentMatrix operator+(LaurentMatrix lhs, const LaurentMatrix& rhs);
LaurentMatrix operator-(LaurentMatrix lhs, const LaurentMatrix& rhs);
LaurentMatrix operator*(const LaurentMatrix& lhs, const LaurentMatrix& rhs);
LaurentMatrix operator*(cplx s, LaurentMatrix m);

std::string to_string(const LaurentMatrix& m);

/// Raised when no exact right factor exists within the requested support;
/// carries the least-squares residual as a quantitative certificate.
class NotDivisibleError : public std::runtime_error {
public:
    NotDivisibleError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

struct DivisionResult {
    LaurentMatrix quotient;
    double residual = 0.0;
    ExponentRange support;
};

/// Exponent range of C minus exponent range of H, widened by 2 on each side.
/// Covers exact quotients; the widening absorbs cancellation at the edges.
ExponentRange default_division_support(const LaurentMatrix& C, const LaurentMatrix& H);

/// Solve B(z) * H(z) = C(z) for B with support in `support`, as a linear
/// least-squares problem in B's coefficients (block convolution system).
/// Throws NotDivisibleError if the residual exceeds tol * max|coeff of C|.
DivisionResult solve_right_factor(const LaurentMatrix& C, const LaurentMatrix& H,
                                  ExponentRange support, double tol = 1e-9);
DivisionResult solve_right_factor(const LaurentMatrix& C, const LaurentMatrix& H,
                                  double tol = 1e-9);

}  // namespace hermsub
