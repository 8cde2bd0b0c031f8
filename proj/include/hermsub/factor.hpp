#pragma once

#include "hermsub/annihilator.hpp"

namespace hermsub {

struct FactorResult {
    MatrixMask B;
    double residual = 0.0;
    ExponentRange support_used;
};

/// A factorization hypothesis failed its residual check.
class PreconditionError : public std::runtime_error {
public:
    PreconditionError(const std::string& msg, ResidualReport report)
        : std::runtime_error(msg), report_(std::move(report)) {}
    const ResidualReport& report() const { return report_; }

private:
    ResidualReport report_;
};

/// C * V_{d,Lambda} = 0  =>  C = B * H_{d,Lambda}. The annihilation
/// precondition is checked first ("not an annihilator" on failure); the
/// division failure path reports "not divisible" with the residual.
FactorResult factor_convolution(const MatrixMask& C, const ExpPolySpace& space, double tol = 1e-9);

/// S_C kills level-n samples  =>  C*(z) = B*(z) H*_{d,2^-n Lambda}(z^2),
/// i.e. S_C = S_B compose H^[n].
FactorResult factor_subdivision(const MatrixMask& C, const ExpPolySpace& space, int n,
                                double tol = 1e-9);

/// Spectral condition at level n  =>
/// H*_{d,2^-(n+1) Lambda}(z) A*(z) = B*(z) H*_{d,2^-n Lambda}(z^2).
/// Formed as the composition mask C = H^[n+1] * A, then factor_subdivision;
/// B is unique because det H*(z^2) is not identically zero.
FactorResult factor_scheme(const MatrixMask& A, const ExpPolySpace& space, int n,
                           double tol = 1e-9);

/// Scalar stepwise-preservation factorization:
/// a*(z) = b*(z) (z^-1 + 1)^(p+1) prod_j (z^-1 + e^{lambda_j/2})(z^-1 + e^{-lambda_j/2}).
FactorResult scalar_factor_check(const LaurentPoly& a, const ExpPolySpace& space, double tol = 1e-9);

}  // namespace hermsub
