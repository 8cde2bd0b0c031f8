#pragma once

#include <string>
#include <vector>

#include "hermsub/seqs.hpp"

namespace hermsub {

/// A single exponential frequency lambda in R+ or i*R+. Adding a frequency
/// always adds the pair e^{+lambda x}, e^{-lambda x}.
struct Frequency {
    double magnitude = 1.0;
    bool imaginary = false;

    cplx value() const { return imaginary ? cplx(0.0, magnitude) : cplx(magnitude, 0.0); }
    Frequency halved(int n) const { return {std::ldexp(magnitude, -n), imaginary}; }
    std::string str() const;
};

bool operator==(const Frequency& a, const Frequency& b);

/// The space V_{d,Lambda} = span{1, x, ..., x^p, e^{+-lambda_1 x}, ...},
/// d = p + 2r, dim = d + 1. p = -1 means no polynomial part.
class ExpPolySpace {
public:
    explicit ExpPolySpace(int p, std::vector<Frequency> freqs = {});

    int p() const { return p_; }
    int r() const { return static_cast<int>(freqs_.size()); }
    int d() const { return p_ + 2 * r(); }
    int dim() const { return d() + 1; }
    const std::vector<Frequency>& freqs() const { return freqs_; }

    /// The space with every frequency halved n times (the level-n space).
    ExpPolySpace scaled(int n) const;

    /// Basis enumeration: indices 0..p are monomials x^k, then for each
    /// frequency the pair e^{+lambda x}, e^{-lambda x}.
    int basis_count() const { return dim(); }
    std::string basis_name(int idx) const;
    /// j-th derivative of basis function idx at x.
    cplx basis_deriv(int idx, int j, double x) const;

private:
    int p_;
    std::vector<Frequency> freqs_;
};

/// Hermite samples v_{f,n}(alpha) = D^n [f^(j)(2^-n alpha) : j=0..d] for each
/// basis f, on the window [wlo, whi].
std::vector<VectorSeq> sample_basis(const ExpPolySpace& space, int n, long wlo, long whi);

struct ResidualEntry {
    std::string basis;
    double residual = 0.0;  // max absolute deviation over the checked window
    double scale = 1.0;     // 1 + max sampled magnitude
    bool pass = false;      // residual <= tol * scale
};

struct ResidualReport {
    std::vector<ResidualEntry> entries;
    double tol = 1e-9;
    bool pass = false;

    double max_residual() const;
    double max_scaled() const;  // max over entries of residual / scale
};

/// Window half-width meeting the exactness-from-window bound with margin:
/// residuals of exponential-polynomial data that vanish on dim V + support
/// width consecutive indices per parity class vanish on all of Z.
long default_check_radius(const MatrixMask& mask, const ExpPolySpace& space);

/// S_A v_{f,n} = v_{f,n+1} for every basis f (the V-spectral condition).
/// radius 0 selects the default window; an explicit window too small for the
/// exactness bound raises std::invalid_argument.
ResidualReport check_spectral(const MatrixMask& A, const ExpPolySpace& space, int n,
                              double tol = 1e-9, long radius = 0);

/// H * v_{f,n} = 0 for every basis f (level-n cancellation).
ResidualReport check_annihilation(const MatrixMask& H, const ExpPolySpace& space, int n,
                                  double tol = 1e-9, long radius = 0);

/// S_C v_{f,n} = 0 for every basis f (level-n subdivision annihilation).
ResidualReport check_subdivision_annihilation(const MatrixMask& C, const ExpPolySpace& space,
                                              int n, double tol = 1e-9, long radius = 0);

}  // namespace hermsub
