#pragma once

#include <vector>

#include <Eigen/Core>

#include "hermsub/laurent.hpp"

namespace hermsub {

/// Diagonal derivative scaling D = diag(2^-j), j = 0..d. D^n has entries 2^-nj.
struct ScaleMatrix {
    int d = 0;
    Eigen::MatrixXcd pow(long n) const;
};

/// Finitely supported matrix mask A: tap(lo + i) = taps[i]. First and last
/// taps are nonzero after normalization.
class MatrixMask {
public:
    MatrixMask() = default;  // empty 1x1 zero mask
    MatrixMask(int dim, long lo, std::vector<Eigen::MatrixXcd> taps);

    static MatrixMask delta_identity(int dim);
    static MatrixMask from_symbol(const LaurentMatrix& symbol);

    int dim() const { return dim_; }
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(taps_.size()) - 1; }
    bool empty() const { return taps_.empty(); }
    long support_radius() const;

    /// Tap at alpha; the zero matrix outside the support.
    Eigen::MatrixXcd tap(long alpha) const;
    const std::vector<Eigen::MatrixXcd>& taps() const { return taps_; }

    LaurentMatrix symbol() const;
    double max_abs() const;
    double max_imag() const;

private:
    void normalize();

    int dim_ = 1;
    long lo_ = 0;
    std::vector<Eigen::MatrixXcd> taps_;
};

/// C(alpha) = sum_beta A(beta) B(alpha - beta); symbol_of(C) = A* B*.
MatrixMask convolve(const MatrixMask& A, const MatrixMask& B);

/// The level-n change of variables A~ = D^-(n+1) A D^n, tapwise.
MatrixMask rescale_mask(const MatrixMask& A, int n);

/// Vector sequence over an explicit validity window [lo, hi]. Values outside
/// the window are unknown (not zero) unless the sequence is flagged compact,
/// in which case the sequence is finitely supported and zero outside.
class VectorSeq {
public:
    VectorSeq(int dim, long lo, std::vector<Eigen::VectorXcd> values, bool compact = false);

    static VectorSeq zero_window(int dim, long lo, long hi, bool compact = false);
    static VectorSeq delta(const Eigen::VectorXcd& v, long at = 0);  // compact

    int dim() const { return dim_; }
    long lo() const { return lo_; }
    long hi() const { return lo_ + static_cast<long>(values_.size()) - 1; }
    long length() const { return static_cast<long>(values_.size()); }
    bool compact() const { return compact_; }
    bool empty() const { return values_.empty(); }

    bool known(long alpha) const;
    /// Value at alpha. Zero outside the window for compact sequences; throws
    /// std::out_of_range for unknown positions of windowed sequences.
    Eigen::VectorXcd value(long alpha) const;

    /// Symbol c*(z) as a dim x 1 Laurent matrix; compact sequences only.
    LaurentMatrix symbol() const;

    double max_abs() const;

private:
    int dim_;
    long lo_;
    std::vector<Eigen::VectorXcd> values_;
    bool compact_;
};

/// (S_A c)(alpha) = sum_beta A(alpha - 2 beta) c(beta), computed on the
/// sub-window where all contributing c(beta) are known.
/// Output window: [2a+U, 2b+L] for windowed input with window [a,b] and mask
/// support [L,U]; [2a+L, 2b+U] (full support) for compact input.
VectorSeq subdivide(const MatrixMask& A, const VectorSeq& c);

/// (H c)(alpha) = sum_beta H(alpha - beta) c(beta) on the valid sub-window
/// ([a+U, b+L] windowed, [a+L, b+U] compact).
VectorSeq conv_apply(const MatrixMask& H, const VectorSeq& c);

}  // namespace hermsub
