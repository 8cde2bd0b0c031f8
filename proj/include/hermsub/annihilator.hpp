#pragma once

#include <vector>

#include "hermsub/space.hpp"

namespace hermsub {

/// Complete Taylor operator mask T_d on l^{d+1}(Z): tap at -1 is the identity,
/// tap at 0 is -(identity) with strictly upper entries -1/(k-j)!.
/// (T v_f)_k(alpha) = f^(k)(alpha+1) - sum_{j<=d-k} f^(k+j)(alpha)/j!.
MatrixMask taylor_mask(int d);

/// Taylor polynomial of e^{lambda .} of order k evaluated at 1:
/// t_k[e^{lambda .}](1) = sum_{j=0}^k lambda^j / j!.
cplx truncated_exp(int k, cplx lambda);

/// Constant Q-block entry h_{k,q} of the single-frequency cancellation
/// operator; depends only on m = q - k:
///   h_{k,q} = -sum_{j >= m, j = m mod 2} lambda^(j-m) / j!.
/// Equals the parity closed forms built from e^{+-lambda} and the truncated
/// Taylor sums; evaluated by the series to avoid their cancellation for
/// moderate |lambda| (the lambda -> 0 limit is -1/m!, the Taylor entry).
cplx cancel_entry(int m, cplx lambda);

/// The Vandermonde systems of the multi-frequency construction.
struct VandermondeData {
    Eigen::MatrixXcd L_freq;  // r x r, [lambda_j^(2l)]
    Eigen::MatrixXcd L_full;  // 2r x 2r, [(+-lambda_j)^(p+1+i)]
    Eigen::VectorXcd w_plus;
    Eigen::VectorXcd w_minus;
};

VandermondeData vandermonde_data(int p, const std::vector<Frequency>& freqs);

/// A cancellation operator for V_{d,Lambda} at a given level, with block
/// symbol [T_p*, Q*; 0, R*]: Q* constant in z, R*(z) linear in z^-1.
class CancelOp {
public:
    CancelOp(MatrixMask mask, ExpPolySpace space, int level);

    const MatrixMask& mask() const { return mask_; }
    const ExpPolySpace& space() const { return space_; }
    int level() const { return level_; }

    int taylor_block_size() const { return space_.p() + 1; }
    int exp_block_size() const { return 2 * space_.r(); }
    Eigen::MatrixXcd q_block() const;     // (p+1) x 2r constant block
    LaurentMatrix r_block_symbol() const; // 2r x 2r lower-right symbol

private:
    MatrixMask mask_;
    ExpPolySpace space_;
    int level_;
};

/// H_{d,lambda} for V_{d,lambda} = span{1,..,x^{d-2}, e^{+-lambda x}}, d >= 2,
/// from the closed forms: Q entries h_{k,d-1}, h_{k,d} and
/// R*(z) = [[z^-1 - cosh l, -sinh(l)/l], [-l sinh l, z^-1 - cosh l]].
CancelOp cancel_single(int d, Frequency lambda);

/// H_{d,Lambda} for p >= 0 (or p = -1 with r >= 1): row k of Q solves the
/// 2r x 2r Vandermonde system of the cancellation conditions restricted to
/// row k (row 0 via L_freq^-1 w_+-, parity of p selecting the pairing);
/// R*(z) = L_full Delta*(z) L_full^-1. r = 0 yields the Taylor operator.
CancelOp cancel_multi(int p, std::vector<Frequency> freqs);

/// Level-n operator H^[n] = H_{d, 2^-n Lambda}.
CancelOp cancel_level(const ExpPolySpace& space, int n);

/// Scalar annihilator h*(z) = (z^-1 - 1)^(p+1) prod_j (z^-1 - e^{lambda_j})(z^-1 - e^{-lambda_j}).
LaurentPoly scalar_annihilator(int p, const std::vector<Frequency>& freqs);

}  // namespace hermsub
