#include "hermsub/seqs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hermsub {

Eigen::MatrixXcd ScaleMatrix::pow(long n) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int j = 0; j <= d; ++j) m(j, j) = std::ldexp(1.0, static_cast<int>(-n * j));
    return m;
}

MatrixMask::MatrixMask(int dim, long lo, std::vector<Eigen::MatrixXcd> taps)
    : dim_(dim), lo_(lo), taps_(std::move(taps)) {
    if (dim <= 0) throw std::invalid_argument("MatrixMask: dimension must be positive");
    for (const auto& t : taps_)
        if (t.rows() != dim || t.cols() != dim)
            throw std::invalid_argument("MatrixMask: tap shape does not match dim");
    normalize();
}

void MatrixMask::normalize() {
    double mx = 0.0;
    for (const auto& t : taps_) mx = std::max(mx, t.cwiseAbs().maxCoeff());
    if (mx == 0.0) {
        taps_.clear();
        lo_ = 0;
        return;
    }
    const double tol = kPruneRel * mx;
    auto is_zero_tap = [&](const Eigen::MatrixXcd& t) { return t.cwiseAbs().maxCoeff() <= tol; };
    size_t first = 0;
    while (first < taps_.size() && is_zero_tap(taps_[first])) ++first;
    size_t last = taps_.size();
    while (last > first && is_zero_tap(taps_[last - 1])) --last;
    if (first > 0 || last < taps_.size()) {
        taps_ = std::vector<Eigen::MatrixXcd>(taps_.begin() + first, taps_.begin() + last);
        lo_ += static_cast<long>(first);
    }
    if (taps_.empty()) lo_ = 0;
}

MatrixMask MatrixMask::delta_identity(int dim) {
    return MatrixMask(dim, 0, {Eigen::MatrixXcd::Identity(dim, dim)});
}

MatrixMask MatrixMask::from_symbol(const LaurentMatrix& symbol) {
    if (symbol.rows() != symbol.cols())
        throw std::invalid_argument("MatrixMask::from_symbol: symbol must be square");
    const int dim = symbol.rows();
    const ExponentRange r = symbol.exponent_range();
    if (r.empty()) return MatrixMask(dim, 0, {});
    std::vector<Eigen::MatrixXcd> taps;
    taps.reserve(static_cast<size_t>(r.width()));
    for (long e = r.lo; e <= r.hi; ++e) {
        Eigen::MatrixXcd t(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) t(i, j) = symbol.at(i, j).coeff(e);
        taps.push_back(std::move(t));
    }
    return MatrixMask(dim, r.lo, std::move(taps));
}

long MatrixMask::support_radius() const {
    if (empty()) return 0;
    return std::max(std::labs(lo()), std::labs(hi()));
}

Eigen::MatrixXcd MatrixMask::tap(long alpha) const {
    if (empty() || alpha < lo() || alpha > hi()) return Eigen::MatrixXcd::Zero(dim_, dim_);
    return taps_[static_cast<size_t>(alpha - lo_)];
}

LaurentMatrix MatrixMask::symbol() const {
    LaurentMatrix m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            std::vector<cplx> c(taps_.size());
            for (size_t t = 0; t < taps_.size(); ++t) c[t] = taps_[t](i, j);
            m.at(i, j) = LaurentPoly(lo_, std::move(c));
        }
    return m;
}

double MatrixMask::max_abs() const {
    double mx = 0.0;
    for (const auto& t : taps_) mx = std::max(mx, t.cwiseAbs().maxCoeff());
    return mx;
}

double MatrixMask::max_imag() const {
    double mx = 0.0;
    for (const auto& t : taps_) mx = std::max(mx, t.imag().cwiseAbs().maxCoeff());
    return mx;
}

MatrixMask convolve(const MatrixMask& A, const MatrixMask& B) {
    if (A.dim() != B.dim()) throw std::invalid_argument("convolve: dimension mismatch");
    if (A.empty() || B.empty()) return MatrixMask(A.dim(), 0, {});
    const long lo = A.lo() + B.lo();
    const long hi = A.hi() + B.hi();
    std::vector<Eigen::MatrixXcd> taps(static_cast<size_t>(hi - lo + 1),
                                       Eigen::MatrixXcd::Zero(A.dim(), A.dim()));
    for (long a = A.lo(); a <= A.hi(); ++a)
        for (long b = B.lo(); b <= B.hi(); ++b) taps[static_cast<size_t>(a + b - lo)] += A.tap(a) * B.tap(b);
    return MatrixMask(A.dim(), lo, std::move(taps));
}

MatrixMask rescale_mask(const MatrixMask& A, int n) {
    const int d = A.dim() - 1;
    const ScaleMatrix D{d};
    const Eigen::MatrixXcd left = D.pow(-(n + 1));  // D^-(n+1)
    const Eigen::MatrixXcd right = D.pow(n);        // D^n
    std::vector<Eigen::MatrixXcd> taps;
    taps.reserve(A.taps().size());
    for (const auto& t : A.taps()) taps.push_back(left * t * right);
    return MatrixMask(A.dim(), A.empty() ? 0 : A.lo(), std::move(taps));
}

VectorSeq::VectorSeq(int dim, long lo, std::vector<Eigen::VectorXcd> values, bool compact)
    : dim_(dim), lo_(lo), values_(std::move(values)), compact_(compact) {
    if (dim <= 0) throw std::invalid_argument("VectorSeq: dimension must be positive");
    for (const auto& v : values_)
        if (v.size() != dim) throw std::invalid_argument("VectorSeq: value size does not match dim");
    if (values_.empty()) lo_ = 0;
}

VectorSeq VectorSeq::zero_window(int dim, long lo, long hi, bool compact) {
    std::vector<Eigen::VectorXcd> vals;
    for (long a = lo; a <= hi; ++a) vals.push_back(Eigen::VectorXcd::Zero(dim));
    return VectorSeq(dim, lo, std::move(vals), compact);
}

VectorSeq VectorSeq::delta(const Eigen::VectorXcd& v, long at) {
    return VectorSeq(static_cast<int>(v.size()), at, {v}, true);
}

bool VectorSeq::known(long alpha) const {
    return compact_ || (!values_.empty() && alpha >= lo() && alpha <= hi());
}

Eigen::VectorXcd VectorSeq::value(long alpha) const {
    if (values_.empty() || alpha < lo() || alpha > hi()) {
        if (compact_) return Eigen::VectorXcd::Zero(dim_);
        throw std::out_of_range("VectorSeq::value: position outside validity window");
    }
    return values_[static_cast<size_t>(alpha - lo_)];
}

LaurentMatrix VectorSeq::symbol() const {
    if (!compact_)
        throw std::invalid_argument("VectorSeq::symbol: only compact sequences have a symbol");
    LaurentMatrix m(dim_, 1);
    for (int i = 0; i < dim_; ++i) {
        std::vector<cplx> c(values_.size());
        for (size_t t = 0; t < values_.size(); ++t) c[t] = values_[t](i);
        m.at(i, 0) = LaurentPoly(lo_, std::move(c));
    }
    return m;
}

double VectorSeq::max_abs() const {
    double mx = 0.0;
    for (const auto& v : values_) mx = std::max(mx, v.cwiseAbs().maxCoeff());
    return mx;
}

namespace {
long floor_div2(long x) { return (x >= 0) ? x / 2 : -((-x + 1) / 2); }
long ceil_div2(long x) { return -floor_div2(-x); }
}  // namespace

VectorSeq subdivide(const MatrixMask& A, const VectorSeq& c) {
    if (A.dim() != c.dim()) throw std::invalid_argument("subdivide: dimension mismatch");
    if (A.empty() || c.empty()) return VectorSeq(c.dim(), 0, {}, c.compact());
    const long L = A.lo(), U = A.hi();
    const long a = c.lo(), b = c.hi();
    const long olo = c.compact() ? 2 * a + L : 2 * a + U;
    const long ohi = c.compact() ? 2 * b + U : 2 * b + L;
    if (ohi < olo) return VectorSeq(c.dim(), 0, {}, c.compact());
    std::vector<Eigen::VectorXcd> out;
    out.reserve(static_cast<size_t>(ohi - olo + 1));
    for (long alpha = olo; alpha <= ohi; ++alpha) {
        Eigen::VectorXcd s = Eigen::VectorXcd::Zero(c.dim());
        // contributing beta: L <= alpha - 2 beta <= U; the output window
        // guarantees these lie inside [a,b] for windowed input
        long blo = ceil_div2(alpha - U);
        long bhi = floor_div2(alpha - L);
        if (c.compact()) {
            blo = std::max(blo, a);
            bhi = std::min(bhi, b);
        }
        for (long beta = blo; beta <= bhi; ++beta) s += A.tap(alpha - 2 * beta) * c.value(beta);
        out.push_back(std::move(s));
    }
    return VectorSeq(c.dim(), olo, std::move(out), c.compact());
}

VectorSeq conv_apply(const MatrixMask& H, const VectorSeq& c) {
    if (H.dim() != c.dim()) throw std::invalid_argument("conv_apply: dimension mismatch");
    if (H.empty() || c.empty()) return VectorSeq(c.dim(), 0, {}, c.compact());
    const long L = H.lo(), U = H.hi();
    const long a = c.lo(), b = c.hi();
    const long olo = c.compact() ? a + L : a + U;
    const long ohi = c.compact() ? b + U : b + L;
    if (ohi < olo) return VectorSeq(c.dim(), 0, {}, c.compact());
    std::vector<Eigen::VectorXcd> out;
    out.reserve(static_cast<size_t>(ohi - olo + 1));
    for (long alpha = olo; alpha <= ohi; ++alpha) {
        Eigen::VectorXcd s = Eigen::VectorXcd::Zero(c.dim());
        for (long beta = std::max(alpha - U, a); beta <= std::min(alpha - L, b); ++beta)
            s += H.tap(alpha - beta) * c.value(beta);
        out.push_back(std::move(s));
    }
    return VectorSeq(c.dim(), olo, std::move(out), c.compact());
}

}  // namespace hermsub
