#include "hermsub/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

namespace hermsub {

LaurentPoly::LaurentPoly(long lo, std::vector<cplx> coeffs) : lo_(lo), coeffs_(std::move(coeffs)) {
    normalize();
}

void LaurentPoly::normalize() {
    double mx = 0.0;
    for (const cplx& c : coeffs_) mx = std::max(mx, std::abs(c));
    if (mx == 0.0) {
        coeffs_.clear();
        lo_ = 0;
        return;
    }
    const double tol = kPruneRel * mx;
    for (cplx& c : coeffs_) {
        if (std::abs(c) <= tol) c = 0.0;
    }
    size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == cplx(0.0)) ++first;
    size_t last = coeffs_.size();
    while (last > first && coeffs_[last - 1] == cplx(0.0)) --last;
    if (first > 0 || last < coeffs_.size()) {
        coeffs_ = std::vector<cplx>(coeffs_.begin() + first, coeffs_.begin() + last);
        lo_ += static_cast<long>(first);
    }
    if (coeffs_.empty()) lo_ = 0;
}

cplx LaurentPoly::coeff(long exponent) const {
    if (is_zero() || exponent < lo() || exponent > hi()) return 0.0;
    return coeffs_[static_cast<size_t>(exponent - lo_)];
}

namespace {
cplx int_pow(cplx z, long e) {
    if (e == 0) return 1.0;
    const bool neg = e < 0;
    unsigned long n = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    cplx acc = 1.0, base = z;
    while (n > 0) {
        if (n & 1u) acc *= base;
        base *= base;
        n >>= 1u;
    }
    return neg ? cplx(1.0) / acc : acc;
}
}  // namespace

cplx LaurentPoly::eval(cplx z) const {
    if (z == cplx(0.0)) throw std::domain_error("LaurentPoly::eval: z = 0 is outside the domain");
    if (is_zero()) return 0.0;
    cplx acc = 0.0;  // Horner on the ascending coefficient list
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc * int_pow(z, lo_);
}

LaurentPoly LaurentPoly::subst_z2() const {
    if (is_zero()) return {};
    std::vector<cplx> c(2 * coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) c[2 * i] = coeffs_[i];
    return LaurentPoly(2 * lo_, std::move(c));
}

double LaurentPoly::max_abs_coeff() const {
    double mx = 0.0;
    for (const cplx& c : coeffs_) mx = std::max(mx, std::abs(c));
    return mx;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (cplx& c : r.coeffs_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    const long nlo = std::min(lo(), rhs.lo());
    const long nhi = std::max(hi(), rhs.hi());
    std::vector<cplx> c(static_cast<size_t>(nhi - nlo + 1), 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) c[static_cast<size_t>(lo_ - nlo) + i] += coeffs_[i];
    for (size_t i = 0; i < rhs.coeffs_.size(); ++i) c[static_cast<size_t>(rhs.lo_ - nlo) + i] += rhs.coeffs_[i];
    lo_ = nlo;
    coeffs_ = std::move(c);
    normalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) { return *this += -rhs; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
    if (is_zero() || rhs.is_zero()) return *this = {};
    std::vector<cplx> c(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    lo_ += rhs.lo_;
    coeffs_ = std::move(c);
    normalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(cplx s) {
    for (cplx& c : coeffs_) c *= s;
    normalize();
    return *this;
}

LaurentPoly operator+(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs += rhs; }
LaurentPoly operator-(LaurentPoly lhs, const LaurentPoly& rhs) { return lhs -= rhs; }
LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs) {
    LaurentPoly r = lhs;
    return r *= rhs;
}
LaurentPoly operator*(cplx s, LaurentPoly p) { return p *= s; }

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    os.precision(10);
    bool first = true;
    for (long e = p.lo(); e <= p.hi(); ++e) {
        const cplx c = p.coeff(e);
        if (c == cplx(0.0)) continue;
        if (!first) os << " + ";
        first = false;
        if (c.imag() == 0.0)
            os << c.real();
        else
            os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        if (e != 0) os << "*z^" << e;
    }
    return os.str();
}

LaurentMatrix::LaurentMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("LaurentMatrix: negative dimension");
    entries_.resize(static_cast<size_t>(rows) * cols);
}

LaurentMatrix LaurentMatrix::identity(int n) {
    LaurentMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(1.0);
    return m;
}

Eigen::MatrixXcd LaurentMatrix::eval(cplx z) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).eval(z);
    return m;
}

LaurentMatrix LaurentMatrix::subst_z2() const {
    LaurentMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).subst_z2();
    return m;
}

bool LaurentMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const LaurentPoly& p) { return p.is_zero(); });
}

double LaurentMatrix::max_abs_coeff() const {
    double mx = 0.0;
    for (const LaurentPoly& p : entries_) mx = std::max(mx, p.max_abs_coeff());
    return mx;
}

ExponentRange LaurentMatrix::exponent_range() const {
    ExponentRange r;
    bool any = false;
    for (const LaurentPoly& p : entries_) {
        if (p.is_zero()) continue;
        if (!any) {
            r.lo = p.lo();
            r.hi = p.hi();
            any = true;
        } else {
            r.lo = std::min(r.lo, p.lo());
            r.hi = std::max(r.hi, p.hi());
        }
    }
    return any ? r : ExponentRange{0, -1};
}

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("LaurentMatrix: shape mismatch in +");
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
    return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("LaurentMatrix: shape mismatch in -");
    for (size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
    return *this;
}

LaurentMatrix operator+(LaurentMatrix lhs, const LaurentMatrix& rhs) { return lhs += rhs; }
LaurentMatrix operator-(LaurentMatrix lhs, const LaurentMatrix& rhs) { return lhs -= rhs; }

LaurentMatrix operator*(const LaurentMatrix& lhs, const LaurentMatrix& rhs) {
    if (lhs.cols() != rhs.rows())
        throw std::invalid_argument("LaurentMatrix: inner dimension mismatch in *");
    LaurentMatrix r(lhs.rows(), rhs.cols());
    for (int i = 0; i < lhs.rows(); ++i)
        for (int j = 0; j < rhs.cols(); ++j) {
            LaurentPoly acc;
            for (int k = 0; k < lhs.cols(); ++k) acc += lhs.at(i, k) * rhs.at(k, j);
            r.at(i, j) = std::move(acc);
        }
    return r;
}

LaurentMatrix operator*(cplx s, LaurentMatrix m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) *= s;
    return m;
}

LaurentPoly LaurentMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("LaurentMatrix::det: non-square matrix");
    const int n = rows_;
    if (n == 0) return LaurentPoly::constant(1.0);
    if (n > 24) throw std::invalid_argument("LaurentMatrix::det: dimension too large");
    // minor(r, mask) = det of rows r..n-1 restricted to the columns in mask
    std::unordered_map<uint32_t, LaurentPoly> memo;
    auto rec = [&](auto&& self, int r, uint32_t mask) -> LaurentPoly {
        if (r == n) return LaurentPoly::constant(1.0);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        LaurentPoly acc;
        int sign = 1;
        for (int c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            if (!at(r, c).is_zero()) {
                LaurentPoly term = at(r, c) * self(self, r + 1, mask & ~(1u << c));
                acc += (sign > 0) ? term : -term;
            }
            sign = -sign;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, 0, (n == 32) ? ~0u : ((1u << n) - 1u));
}

std::string to_string(const LaurentMatrix& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows(); ++i) {
        os << "[ ";
        for (int j = 0; j < m.cols(); ++j) {
            os << to_string(m.at(i, j));
            if (j + 1 < m.cols()) os << " | ";
        }
        os << " ]\n";
    }
    return os.str();
}

ExponentRange default_division_support(const LaurentMatrix& C, const LaurentMatrix& H) {
    const ExponentRange rc = C.exponent_range();
    const ExponentRange rh = H.exponent_range();
    if (rc.empty()) return {0, 0};
    if (rh.empty()) throw std::invalid_argument("solve_right_factor: divisor is the zero matrix");
    return {rc.lo - rh.hi - 2, rc.hi - rh.lo + 2};
}

DivisionResult solve_right_factor(const LaurentMatrix& C, const LaurentMatrix& H,
                                  ExponentRange support, double tol) {
    if (H.rows() != H.cols()) throw std::invalid_argument("solve_right_factor: H must be square");
    if (C.cols() != H.rows())
        throw std::invalid_argument("solve_right_factor: C.cols must equal H.rows");
    if (support.empty()) throw std::invalid_argument("solve_right_factor: empty support");
    const int m = C.rows();
    const int q = H.rows();

    DivisionResult out;
    out.support = support;
    if (C.is_zero()) {
        out.quotient = LaurentMatrix(m, q);
        return out;
    }

    const ExponentRange rh = H.exponent_range();
    if (rh.empty()) throw std::invalid_argument("solve_right_factor: divisor is the zero matrix");
    const ExponentRange rc = C.exponent_range();
    const long alo = std::min(support.lo + rh.lo, rc.lo);
    const long ahi = std::max(support.hi + rh.hi, rc.hi);
    const long acount = ahi - alo + 1;
    const long W = support.width();

    // Per output row i of B: unknowns x[(g - lo)*q + j] = B_ij(z^g),
    // equations indexed by (alpha, c): sum_g sum_j B_ij(g) H_jc(alpha - g) = C_ic(alpha).
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(acount * q, W * q);
    for (long al = alo; al <= ahi; ++al)
        for (int c = 0; c < q; ++c) {
            const long row = (al - alo) * q + c;
            for (long g = support.lo; g <= support.hi; ++g) {
                const long e = al - g;
                if (e < rh.lo || e > rh.hi) continue;
                for (int j = 0; j < q; ++j) A(row, (g - support.lo) * q + j) = H.at(j, c).coeff(e);
            }
        }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);

    LaurentMatrix B(m, q);
    double residual = 0.0;
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(acount * q);
        for (long al = alo; al <= ahi; ++al)
            for (int c = 0; c < q; ++c) b((al - alo) * q + c) = C.at(i, c).coeff(al);
        const Eigen::VectorXcd x = qr.solve(b);
        residual = std::max(residual, (A * x - b).cwiseAbs().maxCoeff());
        for (int j = 0; j < q; ++j) {
            std::vector<cplx> coeffs(static_cast<size_t>(W));
            for (long g = support.lo; g <= support.hi; ++g)
                coeffs[static_cast<size_t>(g - support.lo)] = x((g - support.lo) * q + j);
            B.at(i, j) = LaurentPoly(support.lo, std::move(coeffs));
        }
    }
    out.residual = residual;
    if (residual > tol * C.max_abs_coeff())
        throw NotDivisibleError("not divisible: least-squares residual " + std::to_string(residual),
                                residual);
    out.quotient = std::move(B);
    return out;
}

DivisionResult solve_right_factor(const LaurentMatrix& C, const LaurentMatrix& H, double tol) {
    return solve_right_factor(C, H, default_division_support(C, H), tol);
}

}  // namespace hermsub
