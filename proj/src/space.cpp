#include "hermsub/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hermsub {

std::string Frequency::str() const {
    std::string s = imaginary ? "i" : "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", magnitude);
    return s + buf;
}

bool operator==(const Frequency& a, const Frequency& b) {
    return a.imaginary == b.imaginary && a.magnitude == b.magnitude;
}

ExpPolySpace::ExpPolySpace(int p, std::vector<Frequency> freqs) : p_(p), freqs_(std::move(freqs)) {
    if (p < -1) throw std::invalid_argument("ExpPolySpace: p must be >= -1");
    if (p == -1 && freqs_.empty())
        throw std::invalid_argument("ExpPolySpace: p = -1 requires at least one frequency");
    for (const auto& f : freqs_)
        if (!(f.magnitude > 0.0))
            throw std::invalid_argument("ExpPolySpace: frequency magnitude must be positive");
    for (size_t i = 0; i < freqs_.size(); ++i)
        for (size_t j = i + 1; j < freqs_.size(); ++j)
            if (freqs_[i] == freqs_[j])
                throw std::invalid_argument("ExpPolySpace: duplicate frequency " + freqs_[i].str());
}

ExpPolySpace ExpPolySpace::scaled(int n) const {
    std::vector<Frequency> f;
    f.reserve(freqs_.size());
    for (const auto& fr : freqs_) f.push_back(fr.halved(n));
    return ExpPolySpace(p_, std::move(f));
}

std::string ExpPolySpace::basis_name(int idx) const {
    if (idx <= p_) return idx == 0 ? "1" : (idx == 1 ? "x" : "x^" + std::to_string(idx));
    const int e = idx - (p_ + 1);
    const Frequency& f = freqs_[static_cast<size_t>(e / 2)];
    return std::string("exp(") + (e % 2 == 0 ? "+" : "-") + f.str() + "x)";
}

cplx ExpPolySpace::basis_deriv(int idx, int j, double x) const {
    if (idx < 0 || idx >= basis_count()) throw std::out_of_range("basis index");
    if (idx <= p_) {
        const int k = idx;
        if (j > k) return 0.0;
        double c = 1.0;
        for (int i = 0; i < j; ++i) c *= static_cast<double>(k - i);
        return c * std::pow(x, k - j);
    }
    const int e = idx - (p_ + 1);
    const cplx lam = freqs_[static_cast<size_t>(e / 2)].value() * ((e % 2 == 0) ? 1.0 : -1.0);
    cplx c = 1.0;
    for (int i = 0; i < j; ++i) c *= lam;
    return c * std::exp(lam * x);
}

std::vector<VectorSeq> sample_basis(const ExpPolySpace& space, int n, long wlo, long whi) {
    if (whi < wlo) throw std::invalid_argument("sample_basis: empty window");
    const int d = space.d();
    std::vector<VectorSeq> out;
    out.reserve(static_cast<size_t>(space.basis_count()));
    for (int idx = 0; idx < space.basis_count(); ++idx) {
        std::vector<Eigen::VectorXcd> vals;
        vals.reserve(static_cast<size_t>(whi - wlo + 1));
        for (long alpha = wlo; alpha <= whi; ++alpha) {
            const double x = std::ldexp(static_cast<double>(alpha), -n);
            Eigen::VectorXcd v(d + 1);
            for (int j = 0; j <= d; ++j)
                v(j) = std::ldexp(1.0, -n * j) * space.basis_deriv(idx, j, x);
            vals.push_back(std::move(v));
        }
        out.emplace_back(d + 1, wlo, std::move(vals), false);
    }
    return out;
}

double ResidualReport::max_residual() const {
    double mx = 0.0;
    for (const auto& e : entries) mx = std::max(mx, e.residual);
    return mx;
}

double ResidualReport::max_scaled() const {
    double mx = 0.0;
    for (const auto& e : entries) mx = std::max(mx, e.residual / e.scale);
    return mx;
}

long default_check_radius(const MatrixMask& mask, const ExpPolySpace& space) {
    // support radius + dim + 2r + 2, plus the support width so the residual
    // window meets the exactness bound even for wide one-sided masks
    const long width = mask.empty() ? 0 : mask.hi() - mask.lo() + 1;
    return mask.support_radius() + width + space.dim() + 2 * space.r() + 2;
}

namespace {

enum class CheckKind { Spectral, Annihilation, SubdivisionAnnihilation };

ResidualReport run_check(CheckKind kind, const MatrixMask& M, const ExpPolySpace& space, int n,
                         double tol, long radius) {
    if (M.dim() != space.dim())
        throw std::invalid_argument("check: mask dimension does not match space dimension d+1");
    if (M.empty()) throw std::invalid_argument("check: zero mask");
    const long N = (radius > 0) ? radius : default_check_radius(M, space);
    const long min_needed = space.dim() + (M.hi() - M.lo() + 1);
    const auto samples = sample_basis(space, n, -N, N);
    const auto targets = (kind == CheckKind::Spectral)
                             ? sample_basis(space, n + 1, 2 * (-N) + M.hi(), 2 * N + M.lo())
                             : std::vector<VectorSeq>{};

    ResidualReport report;
    report.tol = tol;
    report.pass = true;
    for (int idx = 0; idx < space.basis_count(); ++idx) {
        const VectorSeq& c = samples[static_cast<size_t>(idx)];
        VectorSeq out = (kind == CheckKind::Annihilation) ? conv_apply(M, c) : subdivide(M, c);
        // per parity class the residual window must pin down the exponential
        // polynomial residual space, else vanishing there proves nothing
        if (out.length() < 2 * min_needed)
            throw std::invalid_argument(
                "check: window too small relative to mask support; need radius >= " +
                std::to_string(default_check_radius(M, space)));
        double resid = 0.0;
        double mag = c.max_abs();
        for (long alpha = out.lo(); alpha <= out.hi(); ++alpha) {
            Eigen::VectorXcd diff = out.value(alpha);
            if (kind == CheckKind::Spectral) diff -= targets[static_cast<size_t>(idx)].value(alpha);
            resid = std::max(resid, diff.cwiseAbs().maxCoeff());
        }
        if (kind == CheckKind::Spectral) mag = std::max(mag, targets[static_cast<size_t>(idx)].max_abs());
        ResidualEntry entry;
        entry.basis = space.basis_name(idx);
        entry.residual = resid;
        entry.scale = 1.0 + mag;
        entry.pass = resid <= tol * entry.scale;
        report.pass = report.pass && entry.pass;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

}  // namespace

ResidualReport check_spectral(const MatrixMask& A, const ExpPolySpace& space, int n, double tol,
                              long radius) {
    return run_check(CheckKind::Spectral, A, space, n, tol, radius);
}

ResidualReport check_annihilation(const MatrixMask& H, const ExpPolySpace& space, int n, double tol,
                                  long radius) {
    return run_check(CheckKind::Annihilation, H, space, n, tol, radius);
}

ResidualReport check_subdivision_annihilation(const MatrixMask& C, const ExpPolySpace& space, int n,
                                              double tol, long radius) {
    return run_check(CheckKind::SubdivisionAnnihilation, C, space, n, tol, radius);
}

}  // namespace hermsub
