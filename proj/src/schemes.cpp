#include "hermsub/schemes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace hermsub {

namespace {

// psi_m(x; mu2) = m! sum_i mu2^i x^(m+2i) / (m+2i)!,   mu2 = lambda^2 (signed
// real: negative for imaginary lambda). Tends to x^m as lambda -> 0; the pair
// psi_(d-1), psi_d spans the exponential part of V_{d,lambda} together with
// the monomials below degree d-1.
double psi(int m, double mu2, double x) {
    if (mu2 * x * x <= 1.0 && mu2 * x * x >= -1.0) {
        double term = std::pow(x, m);
        double sum = 0.0;
        for (int i = 0; i < 40; ++i) {
            sum += term;
            const int j = m + 2 * i;
            term *= mu2 * x * x / static_cast<double>((j + 1) * (j + 2));
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    if (mu2 > 0.0) {
        const double l = std::sqrt(mu2), s = l * x;
        switch (m) {
            case 0: return std::cosh(s);
            case 1: return std::sinh(s) / l;
            case 2: return 2.0 * (std::cosh(s) - 1.0) / mu2;
            case 3: return 6.0 * (std::sinh(s) - s) / (mu2 * l);
            default: break;
        }
    } else {
        const double t = std::sqrt(-mu2), s = t * x;
        switch (m) {
            case 0: return std::cos(s);
            case 1: return std::sin(s) / t;
            case 2: return 2.0 * (1.0 - std::cos(s)) / (-mu2);
            case 3: return 6.0 * (s - std::sin(s)) / (-mu2 * t);
            default: break;
        }
    }
    throw std::invalid_argument("psi: order outside the closed-form range");
}

// psi_m' = m psi_(m-1) and psi_0' = mu2 psi_1, like the monomial ladder.
double psi_deriv(int m, int j, double mu2, double x) {
    if (j == 0) return psi(m, mu2, x);
    if (m >= 1) return m * psi_deriv(m - 1, j - 1, mu2, x);
    return mu2 * psi_deriv(1, j - 1, mu2, x);
}

double basis_deriv(int d, double mu2, int b, int j, double x) {
    if (b <= d - 2) {
        if (j > b) return 0.0;
        double c = 1.0;
        for (int i = 0; i < j; ++i) c *= static_cast<double>(b - i);
        return c * std::pow(x, b - j);
    }
    return psi_deriv(b, j, mu2, x);  // b is d-1 or d
}

double signed_mu2(Frequency lambda) {
    const double m2 = lambda.magnitude * lambda.magnitude;
    return lambda.imaginary ? -m2 : m2;
}

Eigen::MatrixXd collocation(int d, double mu2, double node) {
    Eigen::MatrixXd M(d + 1, d + 1);
    for (int j = 0; j <= d; ++j)
        for (int b = 0; b <= d; ++b) M(j, b) = basis_deriv(d, mu2, b, j, node);
    return M;
}

// cosh(z) - 1 and sinh(z) - z without cancellation near z = 0.
cplx cosh_m1(cplx z) {
    const cplx s = std::sinh(z * 0.5);
    return 2.0 * s * s;
}

cplx sinh_mz(cplx z) {
    if (std::abs(z) >= 0.5) return std::sinh(z) - z;
    cplx term = z * z * z / 6.0, sum = 0.0;
    for (int i = 1; i < 20; ++i) {
        sum += term;
        term *= z * z / static_cast<double>((2 * i + 2) * (2 * i + 3));
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

void require_example_d(int d) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("example schemes are defined for d = 2 and d = 3");
}

}  // namespace

SchemeSpec SchemeSpec::example(int d, Frequency lambda) {
    require_example_d(d);
    SchemeSpec s;
    s.d = d;
    s.lambda = lambda;
    s.provider = [d, lambda](int n) { return closed_form_A(d, lambda, n); };
    return s;
}

SchemeSpec SchemeSpec::stationary(MatrixMask mask) {
    SchemeSpec s;
    s.d = mask.dim() - 1;
    s.lambda = Frequency{1.0, false};
    s.provider = [m = std::move(mask)](int) { return m; };
    return s;
}

VectorSeq IterateStack::scaled(size_t idx) const {
    const Level& lvl = levels.at(idx);
    const int d = lvl.data.dim() - 1;
    const Eigen::MatrixXcd Dn = ScaleMatrix{d}.pow(lvl.n);
    std::vector<Eigen::VectorXcd> vals;
    vals.reserve(static_cast<size_t>(lvl.data.length()));
    for (long a = lvl.data.lo(); a <= lvl.data.hi(); ++a) vals.push_back(Dn * lvl.data.value(a));
    return VectorSeq(d + 1, lvl.data.lo(), std::move(vals), lvl.data.compact());
}

Eigen::VectorXd hermite_interpolant(int d, Frequency lambda, double node,
                                    const Eigen::VectorXd& data) {
    require_example_d(d);
    if (data.size() != d + 1) throw std::invalid_argument("hermite_interpolant: data size != d+1");
    const double mu2 = signed_mu2(lambda);
    const Eigen::MatrixXd M = collocation(d, mu2, node);
    if (!M.allFinite())
        throw std::runtime_error("hermite_interpolant: collocation matrix overflow at this node");
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) / svd.singularValues()(d);
    if (!(cond < 1e12))
        throw std::runtime_error("hermite_interpolant: collocation matrix numerically singular");
    const Eigen::VectorXd c = svd.solve(data);
    const double resid = (M * c - data).cwiseAbs().maxCoeff();
    if (!(resid <= 1e-10 * (1.0 + data.cwiseAbs().maxCoeff())))
        throw std::runtime_error("hermite_interpolant: interpolation residual too large");
    return c;
}

double interpolant_eval(int d, Frequency lambda, const Eigen::VectorXd& coeffs, double x,
                        int deriv) {
    require_example_d(d);
    if (coeffs.size() != d + 1) throw std::invalid_argument("interpolant_eval: coeffs size != d+1");
    const double mu2 = signed_mu2(lambda);
    double s = 0.0;
    for (int b = 0; b <= d; ++b) s += coeffs(b) * basis_deriv(d, mu2, b, deriv, x);
    return s;
}

MatrixMask build_example_mask(int d, Frequency lambda, int n) {
    require_example_d(d);
    if (n < 0) throw std::invalid_argument("build_example_mask: n must be >= 0");
    const double mu2 = signed_mu2(lambda);
    const double h = std::ldexp(1.0, -n);
    // delta-basis inputs: interpolants at node 0, averaged Hermite data read
    // off at the midpoints +-h/2 (the neighbor interpolant vanishes)
    const Eigen::MatrixXd M = collocation(d, mu2, 0.0);
    const Eigen::MatrixXd Np = collocation(d, mu2, h / 2.0);
    const Eigen::MatrixXd Nm = collocation(d, mu2, -h / 2.0);
    const Eigen::MatrixXd Minv = M.partialPivLu().inverse();
    const Eigen::MatrixXd At_p = 0.5 * Np * Minv;
    const Eigen::MatrixXd At_m = 0.5 * Nm * Minv;
    // A = D^(n+1) Atilde D^-n, even tap exactly D
    Eigen::MatrixXcd A1(d + 1, d + 1), Am1(d + 1, d + 1),
        A0 = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int j = 0; j <= d; ++j) {
        A0(j, j) = std::ldexp(1.0, -j);
        for (int k = 0; k <= d; ++k) {
            const double scale = std::ldexp(1.0, -(n + 1) * j + n * k);
            A1(j, k) = scale * At_p(j, k);
            Am1(j, k) = scale * At_m(j, k);
        }
    }
    return MatrixMask(d + 1, -1, {Am1, A0, A1});
}

MatrixMask closed_form_A(int d, Frequency lambda, int n) {
    require_example_d(d);
    if (n < 0) throw std::invalid_argument("closed_form_A: n must be >= 0");
    const cplx ln = lambda.value() * std::ldexp(1.0, -n);
    const cplx ch = std::cosh(ln * 0.5);
    const cplx sh = std::sinh(ln * 0.5);
    const cplx chm1 = cosh_m1(ln * 0.5);           // cosh(ln/2) - 1
    const cplx shml = sinh_mz(ln * 0.5);           // sinh(ln/2) - ln/2
    Eigen::MatrixXcd A1 = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    Eigen::MatrixXcd A0 = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int j = 0; j <= d; ++j) A0(j, j) = std::ldexp(1.0, -j);
    if (d == 2) {
        A1(0, 0) = 0.5;
        A1(0, 1) = sh / (2.0 * ln);
        A1(0, 2) = chm1 / (2.0 * ln * ln);
        A1(1, 1) = ch / 4.0;
        A1(1, 2) = sh / (4.0 * ln);
        A1(2, 1) = ln * sh / 8.0;
        A1(2, 2) = ch / 8.0;
    } else {
        A1(0, 0) = 0.5;
        A1(0, 1) = 0.25;
        A1(0, 2) = chm1 / (2.0 * ln * ln);
        A1(0, 3) = shml / (2.0 * ln * ln * ln);
        A1(1, 1) = 0.25;
        A1(1, 2) = sh / (4.0 * ln);
        A1(1, 3) = chm1 / (4.0 * ln * ln);
        A1(2, 2) = ch / 8.0;
        A1(2, 3) = sh / (8.0 * ln);
        A1(3, 2) = ln * sh / 16.0;
        A1(3, 3) = ch / 16.0;
    }
    // mirror tap: odd-symbol entries flip sign
    Eigen::MatrixXcd Am1 = A1;
    for (int j = 0; j <= d; ++j)
        for (int k = 0; k <= d; ++k) {
            const bool odd = ((k - j) % 2) != 0;
            if (odd) Am1(j, k) = -A1(j, k);
        }
    return MatrixMask(d + 1, -1, {Am1, A0, A1});
}

MatrixMask closed_form_B(int d, Frequency lambda, int n) {
    require_example_d(d);
    if (n < 0) throw std::invalid_argument("closed_form_B: n must be >= 0");
    const cplx ln = lambda.value() * std::ldexp(1.0, -n);
    const cplx ch = std::cosh(ln * 0.5);
    const cplx sh = std::sinh(ln * 0.5);
    const cplx chm1 = cosh_m1(ln * 0.5);
    const cplx shml = sinh_mz(ln * 0.5);
    Eigen::MatrixXcd B0 = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    Eigen::MatrixXcd B1 = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int j = 0; j <= d; ++j) B1(j, j) = std::ldexp(1.0, -(j + 1));
    if (d == 2) {
        B0(0, 0) = 0.5;
        B0(0, 1) = -sh / (2.0 * ln);
        B0(0, 2) = chm1 / (2.0 * ln * ln);
        B0(1, 1) = ch / 4.0;
        B0(1, 2) = -sh / (4.0 * ln);
        B0(2, 1) = -ln * sh / 8.0;
        B0(2, 2) = ch / 8.0;
    } else {
        B0(0, 0) = 0.5;
        B0(0, 1) = -0.25;
        B0(0, 2) = chm1 / (2.0 * ln * ln);
        B0(0, 3) = -shml / (2.0 * ln * ln * ln);
        B0(1, 1) = 0.25;
        B0(1, 2) = -sh / (4.0 * ln);
        B0(1, 3) = chm1 / (4.0 * ln * ln);
        B0(2, 2) = ch / 8.0;
        B0(2, 3) = -sh / (8.0 * ln);
        B0(3, 2) = -ln * sh / 16.0;
        B0(3, 3) = ch / 16.0;
    }
    return MatrixMask(d + 1, 0, {B0, B1});
}

MatrixMask limit_symbol(int d) {
    require_example_d(d);
    Eigen::MatrixXcd A1(d + 1, d + 1), A0 = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    for (int j = 0; j <= d; ++j) A0(j, j) = std::ldexp(1.0, -j);
    if (d == 2) {
        A1 << 0.5, 0.25, 1.0 / 16, 0, 0.25, 0.125, 0, 0, 0.125;
    } else {
        A1 << 0.5, 0.25, 1.0 / 16, 1.0 / 96, 0, 0.25, 0.125, 1.0 / 32, 0, 0, 0.125, 1.0 / 16, 0, 0,
            0, 1.0 / 16;
    }
    Eigen::MatrixXcd Am1 = A1;
    for (int j = 0; j <= d; ++j)
        for (int k = 0; k <= d; ++k)
            if (((k - j) % 2) != 0) Am1(j, k) = -A1(j, k);
    return MatrixMask(d + 1, -1, {Am1, A0, A1});
}

DetIdentityReport det_identity(int d, Frequency lambda, int n, double tol) {
    require_example_d(d);
    const MatrixMask A = closed_form_A(d, lambda, n);
    const LaurentPoly det = A.symbol().det();
    const cplx ln = lambda.value() * std::ldexp(1.0, -n);
    const cplx root = std::exp(ln * 0.5);
    DetIdentityReport rep;
    rep.d = d;
    rep.level = n;
    // the determinant's zeros cluster at z = -1 (and -e^{+-ln/2}); sample away
    // from them, where coefficient round-off is not amplified
    std::vector<cplx> samples;
    for (double radius : {0.7, 1.4})
        for (double deg : {15.0, 60.0, 135.0})
            for (double s : {1.0, -1.0})
                samples.push_back(radius * std::exp(cplx(0.0, s * deg * std::numbers::pi / 180.0)));
    for (const cplx& z : samples) {
        const cplx zp1 = z + 1.0;
        cplx cf = std::exp(-ln) * (root + z) * (root + z) * (z * root + 1.0) * (z * root + 1.0);
        if (d == 2)
            cf *= zp1 * zp1 / (64.0 * z * z * z);
        else
            cf *= zp1 * zp1 * zp1 * zp1 / (1024.0 * z * z * z * z);
        const double rel = std::abs(det.eval(z) - cf) / std::abs(cf);
        rep.samples.emplace_back(z, rel);
        rep.max_rel_err = std::max(rep.max_rel_err, rel);
    }
    rep.pass = rep.max_rel_err <= tol;
    return rep;
}

IterateStack run_scheme(const SchemeSpec& spec, const VectorSeq& c0, int iterations) {
    if (iterations < 0) throw std::invalid_argument("run_scheme: iterations must be >= 0");
    if (c0.dim() != spec.d + 1)
        throw std::invalid_argument("run_scheme: initial data dimension must be d+1");
    IterateStack stack;
    stack.levels.push_back({0, c0});
    VectorSeq cur = c0;
    for (int n = 0; n < iterations; ++n) {
        const MatrixMask At = rescale_mask(spec.provider(n), n);
        VectorSeq next = subdivide(At, cur);
        if (next.empty())
            throw std::runtime_error(
                "run_scheme: window exhausted after " + std::to_string(n) + " of " +
                std::to_string(iterations) + " iterations (deficit " +
                std::to_string(iterations - n) + " levels); enlarge the initial window");
        stack.levels.push_back({n + 1, next});
        cur = std::move(next);
    }
    return stack;
}

}  // namespace hermsub
