#include <doctest.h>

#include <Eigen/Dense>

#include "hermsub/laurent.hpp"
#include "hermsub/schemes.hpp"
#include "test_helpers.hpp"

using namespace hermsub;
using namespace hermsub::testing;

namespace {

// symbol of the order-d Taylor operator, built by hand
LaurentMatrix taylor_symbol(int d) {
    LaurentMatrix t(d + 1, d + 1);
    for (int j = 0; j <= d; ++j) {
        t.at(j, j) = LaurentPoly(-1, {1.0, -1.0});
        double f = 1.0;
        for (int k = j + 1; k <= d; ++k) {
            f *= (k - j);
            t.at(j, k) = LaurentPoly::constant(-1.0 / f);
        }
    }
    return t;
}

}  // namespace

TEST_CASE("eval: constant identity symbol") {
    const LaurentMatrix id = LaurentMatrix::identity(3);
    const Eigen::MatrixXcd m = id.eval(0.5);
    CHECK((m - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eval: T_1 symbol at z = 1") {
    const LaurentMatrix t1 = taylor_symbol(1);
    const Eigen::MatrixXcd m = t1.eval(1.0);
    CHECK(approx(m(0, 0), 0.0));
    CHECK(approx(m(0, 1), -1.0));
    CHECK(approx(m(1, 0), 0.0));
    CHECK(approx(m(1, 1), 0.0));
}

TEST_CASE("eval: (z^-1 - 1)^2 at z = 2") {
    const LaurentPoly p = LaurentPoly(-1, {1.0, -1.0});
    const LaurentPoly sq = p * p;
    // by hand: z^-2 - 2 z^-1 + 1, at z = 2: 0.25 - 1 + 1
    CHECK(approx(sq.coeff(-2), 1.0));
    CHECK(approx(sq.coeff(-1), -2.0));
    CHECK(approx(sq.coeff(0), 1.0));
    CHECK(approx(sq.eval(2.0), 0.25));
}

TEST_CASE("eval: z = 0 is a domain error") {
    const LaurentPoly p(0, {1.0, 2.0});
    CHECK_THROWS_AS((void)p.eval(0.0), std::domain_error);
    CHECK_THROWS_AS((void)LaurentMatrix::identity(2).eval(0.0), std::domain_error);
}

TEST_CASE("mul: P * I = P") {
    Rng rng(11);
    const LaurentMatrix p = rng.matrix(3, 3, -2, 2);
    CHECK(matrix_diff(p * LaurentMatrix::identity(3), p) == 0.0);
}

TEST_CASE("mul: difference of squares") {
    const LaurentPoly a(-1, {1.0, -1.0});  // z^-1 - 1
    const LaurentPoly b(-1, {1.0, 1.0});   // z^-1 + 1
    const LaurentPoly prod = a * b;
    CHECK(approx(prod.coeff(-2), 1.0));
    CHECK(approx(prod.coeff(-1), 0.0));
    CHECK(approx(prod.coeff(0), -1.0));
}

TEST_CASE("mul: T_1 * T_1 by hand expansion") {
    const LaurentMatrix t1 = taylor_symbol(1);
    const LaurentMatrix sq = t1 * t1;
    const LaurentPoly diag = LaurentPoly(-1, {1.0, -1.0}) * LaurentPoly(-1, {1.0, -1.0});
    const LaurentPoly off = -2.0 * LaurentPoly(-1, {1.0, -1.0});
    CHECK(poly_diff(sq.at(0, 0), diag) == 0.0);
    CHECK(poly_diff(sq.at(0, 1), off) <= 1e-15);
    CHECK(sq.at(1, 0).is_zero());
    CHECK(poly_diff(sq.at(1, 1), diag) == 0.0);
}

TEST_CASE("mul: dimension mismatch") {
    CHECK_THROWS_AS(LaurentMatrix(2, 3) * LaurentMatrix(2, 2), std::invalid_argument);
}

TEST_CASE("subst_z2 examples") {
    const LaurentMatrix c = LaurentMatrix::identity(2);
    CHECK(matrix_diff(c.subst_z2(), c) == 0.0);

    const LaurentPoly p(-1, {1.0, -1.0});
    const LaurentPoly q = p.subst_z2();
    CHECK(approx(q.coeff(-2), 1.0));
    CHECK(approx(q.coeff(0), -1.0));
    CHECK(q.coeff(-1) == cplx(0.0));

    const LaurentMatrix t1 = taylor_symbol(1).subst_z2();
    CHECK(poly_diff(t1.at(0, 0), LaurentPoly(-2, {1.0, 0.0, -1.0})) == 0.0);
}

TEST_CASE("subst_z2 is evaluation at z^2") {
    Rng rng(17);
    const LaurentMatrix p = rng.matrix(2, 2, -3, 2);
    for (int i = 0; i < 5; ++i) {
        const cplx z = rng.sample_z();
        CHECK((p.subst_z2().eval(z) - p.eval(z * z)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("det: identity") {
    CHECK(poly_diff(LaurentMatrix::identity(3).det(), LaurentPoly::constant(1.0)) == 0.0);
}

TEST_CASE("det: T_2 is the cubed diagonal") {
    const LaurentPoly d = taylor_symbol(2).det();
    const LaurentPoly delta(-1, {1.0, -1.0});
    CHECK(poly_diff(d, delta * delta * delta) <= 1e-15);
}

TEST_CASE("det: example scheme determinant against its closed form") {
    // d = 2, lambda = 1, n = 0
    const LaurentPoly det = closed_form_A(2, Frequency{1.0, false}, 0).symbol().det();
    const double e_half = std::exp(0.5);
    for (const cplx z : {cplx(0.7), cplx(-0.7), cplx(2.0), cplx(0.0, 1.0)}) {
        const cplx cf = (z + 1.0) * (z + 1.0) * std::exp(-1.0) * (e_half + z) * (e_half + z) *
                        (z * e_half + 1.0) * (z * e_half + 1.0) / (64.0 * z * z * z);
        CHECK(std::abs(det.eval(z) - cf) <= 1e-10 * std::abs(cf));
    }
}

TEST_CASE("det: evaluation commutes with pointwise determinant") {
    Rng rng(23);
    const LaurentMatrix p = rng.matrix(4, 4, -1, 1);
    const LaurentPoly det = p.det();
    for (int i = 0; i < 5; ++i) {
        const cplx z = rng.sample_z();
        const cplx direct = p.eval(z).determinant();
        CHECK(std::abs(det.eval(z) - direct) <= 1e-10 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("det: non-square input") {
    CHECK_THROWS_AS((void)LaurentMatrix(2, 3).det(), std::invalid_argument);
}

TEST_CASE("solve_right_factor: C = H gives the identity") {
    const LaurentMatrix h = taylor_symbol(2);
    const DivisionResult r = solve_right_factor(h, h);
    CHECK(matrix_diff(r.quotient, LaurentMatrix::identity(3)) <= 1e-12);
    CHECK(r.residual <= 1e-12);
}

TEST_CASE("solve_right_factor: constructed scalar product") {
    LaurentMatrix c(1, 1), h(1, 1);
    h.at(0, 0) = LaurentPoly(-1, {1.0, -1.0});              // z^-1 - 1
    c.at(0, 0) = LaurentPoly(-1, {1.0, 1.0}) * h.at(0, 0);  // (z^-1 + 1) H
    const DivisionResult r = solve_right_factor(c, h);
    CHECK(poly_diff(r.quotient.at(0, 0), LaurentPoly(-1, {1.0, 1.0})) <= 1e-12);
}

TEST_CASE("solve_right_factor: recovers a seeded random factor") {
    Rng rng(41);
    const LaurentMatrix h = taylor_symbol(3);  // det not identically zero
    const LaurentMatrix b0 = rng.matrix(4, 4, -2, 1);
    const DivisionResult r = solve_right_factor(b0 * h, h);
    CHECK(matrix_diff(r.quotient, b0) <= 1e-9);
}

TEST_CASE("solve_right_factor: reports non-divisibility with residual") {
    LaurentMatrix c(1, 1), h(1, 1);
    h.at(0, 0) = LaurentPoly(-1, {1.0, -1.0});
    c.at(0, 0) = LaurentPoly(0, {1.0});  // 1 is not a multiple of z^-1 - 1
    double resid = -1.0;
    try {
        (void)solve_right_factor(c, h);
    } catch (const NotDivisibleError& e) {
        resid = e.residual();
    }
    CHECK(resid > 1e-6);
}

TEST_CASE("property: distributivity under evaluation") {
    Rng rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        const LaurentMatrix p = rng.matrix(3, 3, -2, 1);
        const LaurentMatrix q = rng.matrix(3, 3, -1, 2);
        const LaurentMatrix r = rng.matrix(3, 2, -2, 2);
        const LaurentMatrix lhs = (p + q) * r;
        const LaurentMatrix rhs = p * r + q * r;
        for (int i = 0; i < 10; ++i) {
            const cplx z = rng.sample_z();
            const Eigen::MatrixXcd le = lhs.eval(z), re = rhs.eval(z);
            CHECK((le - re).cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + re.cwiseAbs().maxCoeff()));
        }
    }
}

TEST_CASE("property: subst_z2 commutes with multiplication") {
    Rng rng(13);
    const LaurentMatrix p = rng.matrix(2, 3, -2, 2);
    const LaurentMatrix q = rng.matrix(3, 2, -1, 1);
    CHECK(matrix_diff((p * q).subst_z2(), p.subst_z2() * q.subst_z2()) <= 1e-13);
}

TEST_CASE("property: division round-trip for random factors") {
    Rng rng(101);
    for (int trial = 0; trial < 6; ++trial) {
        LaurentMatrix h = rng.matrix(3, 3, -1, 1);
        if (h.det().is_zero()) continue;
        const LaurentMatrix b = rng.matrix(3, 3, -1, 2);
        const DivisionResult r = solve_right_factor(b * h, h);
        CHECK(matrix_diff(r.quotient, b) <= 1e-8);
    }
}

TEST_CASE("property: normalization is idempotent") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        LaurentPoly p = rng.poly(-3, 3);
        p += LaurentPoly(-5, {cplx(1e-20), cplx(0.0), cplx(1e-16)});  // sub-threshold noise
        std::vector<cplx> coeffs;
        for (long e = p.lo(); e <= p.hi(); ++e) coeffs.push_back(p.coeff(e));
        const LaurentPoly renorm(p.lo(), coeffs);
        CHECK(renorm.lo() == p.lo());
        CHECK(poly_diff(renorm, p) == 0.0);
    }
}

TEST_CASE("default support covers exact quotients") {
    Rng rng(55);
    const LaurentMatrix h = rng.matrix(2, 2, -1, 0);
    const LaurentMatrix b = rng.matrix(2, 2, 0, 3);
    const ExponentRange s = default_division_support(b * h, h);
    CHECK(s.lo <= 0);
    CHECK(s.hi >= 3);
}
