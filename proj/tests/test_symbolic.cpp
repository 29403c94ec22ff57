#include <cmath>
#include <complex>
#include <random>

#include "dcm/laurent.hpp"
#include "doctest.h"

using namespace dcm;

namespace {

QPoly random_qpoly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> degd(0, max_deg);
    std::vector<mpq_class> c(degd(rng) + 1);
    for (auto& x : c) {
        x = coeff(rng);
        if (coeff(rng) > 3) x /= 2;
    }
    return QPoly(std::move(c));
}

LaurentRat random_rat(std::mt19937_64& rng) {
    QPoly num = random_qpoly(rng, 4);
    QPoly den = random_qpoly(rng, 3);
    while (den.is_zero()) den = random_qpoly(rng, 3);
    std::uniform_int_distribution<int> sh(-3, 3);
    return LaurentRat::ratio(num, den, sh(rng));
}

}  // namespace

TEST_SUITE_BEGIN("symbolic");

TEST_CASE("rational polynomial division") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
        QPoly a = random_qpoly(rng, 6);
        QPoly b = random_qpoly(rng, 4);
        if (b.is_zero()) continue;
        auto [q, r] = a.divrem(b);
        CHECK(q * b + r == a);
        CHECK(r.deg() < b.deg());
        CHECK((a * b).divrem(b).first == a);
        CHECK((a * b).divrem(b).second.is_zero());
    }
}

TEST_CASE("normal form is representation independent") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        QPoly num = random_qpoly(rng, 4);
        QPoly den = random_qpoly(rng, 3);
        QPoly m = random_qpoly(rng, 2);
        if (den.is_zero() || m.is_zero()) continue;
        LaurentRat a = LaurentRat::ratio(num, den, -2);
        LaurentRat b = LaurentRat::ratio(num * m, den * m, -2);
        CHECK(a == b);
        if (!a.is_zero()) {
            CHECK(a.num().coeff(0) != 0);
            CHECK(a.den().coeff(0) != 0);
            CHECK(a.den().lead() == 1);
            CHECK(gcd(a.num(), a.den()).deg() == 0);
        }
    }
}

TEST_CASE("field axioms on random values") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        LaurentRat a = random_rat(rng);
        LaurentRat b = random_rat(rng);
        LaurentRat c = random_rat(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == LaurentRat());
        if (!a.is_zero()) {
            CHECK(a / a == LaurentRat(1));
            CHECK(a * a.inverse() == LaurentRat(1));
            CHECK(a.pow(-2) == a.inverse() * a.inverse());
        }
        CHECK(a.pow(3) == a * a * a);
    }
    CHECK(LaurentRat::u_pow(-2) * LaurentRat::u_pow(3) == LaurentRat::u_pow(1));
    CHECK_THROWS_AS(LaurentRat().inverse(), std::domain_error);
}

TEST_CASE("arithmetic commutes with exact rational evaluation") {
    std::mt19937_64 rng(29);
    mpq_class u0(2, 3);
    for (int i = 0; i < 100; ++i) {
        LaurentRat a = random_rat(rng);
        LaurentRat b = random_rat(rng);
        mpq_class va, vb;
        try {
            va = a.eval_at_u(u0);
            vb = b.eval_at_u(u0);
        } catch (const PoleError&) {
            continue;
        }
        CHECK((a + b).eval_at_u(u0) == va + vb);
        CHECK((a * b).eval_at_u(u0) == va * vb);
        CHECK((a - b).eval_at_u(u0) == va - vb);
    }
}

TEST_CASE("zeta values and their definitional inverses") {
    LaurentRat zs = zeta_A(3, ZetaSlot::s);
    LaurentRat z2s = zeta_A(3, ZetaSlot::two_s);
    LaurentRat z2s1 = zeta_A(3, ZetaSlot::two_s_minus_one);

    QPoly one_minus_qu(std::vector<mpq_class>{1, -3});
    QPoly one_minus_qu2(std::vector<mpq_class>{1, 0, -3});
    QPoly one_minus_q2u2(std::vector<mpq_class>{1, 0, -9});
    CHECK(zs * LaurentRat::from_poly(one_minus_qu) == LaurentRat(1));
    CHECK(z2s * LaurentRat::from_poly(one_minus_qu2) == LaurentRat(1));
    CHECK(z2s1 * LaurentRat::from_poly(one_minus_q2u2) == LaurentRat(1));

    CHECK(zs.eval_at_u(mpq_class(0)) == 1);
    CHECK(zs.eval_at_u(mpq_class(1, 9)) == mpq_class(3, 2));
    CHECK(std::abs(zs.eval_at_s({2.0, 0.0}, 3) - std::complex<double>(1.5, 0)) < 1e-12);
}

TEST_CASE("zeta matches monic counting partial sums with the geometric tail") {
    // sum over monic f of |f|^{-s} at s = 2, q = 3: partial sums converge to
    // 3/2 and the tail is bounded by q^{(1-s)(N+1)} / (1 - q^{1-s})
    mpq_class u(1, 9);
    mpq_class target = zeta_A(3, ZetaSlot::s).eval_at_u(u);
    mpq_class partial = 0;
    mpq_class term = 1;
    for (int n = 0; n <= 10; ++n) {
        partial += term;  // 3^n monic polynomials of degree n, each weight u^n
        term *= 3 * u;
        mpq_class tail = abs(target - partial);
        mpq_class bound = mpq_class(1) / (1 - mpq_class(1, 3));
        for (int i = 0; i <= n; ++i) bound /= 3;
        CHECK(tail <= bound);
    }
    CHECK(partial + term / (1 - 3 * u) == target);
}

TEST_CASE("pole and overflow are reported distinctly") {
    LaurentRat z2s = zeta_A(3, ZetaSlot::two_s);
    CHECK_THROWS_AS(z2s.eval_at_s({0.5, 0.0}, 3), PoleError);
    CHECK_THROWS_AS(z2s.eval_at_u(std::complex<double>(1.0 / std::sqrt(3.0), 0)), PoleError);
    double ok = std::abs(z2s.eval_at_u(std::complex<double>(0.5, 0)));
    CHECK(ok > 0);

    LaurentRat big = LaurentRat::u_pow(-4);
    CHECK_THROWS_AS(big.eval_at_u(std::complex<double>(1e-100, 0)), std::overflow_error);
    CHECK_THROWS_AS(big.eval_at_u(std::complex<double>(0, 0)), PoleError);
    CHECK_THROWS_AS(zeta_A(3).eval_at_u(mpq_class(1, 3)), PoleError);
}

TEST_CASE("numeric evaluation is multiplicative") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> re(0.6, 2.0), im(-3.0, 3.0);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        LaurentRat a = random_rat(rng);
        LaurentRat b = random_rat(rng);
        LaurentRat ab = a * b;
        for (int j = 0; j < 10; ++j) {
            std::complex<double> s(re(rng), im(rng));
            std::complex<double> va, vb, vab;
            try {
                va = a.eval_at_s(s, 3);
                vb = b.eval_at_s(s, 3);
                vab = ab.eval_at_s(s, 3);
            } catch (const PoleError&) {
                continue;
            } catch (const std::overflow_error&) {
                continue;
            }
            double denom = std::max(1.0, std::abs(va * vb));
            CHECK(std::abs(vab - va * vb) / denom < 1e-9);
            ++checked;
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("critical line parametrization") {
    for (std::uint32_t q : {3u, 5u}) {
        for (double theta : {0.0, 0.3, 1.1, 3.141592653589793}) {
            SpectralParam sp{theta};
            std::complex<double> u = sp.u(q);
            CHECK(std::abs(std::abs(u) - 1.0 / std::sqrt(double(q))) < 1e-14);
            // u^{-1} + q u = 2 sqrt(q) cos(theta) on the critical line
            std::complex<double> lam = 1.0 / u + double(q) * u;
            CHECK(std::abs(lam - 2.0 * std::sqrt(double(q)) * std::cos(theta)) < 1e-12);
            LaurentRat lam_sym = LaurentRat::u_pow(-1) + LaurentRat::constant(q) * LaurentRat::u_pow(1);
            CHECK(std::abs(lam_sym.eval_at_s(sp.s(q), q) - lam) < 1e-12);
        }
    }
}

TEST_CASE("series expansion around zero") {
    // geometric: 1/(1-3u)
    std::vector<mpq_class> g = series_coefficients(zeta_A(3), 5);
    for (int k = 0; k <= 5; ++k) CHECK(g[k] == mpq_class(static_cast<long>(std::pow(3, k))));

    // a shifted ratio starts with zeros
    LaurentRat f = LaurentRat::ratio(QPoly({1, 1}), QPoly({1, -2}), 2);
    std::vector<mpq_class> c = series_coefficients(f, 4);
    CHECK(c[0] == 0);
    CHECK(c[1] == 0);
    CHECK(c[2] == 1);
    CHECK(c[3] == 3);  // 1*2 + 1
    CHECK(c[4] == 6);  // 3*2

    CHECK(series_coefficients(LaurentRat(), 3) == std::vector<mpq_class>(4, 0));
    CHECK_THROWS_AS(series_coefficients(LaurentRat::u_pow(-1), 2), std::invalid_argument);
    CHECK_THROWS_AS(series_coefficients(zeta_A(3), -1), std::invalid_argument);
}

TEST_CASE("canonical text form") {
    CHECK(LaurentRat().to_string() == "u^0 * (0)/(1)");
    CHECK(LaurentRat(1).to_string() == "u^0 * (1)/(1)");
    CHECK(zeta_A(3).to_string() == "u^0 * (1)/(1 - 3*u)");
    CHECK(zeta_A(3, ZetaSlot::two_s_minus_one).to_string() == "u^0 * (1)/(1 - 9*u^2)");
    CHECK(LaurentRat::monomial(mpq_class(1, 2), -1).to_string() == "u^-1 * (1)/(2)");
    LaurentRat e0 = LaurentRat::ratio(QPoly(std::vector<mpq_class>{4, 0, -12}),
                                      QPoly(std::vector<mpq_class>{1, 0, -9}), 0);
    CHECK(e0.to_string() == "u^0 * (4 - 12*u^2)/(1 - 9*u^2)");
    LaurentRat neg = LaurentRat::from_poly(QPoly(std::vector<mpq_class>{-1, 1}));
    CHECK(neg.to_string() == "u^0 * (-1 + u)/(1)");
}

TEST_SUITE_END();
