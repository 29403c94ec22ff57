#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "dcm/factor.hpp"
#include "dcm/fq.hpp"
#include "dcm/poly.hpp"
#include "doctest.h"

using namespace dcm;

namespace {

// Trial division against every lower-degree monic polynomial.
bool brute_irreducible(const Poly& f) {
    if (f.deg() < 1) return false;
    for (int d = 1; 2 * d <= f.deg(); ++d)
        for (const Poly& g : monic_polys(f.field(), d))
            if (g.divides(f)) return false;
    return true;
}

// Smallest-divisor extraction; emits factors in canonical order.
std::vector<std::pair<Poly, int>> brute_factor(Poly f) {
    std::vector<std::pair<Poly, int>> out;
    f = f.monic();
    for (int d = 1; d <= f.deg(); ++d) {
        for (const Poly& g : monic_polys(f.field(), d)) {
            if (f.deg() < d) break;
            int e = 0;
            while (g.divides(f)) {
                f = f / g;
                ++e;
            }
            if (e) out.emplace_back(g, e);
        }
    }
    return out;
}

// Exhaustive residue scan for square roots modulo m.
std::vector<Poly> brute_sqrt_mod(const Poly& d, const Poly& m) {
    Poly mm = m.monic();
    if (mm.deg() == 0) return {Poly::zero(d.field())};
    std::vector<Poly> out;
    for (const Poly& b : polys_up_to(d.field(), mm.deg() - 1))
        if (((b * b - d) % mm).is_zero()) out.push_back(b);
    return out;
}

// Euler criterion for a monic irreducible modulus.
int euler_symbol(const Poly& d, const Poly& p) {
    const Fq& fq = d.field();
    Poly r = d % p;
    if (r.is_zero()) return 0;
    std::uint64_t size = 1;
    for (int i = 0; i < p.deg(); ++i) size *= fq.q();
    Poly e = powmod(r, (size - 1) / 2, p);
    if (e == Poly::one(fq)) return 1;
    REQUIRE(e == Poly::constant(fq, fq.neg(1)));
    return -1;
}

Poly random_poly(const Fq& fq, int max_deg, std::mt19937_64& rng) {
    std::vector<Fq::Elem> c(max_deg + 1);
    for (auto& x : c) x = static_cast<Fq::Elem>(rng() % fq.q());
    return Poly(fq, std::move(c));
}

}  // namespace

TEST_SUITE_BEGIN("algebra");

TEST_CASE("prime field tables match integer arithmetic") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const Fq& fq = Fq::get(q);
        CHECK(fq.p() == q);
        CHECK(fq.m() == 1);
        for (Fq::Elem a = 0; a < q; ++a) {
            for (Fq::Elem b = 0; b < q; ++b) {
                CHECK(fq.add(a, b) == (a + b) % q);
                CHECK(fq.mul(a, b) == (a * b) % q);
                CHECK(fq.sub(a, b) == (a + q - b) % q);
            }
            CHECK(fq.add(a, fq.neg(a)) == 0);
            if (a) {
                CHECK(fq.mul(a, fq.inv(a)) == 1);
                CHECK(fq.pow(a, q - 1) == 1);
            }
        }
    }
}

TEST_CASE("nine element field satisfies the field axioms") {
    const Fq& fq = Fq::get(9);
    CHECK(fq.p() == 3);
    CHECK(fq.m() == 2);
    CHECK(fq.modulus() == std::vector<std::uint32_t>{1, 0, 1});
    for (Fq::Elem a = 0; a < 9; ++a)
        for (Fq::Elem b = 0; b < 9; ++b) {
            CHECK(fq.add(a, b) == fq.add(b, a));
            CHECK(fq.mul(a, b) == fq.mul(b, a));
            for (Fq::Elem c = 0; c < 9; ++c) {
                CHECK(fq.mul(a, fq.mul(b, c)) == fq.mul(fq.mul(a, b), c));
                CHECK(fq.mul(a, fq.add(b, c)) == fq.add(fq.mul(a, b), fq.mul(a, c)));
            }
        }
    for (Fq::Elem a = 0; a < 9; ++a) {
        CHECK(fq.pow(a, 9) == a);
        for (Fq::Elem b = 0; b < 9; ++b)
            CHECK(fq.pow(fq.add(a, b), 3) == fq.add(fq.pow(a, 3), fq.pow(b, 3)));
    }
    Fq::Elem g = fq.generator();
    for (int k = 1; k < 8; ++k) CHECK(fq.pow(g, k) != 1);
    CHECK(fq.pow(g, 8) == 1);
}

TEST_CASE("legendre symbol and square roots against the full square table") {
    for (std::uint32_t q : {3u, 5u, 7u, 9u}) {
        const Fq& fq = Fq::get(q);
        std::set<Fq::Elem> squares;
        for (Fq::Elem x = 0; x < q; ++x) squares.insert(fq.mul(x, x));
        for (Fq::Elem a = 0; a < q; ++a) {
            bool sq = squares.count(a) > 0;
            CHECK(fq.is_square(a) == sq);
            if (a == 0)
                CHECK(fq.legendre(a) == 0);
            else
                CHECK(fq.legendre(a) == (sq ? 1 : -1));
            auto r = fq.sqrt(a);
            if (sq) {
                REQUIRE(r.has_value());
                CHECK(fq.mul(*r, *r) == a);
            } else {
                CHECK(!r.has_value());
            }
        }
        Fq::Elem n = fq.least_nonsquare();
        CHECK(!fq.is_square(n));
        for (Fq::Elem a = 0; a < n; ++a) CHECK(fq.is_square(a));
    }
}

TEST_CASE("digit packing and prime subfield embedding") {
    const Fq& f9 = Fq::get(9);
    for (Fq::Elem a = 0; a < 9; ++a) {
        auto d = f9.digits(a);
        CHECK(d.size() == 2);
        CHECK(d[0] < 3);
        CHECK(d[1] < 3);
        CHECK(f9.from_digits(d) == a);
    }
    const Fq& f3 = Fq::get(3);
    CHECK(f3.from_int(5) == 2);
    CHECK(f3.from_int(-1) == 2);
    CHECK(f9.from_int(3) == 0);
    CHECK(f9.from_int(-2) == 1);
    CHECK(&Fq::get(9) == &Fq::get(9));
    CHECK_THROWS_AS(Fq::get(4), std::invalid_argument);
    CHECK_THROWS_AS(Fq::get(12), std::invalid_argument);
}

TEST_CASE("polynomial text form round trips") {
    const Fq& fq = Fq::get(3);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        Poly f = random_poly(fq, 6, rng);
        CHECK(Poly::parse(f.to_string()) == f);
    }
    CHECK(Poly::zero(fq).to_string() == "fq:3:[0]");
    CHECK(Poly::parse("fq:3:[0]").is_zero());
    CHECK_THROWS_AS(Poly::parse("fq:3:[5]"), std::invalid_argument);
    CHECK_THROWS_AS(Poly::parse("fq:3:["), std::invalid_argument);
    CHECK_THROWS_AS(Poly::parse("nope"), std::invalid_argument);
    CHECK_THROWS_AS(Poly::parse("fq:3:[1,,2]"), std::invalid_argument);
    CHECK_THROWS_AS(Poly::parse("fq:4:[1]"), std::invalid_argument);
}

TEST_CASE("division leaves a small remainder and reassembles") {
    for (std::uint32_t q : {3u, 9u}) {
        const Fq& fq = Fq::get(q);
        std::mt19937_64 rng(q);
        for (int i = 0; i < 200; ++i) {
            Poly a = random_poly(fq, 8, rng);
            Poly b = random_poly(fq, 5, rng);
            if (b.is_zero()) continue;
            auto [quo, rem] = a.divrem(b);
            CHECK(quo * b + rem == a);
            CHECK(rem.deg() < b.deg());
        }
    }
}

TEST_CASE("gcd certificates") {
    const Fq& fq = Fq::get(5);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 150; ++i) {
        Poly a = random_poly(fq, 6, rng);
        Poly b = random_poly(fq, 6, rng);
        Poly g = gcd(a, b);
        if (a.is_zero() && b.is_zero()) {
            CHECK(g.is_zero());
            continue;
        }
        CHECK(g.is_monic());
        CHECK(g.divides(a));
        CHECK(g.divides(b));
        ExtGcd e = ext_gcd(a, b);
        CHECK(e.g == g);
        CHECK(e.u * a + e.v * b == g);
    }
}

TEST_CASE("canonical enumeration order") {
    const Fq& fq = Fq::get(3);
    std::vector<Poly> all = polys_up_to(fq, 1);
    REQUIRE(all.size() == 9);
    const char* expected[] = {
        "fq:3:[0]",   "fq:3:[1]",   "fq:3:[2]",
        "fq:3:[0,1]", "fq:3:[0,2]", "fq:3:[1,1]",
        "fq:3:[1,2]", "fq:3:[2,1]", "fq:3:[2,2]",
    };
    for (size_t i = 0; i < all.size(); ++i) CHECK(all[i].to_string() == expected[i]);
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(monic_polys(fq, 4).size() == 81);
    std::vector<Poly> cubics = monic_polys(fq, 3);
    CHECK(std::is_sorted(cubics.begin(), cubics.end()));
}

TEST_CASE("factorization agrees with trial division over F3") {
    const Fq& fq = Fq::get(3);
    for (int d = 1; d <= 5; ++d) {
        for (const Poly& f : monic_polys(fq, d)) {
            Factorization fac = factor(f, 7);
            CHECK(fac.unit == 1);
            CHECK(fac.factors == brute_factor(f));
            Poly doubled = f.scaled(2);
            Factorization fac2 = factor(doubled, 7);
            CHECK(fac2.unit == 2);
            CHECK(fac2.factors == fac.factors);
        }
    }
}

TEST_CASE("factorization reassembles for larger fields") {
    for (std::uint32_t q : {5u, 9u}) {
        const Fq& fq = Fq::get(q);
        std::mt19937_64 rng(q + 1);
        for (int i = 0; i < 40; ++i) {
            Poly f = random_poly(fq, 8, rng);
            if (f.is_zero()) continue;
            Factorization fac = factor(f, 3);
            CHECK(fac.value(fq) == f);
            for (const auto& [p, e] : fac.factors) {
                CHECK(p.is_monic());
                CHECK(e >= 1);
                CHECK(is_irreducible(p));
            }
        }
    }
}

TEST_CASE("factorization is seed independent") {
    const Fq& fq = Fq::get(5);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 30; ++i) {
        Poly f = random_poly(fq, 7, rng);
        if (f.is_zero()) continue;
        Factorization a = factor(f, 1);
        Factorization b = factor(f, 2);
        Factorization c = factor(f, 1);
        CHECK(a.factors == b.factors);
        CHECK(a.factors == c.factors);
        CHECK(a.unit == b.unit);
    }
}

TEST_CASE("irreducibility test and irreducible counts") {
    const Fq& f3 = Fq::get(3);
    int counts[6] = {0, 0, 0, 0, 0, 0};
    for (int d = 1; d <= 5; ++d)
        for (const Poly& f : monic_polys(f3, d)) {
            bool irr = is_irreducible(f);
            CHECK(irr == brute_irreducible(f));
            if (irr) ++counts[d];
        }
    CHECK(counts[1] == 3);
    CHECK(counts[2] == 3);
    CHECK(counts[3] == 8);
    CHECK(counts[4] == 18);
    CHECK(counts[5] == 48);

    const Fq& f9 = Fq::get(9);
    int c1 = 0, c2 = 0;
    for (const Poly& f : monic_polys(f9, 1))
        if (is_irreducible(f)) ++c1;
    for (const Poly& f : monic_polys(f9, 2)) {
        bool irr = is_irreducible(f);
        CHECK(irr == brute_irreducible(f));
        if (irr) ++c2;
    }
    CHECK(c1 == 9);
    CHECK(c2 == 36);
}

TEST_CASE("perfect square detection") {
    const Fq& fq = Fq::get(3);
    std::set<Poly> squares;
    for (const Poly& g : polys_up_to(fq, 2)) squares.insert(g * g);
    for (const Poly& f : polys_up_to(fq, 4))
        CHECK(is_perfect_square(f) == (squares.count(f) > 0));

    const Fq& f5 = Fq::get(5);
    Poly h = Poly::t(f5) + Poly::one(f5);
    CHECK(is_perfect_square((h * h).scaled(4)));
    CHECK(!is_perfect_square((h * h).scaled(2)));
}

TEST_CASE("square roots modulo every small modulus") {
    const Fq& fq = Fq::get(3);
    std::vector<Poly> ds = polys_up_to(fq, 2);
    for (int md = 1; md <= 3; ++md)
        for (const Poly& m : monic_polys(fq, md))
            for (const Poly& d : ds)
                CHECK(sqrt_mod(d, m, 5) == brute_sqrt_mod(d, m));
}

TEST_CASE("square roots modulo prime powers") {
    const Fq& fq = Fq::get(3);
    Poly t = Poly::t(fq);
    Poly u = t * t + Poly::one(fq);
    std::vector<Poly> moduli = {
        t * t * t * t,
        u * u,
        t * t * t * (t + Poly::one(fq)),
        t * t * (t + Poly::one(fq)) * (t + Poly::one(fq)),
    };
    for (const Poly& m : moduli)
        for (const Poly& d : polys_up_to(fq, 3))
            CHECK(sqrt_mod(d, m, 5) == brute_sqrt_mod(d, m));
}

TEST_CASE("square roots are seed independent and match the pinned pair") {
    const Fq& fq = Fq::get(3);
    Poly t = Poly::t(fq);
    Poly m = t * t + Poly::one(fq);
    auto roots = sqrt_mod(t, m, 1);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].to_string() == "fq:3:[1,2]");
    CHECK(roots[1].to_string() == "fq:3:[2,1]");
    CHECK(sqrt_mod(t, m, 99) == roots);

    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
        Poly d = random_poly(fq, 3, rng);
        Poly mm = random_poly(fq, 3, rng);
        if (mm.is_zero()) continue;
        CHECK(sqrt_mod(d, mm.monic(), 17) == sqrt_mod(d, mm.monic(), 18));
    }
}

TEST_CASE("residue symbol matches the euler criterion on irreducibles") {
    for (std::uint32_t q : {3u, 5u}) {
        const Fq& fq = Fq::get(q);
        std::vector<Poly> ds = polys_up_to(fq, 2);
        for (int pd = 1; pd <= 3; ++pd)
            for (const Poly& p : monic_polys(fq, pd)) {
                if (!is_irreducible(p)) continue;
                for (const Poly& d : ds) CHECK(residue_symbol(d, p) == euler_symbol(d, p));
            }
    }
}

TEST_CASE("residue symbol is multiplicative in both arguments") {
    const Fq& fq = Fq::get(3);
    std::vector<Poly> ds = polys_up_to(fq, 2);
    for (int fd = 2; fd <= 4; ++fd)
        for (const Poly& f : monic_polys(fq, fd)) {
            auto fac = brute_factor(f);
            for (const Poly& d : ds) {
                int expected = 1;
                for (const auto& [p, e] : fac)
                    for (int i = 0; i < e; ++i) expected *= euler_symbol(d, p);
                CHECK(residue_symbol(d, f) == expected);
            }
        }

    const Fq& f5 = Fq::get(5);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        Poly d1 = random_poly(f5, 3, rng);
        Poly d2 = random_poly(f5, 3, rng);
        Poly f = random_poly(f5, 4, rng).monic();
        if (f.deg() < 1) continue;
        CHECK(residue_symbol(d1 * d2, f) == residue_symbol(d1, f) * residue_symbol(d2, f));
    }
}

TEST_CASE("residue symbol rejects bad moduli") {
    const Fq& fq = Fq::get(3);
    Poly t = Poly::t(fq);
    CHECK_THROWS_AS(residue_symbol(t, t.scaled(2)), std::invalid_argument);
    CHECK_THROWS_AS(residue_symbol(t, Poly::one(fq)), std::invalid_argument);
}

TEST_SUITE_END();
