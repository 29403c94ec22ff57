#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dcm/poly.hpp"
#include "dcm/tree.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace dcm;

namespace {

const double PI = std::acos(-1.0);

mpz_class zpow(int q, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, e);
    return r;
}

// tail of the measure beyond v_N, summed in closed form
mpq_class mu_tail(int q, int N) {
    mpq_class t(q + 1, 2 * zpow(q, N + 1));
    t.canonicalize();
    return t;
}

bool close(Cplx a, Cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE_BEGIN("tree");

TEST_CASE("measure values and exact partial sums") {
    CHECK(mu(3, 0) == mpq_class(1, 3));
    CHECK(mu(3, 1) == mpq_class(4, 9));
    CHECK(mu(3, 2) == mpq_class(4, 27));
    CHECK(mu(5, 0) == mpq_class(2, 5));
    CHECK(mu(9, 1) == mpq_class(40, 81));

    for (int q : {3, 5, 9}) {
        mpq_class acc = 0, alt = 0;
        for (int n = 0; n <= 40; ++n) {
            acc += mu(q, n);
            alt += (n % 2 == 0 ? 1 : -1) * mu(q, n);
            // geometric closed forms for both partial sums
            CHECK(acc == 1 - mu_tail(q, n));
            mpq_class alt_expected(q - 1, 2 * zpow(q, n + 1));
            alt_expected.canonicalize();
            CHECK(alt == (n % 2 == 0 ? alt_expected : -alt_expected));
        }
    }
    CHECK_THROWS_AS(mu(3, -1), std::invalid_argument);
    CHECK_THROWS_AS(mu(1, 0), std::invalid_argument);
}

TEST_CASE("adjacency on deltas and truncated eigenfunctions") {
    RayFunction d0 = RayFunction::delta(0);
    RayFunction td0 = adjacency(d0, 3);
    RayFunction three_d1;
    three_d1.values[1] = 3;
    CHECK(td0 == three_d1);

    // truncated constant and alternating functions are eigenfunctions away
    // from the truncation edge
    for (int q : {3, 5}) {
        RayFunction cte, alt;
        for (int n = 0; n <= 12; ++n) {
            cte.values[n] = 1;
            alt.values[n] = n % 2 == 0 ? 1 : -1;
        }
        RayFunction tc = adjacency(cte, q);
        RayFunction ta = adjacency(alt, q);
        for (int n = 0; n <= 11; ++n) {
            CHECK(tc.at(n) == mpq_class(q + 1));
            CHECK(ta.at(n) == mpq_class(-(q + 1)) * alt.at(n));
        }
    }
}

TEST_CASE("adjacency is self adjoint for the measure") {
    std::mt19937_64 rng(5);
    for (int q : {3, 5}) {
        for (int trial = 0; trial < 12; ++trial) {
            RayFunction f, g;
            for (int k = 0; k < 10; ++k) {
                f.values[static_cast<int>(rng() % 31)] = static_cast<long>(rng() % 19) - 9;
                g.values[static_cast<int>(rng() % 31)] = static_cast<long>(rng() % 19) - 9;
            }
            CHECK(inner_product(adjacency(f, q), g, q) == inner_product(f, adjacency(g, q), q));
        }
    }
}

TEST_CASE("eisenstein closed form and symbolic eigen relation") {
    // E(v_0) = 4(1-3u^2)/(1-9u^2) for q = 3
    LaurentRat e0 = eisenstein_value(3, 0);
    CHECK(e0 == LaurentRat::ratio(QPoly({4, 0, -12}), QPoly({1, 0, -9}), 0));
    CHECK(e0.eval_at_u(mpq_class(0)) == 4);

    for (int q : {3, 5}) {
        std::vector<LaurentRat> e = eisenstein_values(q, 21);
        LaurentRat lambda = LaurentRat::u_pow(-1) + LaurentRat::monomial(q, 1);
        CHECK(e[1].scaled(q + 1) == lambda * e[0]);
        for (int n = 1; n <= 20; ++n)
            CHECK(e[n - 1].scaled(q) + e[n + 1] == lambda * e[n]);
    }
}

TEST_CASE("adjacency reproduces the eigenvalue at a rational point") {
    // u = 1/7: exact rational Eisenstein values fed through adjacency()
    for (int q : {3, 5}) {
        std::vector<LaurentRat> e = eisenstein_values(q, 21);
        RayFunction ev;
        for (int n = 0; n <= 21; ++n) ev.values[n] = e[n].eval_at_u(mpq_class(1, 7));
        RayFunction tev = adjacency(ev, q);
        mpq_class lambda = mpq_class(7) + mpq_class(q, 7);
        for (int n = 0; n <= 20; ++n) CHECK(tev.at(n) == lambda * ev.at(n));
    }
}

TEST_CASE("numeric eisenstein values match the symbolic ones") {
    std::vector<LaurentRat> e3 = eisenstein_values(3, 12);
    for (Cplx u : {Cplx(0.21, 0.13), Cplx(-0.4, 0.05), critical_u(3, 1.0)}) {
        std::vector<Cplx> ev = eisenstein_values(3, 12, u);
        for (int n = 0; n <= 12; ++n)
            CHECK(close(ev[n], e3[n].eval_at_u(u), 1e-9 * (1.0 + std::abs(ev[n]))));
    }
    CHECK_THROWS_AS(eisenstein_value(3, 0, Cplx(1.0 / 3.0, 0.0)), PoleError);
    CHECK_THROWS_AS(eisenstein_value(3, 0, Cplx(-1.0 / 3.0, 0.0)), PoleError);
    CHECK_THROWS_AS(eisenstein_value(3, 2, Cplx(0.0, 0.0)), PoleError);
}

TEST_CASE("lattice partial sums approach the closed form") {
    const Fq& fq = Fq::get(3);
    // literal lattice oracle: every pair (c, d) with both degrees <= N
    auto literal = [&](int N, double s) {
        std::vector<Poly> ps = polys_up_to(fq, N);
        double acc = 0;
        for (const Poly& c : ps)
            for (const Poly& d : ps) {
                if (c.is_zero() && d.is_zero()) continue;
                int m = std::max(c.deg(), d.deg());
                double maxnorm = std::pow(3.0, m);  // deg 0 gives norm 1
                acc += std::pow(maxnorm, -2.0 * s);
            }
        return acc;
    };
    CHECK(eisenstein_star_partial(3, 0, Cplx(2.0, 0.0)).real() == doctest::Approx(8.0));
    for (int N : {0, 1, 2, 3}) {
        Cplx strat = eisenstein_star_partial(3, N, Cplx(2.0, 0.0));
        CHECK(close(strat, Cplx(literal(N, 2.0), 0.0), 1e-9 * std::abs(strat)));
    }
    // stratum pair counts (q^2-1) q^{2n}
    std::vector<Poly> p1 = polys_up_to(fq, 1);
    std::vector<Poly> p0 = polys_up_to(fq, 0);
    CHECK(p1.size() * p1.size() - p0.size() * p0.size() == 8 * 9);

    Cplx approx = eisenstein_v0_partial(3, 8, Cplx(2.0, 0.0));
    Cplx exact = eisenstein_value(3, 0, Cplx(1.0 / 9.0, 0.0));
    CHECK(close(approx, exact, 1e-6));
    CHECK_THROWS_AS(eisenstein_v0_partial(3, 8, Cplx(1.0, 0.0)), std::domain_error);
    CHECK_THROWS_AS(eisenstein_star_partial(3, 8, Cplx(0.5, 2.0)), std::domain_error);
}

TEST_CASE("f_hat values and proportionality to the eisenstein series") {
    const Cplx i(0.0, 1.0);
    CHECK(close(f_hat(3, 0, 0.0), Cplx(0.0, 0.0), 1e-15));
    for (double theta : {0.3, 1.2}) {
        CHECK(close(f_hat(3, 0, theta), 4.0 * i * std::sin(theta), 1e-12));
        CHECK(close(f_hat(3, 1, theta), std::sqrt(3.0) * i * std::sin(2.0 * theta), 1e-12));
    }
    for (int q : {3, 5}) {
        for (double theta : {PI / 3.0, 1.1}) {
            Cplx w = std::exp(-2.0 * i * theta);
            Cplx factor = i * std::sin(theta) * (1.0 - static_cast<double>(q) * w) / (1.0 - w);
            std::vector<Cplx> e = eisenstein_values(q, 10, critical_u(q, theta));
            for (int n = 0; n <= 10; ++n)
                CHECK(close(f_hat(q, n, theta), factor * e[n],
                            1e-9 * (1.0 + std::abs(e[n]))));
        }
    }
}

TEST_CASE("truncated eisenstein means vanish") {
    CHECK(std::abs(eisenstein_mean_truncated(3, PI / 2.0, 60)) <= 1e-10);
    // single-term partial is mu(v_0) E(v_0)
    for (double theta : {0.7, PI / 2.0}) {
        Cplx expect = mu(3, 0).get_d() * eisenstein_value(3, 0, critical_u(3, theta));
        CHECK(close(eisenstein_mean_truncated(3, theta, 0), expect, 1e-12));
    }
    // decay of the envelope over a theta grid: geometric bound down to the
    // double-precision floor of the summation
    const double floor = 1e-13;
    for (int q : {3, 5}) {
        double prev = 1e300;
        for (int N : {20, 30, 40, 50, 60}) {
            double worst = 0;
            for (int k = 1; k <= 32; ++k) {
                double theta = PI * k / 33.0;
                worst = std::max(worst, std::abs(eisenstein_mean_truncated(q, theta, N)));
            }
            double bound = 8.0 * (q + 1) * (q + 1) * std::pow(q, -N / 2.0);
            CHECK(worst <= std::max(bound, floor));
            CHECK(worst < std::max(prev, floor));
            prev = worst;
        }
    }
}

TEST_CASE("spectral normalization calibrates to the derived constant") {
    for (int q : {3, 5}) {
        double kappa = kappa_calibrated(q);
        double printed = kappa_printed_constant(q);
        CHECK(printed == doctest::Approx(4.0 * q * PI / (q * q - 1.0)));
        // ratio to the printed constant lands on 1/(4 pi^2)
        CHECK(kappa / printed == doctest::Approx(1.0 / (4.0 * PI * PI)).epsilon(1e-9));
        CHECK(kappa == doctest::Approx(q / (PI * (q * q - 1.0))).epsilon(1e-9));
    }
}

TEST_CASE("spectral reconstruction of delta functions") {
    for (int q : {3, 5}) {
        for (int n = 0; n <= 5; ++n) {
            SpectralReport rep = spectral_reconstruct(RayFunction::delta(n), q);
            CHECK(rep.quadrature_converged);
            CHECK(rep.max_error <= 1e-6);
            CHECK(rep.kappa_printed_ratio == doctest::Approx(1.0 / (4.0 * PI * PI)).epsilon(1e-6));
        }
    }
}

TEST_CASE("spectral reconstruction of truncated discrete eigenfunctions") {
    for (int q : {3, 5}) {
        RayFunction cte, alt;
        for (int n = 0; n <= 10; ++n) {
            cte.values[n] = 1;
            alt.values[n] = n % 2 == 0 ? 1 : -1;
        }
        SpectralReport rc = spectral_reconstruct(cte, q);
        CHECK(rc.max_error <= 1e-6);
        SpectralReport ra = spectral_reconstruct(alt, q);
        CHECK(ra.max_error <= 1e-6);
        // discrete projections are the truncated mass sums
        mpq_class mass = 0, signed_mass = 0;
        for (int n = 0; n <= 10; ++n) {
            mass += mu(q, n);
            signed_mass += (n % 2 == 0 ? 1 : -1) * mu(q, n);
        }
        CHECK(inner_product(alt, alt, q) == mass);
        CHECK(inner_product(cte, alt, q) == signed_mass);
    }
}

TEST_CASE("spectral report json and non convergence diagnostics") {
    SpectralReport rep = spectral_reconstruct(RayFunction::delta(1), 3);
    nlohmann::json j = nlohmann::json::parse(spectral_report_json(rep));
    CHECK(j["q"] == 3);
    CHECK(j["nodes"] == rep.nodes);
    CHECK(j["kappa_used"].get<double>() == doctest::Approx(rep.kappa_used));
    CHECK(j["max_error"].get<double>() <= 1e-6);
    CHECK(j["reconstruction"].size() == rep.reconstruction.size());

    SpectralOptions strict;
    strict.nodes = 2;
    strict.max_doublings = 1;
    strict.refine_tol = 1e-18;
    SpectralReport bad = spectral_reconstruct(RayFunction::delta(2), 3, strict);
    CHECK(!bad.quadrature_converged);
    CHECK(bad.diagnostics.find("no convergence") != std::string::npos);
}

TEST_CASE("truncated inner products against closed forms") {
    auto one = [](int) { return Cplx(1.0, 0.0); };
    auto alt = [](int n) { return Cplx(n % 2 == 0 ? 1.0 : -1.0, 0.0); };
    for (int q : {3, 5}) {
        for (int N : {0, 3, 17}) {
            mpq_class mass = 0, signed_mass = 0;
            for (int n = 0; n <= N; ++n) {
                mass += mu(q, n);
                signed_mass += (n % 2 == 0 ? 1 : -1) * mu(q, n);
            }
            CHECK(close(inner_product(one, one, q, N), Cplx(mass.get_d(), 0.0), 1e-14));
            CHECK(close(inner_product(one, alt, q, N), Cplx(signed_mass.get_d(), 0.0), 1e-14));
        }
    }
}

TEST_SUITE_END();
