#include "dcm/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "dcm/factor.hpp"
#include "dcm/lfunc.hpp"
#include "dcm/tree.hpp"

namespace dcm {
namespace {

mpq_class q_power(std::uint32_t q, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, static_cast<unsigned long>(e));
    return mpq_class(r);
}

}  // namespace

HeckeIdeal::HeckeIdeal(const Poly& v) : n(v) {
    if (n.is_zero() || n.lead() != 1) throw std::invalid_argument("ideal generator must be monic");
}

void CMDivisor::add(const QuadForm& F, const mpq_class& w) {
    if (w <= 0) throw std::invalid_argument("divisor weights must be positive");
    entries[F] += w;
}

CMDivisor& CMDivisor::operator+=(const CMDivisor& o) {
    for (const auto& [F, w] : o.entries) add(F, w);
    return *this;
}

CMDivisor CMDivisor::scaled(const mpq_class& c) const {
    if (c <= 0) throw std::invalid_argument("divisor scale must be positive");
    CMDivisor out;
    for (const auto& [F, w] : entries) out.entries.emplace(F, w * c);
    return out;
}

mpq_class CMDivisor::total_weight() const {
    mpq_class t = 0;
    for (const auto& [F, w] : entries) t += w;
    return t;
}

std::string CMDivisor::to_string() const {
    std::ostringstream os;
    for (const auto& [F, w] : entries) {
        os << w.get_str() << " * (" << F.a.to_string() << ", " << F.b.to_string() << ", "
           << F.c.to_string() << ") disc=" << F.disc().to_string()
           << " v=" << vertex_of_form(F).n << "\n";
    }
    return os.str();
}

std::vector<Poly> monic_divisors(const Poly& n, std::uint64_t seed) {
    if (n.is_zero()) throw std::invalid_argument("divisors of zero");
    const Fq& fq = n.field();
    Factorization fac = factor(n, seed);
    std::vector<Poly> out{Poly::one(fq)};
    for (const auto& [p, e] : fac.factors) {
        std::vector<Poly> next;
        next.reserve(out.size() * (e + 1));
        Poly pk = Poly::one(fq);
        for (int k = 0; k <= e; ++k) {
            for (const Poly& d : out) next.push_back(d * pk);
            if (k < e) pk = pk * p;
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::complex<double> sigma_numeric(const HeckeIdeal& n, std::complex<double> s,
                                   std::uint64_t seed) {
    double lnq = std::log(static_cast<double>(n.n.field().q()));
    std::complex<double> acc = 0.0;
    for (const Poly& m : monic_divisors(n.n, seed)) acc += std::exp(s * (m.deg() * lnq));
    return acc;
}

LaurentRat sigma_symbolic(const HeckeIdeal& n, std::uint64_t seed) {
    std::uint32_t q = n.n.field().q();
    LaurentRat acc = LaurentRat(0);
    for (const Poly& m : monic_divisors(n.n, seed))
        acc = acc + LaurentRat::monomial(q_power(q, m.deg()), 2 * m.deg());
    return acc;
}

CMDivisor hecke_transform(const HeckeIdeal& n, const QuadForm& F, std::uint64_t seed) {
    const Fq& fq = F.a.field();
    Discriminant dF = make_discriminant(F.disc(), seed);
    if (!dF.inert_at_infinity) throw std::domain_error("hecke transform needs an inert point");

    // exact coordinates of z = (-b + f_in sqrt(D_K)) / (2a) over the base
    // symbol sqrt(D_K); every image sheet is referenced to the same symbol
    Poly two_a = F.a.scaled(fq.from_int(2));
    Poly pn0 = -F.b;
    Poly rn0 = dF.f;

    CMDivisor out;
    for (const Poly& a : monic_divisors(n.n, seed)) {
        Poly d = n.n / a;
        for (const Poly& b : polys_up_to(fq, d.deg() - 1)) {
            // z -> (a z + b)/d
            Poly pn = a * pn0 + b * two_a;
            Poly rn = a * rn0;
            Poly den = two_a * d;
            out.add(class_representative(point_state(pn, den, rn, den, dF.D_K)), 1);
        }
    }
    return out;
}

CMDivisor hecke_transform(const HeckeIdeal& n, const CMDivisor& div, std::uint64_t seed) {
    CMDivisor out;
    for (const auto& [F, w] : div.entries) out += hecke_transform(n, F, seed).scaled(w);
    return out;
}

HeckeIdentityCheck hecke_identity_checks(const HeckeIdeal& m, const HeckeIdeal& n,
                                         const QuadForm& F, std::uint64_t seed) {
    const Fq& fq = m.n.field();
    HeckeIdentityCheck out;

    // n a positive power of irreducible m picks the recurrence; otherwise
    // the pair must be coprime and runs the commutation check
    bool recurrence = false;
    int k = 0;
    if (m.deg() >= 1) {
        Factorization fm = factor(m.n, seed);
        if (fm.factors.size() == 1 && fm.factors[0].second == 1) {
            Poly rest = n.n;
            while (rest.deg() >= 1) {
                auto [quot, rem] = rest.divrem(m.n);
                if (!rem.is_zero()) break;
                rest = quot;
                ++k;
            }
            recurrence = (k >= 1 && rest == Poly::one(fq));
        }
    }

    if (recurrence) {
        out.mode = "recurrence";
        out.lhs = hecke_transform(m, hecke_transform(n, F, seed), seed);
        out.rhs = hecke_transform(HeckeIdeal(m.n * n.n), F, seed);
        Poly prev = Poly::one(fq);
        for (int i = 0; i < k - 1; ++i) prev = prev * m.n;
        out.rhs += hecke_transform(HeckeIdeal(prev), F, seed).scaled(q_power(fq.q(), m.deg()));
    } else {
        if (gcd(m.n, n.n).deg() != 0)
            throw std::invalid_argument("operators must be coprime or a prime power pair");
        out.mode = "commutation";
        out.lhs = hecke_transform(m, hecke_transform(n, F, seed), seed);
        out.rhs = hecke_transform(n, hecke_transform(m, F, seed), seed);
    }
    out.equal = (out.lhs == out.rhs);
    return out;
}

EigenCheck eigen_check(const HeckeIdeal& n, const QuadForm& F, std::uint64_t seed) {
    int q = static_cast<int>(F.a.field().q());
    QuadForm F0 = reduce_form(F);
    CMDivisor img = hecke_transform(n, F0, seed);

    int nmax = vertex_of_form(F0).n;
    for (const auto& [G, w] : img.entries) nmax = std::max(nmax, vertex_of_form(G).n);
    std::vector<LaurentRat> E = eisenstein_values(q, nmax);

    EigenCheck out;
    LaurentRat lhs = LaurentRat(0);
    for (const auto& [G, w] : img.entries) lhs = lhs + E[vertex_of_form(G).n].scaled(w);
    out.lhs = lhs;
    out.rhs = LaurentRat::u_pow(-n.deg()) * sigma_symbolic(n, seed) * E[vertex_of_form(F0).n];
    out.equal = (out.lhs == out.rhs);
    return out;
}

long long r_k(const Poly& D_K, const HeckeIdeal& n, std::uint64_t seed) {
    CharacterChiD chi{D_K};
    long long acc = 0;
    for (const Poly& d : monic_divisors(n.n, seed)) acc += chi(d);
    return acc;
}

long long r_k_inverse(const Poly& D_K, const HeckeIdeal& n, std::uint64_t seed) {
    std::vector<Poly> divs = monic_divisors(n.n, seed);
    std::map<Poly, long long> inv;
    for (const Poly& d : divs) {  // degree-first order, so d/e is always ready
        if (d.deg() == 0) {
            inv[d] = 1;
            continue;
        }
        long long acc = 0;
        for (const Poly& e : divs) {
            if (e.deg() == 0 || e.deg() > d.deg()) continue;
            auto [quot, rem] = d.divrem(e);
            if (!rem.is_zero()) continue;
            acc += r_k(D_K, HeckeIdeal(e), seed) * inv.at(quot);
        }
        inv[d] = -acc;
    }
    return inv.at(n.n);
}

ZhangCheck zhang_check(const Poly& D_K, const HeckeIdeal& f, std::uint64_t seed) {
    const Fq& fq = D_K.field();
    Discriminant dk = make_discriminant(D_K, seed);
    if (dk.f.deg() != 0) throw std::domain_error("base discriminant must be squarefree");
    if (!dk.inert_at_infinity) throw std::domain_error("base discriminant must be inert");

    ZhangCheck out;
    out.w_max = dk.constant_field_case ? mpq_class(fq.q() + 1) : mpq_class(1);
    mpq_class inv_w(1);
    inv_w /= out.w_max;

    ClassSet base = enumerate_classes(dk, seed);
    for (const QuadForm& F : base.forms) out.lhs += hecke_transform(f, F, seed).scaled(inv_w);

    for (const Poly& c : monic_divisors(f.n, seed)) {
        long long r = r_k(D_K, HeckeIdeal(f.n / c), seed);
        if (r == 0) continue;
        if (r < 0) throw std::logic_error("ideal counts must be nonnegative");
        mpq_class w(static_cast<long>(r));
        if (dk.constant_field_case && c.deg() == 0) w /= fq.q() + 1;
        ClassSet order = enumerate_classes(make_discriminant(D_K * c * c, seed), seed);
        for (const QuadForm& F : order.forms) out.rhs.add(F, w);
    }

    out.equal = (out.lhs == out.rhs);
    if (!out.equal) {
        std::ostringstream os;
        os << "lhs:\n" << out.lhs.to_string() << "rhs:\n" << out.rhs.to_string();
        os << "lhs only / weight drift:\n";
        for (const auto& [F, w] : out.lhs.entries) {
            auto it = out.rhs.entries.find(F);
            if (it == out.rhs.entries.end() || it->second != w)
                os << "  (" << F.a.to_string() << ", " << F.b.to_string() << ", "
                   << F.c.to_string() << ") lhs=" << w.get_str() << " rhs="
                   << (it == out.rhs.entries.end() ? std::string("absent") : it->second.get_str())
                   << "\n";
        }
        for (const auto& [F, w] : out.rhs.entries)
            if (!out.lhs.entries.count(F))
                os << "  (" << F.a.to_string() << ", " << F.b.to_string() << ", "
                   << F.c.to_string() << ") lhs=absent rhs=" << w.get_str() << "\n";
        out.diagnostics = os.str();
    }
    return out;
}

OrderClassNumber order_class_number(const Poly& D_K, const Poly& f, std::uint64_t seed) {
    const Fq& fq = D_K.field();
    if (f.is_zero() || f.lead() != 1) throw std::invalid_argument("conductor must be monic");
    Discriminant dk = make_discriminant(D_K, seed);
    if (dk.f.deg() != 0) throw std::domain_error("base discriminant must be squarefree");
    if (!dk.inert_at_infinity) throw std::domain_error("base discriminant must be inert");

    std::size_t h_base = enumerate_classes(dk, seed).h();
    OrderClassNumber out;
    out.enumerated = f.deg() == 0
                         ? h_base
                         : enumerate_classes(make_discriminant(D_K * f * f, seed), seed).h();

    CharacterChiD chi{D_K};
    out.formula = mpq_class(static_cast<long>(h_base)) * q_power(fq.q(), f.deg());
    for (const auto& [p, e] : factor(f, seed).factors)
        out.formula *= 1 - mpq_class(chi(p)) / q_power(fq.q(), p.deg());
    if (dk.constant_field_case && f.deg() >= 1) out.formula /= fq.q() + 1;

    out.agree = (out.formula.get_den() == 1 && out.formula == static_cast<long>(out.enumerated));
    return out;
}

AverageCheck general_disc_average_check(const Poly& D_K, const Poly& f, std::uint64_t seed) {
    const Fq& fq = D_K.field();
    int q = static_cast<int>(fq.q());
    if (f.is_zero() || f.lead() != 1) throw std::invalid_argument("conductor must be monic");
    Discriminant dk = make_discriminant(D_K, seed);
    if (dk.f.deg() != 0) throw std::domain_error("base discriminant must be squarefree");
    if (!dk.inert_at_infinity) throw std::domain_error("base discriminant must be inert");
    if (D_K.deg() + 2 * f.deg() < 2) throw std::domain_error("order discriminant is too small");

    Discriminant df = make_discriminant(D_K * f * f, seed);
    std::vector<LaurentRat> E = eisenstein_values(q, df.half_deg());

    AverageCheck out;
    LaurentRat lhs = LaurentRat(0);
    for (const QuadForm& F : enumerate_classes(df, seed).forms)
        lhs = lhs + E[vertex_of_form(F).n];
    out.lhs = lhs;

    LaurentRat base_sum = LaurentRat(0);
    for (const QuadForm& F : enumerate_classes(dk, seed).forms)
        base_sum = base_sum + E[vertex_of_form(F).n];

    LaurentRat rhs = LaurentRat(0);
    for (const Poly& c : monic_divisors(f, seed)) {
        long long ri = r_k_inverse(D_K, HeckeIdeal(f / c), seed);
        if (ri == 0) continue;
        rhs = rhs + (LaurentRat::u_pow(-c.deg()) * sigma_symbolic(HeckeIdeal(c), seed) * base_sum)
                        .scaled(mpq_class(static_cast<long>(ri)));
    }
    if (dk.constant_field_case) rhs = rhs.scaled(mpq_class(1, q + 1));
    out.rhs = rhs;
    out.equal = (out.lhs == out.rhs);
    return out;
}

std::string verification_record_json(const std::string& check_name, std::uint32_t q,
                                     const std::string& d_k, const std::string& f,
                                     const std::string& n, bool pass, const std::string& lhs,
                                     const std::string& rhs) {
    nlohmann::json j;
    j["check_name"] = check_name;
    j["q"] = q;
    j["D_K"] = d_k;
    j["f"] = f;
    j["n"] = n;
    j["status"] = pass ? "pass" : "fail";
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    return j.dump();
}

}  // namespace dcm
