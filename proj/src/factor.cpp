#include "dcm/factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>

namespace dcm {

namespace {

std::uint64_t pow_u64_checked(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) {
        if (r > (std::uint64_t(1) << 62) / b) throw std::overflow_error("field size exceeds supported range");
        r *= b;
    }
    return r;
}

Poly random_poly(const Fq& fq, int max_deg, std::mt19937_64& rng) {
    std::vector<Fq::Elem> c(max_deg + 1);
    for (auto& x : c) x = static_cast<Fq::Elem>(rng() % fq.q());
    return Poly(fq, std::move(c));
}

// Inverse Frobenius on the coefficients: f must be a polynomial in T^p.
Poly pth_root(const Poly& f) {
    const Fq& fq = f.field();
    std::uint32_t p = fq.p();
    std::vector<Fq::Elem> c(f.deg() / p + 1, 0);
    std::uint64_t inv_frob = fq.q() / p;  // p^(m-1)
    for (int i = 0; i <= f.deg(); i += p) c[i / p] = fq.pow(f.coeff(i), inv_frob);
    return Poly(fq, std::move(c));
}

// f monic nonconstant -> list of (monic squarefree g, exponent), f = prod g^e.
void squarefree_decompose(const Poly& f, int outer, std::vector<std::pair<Poly, int>>& out) {
    const Fq& fq = f.field();
    if (f.deg() <= 0) return;
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_decompose(pth_root(f), outer * fq.p(), out);
        return;
    }
    Poly c = gcd(f, fp);
    Poly w = f / c;
    int i = 1;
    while (w.deg() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.deg() > 0) out.emplace_back(z, outer * i);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.deg() > 0) squarefree_decompose(pth_root(c), outer * fq.p(), out);
}

// g monic squarefree -> list of (product of irreducibles of degree d, d).
std::vector<std::pair<Poly, int>> distinct_degree_split(Poly g) {
    const Fq& fq = g.field();
    std::vector<std::pair<Poly, int>> out;
    Poly h = Poly::t(fq) % g;
    int d = 0;
    while (g.deg() > 0) {
        ++d;
        if (2 * d > g.deg()) {
            out.emplace_back(g, g.deg());
            break;
        }
        h = powmod(h, fq.q(), g);
        Poly gd = gcd(h - Poly::t(fq), g);
        if (gd.deg() > 0) {
            out.emplace_back(gd, d);
            g = g / gd;
            h = h % g;
        }
    }
    return out;
}

// g = product of distinct monic irreducibles of degree d; splits completely.
void equal_degree_split(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const Fq& fq = g.field();
    if (g.deg() == d) {
        out.push_back(g);
        return;
    }
    std::uint64_t e = (pow_u64_checked(fq.q(), static_cast<std::uint32_t>(d)) - 1) / 2;
    for (;;) {
        Poly a = random_poly(fq, g.deg() - 1, rng);
        if (a.deg() < 1) continue;
        Poly h = gcd(a, g);
        if (h.deg() == 0) h = gcd(powmod(a, e, g) - Poly::one(fq), g);
        if (h.deg() > 0 && h.deg() < g.deg()) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split(g / h, d, rng, out);
            return;
        }
    }
}

// One square root of a unit u modulo irreducible p (Tonelli-Shanks in the
// residue field), or nullopt for a non-residue.
std::optional<Poly> field_sqrt(const Poly& u, const Poly& p, std::mt19937_64& rng) {
    const Fq& fq = u.field();
    std::uint64_t Q = pow_u64_checked(fq.q(), static_cast<std::uint32_t>(p.deg()));
    Poly one = Poly::one(fq);
    if (powmod(u, (Q - 1) / 2, p) != one % p) return std::nullopt;

    std::uint64_t t = Q - 1;
    int s = 0;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    Poly n = Poly::zero(fq);
    for (;;) {
        n = random_poly(fq, p.deg() - 1, rng) % p;
        if (n.is_zero()) continue;
        if (powmod(n, (Q - 1) / 2, p) != one) break;
    }
    Poly c = powmod(n, t, p);
    Poly r = powmod(u, (t + 1) / 2, p);
    Poly x = powmod(u, t, p);
    int m = s;
    while (x != one) {
        Poly x2 = x;
        int i = 0;
        while (x2 != one) {
            x2 = mulmod(x2, x2, p);
            ++i;
        }
        Poly b = c;
        for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        x = mulmod(x, c, p);
        m = i;
    }
    return r;
}

// Inverse of a modulo m (gcd(a, m) = 1).
Poly inv_mod(const Poly& a, const Poly& m) {
    ExtGcd e = ext_gcd(a % m, m);
    if (e.g.deg() != 0) throw std::domain_error("element not invertible");
    return e.u.scaled(a.field().inv(e.g.coeff(0))) % m;
}

// One square root of a unit u modulo p^k (Hensel from the residue field).
std::optional<Poly> unit_sqrt_mod_pk(const Poly& u, const Poly& p, int k, std::mt19937_64& rng) {
    auto r0 = field_sqrt(u % p, p, rng);
    if (!r0) return std::nullopt;
    Poly r = *r0;
    int have = 1;
    Poly pk = p;
    while (have < k) {
        have *= 2;
        pk = pk * pk;
        Poly two = Poly::constant(u.field(), u.field().from_int(2));
        r = (r - (r * r - u) * inv_mod(two * r, pk)) % pk;
    }
    if (have > k) {
        Poly target = Poly::one(u.field());
        for (int i = 0; i < k; ++i) target *= p;
        r = r % target;
    }
    return r;
}

// All square roots of d modulo p^e, p monic irreducible.
std::vector<Poly> roots_mod_prime_power(const Poly& d, const Poly& p, int e, std::mt19937_64& rng) {
    const Fq& fq = d.field();
    Poly pe = Poly::one(fq);
    for (int i = 0; i < e; ++i) pe *= p;
    Poly dd = d % pe;
    std::vector<Poly> roots;
    if (dd.is_zero()) {
        // b = p^ceil(e/2) * t over residues t mod p^floor(e/2)
        int k = (e + 1) / 2;
        Poly base = Poly::one(fq);
        for (int i = 0; i < k; ++i) base *= p;
        int rdeg = (e - k) * p.deg();
        for (const Poly& t : polys_up_to(fq, rdeg - 1)) roots.push_back((base * t) % pe);
        return roots;
    }
    int v = 0;
    Poly core = dd;
    while (p.divides(core)) {
        core = core / p;
        ++v;
    }
    if (v % 2 != 0) return {};
    int w = v / 2;
    auto r = unit_sqrt_mod_pk(core, p, e - v, rng);
    if (!r) return {};
    Poly pw = Poly::one(fq);
    for (int i = 0; i < w; ++i) pw *= p;
    Poly step = Poly::one(fq);
    for (int i = 0; i < e - v; ++i) step *= p;  // p^(e-2w) shifted by p^w below
    for (const Poly& s : polys_up_to(fq, w * p.deg() - 1)) {
        Poly c1 = (*r + step * s) % pe;
        Poly b = (pw * c1) % pe;
        roots.push_back(b);
        roots.push_back((pe - b) % pe);
    }
    return roots;
}

}  // namespace

Poly Factorization::value(const Fq& fq) const {
    Poly r = Poly::constant(fq, unit);
    for (const auto& [f, e] : factors)
        for (int i = 0; i < e; ++i) r *= f;
    return r;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::invalid_argument("cannot factor zero");
    const Fq& fq = f.field();

    static std::mutex mu;
    static std::map<std::pair<const Fq*, std::vector<Fq::Elem>>, Factorization> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({&fq, f.coeffs()});
        if (it != cache.end()) return it->second;
    }

    Factorization out;
    out.unit = f.lead();
    Poly g = f.monic();
    std::mt19937_64 rng(seed ^ 0x5eed5eedULL);

    std::vector<std::pair<Poly, int>> sqfree;
    squarefree_decompose(g, 1, sqfree);
    for (const auto& [part, e] : sqfree) {
        for (const auto& [prod, d] : distinct_degree_split(part)) {
            std::vector<Poly> irreds;
            equal_degree_split(prod, d, rng, irreds);
            for (const Poly& p : irreds) out.factors.emplace_back(p, e);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(&fq, f.coeffs()), out);
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.deg() < 1) return false;
    const Fq& fq = f.field();
    int n = f.deg();
    Poly t = Poly::t(fq);
    // x^(q^n) = x mod f, and x^(q^(n/l)) - x coprime to f for primes l | n
    Poly h = t % f;
    std::vector<Poly> powers(n + 1, Poly::zero(fq));  // powers[d] = T^(q^d) mod f
    powers[0] = h;
    for (int d = 1; d <= n; ++d) {
        h = powmod(h, fq.q(), f);
        powers[d] = h;
    }
    if (powers[n] != t % f) return false;
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool lprime = true;
        for (int dd = 2; dd * dd <= l; ++dd)
            if (l % dd == 0) { lprime = false; break; }
        if (!lprime) continue;
        if (gcd(powers[n / l] - t, f).deg() != 0) return false;
    }
    return true;
}

bool is_perfect_square(const Poly& f) {
    if (f.is_zero()) return true;
    Factorization fac = factor(f, 0);
    if (!f.field().is_square(fac.unit)) return false;
    for (const auto& [p, e] : fac.factors)
        if (e % 2 != 0) return false;
    return true;
}

std::vector<Poly> sqrt_mod(const Poly& d, const Poly& m, std::uint64_t seed) {
    if (m.is_zero()) throw std::invalid_argument("zero modulus");
    const Fq& fq = d.field();
    if (m.deg() == 0) return {Poly::zero(fq)};

    Factorization fm = factor(m, seed);
    std::mt19937_64 rng(seed ^ 0x0b57ac1eULL);

    // CRT accumulation over prime powers
    std::vector<Poly> acc = {Poly::zero(fq)};
    Poly acc_mod = Poly::one(fq);
    for (const auto& [p, e] : fm.factors) {
        std::vector<Poly> local = roots_mod_prime_power(d, p, e, rng);
        if (local.empty()) return {};
        Poly pe = Poly::one(fq);
        for (int i = 0; i < e; ++i) pe *= p;
        ExtGcd eg = ext_gcd(acc_mod, pe);
        Poly mod_new = acc_mod * pe;
        std::vector<Poly> next;
        next.reserve(acc.size() * local.size());
        for (const Poly& r1 : acc)
            for (const Poly& r2 : local) {
                // r = r1 + acc_mod * u * (r2 - r1) mod mod_new, with u = acc_mod^-1 mod pe
                Poly r = (r1 + acc_mod * eg.u * (r2 - r1)) % mod_new;
                next.push_back(r);
            }
        acc = std::move(next);
        acc_mod = mod_new;
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

int residue_symbol(const Poly& d, const Poly& f) {
    if (!f.is_monic() || f.deg() < 1)
        throw std::invalid_argument("residue symbol requires a monic nonconstant modulus");
    const Fq& fq = d.field();
    bool sign_active = ((fq.q() - 1) / 2) % 2 == 1;  // q = 3 mod 4

    Poly a = d % f;
    Poly b = f;
    int result = 1;
    for (;;) {
        if (a.is_zero()) return 0;
        Fq::Elem alpha = a.lead();
        Poly a1 = a.monic();
        if (fq.legendre(alpha) < 0 && b.deg() % 2 == 1) result = -result;
        if (a1.deg() == 0) return result;
        if (sign_active && a1.deg() % 2 == 1 && b.deg() % 2 == 1) result = -result;
        Poly r = b % a1;
        b = a1;
        a = r;
    }
}

}  // namespace dcm
