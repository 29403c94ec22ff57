#include "dcm/fq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace dcm {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Digit-vector arithmetic over F_p, used only during table construction.
using DVec = std::vector<std::uint32_t>;

DVec dv_mul_mod(const DVec& a, const DVec& b, const DVec& mod, std::uint32_t p) {
    DVec r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // reduce modulo the monic modulus
    size_t md = mod.size() - 1;
    for (size_t i = r.size(); i-- > md;) {
        std::uint32_t c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (size_t j = 0; j < md; ++j)
            r[i - md + j] = (r[i - md + j] + c * (p - mod[j] % p)) % p;
    }
    r.resize(md);
    return r;
}

// Trial-division irreducibility for the modulus search; degrees stay tiny.
bool dv_irreducible(const DVec& f, std::uint32_t p) {
    std::uint32_t deg = static_cast<std::uint32_t>(f.size()) - 1;
    // divide by every monic polynomial of degree 1..deg/2
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            DVec g(d + 1, 0);
            std::uint64_t v = idx;
            for (std::uint32_t i = 0; i < d; ++i) { g[i] = v % p; v /= p; }
            g[d] = 1;
            // remainder of f by g
            DVec r = f;
            for (size_t i = r.size(); i-- > d;) {
                std::uint32_t c = r[i] % p;
                if (c == 0) continue;
                r[i] = 0;
                for (std::uint32_t j = 0; j < d; ++j)
                    r[i - d + j] = (r[i - d + j] + c * (p - g[j])) % p;
            }
            bool zero = true;
            for (std::uint32_t j = 0; j < d; ++j)
                if (r[j] % p != 0) { zero = false; break; }
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

Fq::Fq(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    q_ = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (q_ > 4096 / p_) throw std::invalid_argument("field order too large");
        q_ *= p_;
    }

    neg_.resize(q_);
    add_.resize(static_cast<size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a) {
        // digitwise arithmetic mod p on packed values
        Elem na = 0, mult = 1, x = a;
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint32_t d = x % p_;
            na += ((p_ - d) % p_) * mult;
            x /= p_;
            mult *= p_;
        }
        neg_[a] = na;
    }
    for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b) {
            Elem r = 0, mult = 1, x = a, y = b;
            for (std::uint32_t i = 0; i < m_; ++i) {
                r += ((x % p_) + (y % p_)) % p_ * mult;
                x /= p_;
                y /= p_;
                mult *= p_;
            }
            add_[a * q_ + b] = r;
        }

    // multiplication table via digit vectors, then generator + log tables
    auto packed_mul = [&](Elem a, Elem b) -> Elem {
        DVec da(m_), db(m_);
        Elem x = a, y = b;
        for (std::uint32_t i = 0; i < m_; ++i) { da[i] = x % p_; x /= p_; db[i] = y % p_; y /= p_; }
        DVec r = m_ == 1 ? DVec{(da[0] * db[0]) % p_} : dv_mul_mod(da, db, modulus_, p_);
        Elem out = 0, mult = 1;
        for (std::uint32_t i = 0; i < m_ && i < r.size(); ++i) { out += r[i] * mult; mult *= p_; }
        return out;
    };

    // factor q-1 to test element orders
    std::vector<std::uint32_t> prime_divs;
    {
        std::uint32_t n = q_ - 1;
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                prime_divs.push_back(d);
                while (n % d == 0) n /= d;
            }
        if (n > 1) prime_divs.push_back(n);
    }
    auto packed_pow = [&](Elem a, std::uint32_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1) r = packed_mul(r, a);
            a = packed_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    Elem g = 0;
    for (Elem cand = 2; cand < q_; ++cand) {
        bool ok = true;
        for (std::uint32_t ell : prime_divs)
            if (packed_pow(cand, (q_ - 1) / ell) == 1) { ok = false; break; }
        if (ok) { g = cand; break; }
    }
    if (g == 0) throw std::logic_error("no generator found");

    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    Elem cur = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = cur;
        log_[cur] = i;
        cur = packed_mul(cur, g);
    }

    for (Elem a = 1; a < q_; ++a)
        if (log_[a] % 2 == 1) { least_nonsquare_ = a; break; }
}

Fq::Elem Fq::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Fq::Elem Fq::pow(Elem a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[static_cast<Elem>((log_[a] * static_cast<unsigned long long>(e % (q_ - 1))) % (q_ - 1))];
}

std::optional<Fq::Elem> Fq::sqrt(Elem a) const {
    if (a == 0) return 0;
    std::uint32_t l = log_[a];
    if (l % 2 != 0) return std::nullopt;
    Elem r1 = exp_[l / 2];
    Elem r2 = neg_[r1];
    return std::min(r1, r2);
}

std::vector<std::uint32_t> Fq::digits(Elem a) const {
    std::vector<std::uint32_t> d(m_);
    for (std::uint32_t i = 0; i < m_; ++i) { d[i] = a % p_; a /= p_; }
    return d;
}

Fq::Elem Fq::from_digits(const std::vector<std::uint32_t>& d) const {
    Elem a = 0, mult = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        a += (i < d.size() ? d[i] % p_ : 0) * mult;
        mult *= p_;
    }
    return a;
}

Fq::Elem Fq::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

const Fq& Fq::get(std::uint32_t q) {
    if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be an odd prime power >= 3");
    std::uint32_t p = 0;
    for (std::uint32_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) { p = d; break; }
    if (p == 0) p = q;  // q prime
    std::uint32_t m = 0, t = q;
    while (t > 1) {
        if (t % p != 0) throw std::invalid_argument("q is not a prime power");
        t /= p;
        ++m;
    }
    if (!is_prime(p)) throw std::invalid_argument("q is not a prime power");

    if (m == 1) return get(p, 1, {});

    // canonical modulus: least monic irreducible of degree m in packed order
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        DVec f(m + 1, 0);
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < m; ++i) { f[i] = static_cast<std::uint32_t>(v % p); v /= p; }
        f[m] = 1;
        if (dv_irreducible(f, p)) return get(p, m, f);
    }
    throw std::logic_error("no irreducible modulus found");
}

const Fq& Fq::get(std::uint32_t p, std::uint32_t m, const std::vector<std::uint32_t>& modulus) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    if (m == 0) throw std::invalid_argument("m must be positive");
    if (m > 1 && modulus.size() != m + 1) throw std::invalid_argument("modulus must have degree m");
    if (m > 1 && modulus.back() != 1) throw std::invalid_argument("modulus must be monic");

    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::vector<std::uint32_t>>, std::unique_ptr<Fq>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<std::uint64_t>(p) << 8 | m, modulus);
    auto it = registry.find(key);
    if (it == registry.end()) {
        if (m > 1 && !dv_irreducible(modulus, p)) throw std::invalid_argument("modulus is reducible");
        it = registry.emplace(key, std::unique_ptr<Fq>(new Fq(p, m, modulus))).first;
    }
    return *it->second;
}

}  // namespace dcm
