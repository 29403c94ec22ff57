#include "dcm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dcm {

Poly Poly::constant(const Fq& fq, Fq::Elem a) {
    Poly r(fq);
    if (a != 0) r.c_ = {a};
    return r;
}

Poly Poly::monomial(const Fq& fq, Fq::Elem a, int k) {
    Poly r(fq);
    if (a != 0) {
        r.c_.assign(k + 1, 0);
        r.c_[k] = a;
    }
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r(*fq_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = fq_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r(*fq_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = fq_->sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = fq_->neg(x);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(*fq_);
    Poly r(*fq_);
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] = fq_->add(r.c_[i + j], fq_->mul(c_[i], o.c_[j]));
    }
    return r;
}

Poly Poly::scaled(Fq::Elem a) const {
    if (a == 0) return Poly(*fq_);
    Poly r = *this;
    for (auto& x : r.c_) x = fq_->mul(x, a);
    return r;
}

Poly Poly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r(*fq_);
    r.c_.assign(c_.size() + k, 0);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
    return r;
}

Poly Poly::monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(fq_->inv(lead()));
}

Poly Poly::derivative() const {
    Poly r(*fq_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) {
        Fq::Elem k = fq_->from_int(static_cast<long long>(i));
        r.c_[i - 1] = fq_->mul(c_[i], k);
    }
    r.trim();
    return r;
}

Fq::Elem Poly::eval(Fq::Elem x) const {
    Fq::Elem r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = fq_->add(fq_->mul(r, x), c_[i]);
    return r;
}

Poly Poly::pow(std::uint32_t e) const {
    Poly r = one(*fq_), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly q(*fq_), r = *this;
    if (r.deg() < d.deg()) return {q, r};
    q.c_.assign(r.deg() - d.deg() + 1, 0);
    Fq::Elem dl = fq_->inv(d.lead());
    while (!r.is_zero() && r.deg() >= d.deg()) {
        int k = r.deg() - d.deg();
        Fq::Elem c = fq_->mul(r.lead(), dl);
        q.c_[k] = c;
        for (int i = 0; i <= d.deg(); ++i)
            r.c_[k + i] = fq_->sub(r.c_[k + i], fq_->mul(c, d.c_[i]));
        r.trim();
    }
    q.trim();
    return {q, r};
}

bool Poly::divides(const Poly& multiple) const {
    if (is_zero()) return multiple.is_zero();
    return multiple.divrem(*this).second.is_zero();
}

bool Poly::operator<(const Poly& o) const {
    if (deg() != o.deg()) return deg() < o.deg();
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string Poly::to_string() const {
    std::ostringstream os;
    os << "fq:" << fq_->q() << ":[";
    if (is_zero()) {
        os << "0";
    } else {
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ",";
            os << c_[i];
        }
    }
    os << "]";
    return os.str();
}

Poly Poly::parse(const std::string& s) {
    auto fail = [&] { throw std::invalid_argument("bad polynomial literal: " + s); };
    if (s.rfind("fq:", 0) != 0) fail();
    size_t colon = s.find(':', 3);
    if (colon == std::string::npos) fail();
    std::uint32_t q = 0;
    try {
        q = static_cast<std::uint32_t>(std::stoul(s.substr(3, colon - 3)));
    } catch (...) {
        fail();
    }
    const Fq& fq = Fq::get(q);
    if (colon + 1 >= s.size() || s[colon + 1] != '[' || s.back() != ']') fail();
    std::string body = s.substr(colon + 2, s.size() - colon - 3);
    std::vector<Fq::Elem> coeffs;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        unsigned long v = 0;
        try {
            size_t pos = 0;
            v = std::stoul(tok, &pos);
            while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
            if (pos != tok.size()) fail();
        } catch (...) {
            fail();
        }
        if (v >= fq.q()) fail();
        coeffs.push_back(static_cast<Fq::Elem>(v));
    }
    if (coeffs.empty()) fail();
    return Poly(fq, std::move(coeffs));
}

size_t Poly::hash() const {
    size_t h = 0x9e3779b97f4a7c15ull ^ c_.size();
    for (auto x : c_) h = h * 1099511628211ull + x + 1;
    return h;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = y;
        y = r;
    }
    return x.is_zero() ? x : x.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
    const Fq& fq = a.field();
    Poly r0 = a, r1 = b;
    Poly u0 = Poly::one(fq), u1 = Poly::zero(fq);
    Poly v0 = Poly::zero(fq), v1 = Poly::one(fq);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        r0 = r1;
        r1 = r;
        Poly u2 = u0 - q * u1, v2 = v0 - q * v1;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    if (!r0.is_zero() && r0.lead() != 1) {
        Fq::Elem s = fq.inv(r0.lead());
        r0 = r0.scaled(s);
        u0 = u0.scaled(s);
        v0 = v0.scaled(s);
    }
    return {r0, u0, v0};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& mod) { return (a * b) % mod; }

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
    Poly r = Poly::one(base.field()) % mod, b = base % mod;
    while (e) {
        if (e & 1) r = mulmod(r, b, mod);
        b = mulmod(b, b, mod);
        e >>= 1;
    }
    return r;
}

std::vector<Poly> monic_polys(const Fq& fq, int d) {
    std::vector<Poly> out;
    if (d < 0) return out;
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= fq.q();
    out.reserve(count);
    std::vector<Fq::Elem> c(d + 1, 0);
    c[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t v = idx;
        for (int i = 0; i < d; ++i) {
            c[i] = static_cast<Fq::Elem>(v % fq.q());
            v /= fq.q();
        }
        out.emplace_back(fq, c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Poly> polys_up_to(const Fq& fq, int d) {
    std::vector<Poly> out;
    std::uint64_t count = 1;
    for (int i = 0; i <= d; ++i) count *= fq.q();
    out.reserve(count);
    std::vector<Fq::Elem> c(d + 1, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t v = idx;
        for (int i = 0; i <= d; ++i) {
            c[i] = static_cast<Fq::Elem>(v % fq.q());
            v /= fq.q();
        }
        out.emplace_back(fq, c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dcm
