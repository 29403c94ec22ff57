#include "dcm/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcm {

QPoly QPoly::constant(const mpq_class& a) {
    return QPoly(std::vector<mpq_class>{a});
}

QPoly QPoly::monomial(const mpq_class& a, int k) {
    std::vector<mpq_class> c(k + 1, mpq_class(0));
    c[k] = a;
    return QPoly(std::move(c));
}

mpq_class QPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return mpq_class(0);
    return c_[i];
}

int QPoly::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return -1;
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<mpq_class> c(std::max(c_.size(), o.c_.size()), mpq_class(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    return QPoly(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
    std::vector<mpq_class> c = c_;
    for (auto& x : c) x = -x;
    return QPoly(std::move(c));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<mpq_class> c(c_.size() + o.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(c));
}

QPoly QPoly::scaled(const mpq_class& a) const {
    std::vector<mpq_class> c = c_;
    for (auto& x : c) x *= a;
    return QPoly(std::move(c));
}

QPoly QPoly::shifted(int k) const {
    if (is_zero()) return QPoly();
    std::vector<mpq_class> c(c_.size() + k, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i + k] = c_[i];
    return QPoly(std::move(c));
}

QPoly QPoly::unshifted(int k) const {
    if (is_zero()) return QPoly();
    if (valuation() < k) throw std::invalid_argument("u^k does not divide");
    return QPoly(std::vector<mpq_class>(c_.begin() + k, c_.end()));
}

std::pair<QPoly, QPoly> QPoly::divrem(const QPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
    QPoly r = *this;
    if (r.deg() < d.deg()) return {QPoly(), r};
    std::vector<mpq_class> q(r.deg() - d.deg() + 1, mpq_class(0));
    mpq_class dl = d.lead();
    while (!r.is_zero() && r.deg() >= d.deg()) {
        int k = r.deg() - d.deg();
        mpq_class c = r.lead() / dl;
        q[k] = c;
        r = r - d.scaled(c).shifted(k);
    }
    return {QPoly(std::move(q)), r};
}

std::complex<double> QPoly::eval(std::complex<double> u) const {
    std::complex<double> r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * u + c_[i].get_d();
    return r;
}

mpq_class QPoly::eval(const mpq_class& u) const {
    mpq_class r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * u + c_[i];
    return r;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = x.divrem(y).second;
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.scaled(1 / x.lead());
}

LaurentRat LaurentRat::constant(const mpq_class& c) {
    return ratio(QPoly::constant(c), QPoly::one(), 0);
}

LaurentRat LaurentRat::monomial(const mpq_class& c, int k) {
    return ratio(QPoly::constant(c), QPoly::one(), k);
}

LaurentRat LaurentRat::ratio(QPoly num, QPoly den, int shift) {
    if (den.is_zero()) throw std::domain_error("division by the zero function");
    LaurentRat r;
    if (num.is_zero()) return r;
    int vn = num.valuation(), vd = den.valuation();
    shift += vn - vd;
    num = num.unshifted(vn);
    den = den.unshifted(vd);
    QPoly g = gcd(num, den);
    if (g.deg() > 0) {
        num = num.divrem(g).first;
        den = den.divrem(g).first;
    }
    mpq_class dl = den.lead();
    r.num_ = num.scaled(1 / dl);
    r.den_ = den.scaled(1 / dl);
    r.shift_ = shift;
    return r;
}

LaurentRat LaurentRat::operator+(const LaurentRat& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int k = std::min(shift_, o.shift_);
    QPoly n = num_.shifted(shift_ - k) * o.den_ + o.num_.shifted(o.shift_ - k) * den_;
    return ratio(std::move(n), den_ * o.den_, k);
}

LaurentRat LaurentRat::operator-(const LaurentRat& o) const { return *this + (-o); }

LaurentRat LaurentRat::operator-() const {
    LaurentRat r = *this;
    r.num_ = -r.num_;
    return r;
}

LaurentRat LaurentRat::operator*(const LaurentRat& o) const {
    return ratio(num_ * o.num_, den_ * o.den_, shift_ + o.shift_);
}

LaurentRat LaurentRat::operator/(const LaurentRat& o) const { return *this * o.inverse(); }

LaurentRat LaurentRat::inverse() const {
    if (is_zero()) throw std::domain_error("division by the zero function");
    return ratio(den_, num_, -shift_);
}

LaurentRat LaurentRat::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    LaurentRat r = constant(1);
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
}

LaurentRat LaurentRat::scaled(const mpq_class& c) const {
    return ratio(num_.scaled(c), den_, shift_);
}

namespace {

// Magnitude of a polynomial evaluation with all cancellation removed; the
// yardstick for deciding that a small denominator is an actual pole.
double eval_scale(const QPoly& f, double absu) {
    double s = 0, p = 1;
    for (int i = 0; i <= f.deg(); ++i) {
        s += std::abs(f.coeff(i).get_d()) * p;
        p *= absu;
    }
    return s;
}

constexpr double kPoleTol = 1e-12;

}  // namespace

std::complex<double> LaurentRat::eval_at_u(std::complex<double> u) const {
    if (is_zero()) return 0;
    std::complex<double> d = den_.eval(u);
    double scale = eval_scale(den_, std::abs(u));
    if (std::abs(d) <= kPoleTol * scale) throw PoleError("denominator vanishes at u");
    std::complex<double> v = num_.eval(u) / d;
    if (shift_ != 0) {
        if (u == std::complex<double>(0, 0)) {
            if (shift_ < 0) throw PoleError("negative power of u at u = 0");
            return 0;
        }
        v *= std::pow(u, shift_);
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::overflow_error("evaluation overflow");
    return v;
}

std::complex<double> LaurentRat::eval_at_s(std::complex<double> s, std::uint32_t q) const {
    std::complex<double> u = std::exp(-s * std::log(static_cast<double>(q)));
    return eval_at_u(u);
}

mpq_class LaurentRat::eval_at_u(const mpq_class& u) const {
    if (is_zero()) return 0;
    mpq_class d = den_.eval(u);
    if (d == 0) throw PoleError("denominator vanishes at u");
    mpq_class v = num_.eval(u) / d;
    if (shift_ > 0)
        for (int i = 0; i < shift_; ++i) v *= u;
    if (shift_ < 0) {
        if (u == 0) throw PoleError("negative power of u at u = 0");
        for (int i = 0; i < -shift_; ++i) v /= u;
    }
    return v;
}

namespace {

void poly_text(std::ostringstream& os, const std::vector<mpz_class>& c) {
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        mpz_class a = c[i];
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        mpz_class m = abs(a);
        if (m != 1 || i == 0) os << m.get_str();
        if (i >= 1) {
            if (m != 1) os << "*";
            os << "u";
            if (i >= 2) os << "^" << i;
        }
    }
    if (first) os << "0";
}

}  // namespace

std::string LaurentRat::to_string() const {
    // common positive factor making both sides integer and content-coprime
    mpz_class l = 1;
    for (int i = 0; i <= num_.deg(); ++i) l = lcm(l, num_.coeff(i).get_den());
    for (int i = 0; i <= den_.deg(); ++i) l = lcm(l, den_.coeff(i).get_den());
    std::vector<mpz_class> ni, di;
    mpz_class g = 0;
    for (int i = 0; i <= num_.deg(); ++i) {
        mpq_class v = num_.coeff(i) * l;
        ni.push_back(v.get_num());
        g = gcd(g, ni.back());
    }
    for (int i = 0; i <= den_.deg(); ++i) {
        mpq_class v = den_.coeff(i) * l;
        di.push_back(v.get_num());
        g = gcd(g, di.back());
    }
    if (g == 0) g = 1;
    if (di[0] < 0) g = -g;  // nonzero by the normal form; anchor its sign
    for (auto& x : ni) x /= g;
    for (auto& x : di) x /= g;

    std::ostringstream os;
    os << "u^" << shift_ << " * (";
    poly_text(os, ni);
    os << ")/(";
    poly_text(os, di);
    os << ")";
    return os.str();
}

std::complex<double> SpectralParam::s(std::uint32_t q) const {
    return {0.5, theta / std::log(static_cast<double>(q))};
}

std::complex<double> SpectralParam::u(std::uint32_t q) const {
    double r = 1.0 / std::sqrt(static_cast<double>(q));
    return {r * std::cos(theta), -r * std::sin(theta)};
}

std::vector<mpq_class> series_coefficients(const LaurentRat& f, int n) {
    if (n < 0) throw std::invalid_argument("negative series window");
    if (f.shift() < 0) throw std::invalid_argument("series expansion needs a nonnegative shift");
    std::vector<mpq_class> out(n + 1, 0);
    if (f.is_zero()) return out;

    // num/den coefficients, then c_k = (num_k - sum_{j>=1} den_j c_{k-j}) / den_0
    const QPoly& num = f.num();
    const QPoly& den = f.den();
    std::vector<mpq_class> c(n + 1, 0);
    for (int k = 0; k <= n; ++k) {
        mpq_class acc = num.coeff(k);
        for (int j = 1; j <= std::min(k, den.deg()); ++j) acc -= den.coeff(j) * c[k - j];
        c[k] = acc / den.coeff(0);
    }
    for (int k = f.shift(); k <= n; ++k) out[k] = c[k - f.shift()];
    return out;
}

LaurentRat zeta_A(std::uint32_t q, ZetaSlot slot) {
    std::vector<mpq_class> den;
    switch (slot) {
        case ZetaSlot::s:
            den = {1, mpq_class(-static_cast<long>(q))};
            break;
        case ZetaSlot::two_s:
            den = {1, 0, mpq_class(-static_cast<long>(q))};
            break;
        case ZetaSlot::two_s_minus_one:
            den = {1, 0, mpq_class(-static_cast<long>(q) * q)};
            break;
    }
    return LaurentRat::ratio(QPoly::one(), QPoly(std::move(den)), 0);
}

}  // namespace dcm
