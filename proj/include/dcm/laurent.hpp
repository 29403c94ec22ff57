#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace dcm {

/// Dense polynomial in u with rational coefficients, ascending order.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly constant(const mpq_class& a);
    static QPoly one() { return constant(1); }
    /// a * u^k, k >= 0.
    static QPoly monomial(const mpq_class& a, int k);

    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    mpq_class coeff(int i) const;
    const mpq_class& lead() const { return c_.back(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    /// Index of the lowest nonzero coefficient; -1 for zero.
    int valuation() const;

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly scaled(const mpq_class& a) const;
    /// Multiply by u^k (k >= 0).
    QPoly shifted(int k) const;
    /// Divide by u^k, which must divide exactly.
    QPoly unshifted(int k) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<QPoly, QPoly> divrem(const QPoly& d) const;
    QPoly operator/(const QPoly& d) const { return divrem(d).first; }

    bool operator==(const QPoly& o) const { return c_ == o.c_; }
    bool operator!=(const QPoly& o) const { return c_ != o.c_; }

    std::complex<double> eval(std::complex<double> u) const;
    mpq_class eval(const mpq_class& u) const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<mpq_class> c_;
};

QPoly gcd(const QPoly& a, const QPoly& b);  // monic unless both zero

/// Evaluating at a zero of the denominator.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

/// Rational function of u with an explicit Laurent shift:
///     u^shift * num(u) / den(u)
/// reduced so that gcd(num, den) = 1, num and den have nonzero constant
/// terms (the shift absorbs all powers of u), and den is monic.  Equality
/// is structural on this normal form, hence exact.
class LaurentRat {
public:
    LaurentRat() : num_(), den_(QPoly::one()), shift_(0) {}
    LaurentRat(long v) : LaurentRat(constant(v)) {}

    static LaurentRat constant(const mpq_class& c);
    /// c * u^k, any integer k.
    static LaurentRat monomial(const mpq_class& c, int k);
    static LaurentRat u_pow(int k) { return monomial(1, k); }
    static LaurentRat from_poly(const QPoly& p) { return ratio(p, QPoly::one(), 0); }
    static LaurentRat ratio(QPoly num, QPoly den, int shift);

    bool is_zero() const { return num_.is_zero(); }
    int shift() const { return shift_; }
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    LaurentRat operator+(const LaurentRat& o) const;
    LaurentRat operator-(const LaurentRat& o) const;
    LaurentRat operator-() const;
    LaurentRat operator*(const LaurentRat& o) const;
    LaurentRat operator/(const LaurentRat& o) const;
    LaurentRat& operator+=(const LaurentRat& o) { return *this = *this + o; }
    LaurentRat& operator-=(const LaurentRat& o) { return *this = *this - o; }
    LaurentRat& operator*=(const LaurentRat& o) { return *this = *this * o; }
    LaurentRat inverse() const;
    LaurentRat pow(int e) const;
    LaurentRat scaled(const mpq_class& c) const;

    bool operator==(const LaurentRat& o) const {
        return shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const LaurentRat& o) const { return !(*this == o); }

    /// Value at a numeric u.  Throws PoleError when the denominator vanishes
    /// to working precision (the test is relative to the evaluation scale, so
    /// a genuinely tiny but nonzero denominator near a pole is also reported;
    /// values within ~1e-12 of a pole are not distinguishable in doubles).
    /// Throws std::overflow_error when the result is not finite.
    std::complex<double> eval_at_u(std::complex<double> u) const;
    /// Value at u = q^{-s}.
    std::complex<double> eval_at_s(std::complex<double> s, std::uint32_t q) const;
    /// Exact value at a rational u (u != 0 when the shift is negative).
    mpq_class eval_at_u(const mpq_class& u) const;

    /// Canonical form "u^k * (num)/(den)" with integer, content-coprime
    /// coefficients and positive denominator constant term.
    std::string to_string() const;

private:
    QPoly num_, den_;
    int shift_;
};

/// Point on the critical line Re(s) = 1/2, parametrized by theta in [0, pi]:
/// s = 1/2 + i*theta/log q, so u = q^{-s} = q^{-1/2} e^{-i theta} and
/// u^{-1} + q u = 2 sqrt(q) cos(theta).
struct SpectralParam {
    double theta = 0;
    std::complex<double> s(std::uint32_t q) const;
    std::complex<double> u(std::uint32_t q) const;
};

/// First n+1 coefficients of the power-series expansion of f around u = 0,
/// indices 0..n.  Requires a nonnegative shift (no principal part); the
/// normal form guarantees den(0) != 0.
std::vector<mpq_class> series_coefficients(const LaurentRat& f, int n);

enum class ZetaSlot { s, two_s, two_s_minus_one };

/// Zeta function of the coefficient ring F_q[T]: sum over monic f of |f|^{-s}
/// = 1/(1 - q u).  The other slots substitute 2s and 2s-1 for s.
LaurentRat zeta_A(std::uint32_t q, ZetaSlot slot = ZetaSlot::s);

}  // namespace dcm
