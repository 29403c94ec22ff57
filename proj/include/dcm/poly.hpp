#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dcm/fq.hpp"

namespace dcm {

/// Degree of the zero polynomial.  Everything below treats it as -infinity;
/// code comparing degrees must keep that in mind.
inline constexpr int kDegZero = -1;

/// Dense univariate polynomial over F_q in the indeterminate T.
///
/// Invariants: coefficients ascending, no trailing zeros (zero polynomial has
/// an empty coefficient vector), all values < q.
class Poly {
public:
    explicit Poly(const Fq& fq) : fq_(&fq) {}
    Poly(const Fq& fq, std::vector<Fq::Elem> coeffs) : fq_(&fq), c_(std::move(coeffs)) { trim(); }

    static Poly zero(const Fq& fq) { return Poly(fq); }
    static Poly one(const Fq& fq) { return constant(fq, 1); }
    static Poly constant(const Fq& fq, Fq::Elem a);
    static Poly t(const Fq& fq) { return Poly(fq, {0, 1}); }
    /// Monomial a*T^k.
    static Poly monomial(const Fq& fq, Fq::Elem a, int k);

    const Fq& field() const { return *fq_; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Fq::Elem coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0; }
    Fq::Elem lead() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<Fq::Elem>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(Fq::Elem a) const;
    /// Multiply by T^k (k >= 0).
    Poly shifted(int k) const;
    Poly monic() const;
    Poly derivative() const;
    Fq::Elem eval(Fq::Elem x) const;
    Poly pow(std::uint32_t e) const;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divrem(const Poly& d) const;
    Poly operator/(const Poly& d) const { return divrem(d).first; }
    Poly operator%(const Poly& d) const { return divrem(d).second; }
    bool divides(const Poly& multiple) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return c_ != o.c_; }
    /// Canonical order: by degree, then lexicographically on the ascending
    /// coefficient vector (constant coefficient compared first).
    bool operator<(const Poly& o) const;

    /// Text form "fq:<q>:[c0,c1,...,cd]" with packed integer coefficients.
    std::string to_string() const;
    static Poly parse(const std::string& s);

    size_t hash() const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    const Fq* fq_;
    std::vector<Fq::Elem> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic unless both zero
/// g = gcd(a,b) monic, with g = u*a + v*b.
struct ExtGcd {
    Poly g, u, v;
};
ExtGcd ext_gcd(const Poly& a, const Poly& b);

Poly mulmod(const Poly& a, const Poly& b, const Poly& mod);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);

/// All monic polynomials of exact degree d in canonical order.
std::vector<Poly> monic_polys(const Fq& fq, int d);
/// All polynomials of degree <= d (including zero) in canonical order.
std::vector<Poly> polys_up_to(const Fq& fq, int d);

struct PolyHash {
    size_t operator()(const Poly& f) const { return f.hash(); }
};

}  // namespace dcm
