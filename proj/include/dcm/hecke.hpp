#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dcm/laurent.hpp"
#include "dcm/quadform.hpp"

namespace dcm {

/// Nonzero ideal of A named by its monic generator.
struct HeckeIdeal {
    Poly n;

    explicit HeckeIdeal(const Poly& v);

    int deg() const { return n.deg(); }
    bool operator==(const HeckeIdeal& o) const { return n == o.n; }
};

/// Formal sum of CM points with positive rational weights, keyed by the
/// canonical reduced form of each point.  A form determines its own
/// discriminant (b^2 - 4ac), so entries whose conductors differ coexist in
/// one divisor; equality is exact multiset equality.
struct CMDivisor {
    std::map<QuadForm, mpq_class> entries;

    /// Merges w onto the weight of F.  w must be positive.
    void add(const QuadForm& F, const mpq_class& w);

    CMDivisor& operator+=(const CMDivisor& o);
    CMDivisor scaled(const mpq_class& c) const;
    mpq_class total_weight() const;
    std::size_t support_size() const { return entries.size(); }

    bool operator==(const CMDivisor& o) const { return entries == o.entries; }
    bool operator!=(const CMDivisor& o) const { return !(*this == o); }

    /// One line per entry: weight, form, disc, vertex.
    std::string to_string() const;
};

/// Monic divisors of n in canonical order; the seed feeds factorization.
std::vector<Poly> monic_divisors(const Poly& n, std::uint64_t seed = 1);

/// sigma_s(n) = sum_{m | n monic} |m|^s at a numeric exponent.
std::complex<double> sigma_numeric(const HeckeIdeal& n, std::complex<double> s,
                                   std::uint64_t seed = 1);

/// sigma_{1-2s}(n) in the symbolic slot: each monic divisor m contributes
/// q^(deg m) u^(2 deg m).
LaurentRat sigma_symbolic(const HeckeIdeal& n, std::uint64_t seed = 1);

/// T_n applied to the point of F: one image point per pair of monic a, d
/// with a d = n and each b with deg b < deg d, moving z to (a z + b)/d by
/// exact arithmetic and recording the canonical class representative of
/// the image on its own conductor sheet.  Weights count coincident images,
/// so the total weight is sigma_1(n); no ideal arithmetic is involved
/// anywhere.
CMDivisor hecke_transform(const HeckeIdeal& n, const QuadForm& F, std::uint64_t seed = 1);

/// Linear extension to divisors; input weights multiply image weights.
CMDivisor hecke_transform(const HeckeIdeal& n, const CMDivisor& div, std::uint64_t seed = 1);

/// Composition identities as exact multiset equalities.  Coprime m, n run
/// the commutation check T_m T_n = T_n T_m; m irreducible with n a power
/// m^k runs the recurrence T_m T_{m^k} = T_{m^{k+1}} + |m| T_{m^{k-1}}.
/// Any other argument pair is rejected.
struct HeckeIdentityCheck {
    std::string mode;  // "commutation" or "recurrence"
    CMDivisor lhs, rhs;
    bool equal = false;
};
HeckeIdentityCheck hecke_identity_checks(const HeckeIdeal& m, const HeckeIdeal& n,
                                         const QuadForm& F, std::uint64_t seed = 1);

/// Eigenvalue identity of the Eisenstein vertex function under T_n at the
/// point of F, in the symbolic slot: the transform side sums E(v(image), u)
/// with multiplicities, the eigenvalue side is
/// u^(-deg n) sigma_{1-2s}(n) E(v(F), u).  Equality is exact.
struct EigenCheck {
    LaurentRat lhs, rhs;
    bool equal = false;
};
EigenCheck eigen_check(const HeckeIdeal& n, const QuadForm& F, std::uint64_t seed = 1);

/// r_K(n) = #{ideals of O_K with norm n} = sum_{d | n} chi_{D_K}(d) for K
/// the quadratic extension of discriminant D_K (squarefree, inert).
long long r_k(const Poly& D_K, const HeckeIdeal& n, std::uint64_t seed = 1);

/// Dirichlet inverse of r_K, computed by the convolution recursion
/// rinv(n) = -sum_{d | n, d != 1} r_K(d) rinv(n/d).
long long r_k_inverse(const Poly& D_K, const HeckeIdeal& n, std::uint64_t seed = 1);

/// Divisor identity at conductor f: T_f applied to the full class divisor
/// of the maximal order, weighted by the inverse unit index 1/w_{K,A},
/// equals sum_{c | f} r_K(f/c) (1/w_{K,c}) Div(K,c) where Div(K,c) is the
/// full class divisor of the conductor-c order.  w_{K,A} = q + 1 exactly
/// in the constant-field case, and w_{K,c} = 1 for every c != 1; both
/// sides are exact rational divisors.
struct ZhangCheck {
    CMDivisor lhs, rhs;
    bool equal = false;
    mpq_class w_max = 1;      // unit index of the maximal order
    std::string diagnostics;  // entry-level mismatch dump, empty when equal
};
ZhangCheck zhang_check(const Poly& D_K, const HeckeIdeal& f, std::uint64_t seed = 1);

/// Class number of the conductor-f order, both enumerated and through the
/// formula h(K) |f| prod_{p | f} (1 - chi(p)/|p|) / [O_K^* : O_f^*]; the
/// unit index is q + 1 exactly when the field is constant and f != 1.
struct OrderClassNumber {
    std::size_t enumerated = 0;
    mpq_class formula = 0;
    bool agree = false;
};
OrderClassNumber order_class_number(const Poly& D_K, const Poly& f, std::uint64_t seed = 1);

/// Moebius inversion of the divisor identity, evaluated through the
/// Eisenstein vertex function: the class sum over Cl(O_f) equals
/// (1/w_{K,A}) sum_{c | f} rinv(f/c) u^(-deg c) sigma_{1-2s}(c) times the
/// class sum over Cl(O_K).  The inherited 1/w_{K,A} must stay: dropping
/// it breaks the constant-field case by exactly q + 1.  Requires
/// deg(D_K f^2) >= 2.
struct AverageCheck {
    LaurentRat lhs, rhs;
    bool equal = false;
};
AverageCheck general_disc_average_check(const Poly& D_K, const Poly& f,
                                        std::uint64_t seed = 1);

/// Serialized verification record, the shape shared by all identity
/// reports: {check_name, q, D_K, f, n, status, lhs, rhs}.
std::string verification_record_json(const std::string& check_name, std::uint32_t q,
                                     const std::string& d_k, const std::string& f,
                                     const std::string& n, bool pass, const std::string& lhs,
                                     const std::string& rhs);

}  // namespace dcm
