#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dcm/laurent.hpp"
#include "dcm/poly.hpp"
#include "dcm/quadform.hpp"

namespace dcm {

/// Quadratic Dirichlet character attached to a discriminant: for monic f,
/// chi(f) is the Jacobi-style residue symbol (D / f).  Values in {-1, 0, 1},
/// zero exactly when gcd(f, D) != 1, completely multiplicative.
struct CharacterChiD {
    Poly D;

    /// f must be monic; constants reduce to f = 1 with chi(1) = 1.
    int operator()(const Poly& f) const;
};

/// Window of exact L-series coefficients c_n = sum over monic f of degree n
/// of chi_D(f).  For squarefree D the series is a polynomial of degree
/// < deg D; the window records the verified stretch of zeros.
struct LPolynomial {
    Poly D;
    std::vector<long long> coefficients;
    /// every computed c_n with n >= deg D vanished (at least two of them
    /// were computed); an empirical window, not a proof
    bool tail_vanished = false;

    LaurentRat as_laurent() const;
};

/// Character sums by direct enumeration over monic f per degree.  The
/// window always covers n < deg D and extends until two consecutive zero
/// coefficients appear, capped at n = 2 deg D; full_window skips the
/// early exit and always computes the whole capped range.
LPolynomial l_polynomial(const Discriminant& disc, bool full_window = false);

/// zeta_A(s) * L(u, chi_D), exact.  Requires squarefree D (conductor 1),
/// where the product is the zeta function of the maximal order.
LaurentRat lk_trivial(const Discriminant& disc);

/// Both sides of the Eisenstein class-sum identity and the exact verdict.
struct ClassSumCheck {
    LaurentRat lhs;  // sum over the class set of E(v_{n(a)}, u)
    LaurentRat rhs;  // [zeta_A(s)/zeta_A(2s)] u^{-deg D/2} L(u, chi_D)
    bool equal = false;
    std::size_t class_count = 0;
};

/// Computes the class set, sums the symbolic Eisenstein values at the class
/// vertices, and compares exactly against the L-function side.  Requires D
/// squarefree, inert, of degree >= 2 (unit group of order q - 1, so the
/// unit-index prefactor collapses to 1).
ClassSumCheck class_sum_check(const Discriminant& disc, std::uint64_t seed = 1);

/// L at u = q^{-(1/2 + it)}.
std::complex<double> critical_line_eval(const LPolynomial& L, double t);

/// CSV of the coefficient window, columns: q, D, n, c_n.
std::string l_polynomial_csv(const LPolynomial& L);

/// CSV of |L(1/2 + it)| over a t-grid per discriminant, against the
/// reference curve |D|^{1/4}.  Columns: q, D, degD, t, abs_L, ref_bound.
std::string growth_report_csv(const std::vector<LPolynomial>& ls,
                              const std::vector<double>& ts);

}  // namespace dcm
