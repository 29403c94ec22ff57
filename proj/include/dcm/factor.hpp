#pragma once

#include <cstdint>
#include <vector>

#include "dcm/poly.hpp"

namespace dcm {

/// f = unit * prod factors[i].first ^ factors[i].second, factors monic
/// irreducible, sorted in canonical order.
struct Factorization {
    Fq::Elem unit = 1;
    std::vector<std::pair<Poly, int>> factors;

    Poly value(const Fq& fq) const;
};

/// Seeded Cantor-Zassenhaus factorization (squarefree split, distinct-degree,
/// equal-degree).  The returned factorization is canonical: identical for
/// every seed.  Results are memoized per field.
Factorization factor(const Poly& f, std::uint64_t seed);

bool is_irreducible(const Poly& f);

/// True iff f = g^2 for some g (unit square included).
bool is_perfect_square(const Poly& f);

/// All residues b mod m with b*b = d (mod m), sorted canonically.
/// Composite and non-coprime moduli are supported: the routine factors m,
/// lifts square roots through prime powers and recombines by CRT.
std::vector<Poly> sqrt_mod(const Poly& d, const Poly& m, std::uint64_t seed);

/// Quadratic residue symbol (d / f) for monic nonconstant f, extended
/// multiplicatively to composite f (Jacobi style).  Returns 0 iff
/// gcd(d, f) != 1.  Computed by the Euclidean reciprocity walk; agrees with
/// the Euler criterion d^((|f|-1)/2) mod f on irreducible f.
int residue_symbol(const Poly& d, const Poly& f);

}  // namespace dcm
