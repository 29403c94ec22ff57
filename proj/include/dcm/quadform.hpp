#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dcm/poly.hpp"

namespace dcm {

/// Discriminant D split as D = D_K * f^2 with f the monic conductor; the
/// unit of D lives in D_K, so the split is an exact identity in A.
struct Discriminant {
    Poly D;
    Poly D_K;
    Poly f;
    bool inert_at_infinity = false;
    bool constant_field_case = false;  // deg D_K == 0

    /// h = (deg D)/2, the top of the reduced stratum range (inert case).
    int half_deg() const { return D.deg() / 2; }
};

/// Splits D, decides inertness (deg D even and leading coefficient a
/// non-square), and flags the constant-field case.  Rejects squares.
Discriminant make_discriminant(const Poly& D, std::uint64_t seed);

/// Binary quadratic form a x^2 + b xy + c y^2 over A, primitive with monic
/// a.  A form labels the point z = (-b + sqrt(D)) / (2a) of the upper half
/// plane; the conjugate form (a, -b, c) labels the Galois conjugate point,
/// which lies in the inverse ideal class and is a different point of the
/// quotient unless the class has order <= 2.
struct QuadForm {
    Poly a, b, c;

    Poly disc() const;

    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const QuadForm& o) const { return !(*this == o); }
    bool operator<(const QuadForm& o) const;
};

/// Validating constructor: monic a, primitivity, non-square discriminant.
QuadForm make_form(const Poly& a, const Poly& b, const Poly& c);

/// Vertex v_n on the quotient ray, n >= 0.
struct Vertex {
    int n = 0;
    bool operator==(const Vertex& o) const { return n == o.n; }
};

/// deg b < deg a <= (deg D)/2 with a monic and the form primitive.
bool is_reduced(const QuadForm& F);

/// Reduces F to the canonical form labeling the same point: alternating
/// translation steps b -> b mod 2a (with c tracking exactly) and swap
/// steps (a,b,c) -> (c/l, -b, l a), l = lead(c), realizing z -> -l/z.
/// Commutes with conjugation: reduce(a,-b,c) is the conjugate of
/// reduce(a,b,c).  Requires an inert discriminant.
QuadForm reduce_form(const QuadForm& F);

/// n = (deg D)/2 - deg a for a reduced form.
Vertex vertex_of_form(const QuadForm& F);

/// Canonical representative of the ideal class of F's point: the reduced
/// form itself on interior strata, and the minimal form of the orbit
/// under the constant inversions on the boundary stratum deg a =
/// (deg D)/2.  This is the same gluing enumerate_classes applies, so the
/// result is always a member of the class set of F's discriminant.
QuadForm class_representative(const QuadForm& F);

/// Exponent e with |z|_i = q^e for the point attached to F:
/// e = (deg D)/2 - deg a.  Negative iff F is not reducible in place
/// (deg a past the stratum range), so callers can flag unreduced input.
int imaginary_part_exponent(const QuadForm& F);

/// The class set Cl(O_D): one canonical reduced form per ideal class.
/// Conjugate classes appear separately; they share a vertex but label
/// distinct points.
struct ClassSet {
    Discriminant disc;
    std::vector<QuadForm> forms;  // canonically ordered
    /// Whether dedup merged anything outside the deg a = h stratum.  The
    /// candidate parametrization (b reduced mod 2a) admits no interior
    /// moves at all, so this is structurally impossible; recorded for
    /// verification reports.
    bool nontrivial_interior_dedup = false;

    std::size_t h() const { return forms.size(); }
};

/// Enumerates candidates (a monic of degree <= (deg D)/2, b ranging over
/// both square roots of D mod 2a, c exact) and glues the boundary stratum
/// deg a = (deg D)/2 under the constant Moebius inversions z -> -1/(z+u);
/// the output is seed-independent.  Requires inert D.
ClassSet enumerate_classes(const Discriminant& disc, std::uint64_t seed);

/// CSV export, columns: q, D, a, b, c, vertex.
std::string class_set_csv(const ClassSet& cs);

/// One substitution acting on a form: G = F(adj(m) * (x,y)), divided by
/// its content and monic-renormalized disc-preservingly.  The result's
/// discriminant is det(m)^2 times that of F.  Rows of m are (r, s; t, u).
/// This is the classical action on forms; it conflates a form with its
/// conjugate (diag(-1,1) maps (a,b,c) to (a,-b,c)), so orbits under it
/// can merge an ideal class with its inverse.  Class enumeration instead
/// tracks points; see gamma_orbit_oracle.
QuadForm apply_matrix(const QuadForm& F, const std::array<Poly, 4>& m);

/// Canonical form labeling the exact point w = (pn/pd) + (rn/rd) sqrt(DK).
/// The minimal form of w is cleared to a primitive integral form with monic
/// a, then w is rescaled by the unit putting its discriminant on the sheet
/// DK * (monic conductor)^2.  The root convention ties every sheet to the
/// same formal sqrt(DK), so conjugation stays coherent across conductors;
/// this is what lets Hecke images, whose conductors genuinely grow, be
/// compared against class sets of the scaled discriminants.
QuadForm point_state(const Poly& pn, const Poly& pd, const Poly& rn, const Poly& rd,
                     const Poly& DK);

/// Orbit partition of every disc-D candidate form under the bounded-entry
/// point action; ground truth for enumerate_classes at small scale.
struct OrbitPartition {
    std::vector<QuadForm> forms;                   // all candidates, canonical order
    std::vector<std::vector<std::size_t>> orbits;  // index sets into forms
    bool final_partition = true;                   // false when the budget cut the walk short

    std::size_t orbit_count() const { return orbits.size(); }
};

/// Brute-force point-equivalence oracle.  For every candidate form and
/// every matrix with entries of degree <= entry_degree_bound and unit
/// determinant, it moves the labeled point by the exact Moebius action in
/// K = k(sqrt(D)), renormalizes the image to its canonical disc-D form,
/// and unions exact candidate matches.  Unit scalings act trivially on
/// points and the boundary gluings come from matrices with constant
/// entries, so any bound >= 0 already yields the class partition; larger
/// bounds can only replay the same merges.  The work estimate is checked
/// against `budget` moves; on overrun the partial partition is returned
/// with final_partition = false.
OrbitPartition gamma_orbit_oracle(const Discriminant& disc, int entry_degree_bound,
                                  std::uint64_t seed, std::uint64_t budget = 50'000'000);

}  // namespace dcm
