#include "dcm/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "dcm/factor.hpp"

namespace dcm {

namespace {

// deg D even and leading coefficient a non-square in F_q
bool inert_criterion(const Poly& D) {
    if (D.is_zero()) return false;
    return D.deg() % 2 == 0 && !D.field().is_square(D.lead());
}

void check_valid_form(const QuadForm& F) {
    if (F.a.is_zero() || !F.a.is_monic()) throw std::invalid_argument("form needs a monic leading coefficient");
    if (gcd(gcd(F.a, F.b), F.c).deg() != 0) throw std::invalid_argument("form is not primitive");
}

// Union-find over candidate indices.
struct Merge {
    std::vector<std::size_t> parent;
    explicit Merge(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t x, std::size_t y) { parent[find(x)] = find(y); }
};

// gamma = ((0,-1),(1,u)) for constant u, i.e. z -> -1/(z+u): the only
// substitutions that can carry one candidate to another.  For any bottom
// row (t, u), the new leading coefficient is F(u,-t) and |F(u,-t)| =
// |a| |u - t z| |u - t zbar| >= |a| (|t| q^n)^2 with n = (deg D)/2 - deg a,
// because no element of A can cancel the imaginary part of t z.  Hence
// deg F(u,-t) >= deg D - deg a + 2 deg t, which exceeds (deg D)/2 unless
// t = 0 (a translation, which moves deg b out of range unless trivial) or
// t is a unit and deg a = (deg D)/2.  Tests replay this reduction against
// the exact Moebius sweep of gamma_orbit_oracle.
QuadForm boundary_inversion(const QuadForm& F, Fq::Elem u) {
    const Fq& fq = F.a.field();
    Poly uP = Poly::constant(fq, u);
    Poly a2 = F.a * uP * uP - F.b * uP + F.c;
    Poly b2 = F.a.scaled(fq.from_int(2)) * uP - F.b;
    Poly c2 = F.a;
    Fq::Elem l = a2.lead();
    QuadForm r{a2.scaled(fq.inv(l)), b2, c2.scaled(l)};
    return reduce_form(r);
}

}  // namespace

Discriminant make_discriminant(const Poly& D, std::uint64_t seed) {
    if (D.is_zero()) throw std::invalid_argument("zero discriminant");
    const Fq& fq = D.field();
    Factorization fac = factor(D, seed);
    bool square = fq.is_square(fac.unit);
    for (const auto& [p, e] : fac.factors) square = square && e % 2 == 0;
    if (square) throw std::invalid_argument("discriminant is a perfect square");

    Poly f = Poly::one(fq);
    for (const auto& [p, e] : fac.factors)
        for (int i = 0; i < e / 2; ++i) f *= p;
    Poly D_K = D / (f * f);
    return Discriminant{D, D_K, f, inert_criterion(D), D_K.deg() == 0};
}

Poly QuadForm::disc() const {
    return b * b - (a * c).scaled(a.field().from_int(4));
}

bool QuadForm::operator<(const QuadForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

QuadForm make_form(const Poly& a, const Poly& b, const Poly& c) {
    QuadForm F{a, b, c};
    check_valid_form(F);
    Poly D = F.disc();
    if (D.is_zero() || is_perfect_square(D)) throw std::invalid_argument("square discriminant");
    return F;
}

bool is_reduced(const QuadForm& F) {
    if (F.a.is_zero() || !F.a.is_monic()) return false;
    if (gcd(gcd(F.a, F.b), F.c).deg() != 0) return false;
    Poly D = F.disc();
    if (!inert_criterion(D)) return false;
    return F.b.deg() < F.a.deg() && F.a.deg() <= D.deg() / 2;
}

QuadForm reduce_form(const QuadForm& F) {
    check_valid_form(F);
    const Fq& fq = F.a.field();
    Poly D = F.disc();
    if (!inert_criterion(D))
        throw std::domain_error("reduction is only defined for inert discriminants");
    int h = D.deg() / 2;

    Poly a = F.a, b = F.b, c = F.c;
    Poly two = Poly::constant(fq, fq.from_int(2));
    for (;;) {
        Poly t = b.divrem(a * two).first;
        c = a * t * t - b * t + c;
        b = b - a * two * t;
        if (a.deg() <= h) break;
        // swap z -> -l/z, the point-correct inversion with monic output
        Fq::Elem l = c.lead();
        Poly na = c.scaled(fq.inv(l));
        c = a.scaled(l);
        a = na;
        b = -b;
    }
    return {a, b, c};
}

Vertex vertex_of_form(const QuadForm& F) {
    if (!is_reduced(F)) throw std::invalid_argument("vertex of an unreduced form");
    return {F.disc().deg() / 2 - F.a.deg()};
}

int imaginary_part_exponent(const QuadForm& F) {
    Poly D = F.disc();
    if (!inert_criterion(D))
        throw std::domain_error("imaginary part exponent needs an inert discriminant");
    return D.deg() / 2 - F.a.deg();
}

namespace {

// All primitive candidates (a, b, c) with a monic of degree <= h, b any
// square root of D modulo a with deg b < deg a, c = (b^2 - D)/(4a).  Both
// roots stay: b and -b label conjugate points.
std::vector<QuadForm> candidate_forms(const Discriminant& disc, std::uint64_t seed) {
    const Fq& fq = disc.D.field();
    int h = disc.half_deg();
    Fq::Elem inv4 = fq.inv(fq.from_int(4));
    std::vector<QuadForm> out;
    for (int m = 0; m <= h; ++m) {
        for (const Poly& a : monic_polys(fq, m)) {
            for (const Poly& b : sqrt_mod(disc.D, a, seed)) {
                Poly num = b * b - disc.D;
                Poly c = (num / a).scaled(inv4);
                if (gcd(gcd(a, b), c).deg() != 0) continue;
                out.push_back({a, b, c});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

QuadForm class_representative(const QuadForm& F) {
    const Fq& fq = F.a.field();
    QuadForm R = reduce_form(F);
    if (2 * R.a.deg() < R.disc().deg()) return R;

    // boundary stratum: orbit closure under the constant inversions, then
    // the minimal form, matching the gluing in enumerate_classes
    std::set<QuadForm> seen{R};
    std::vector<QuadForm> queue{R};
    while (!queue.empty()) {
        QuadForm G = queue.back();
        queue.pop_back();
        for (Fq::Elem u = 0; u < fq.q(); ++u) {
            QuadForm H = boundary_inversion(G, u);
            if (seen.insert(H).second) queue.push_back(H);
        }
    }
    return *seen.begin();
}

ClassSet enumerate_classes(const Discriminant& disc, std::uint64_t seed) {
    if (!disc.inert_at_infinity)
        throw std::domain_error("class enumeration needs an inert discriminant");
    int h = disc.half_deg();
    const Fq& fq = disc.D.field();

    std::vector<QuadForm> cands = candidate_forms(disc, seed);

    // Interior strata (deg a < h) carry one class per candidate: b is
    // unique mod 2a and no substitution can leave the stratum (see the
    // degree bound at boundary_inversion), so even a form and its
    // conjugate stay distinct classes.  The boundary stratum is glued
    // under the constant inversions.
    std::vector<QuadForm> boundary;
    std::vector<QuadForm> result;
    for (const QuadForm& F : cands)
        (F.a.deg() == h ? boundary : result).push_back(F);

    std::map<QuadForm, std::size_t> index;
    for (std::size_t i = 0; i < boundary.size(); ++i) index[boundary[i]] = i;
    Merge uf(boundary.size());
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        for (Fq::Elem u = 0; u < fq.q(); ++u) {
            QuadForm G = boundary_inversion(boundary[i], u);
            auto it = index.find(G);
            if (it == index.end()) throw std::logic_error("boundary stratum not closed");
            uf.unite(i, it->second);
        }
    }
    std::map<std::size_t, QuadForm> reps;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        std::size_t r = uf.find(i);
        auto it = reps.find(r);
        if (it == reps.end()) {
            reps.emplace(r, boundary[i]);
        } else if (boundary[i] < it->second) {
            it->second = boundary[i];
        }
    }
    for (const auto& [r, F] : reps) result.push_back(F);

    std::sort(result.begin(), result.end());
    return ClassSet{disc, std::move(result), false};
}

std::string class_set_csv(const ClassSet& cs) {
    std::ostringstream os;
    os << "# drinfeld-cm-lab v1\n";
    os << "q,D,a,b,c,vertex\n";
    for (const QuadForm& F : cs.forms) {
        os << cs.disc.D.field().q() << "," << cs.disc.D.to_string() << "," << F.a.to_string()
           << "," << F.b.to_string() << "," << F.c.to_string() << ","
           << vertex_of_form(F).n << "\n";
    }
    return os.str();
}

QuadForm apply_matrix(const QuadForm& F, const std::array<Poly, 4>& m) {
    const Fq& fq = F.a.field();
    const Poly &r = m[0], &s = m[1], &t = m[2], &u = m[3];
    Poly det = r * u - s * t;
    if (det.deg() != 0) throw std::invalid_argument("matrix determinant must be a unit");

    Poly two = Poly::constant(fq, fq.from_int(2));
    Poly a2 = F.a * u * u - F.b * u * t + F.c * t * t;
    Poly b2 = -(F.a * two * u * s) + F.b * (u * r + s * t) - F.c * two * r * t;
    Poly c2 = F.a * s * s - F.b * s * r + F.c * r * r;
    if (a2.is_zero()) throw std::domain_error("degenerate substitution");

    Poly g = gcd(gcd(a2, b2), c2);
    if (g.deg() > 0) {
        a2 = a2 / g;
        b2 = b2 / g;
        c2 = c2 / g;
    }
    Fq::Elem l = a2.lead();
    return {a2.scaled(fq.inv(l)), b2, c2.scaled(l)};
}

namespace {

// Reduced fraction of polynomials with a monic denominator; just enough
// arithmetic for the exact Moebius action below.
struct Frac {
    Poly num, den;

    Frac(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw std::logic_error("zero denominator");
        if (num.is_zero()) {
            den = Poly::one(num.field());
            return;
        }
        Poly g = gcd(num, den);
        if (g.deg() > 0) {
            num = num / g;
            den = den / g;
        }
        Fq::Elem l = den.lead();
        if (l != 1) {
            Fq::Elem i = den.field().inv(l);
            num = num.scaled(i);
            den = den.scaled(i);
        }
    }
    explicit Frac(Poly n) : num(std::move(n)), den(Poly::one(num.field())) {}

    bool is_zero() const { return num.is_zero(); }

    Frac operator+(const Frac& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Frac operator-(const Frac& o) const { return {num * o.den - o.num * den, den * o.den}; }
    Frac operator*(const Frac& o) const { return {num * o.num, den * o.den}; }
    Frac operator/(const Frac& o) const {
        if (o.is_zero()) throw std::logic_error("division by zero fraction");
        return {num * o.den, den * o.num};
    }
};

// Canonical form of the point w = p + r sqrt(DK): the minimal form of w is
// cleared to a primitive integral form with monic a, then the point is
// rescaled by the unit making the distinguished root land on the sheet
// DK * (monic conductor)^2.  lambda = 2 a r is conductor-times-unit exactly
// (the discriminant of the cleared form is lambda^2 DK), so dividing b and
// c by its leading coefficient pins the conductor monic; every sheet is
// referenced to the same formal sqrt(DK), which keeps conjugation coherent
// across conductors.
QuadForm state_from_parts(const Frac& p1, const Frac& r1, const Poly& DK) {
    const Fq& fq = DK.field();
    if (r1.is_zero()) throw std::logic_error("point fell into the base field");
    Frac dD{DK};

    Frac bR = Frac(Poly::constant(fq, fq.neg(fq.from_int(2)))) * p1;
    Frac cR = p1 * p1 - r1 * r1 * dD;
    Poly g = gcd(bR.den, cR.den);
    Poly lcm = bR.den * (cR.den / g);
    Poly a0 = lcm;
    Poly b0 = bR.num * (lcm / bR.den);
    Poly c0 = cR.num * (lcm / cR.den);
    Poly content = gcd(gcd(a0, b0), c0);
    if (content.deg() > 0) {
        a0 = a0 / content;
        b0 = b0 / content;
        c0 = c0 / content;
    }
    Fq::Elem l = a0.lead();
    if (l != 1) {
        Fq::Elem i = fq.inv(l);
        a0 = a0.scaled(i);
        b0 = b0.scaled(i);
        c0 = c0.scaled(i);
    }

    Frac lam = Frac(a0.scaled(fq.from_int(2))) * r1;
    if (lam.den.deg() != 0 || lam.is_zero())
        throw std::logic_error("point scaling factor is not integral");
    Fq::Elem lam_c = fq.mul(lam.num.lead(), fq.inv(lam.den.lead()));
    Fq::Elem inv_l = fq.inv(lam_c);
    QuadForm out{a0, b0.scaled(inv_l), c0.scaled(fq.mul(inv_l, inv_l))};

    Poly conductor = lam.num.scaled(fq.mul(inv_l, fq.inv(lam.den.lead())));
    if (out.disc() != DK * conductor * conductor)
        throw std::logic_error("point state left the conductor lattice");
    return out;
}

// Canonical disc-D form labeling the scaled image of the point of F under
// the Moebius action of ((r,s),(t,u)).  Exact arithmetic in K = k(sqrt(D)):
// with w = p0 + r0 sqrt(D), the image (r w + s)/(t w + u) has coordinates
// obtained by rationalizing with the conjugate denominator.
QuadForm moebius_image(const QuadForm& F, const Poly& D, const std::array<Poly, 4>& m) {
    const Fq& fq = F.a.field();
    Poly two_a = F.a.scaled(fq.from_int(2));
    Frac p0(-F.b, two_a);
    Frac r0(Poly::one(fq), two_a);

    Frac np = Frac(m[0]) * p0 + Frac(m[1]);
    Frac nr = Frac(m[0]) * r0;
    Frac mp = Frac(m[2]) * p0 + Frac(m[3]);
    Frac mr = Frac(m[2]) * r0;

    Frac dD{D};
    Frac norm = mp * mp - mr * mr * dD;
    if (norm.is_zero()) throw std::logic_error("moebius denominator vanished");
    Frac p1 = (np * mp - nr * mr * dD) / norm;
    Frac r1 = (nr * mp - np * mr) / norm;

    QuadForm out = state_from_parts(p1, r1, D);
    if (out.disc() != D) throw std::logic_error("moebius image left the discriminant sheet");
    return out;
}

}  // namespace

QuadForm point_state(const Poly& pn, const Poly& pd, const Poly& rn, const Poly& rd,
                     const Poly& DK) {
    if (pd.is_zero() || rd.is_zero()) throw std::invalid_argument("zero denominator");
    return state_from_parts(Frac(pn, pd), Frac(rn, rd), DK);
}

OrbitPartition gamma_orbit_oracle(const Discriminant& disc, int entry_degree_bound,
                                  std::uint64_t seed, std::uint64_t budget) {
    if (!disc.inert_at_infinity)
        throw std::domain_error("orbit oracle needs an inert discriminant");
    if (entry_degree_bound < 0) throw std::invalid_argument("negative entry degree bound");
    const Fq& fq = disc.D.field();

    OrbitPartition out;
    out.forms = candidate_forms(disc, seed);

    std::map<QuadForm, std::size_t> index;
    for (std::size_t i = 0; i < out.forms.size(); ++i) index[out.forms[i]] = i;

    std::uint64_t moves = 0;
    Merge uf(out.forms.size());

    double per_entry = std::pow(static_cast<double>(fq.q()), entry_degree_bound + 1);
    double tuples = per_entry * per_entry * per_entry * per_entry;
    if (tuples <= 1e8) {
        std::vector<std::array<Poly, 4>> mats;
        std::vector<Poly> entries = polys_up_to(fq, entry_degree_bound);
        for (const Poly& r : entries)
            for (const Poly& s : entries)
                for (const Poly& t : entries)
                    for (const Poly& u : entries) {
                        Poly det = r * u - s * t;
                        if (det.deg() != 0) continue;
                        mats.push_back({r, s, t, u});
                    }

        for (std::size_t i = 0; i < out.forms.size() && out.final_partition; ++i) {
            for (const auto& m : mats) {
                if (++moves > budget) {
                    out.final_partition = false;
                    break;
                }
                QuadForm G = moebius_image(out.forms[i], disc.D, m);
                auto it = index.find(G);
                if (it != index.end()) uf.unite(i, it->second);
            }
        }
    } else {
        // Large bounds: the blind sweep is out of reach, but the candidate
        // region prunes it exactly.  For F = (a,b,c) with point z and a
        // matrix ((r,s),(t,u)), the image a-part has deg a' = deg Q where
        // Q(t,u) = a u^2 - b t u + c t^2 = a N(t z + u).  D inert makes the
        // form anisotropic over the completion at infinity, |x - z| >= |Im z|
        // for all rational x, hence |Q| >= |a| |t|^2 |Im z|^2, i.e.
        // deg Q >= deg D - deg a + 2 deg t.  An image inside the candidate
        // region needs deg a' <= deg D / 2, forcing 2 deg t <= deg a - deg D/2
        // <= 0: t = 0, or t constant with deg a = deg D / 2 exactly.  t = 0
        // gives scale-plus-translate maps, which never send one candidate
        // state to a different one (both b and its translate would need
        // degree < deg a).  For unit t, PGL scaling fixes t = 1, nonconstant
        // u makes deg(a u^2) dominate Q again, and the top row (r, s) with
        // r u - s t a unit is a trailing translation by r: at most one
        // residue of r mod nothing lands b' back below deg a'.  So per
        // candidate and per constant u0 only the translations r with
        // r = (unit) * quotient(inverted b, 2a) can land back below deg a,
        // because the inverted state is a unit rescaling of the actual image
        // point and the rescaling unit is not visible from outside.
        const Poly one = Poly::one(fq);
        for (std::size_t i = 0; i < out.forms.size() && out.final_partition; ++i) {
            for (Fq::Elem e = 0; e < fq.q() && out.final_partition; ++e) {
                if (++moves > budget) {
                    out.final_partition = false;
                    break;
                }
                Poly u0 = Poly::constant(fq, e);
                std::array<Poly, 4> minv{Poly::zero(fq), -one, one, u0};
                QuadForm G = moebius_image(out.forms[i], disc.D, minv);
                Poly beta = G.b / G.a.scaled(fq.from_int(2));
                if (beta.deg() > entry_degree_bound) continue;
                std::vector<Poly> tops;
                if (beta.is_zero()) {
                    tops.push_back(beta);
                } else {
                    for (Fq::Elem nu = 1; nu < fq.q(); ++nu) tops.push_back(beta.scaled(nu));
                }
                for (const Poly& r : tops) {
                    if (++moves > budget) {
                        out.final_partition = false;
                        break;
                    }
                    std::array<Poly, 4> m{r, r * u0 - one, one, u0};
                    QuadForm H = moebius_image(out.forms[i], disc.D, m);
                    auto it = index.find(H);
                    if (it != index.end()) uf.unite(i, it->second);
                }
            }
        }
    }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < out.forms.size(); ++i) groups[uf.find(i)].push_back(i);
    for (auto& [root, members] : groups) out.orbits.push_back(std::move(members));
    std::sort(out.orbits.begin(), out.orbits.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return out;
}

}  // namespace dcm
