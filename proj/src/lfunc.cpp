#include "dcm/lfunc.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "dcm/factor.hpp"
#include "dcm/tree.hpp"

namespace dcm {

int CharacterChiD::operator()(const Poly& f) const {
    if (f.is_zero() || f.lead() != 1)
        throw std::invalid_argument("character argument must be monic");
    if (f.is_constant()) return 1;
    return residue_symbol(D, f);
}

LaurentRat LPolynomial::as_laurent() const {
    std::vector<mpq_class> c;
    c.reserve(coefficients.size());
    for (long long v : coefficients) c.emplace_back(static_cast<long>(v));
    return LaurentRat::from_poly(QPoly(std::move(c)));
}

LPolynomial l_polynomial(const Discriminant& disc, bool full_window) {
    const Fq& fq = disc.D.field();
    CharacterChiD chi{disc.D};
    int d = disc.D.deg();
    int cap = 2 * d;

    LPolynomial out{disc.D, {}, false};
    for (int n = 0; n <= cap; ++n) {
        long long cn = 0;
        for (const Poly& f : monic_polys(fq, n)) cn += chi(f);
        out.coefficients.push_back(cn);
        if (!full_window && n >= d && cn == 0 && out.coefficients[n - 1] == 0) break;
    }

    if (static_cast<int>(out.coefficients.size()) >= d + 2) {
        bool tv = true;
        for (int n = d; n < static_cast<int>(out.coefficients.size()); ++n)
            tv = tv && out.coefficients[n] == 0;
        out.tail_vanished = tv;
    }
    return out;
}

LaurentRat lk_trivial(const Discriminant& disc) {
    if (disc.f.deg() != 0)
        throw std::domain_error("zeta identity holds for the maximal order: D must be squarefree");
    LPolynomial L = l_polynomial(disc);
    return zeta_A(disc.D.field().q()) * L.as_laurent();
}

ClassSumCheck class_sum_check(const Discriminant& disc, std::uint64_t seed) {
    if (disc.f.deg() != 0)
        throw std::domain_error("class sum identity needs a squarefree discriminant");
    if (!disc.inert_at_infinity)
        throw std::domain_error("class sum identity needs an inert discriminant");
    if (disc.D.deg() < 2)
        throw std::domain_error("class sum identity needs deg D >= 2");

    int q = static_cast<int>(disc.D.field().q());
    int h = disc.half_deg();

    ClassSet cs = enumerate_classes(disc, seed);
    std::vector<LaurentRat> E = eisenstein_values(q, h);

    ClassSumCheck out;
    out.class_count = cs.h();
    for (const QuadForm& F : cs.forms) out.lhs += E[vertex_of_form(F).n];

    LPolynomial L = l_polynomial(disc);
    out.rhs = zeta_A(q) * zeta_A(q, ZetaSlot::two_s).inverse() * LaurentRat::u_pow(-h) *
              L.as_laurent();
    out.equal = out.lhs == out.rhs;
    return out;
}

std::complex<double> critical_line_eval(const LPolynomial& L, double t) {
    double lq = std::log(static_cast<double>(L.D.field().q()));
    std::complex<double> u = std::exp(-std::complex<double>(0.5, t) * lq);
    std::complex<double> acc = 0, up = 1;
    for (long long c : L.coefficients) {
        acc += static_cast<double>(c) * up;
        up *= u;
    }
    return acc;
}

std::string l_polynomial_csv(const LPolynomial& L) {
    std::ostringstream os;
    os << "# drinfeld-cm-lab v1\n";
    os << "q,D,n,c_n\n";
    for (std::size_t n = 0; n < L.coefficients.size(); ++n)
        os << L.D.field().q() << "," << L.D.to_string() << "," << n << "," << L.coefficients[n]
           << "\n";
    return os.str();
}

std::string growth_report_csv(const std::vector<LPolynomial>& ls, const std::vector<double>& ts) {
    std::ostringstream os;
    os << "# drinfeld-cm-lab v1\n";
    os << "q,D,degD,t,abs_L,ref_bound\n";
    os << std::setprecision(12);
    for (const LPolynomial& L : ls) {
        int d = L.D.deg();
        double q = static_cast<double>(L.D.field().q());
        double ref = std::pow(q, d / 4.0);
        for (double t : ts)
            os << L.D.field().q() << "," << L.D.to_string() << "," << d << "," << t << ","
               << std::abs(critical_line_eval(L, t)) << "," << ref << "\n";
    }
    return os.str();
}

}  // namespace dcm
