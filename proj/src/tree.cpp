#include "dcm/tree.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dcm {

namespace {

mpz_class pow_ui(unsigned long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

void check_q(int q) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
}

}  // namespace

mpq_class mu(int q, int n) {
    check_q(q);
    if (n < 0) throw std::invalid_argument("vertex index must be nonnegative");
    if (n == 0) return mpq_class(q - 1) / mpq_class(2 * q);
    mpq_class m(mpz_class(q) * q - 1, 2 * pow_ui(q, n + 1));
    m.canonicalize();
    return m;
}

RayFunction RayFunction::delta(int n) {
    if (n < 0) throw std::invalid_argument("vertex index must be nonnegative");
    RayFunction f;
    f.values[n] = 1;
    return f;
}

mpq_class RayFunction::at(int n) const {
    auto it = values.find(n);
    return it == values.end() ? mpq_class(0) : it->second;
}

int RayFunction::max_support() const {
    int m = -1;
    for (const auto& [n, v] : values)
        if (v != 0) m = std::max(m, n);
    return m;
}

RayFunction adjacency(const RayFunction& f, int q) {
    check_q(q);
    RayFunction out;
    int top = f.max_support();
    for (int n = 0; n <= top + 1; ++n) {
        mpq_class v;
        if (n == 0)
            v = mpq_class(q + 1) * f.at(1);
        else
            v = mpq_class(q) * f.at(n - 1) + f.at(n + 1);
        if (v != 0) out.values[n] = v;
    }
    return out;
}

mpq_class inner_product(const RayFunction& f, const RayFunction& g, int q) {
    check_q(q);
    std::set<int> support;
    for (const auto& [n, v] : f.values) support.insert(n);
    for (const auto& [n, v] : g.values) support.insert(n);
    mpq_class acc = 0;
    for (int n : support) acc += f.at(n) * g.at(n) * mu(q, n);
    return acc;
}

Cplx inner_product(const std::function<Cplx(int)>& f, const std::function<Cplx(int)>& g,
                   int q, int N) {
    check_q(q);
    Cplx acc = 0;
    for (int n = 0; n <= N; ++n)
        acc += f(n) * std::conj(g(n)) * mu(q, n).get_d();
    return acc;
}

std::vector<LaurentRat> eisenstein_values(int q, int nmax) {
    check_q(q);
    if (nmax < 0) throw std::invalid_argument("vertex index must be nonnegative");
    LaurentRat e0 = LaurentRat::ratio(QPoly({q + 1, 0, mpq_class(-q) * (q + 1)}),
                                      QPoly({1, 0, -pow_ui(q, 2)}), 0);
    std::vector<LaurentRat> e{e0};
    if (nmax == 0) return e;
    LaurentRat lambda = LaurentRat::u_pow(-1) + LaurentRat::monomial(q, 1);
    e.push_back((lambda * e0).scaled(mpq_class(1, q + 1)));
    for (int n = 1; n < nmax; ++n)
        e.push_back(lambda * e[n] - e[n - 1].scaled(q));
    return e;
}

LaurentRat eisenstein_value(int q, int n) { return eisenstein_values(q, n).back(); }

std::vector<Cplx> eisenstein_values(int q, int nmax, Cplx u) {
    check_q(q);
    if (nmax < 0) throw std::invalid_argument("vertex index must be nonnegative");
    Cplx qq(static_cast<double>(q), 0.0);
    Cplx den = 1.0 - qq * qq * u * u;
    if (std::abs(den) < 1e-12 * std::max(1.0, std::norm(qq * u)))
        throw PoleError("E(v_0, s) has simple poles at u = 1/q and u = -1/q");
    Cplx e0 = (qq + 1.0) * (1.0 - qq * u * u) / den;
    std::vector<Cplx> e{e0};
    if (nmax == 0) return e;
    if (std::abs(u) < 1e-300) throw PoleError("E(v_n, s) values need u != 0 for n >= 1");
    Cplx lambda = 1.0 / u + qq * u;
    e.push_back(lambda * e0 / (qq + 1.0));
    for (int n = 1; n < nmax; ++n) e.push_back(lambda * e[n] - qq * e[n - 1]);
    return e;
}

Cplx eisenstein_value(int q, int n, Cplx u) { return eisenstein_values(q, n, u).back(); }

Cplx critical_u(int q, double theta) {
    return std::polar(1.0 / std::sqrt(static_cast<double>(q)), -theta);
}

Cplx eisenstein_star_partial(int q, int N, Cplx s) {
    check_q(q);
    if (N < 0) throw std::invalid_argument("truncation degree must be nonnegative");
    if (s.real() <= 1.0)
        throw std::domain_error("the lattice sum converges only for Re(s) > 1");
    // the max-degree-n stratum has (q^2-1) q^{2n} pairs of max norm q^n
    double lq = std::log(static_cast<double>(q));
    Cplx ratio = std::exp((2.0 - 2.0 * s) * lq);
    Cplx acc = 0;
    Cplx term = static_cast<double>(q) * q - 1.0;
    for (int n = 0; n <= N; ++n) {
        acc += term;
        term *= ratio;
    }
    return acc;
}

Cplx eisenstein_v0_partial(int q, int N, Cplx s) {
    double lq = std::log(static_cast<double>(q));
    // zeta_A(2s) = 1/(1 - q^{1-2s})
    Cplx zeta2_inv = 1.0 - std::exp((1.0 - 2.0 * s) * lq);
    return eisenstein_star_partial(q, N, s) * zeta2_inv / (static_cast<double>(q) - 1.0);
}

Cplx f_hat(int q, int n, double theta) {
    check_q(q);
    if (n < 0) throw std::invalid_argument("vertex index must be nonnegative");
    const Cplx i(0.0, 1.0);
    if (n == 0) return (q + 1.0) * i * std::sin(theta);
    double scale = std::pow(static_cast<double>(q), n / 2.0);
    return scale * i * (std::sin((n + 1) * theta) - q * std::sin((n - 1) * theta));
}

Cplx eisenstein_mean_truncated(int q, double theta, int N) {
    if (N < 0) throw std::invalid_argument("truncation degree must be nonnegative");
    std::vector<Cplx> e = eisenstein_values(q, N, critical_u(q, theta));
    Cplx acc = 0;
    for (int n = 0; n <= N; ++n) acc += e[n] * mu(q, n).get_d();
    return acc;
}

Quadrature gauss_legendre_pi(int m) {
    if (m < 1) throw std::invalid_argument("quadrature needs at least one node");
    Quadrature gl;
    gl.nodes.resize(m);
    gl.weights.resize(m);
    const double pi = std::acos(-1.0);
    for (int k = 0; k < m; ++k) {
        // Newton iteration on P_m from the Chebyshev-based initial guess
        double x = std::cos(pi * (k + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // map [-1, 1] onto [0, pi]
        gl.nodes[k] = pi * (x + 1.0) / 2.0;
        gl.weights[k] = pi / ((1.0 - x * x) * dp * dp);
    }
    return gl;
}

double kappa_printed_constant(int q) {
    return 4.0 * q * std::acos(-1.0) / (static_cast<double>(q) * q - 1.0);
}

namespace {

// Discrete part <f,u_cte> + (-1)^n <f,u_alt> plus the continuous integral
// int_0^pi <f,E_theta> E_theta(v_n) dtheta, the latter scaled by kappa.
std::vector<Cplx> reconstruct_at(const RayFunction& f, int q, int window, double kappa,
                                 const Quadrature& gl) {
    std::vector<Cplx> out(window, 0.0);
    mpq_class c_cte = 0, c_alt = 0;
    for (const auto& [m, v] : f.values) {
        c_cte += v * mu(q, m);
        c_alt += (m % 2 == 0 ? v : -v) * mu(q, m);
    }
    for (int n = 0; n < window; ++n)
        out[n] = c_cte.get_d() + (n % 2 == 0 ? 1.0 : -1.0) * c_alt.get_d();

    int top = std::max(window - 1, f.max_support());
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        std::vector<Cplx> e = eisenstein_values(q, top, critical_u(q, gl.nodes[j]));
        Cplx coef = 0;
        for (const auto& [m, v] : f.values) coef += v.get_d() * std::conj(e[m]) * mu(q, m).get_d();
        coef *= kappa * gl.weights[j];
        for (int n = 0; n < window; ++n) out[n] += coef * e[n];
    }
    return out;
}

double calibrate(int q, const Quadrature& gl) {
    // solve for kappa on delta_{v_1}: discrete part 2 mu(v_1), continuous
    // integral evaluated with kappa = 1
    RayFunction d1 = RayFunction::delta(1);
    std::vector<Cplx> bare = reconstruct_at(d1, q, 2, 0.0, gl);
    std::vector<Cplx> unit = reconstruct_at(d1, q, 2, 1.0, gl);
    double integral = (unit[1] - bare[1]).real();
    if (std::abs(integral) < 1e-300)
        throw std::runtime_error("calibration integral vanished");
    return (1.0 - bare[1].real()) / integral;
}

}  // namespace

double kappa_calibrated(int q, int nodes) {
    check_q(q);
    return calibrate(q, gauss_legendre_pi(nodes));
}

SpectralReport spectral_reconstruct(const RayFunction& f, int q, const SpectralOptions& opt) {
    check_q(q);
    if (opt.nodes < 1) throw std::invalid_argument("quadrature needs at least one node");
    int window = std::max(f.max_support() + 3, 4);

    SpectralReport rep;
    rep.q = q;
    rep.kappa_printed = kappa_printed_constant(q);

    std::ostringstream diag;
    int nodes = opt.nodes;
    Quadrature gl = gauss_legendre_pi(nodes);
    double kappa = opt.kappa > 0 ? opt.kappa : calibrate(q, gl);
    std::vector<Cplx> recon = reconstruct_at(f, q, window, kappa, gl);
    rep.quadrature_converged = false;
    for (int d = 0; d < opt.max_doublings; ++d) {
        int next_nodes = nodes * 2;
        Quadrature gl2 = gauss_legendre_pi(next_nodes);
        double kappa2 = opt.kappa > 0 ? opt.kappa : calibrate(q, gl2);
        std::vector<Cplx> recon2 = reconstruct_at(f, q, window, kappa2, gl2);
        double delta = 0.0;
        for (int n = 0; n < window; ++n) delta = std::max(delta, std::abs(recon2[n] - recon[n]));
        diag << "nodes " << nodes << " -> " << next_nodes << ": max delta " << delta << "\n";
        nodes = next_nodes;
        gl = std::move(gl2);
        kappa = kappa2;
        recon = std::move(recon2);
        if (delta < opt.refine_tol) {
            rep.quadrature_converged = true;
            break;
        }
    }
    if (!rep.quadrature_converged)
        diag << "no convergence below " << opt.refine_tol << " after " << opt.max_doublings
             << " doublings\n";

    rep.kappa_used = kappa;
    rep.kappa_printed_ratio = kappa / rep.kappa_printed;
    rep.nodes = nodes;
    rep.diagnostics = diag.str();
    rep.reconstruction.resize(window);
    rep.vertex_error.resize(window);
    for (int n = 0; n < window; ++n) {
        rep.reconstruction[n] = recon[n].real();
        rep.vertex_error[n] = std::abs(recon[n] - Cplx(f.at(n).get_d(), 0.0));
        rep.max_error = std::max(rep.max_error, rep.vertex_error[n]);
    }
    return rep;
}

std::string spectral_report_json(const SpectralReport& r) {
    nlohmann::json j;
    j["q"] = r.q;
    j["kappa_used"] = r.kappa_used;
    j["kappa_printed"] = r.kappa_printed;
    j["kappa_printed_ratio"] = r.kappa_printed_ratio;
    j["nodes"] = r.nodes;
    j["quadrature_converged"] = r.quadrature_converged;
    j["reconstruction"] = r.reconstruction;
    j["vertex_error"] = r.vertex_error;
    j["max_error"] = r.max_error;
    j["diagnostics"] = r.diagnostics;
    return j.dump(2);
}

}  // namespace dcm
