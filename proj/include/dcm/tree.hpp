#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dcm/laurent.hpp"

namespace dcm {

using Cplx = std::complex<double>;

/// Vertex mass of the probability measure on the quotient ray:
/// mu(v_0) = (q-1)/(2q) and mu(v_n) = (q^2-1)/(2q^{n+1}) for n >= 1.
mpq_class mu(int q, int n);

/// Finitely supported function on the ray vertices v_0, v_1, ...; absent
/// indices are zero.  These are the test functions of the L^2 theory;
/// functions with infinite tails (Eisenstein values) are handled through
/// callables plus a truncation degree instead.
struct RayFunction {
    std::map<int, mpq_class> values;

    static RayFunction delta(int n);
    mpq_class at(int n) const;
    /// Largest index carrying a nonzero value, -1 when empty.
    int max_support() const;

    bool operator==(const RayFunction& o) const { return values == o.values; }
};

/// Quotient adjacency operator: (Tf)(v_0) = (q+1) f(v_1) and
/// (Tf)(v_n) = q f(v_{n-1}) + f(v_{n+1}) for n >= 1.
RayFunction adjacency(const RayFunction& f, int q);

/// Exact inner product of finitely supported functions, sum of
/// f(v_n) g(v_n) mu(v_n) over the union of supports.
mpq_class inner_product(const RayFunction& f, const RayFunction& g, int q);

/// Truncated inner product sum_{n <= N} f(v_n) conj(g(v_n)) mu(v_n).  The
/// caller owns the tail estimate; against a critical-line Eisenstein factor
/// the terms decay like q^{-n/2}, so the tail beyond N is O(q^{-N/2}).
Cplx inner_product(const std::function<Cplx(int)>& f, const std::function<Cplx(int)>& g,
                   int q, int N);

/// Eisenstein values on the ray as exact rational functions of u = q^{-s}:
/// E(v_0) = (q+1)(1-qu^2)/(1-q^2u^2), then the eigenfunction recurrence
/// E(v_1) = lambda E(v_0)/(q+1), E(v_{n+1}) = lambda E(v_n) - q E(v_{n-1})
/// with lambda = u^{-1} + qu.  Index i of the result is the value at v_i.
std::vector<LaurentRat> eisenstein_values(int q, int nmax);
LaurentRat eisenstein_value(int q, int n);

/// Numeric evaluation of the same recurrence.  Throws PoleError at the
/// simple poles u = +-1/q of E(v_0) and at u = 0 (where u^{-n} blows up).
std::vector<Cplx> eisenstein_values(int q, int nmax, Cplx u);
Cplx eisenstein_value(int q, int n, Cplx u);

/// The point of the critical line u = q^{-1/2} e^{-i theta} carrying the
/// adjacency eigenvalue 2 sqrt(q) cos(theta).
Cplx critical_u(int q, double theta);

/// Partial lattice sum E*(v_0, s) = sum over (0,0) != (c,d) in A^2 with
/// max(deg c, deg d) <= N of max{|c|,|d|}^{-2s}.  The max-degree-n stratum
/// holds (q^2-1) q^{2n} pairs, each contributing q^{-2ns}, so the tail is
/// geometric with ratio q^{2 - 2 Re(s)}.  Requires Re(s) > 1.
Cplx eisenstein_star_partial(int q, int N, Cplx s);

/// E*(v_0, s) / ((q-1) zeta_A(2s)), the truncated-lattice approximation of
/// E(v_0, s).  Requires Re(s) > 1.
Cplx eisenstein_v0_partial(int q, int N, Cplx s);

/// Continuous-spectrum eigenfunction normalized at the ramified vertex:
/// fhat_theta(v_0) = (q+1) i sin(theta) and
/// fhat_theta(v_n) = q^{n/2} i (sin((n+1)theta) - q sin((n-1)theta)).
/// Proportional to E(., 1/2 + i theta/log q) by the factor
/// i sin(theta)(1 - q e^{-2i theta})/(1 - e^{-2i theta}).
Cplx f_hat(int q, int n, double theta);

/// sum_{n <= N} E(v_n, 1/2 + i theta/log q) mu(v_n); converges to 0 as
/// N grows since the Eisenstein series on the critical line has mu-mean
/// zero, with |value| = O(N q^{-N/2}).
Cplx eisenstein_mean_truncated(int q, double theta, int N);

/// Gauss-Legendre rule with m nodes mapped onto [0, pi].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre_pi(int m);

/// The constant printed in the spectral resolution, 4 q pi / (q^2 - 1).
double kappa_printed_constant(int q);
/// Normalization fixed empirically so that the resolution reproduces the
/// delta function at v_1 exactly; independent deltas then validate it.
double kappa_calibrated(int q, int nodes = 512);

struct SpectralOptions {
    int nodes = 512;
    double refine_tol = 1e-9;
    int max_doublings = 4;
    /// Spectral-measure normalization; values <= 0 request calibration on
    /// delta_{v_1} at each node count.
    double kappa = 0.0;
};

struct SpectralReport {
    int q = 0;
    double kappa_used = 0.0;
    double kappa_printed = 0.0;
    /// kappa_used / kappa_printed; the calibrated value sits near 1/(4 pi^2).
    double kappa_printed_ratio = 0.0;
    int nodes = 0;
    bool quadrature_converged = true;
    std::string diagnostics;
    /// Values at vertices 0..W-1 where W covers the support with a margin.
    std::vector<double> reconstruction;
    std::vector<double> vertex_error;
    double max_error = 0.0;
};

/// Evaluates the spectral resolution
///   f(v_n) ?= <f,u_cte> + (-1)^n <f,u_alt>
///             + kappa * int_0^pi <f,E_theta> E_theta(v_n) dtheta
/// on the support of f (plus a margin), doubling quadrature nodes until two
/// successive reconstructions agree within refine_tol.
SpectralReport spectral_reconstruct(const RayFunction& f, int q, const SpectralOptions& opt = {});

std::string spectral_report_json(const SpectralReport& r);

}  // namespace dcm
