#pragma once

#include <cmath>
#include <complex>

#include "hypmax/errors.hpp"
#include "hypmax/geometry.hpp"
#include "hypmax/quadrature.hpp"

namespace hypmax {

// Analytic order alpha with the continuation constraint Re alpha > (1-n)/2.
struct ComplexOrder {
    cxd alpha;
    Dimension dim;

    ComplexOrder(cxd a, Dimension d) : alpha(a), dim(d) {
        if (a.real() <= 0.5 * (1.0 - d.n) + 1e-6)
            throw DomainError("ComplexOrder: Re alpha must exceed (1-n)/2");
    }
};

namespace detail {

// Lanczos g=7 coefficients.
inline constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline cxd lanczos_sum(cxd zm1) {
    cxd x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (zm1 + static_cast<double>(i));
    return x;
}

inline bool near_nonpositive_integer(cxd z, double tol = 1e-12) {
    if (z.real() > 0.5) return false;
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

}  // namespace detail

// Complex Gamma via Lanczos with reflection for Re z < 0.5.
inline cxd complex_gamma(cxd z) {
    if (detail::near_nonpositive_integer(z))
        throw DomainError("complex_gamma: pole at nonpositive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return M_PI / (std::sin(M_PI * z) * complex_gamma(1.0 - z));
    }
    cxd zm1 = z - 1.0;
    cxd t = zm1 + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, zm1 + 0.5) * std::exp(-t) * detail::lanczos_sum(zm1);
}

// log Gamma, valid as *a* logarithm of Gamma (branch differences cancel in
// exponentiated differences, which is the only way it is consumed here).
// Arguments with Re z < 0.5 are shifted up by the recurrence.
inline cxd complex_lgamma(cxd z) {
    if (detail::near_nonpositive_integer(z))
        throw DomainError("complex_lgamma: pole at nonpositive integer");
    cxd shift = 0.0;
    while (z.real() < 0.5) {
        shift += std::log(z);
        z += 1.0;
    }
    cxd zm1 = z - 1.0;
    cxd t = zm1 + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (zm1 + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_sum(zm1)) - shift;
}

// Gamma(a)/Gamma(b) through lgamma differences; safe where either factor
// alone would under/overflow.
inline cxd gamma_ratio(cxd a, cxd b) { return std::exp(complex_lgamma(a) - complex_lgamma(b)); }

// Pochhammer symbol (zeta)_k as an exact product.
inline cxd pochhammer(cxd zeta, int k) {
    if (k < 0) throw DomainError("pochhammer: k must be >= 0");
    cxd p = 1.0;
    for (int l = 1; l <= k; ++l) p *= zeta + static_cast<double>(l - 1);
    return p;
}

// Gauss hypergeometric series F(a,b;c;nu), restricted to |nu| < 1/2 where the
// plain Pochhammer series is rapidly convergent (the only regime needed by
// the large-t multiplier representation).
inline cxd hypergeometric_2f1(cxd a, cxd b, cxd c, cxd nu, double abs_tol = 1e-16,
                              int max_terms = 500) {
    if (std::abs(nu) >= 0.5)
        throw DomainError("hypergeometric_2f1: |nu| must be < 1/2");
    if (detail::near_nonpositive_integer(c))
        throw DomainError("hypergeometric_2f1: c is a nonpositive integer");
    cxd sum = 1.0, term = 1.0;
    double prev = 1.0;
    for (int k = 0; k < max_terms; ++k) {
        term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
                ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * nu;
        sum += term;
        double mag = std::abs(term);
        if (mag < abs_tol && prev < abs_tol) return sum;
        prev = mag;
    }
    throw NumericError("hypergeometric_2f1: series did not reach abs_tol", sum);
}

// Legendre function P^{-alpha-(n-2)/2}_{-1/2+i lambda}(cosh t) via the
// Mehler-Dirichlet integral
//   sqrt(2/pi) (sinh t)^{-mu} / Gamma(mu+1/2) *
//       int_0^t (cosh t - cosh s)^{mu-1/2} cos(lambda s) ds,   mu = alpha+(n-2)/2.
// The endpoint factor (cosh t - cosh s)^{mu-1/2} = (2 sinh((t+s)/2) sinh((t-s)/2))^{mu-1/2}
// is split as u^{mu-1/2} * smooth with u = t-s and handled by a Gauss-Jacobi
// block; the interior is integrated on panels capped below a quarter period.
inline cxd legendre_p(const ComplexOrder& order, double lambda, double t,
                      const QuadratureConfig& cfg = QuadratureConfig{}) {
    if (!(t > 0)) throw DomainError("legendre_p: t must be > 0");
    cfg.validate();
    const cxd mu = order.alpha + 0.5 * (order.dim.n - 2);
    const cxd ex = mu - 0.5;          // integrand exponent
    const double a = ex.real();       // Jacobi weight exponent, > -1
    const double lam = std::abs(lambda);

    double W = std::min(0.5 * t, 0.25 * cfg.jacobi_nodes / std::max(1.0, lam));
    auto smooth_base = [&](double u) {
        // (cosh t - cosh(t-u)) / u, positive and smooth through u = 0
        double su = (u > 1e-8) ? std::sinh(0.5 * u) / (0.5 * u) : 1.0 + u * u / 24.0;
        return su * std::sinh(t - 0.5 * u);
    };
    cxd block;
    if (ex.imag() == 0.0) {
        block = integrate_jacobi_block(
            [&](double u) {
                return std::pow(cxd(smooth_base(u), 0.0), ex) * std::cos(lambda * (t - u));
            },
            W, a, cfg.jacobi_nodes);
    } else {
        block = integrate_complex_endpoint(
            [&](double u) {
                return std::pow(cxd(smooth_base(u), 0.0), ex) * std::cos(lambda * (t - u));
            },
            W, ex, cfg);
    }

    cxd interior = 0.0;
    if (t - W > 1e-14) {
        auto edges = make_edges(0.0, t - W, M_PI / (4.0 * std::max(1.0, lam)), true, W);
        if (static_cast<int>(edges.size()) - 1 > cfg.max_panels)
            throw NumericError("legendre_p: oscillation requires more panels than max_panels",
                               block);
        interior = integrate_adaptive(
            [&](double s) {
                double base = 2.0 * std::sinh(0.5 * (t + s)) * std::sinh(0.5 * (t - s));
                return std::pow(cxd(base, 0.0), ex) * std::cos(lambda * s);
            },
            edges, cfg);
    }
    cxd integral = block + interior;
    cxd pre = std::sqrt(2.0 / M_PI) * std::pow(cxd(std::sinh(t), 0.0), -mu) /
              complex_gamma(mu + 0.5);
    return pre * integral;
}

// Oscillatory kernel J_m(r) = int_{-1}^1 e^{ivr} (1-v^2)^{m-1/2} dv, Re m > -1/2.
// Real order: a symmetric Gauss-Jacobi rule absorbs both endpoint
// singularities exactly. Complex order: the leftover (1-v^2)^{i Im m} factor
// oscillates in log near the endpoints, so those zones are integrated on
// dyadically shrinking pieces instead.
inline cxd oscillatory_j(cxd m, double r, const QuadratureConfig& cfg = QuadratureConfig{}) {
    if (m.real() <= -0.5) throw DomainError("oscillatory_j: Re m must be > -1/2");
    cfg.validate();
    const double a = m.real() - 0.5;
    int nodes = std::max(cfg.jacobi_nodes, static_cast<int>(std::ceil(3.0 * std::abs(r))));
    if (nodes > 2048) throw NumericError("oscillatory_j: r too large for node budget", 0.0);
    if (m.imag() == 0.0) {
        const QuadRule& rule = detail::gauss_jacobi(nodes, a, a);
        cxd sum = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i)
            sum += rule.w[i] * std::exp(cxd(0.0, rule.x[i] * r));
        return sum;
    }
    const cxd ex = m - 0.5;
    auto weight = [&](double v) { return std::pow(cxd((1.0 - v) * (1.0 + v), 0.0), ex); };
    // interior on capped panels
    const double h = 0.25;
    auto edges = make_edges(-1.0 + h, 1.0 - h, M_PI / (4.0 * std::max(1.0, std::abs(r))));
    cxd total = integrate_adaptive(
        [&](double v) { return weight(v) * std::exp(cxd(0.0, v * r)); }, edges, cfg);
    // endpoint zones: u = distance to the endpoint, dyadic toward 0
    for (int side = 0; side < 2; ++side) {
        double sgn = side == 0 ? 1.0 : -1.0;  // v = sgn (1 - u)
        double hi = h;
        for (int k = 0; k < 80 && hi > 0; ++k) {
            double lo = hi * 0.5;
            cxd piece = integrate_gl(
                [&](double u) {
                    double v = sgn * (1.0 - u);
                    return std::pow(cxd(u * (2.0 - u), 0.0), ex) * std::exp(cxd(0.0, v * r));
                },
                lo, hi, 24);
            total += piece;
            // remaining mass bound ~ lo^{Re m + 1/2}
            if (std::pow(lo, a + 1.0) < 0.25 * cfg.abs_tol) {
                // close the stub [0, lo] with its leading-order value
                cxd stub = std::pow(cxd(lo, 0.0), ex + 1.0) * std::pow(cxd(2.0, 0.0), ex) /
                           (ex + 1.0) * std::exp(cxd(0.0, sgn * r));
                total += stub;
                break;
            }
            hi = lo;
        }
    }
    return total;
}

}  // namespace hypmax
