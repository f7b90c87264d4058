#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "hypmax/errors.hpp"
#include "hypmax/geometry.hpp"
#include "hypmax/parallel.hpp"
#include "hypmax/special.hpp"

namespace hypmax {

// ---------------------------------------------------------------------------
// sampled radial / spectral profiles
// ---------------------------------------------------------------------------

struct RadialFunction {
    Dimension dim;
    std::vector<double> grid;    // strictly increasing r-values >= 0
    std::vector<cxd> values;

    void validate() const {
        if (grid.size() != values.size() || grid.size() < 2)
            throw DomainError("RadialFunction: grid/value size mismatch");
        if (grid.front() < 0) throw DomainError("RadialFunction: grid[0] must be >= 0");
        for (std::size_t i = 0; i + 1 < grid.size(); ++i)
            if (!(grid[i] < grid[i + 1]))
                throw DomainError("RadialFunction: grid must be strictly increasing");
        for (cxd v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw DomainError("RadialFunction: non-finite value");
    }
};

struct SpectralFunction {
    Dimension dim;
    std::vector<double> lgrid;   // strictly increasing lambda-values >= 0
    std::vector<cxd> values;

    void validate() const {
        if (lgrid.size() != values.size() || lgrid.size() < 2)
            throw DomainError("SpectralFunction: grid/value size mismatch");
        if (lgrid.front() < 0) throw DomainError("SpectralFunction: lgrid[0] must be >= 0");
        for (std::size_t i = 0; i + 1 < lgrid.size(); ++i)
            if (!(lgrid[i] < lgrid[i + 1]))
                throw DomainError("SpectralFunction: lgrid must be strictly increasing");
    }
};

// Natural cubic spline on a strictly increasing grid.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, const std::vector<double>& y) : x_(std::move(x)), y_(y) {
        std::size_t n = x_.size();
        if (n < 2) throw DomainError("CubicSpline: need at least two nodes");
        m_.assign(n, 0.0);
        if (n > 2) {
            std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), rhs(n, 0.0);
            for (std::size_t i = 1; i + 1 < n; ++i) {
                double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
                a[i] = h0 / 6.0;
                b[i] = (h0 + h1) / 3.0;
                c[i] = h1 / 6.0;
                rhs[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
            }
            b[0] = b[n - 1] = 1.0;
            for (std::size_t i = 1; i < n; ++i) {
                double w = a[i] / b[i - 1];
                b[i] -= w * c[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m_[n - 1] = rhs[n - 1] / b[n - 1];
            for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - c[i] * m_[i + 1]) / b[i];
        }
    }

    // zero outside the grid when clamp_zero, else clamped endpoint values
    double eval(double xq, bool clamp_zero = false) const {
        if (xq < x_.front() || xq > x_.back()) {
            if (clamp_zero) return 0.0;
            return xq < x_.front() ? y_.front() : y_.back();
        }
        std::size_t i = std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin();
        if (i == 0) i = 1;
        if (i >= x_.size()) i = x_.size() - 1;
        double h = x_[i] - x_[i - 1];
        double A = (x_[i] - xq) / h, B = (xq - x_[i - 1]) / h;
        return A * y_[i - 1] + B * y_[i] +
               ((A * A * A - A) * m_[i - 1] + (B * B * B - B) * m_[i]) * h * h / 6.0;
    }

private:
    std::vector<double> x_, y_;
    std::vector<double> m_;  // second derivatives
};

class ComplexSpline {
public:
    ComplexSpline() = default;
    ComplexSpline(const std::vector<double>& x, const std::vector<cxd>& y) {
        std::vector<double> re(y.size()), im(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            re[i] = y[i].real();
            im[i] = y[i].imag();
        }
        re_ = CubicSpline(x, re);
        im_ = CubicSpline(x, im);
    }
    cxd eval(double xq, bool clamp_zero = false) const {
        return {re_.eval(xq, clamp_zero), im_.eval(xq, clamp_zero)};
    }

private:
    CubicSpline re_, im_;
};

// ---------------------------------------------------------------------------
// c-functions and Plancherel density
// ---------------------------------------------------------------------------

namespace detail {

// 1/c^alpha(lambda): entire in lambda, vanishing linearly at 0.
// 1/c^alpha = sqrt(pi)/(2^{n-2} Gamma(n/2)) * (i lambda) Gamma((n-1)/2+alpha+i lambda)/Gamma(1+i lambda)
inline cxd inv_c_alpha(double lambda, cxd alpha, int n) {
    cxd il(0.0, lambda);
    cxd ratio = gamma_ratio(0.5 * (n - 1) + alpha + il, 1.0 + il);
    double c = std::sqrt(M_PI) / (std::pow(2.0, n - 2) * std::tgamma(0.5 * n));
    return c * il * ratio;
}

}  // namespace detail

// Harish-Chandra c-function of Eq. (2.1) generalized by alpha (Eq. 2.2).
inline cxd c_alpha(double lambda, const ComplexOrder& order) {
    if (lambda == 0.0) throw DomainError("c_alpha: pole at lambda = 0");
    return 1.0 / detail::inv_c_alpha(lambda, order.alpha, order.dim.n);
}

inline cxd harish_chandra_c(double lambda, const Dimension& dim) {
    if (lambda == 0.0) throw DomainError("harish_chandra_c: pole at lambda = 0");
    return 1.0 / detail::inv_c_alpha(lambda, 0.0, dim.n);
}

// |c(lambda)|^{-2} = (c(lambda) c(-lambda))^{-1}; real, even, >= 0, -> 0 at 0.
inline double plancherel_density(double lambda, const Dimension& dim) {
    cxd ic = detail::inv_c_alpha(lambda, 0.0, dim.n);
    return std::norm(ic);
}

// ---------------------------------------------------------------------------
// spherical function
// ---------------------------------------------------------------------------

enum class PhiRoute { Auto, Defining, LargeR };

namespace detail {

// Corrected large-argument amplitude a2 of the Harish-Chandra expansion:
//   m^alpha_t(lam) = e^{-(n-1)t/2} ( e^{i lam t} c^alpha(lam) a2(lam,t) + (lam -> -lam) ),
// normalized so a2 -> 1 as t -> infinity. Requires |1/(e^{2t}-1)| < 1/2.
inline cxd a2_corrected(cxd alpha, int n, double lambda, double t, double abs_tol = 1e-16) {
    double em = std::expm1(2.0 * t);
    cxd nu(-1.0 / em, 0.0);
    double rho = 0.5 * (n - 1);
    cxd F = hypergeometric_2f1(-alpha - 0.5 * (n - 3), alpha + rho, cxd(1.0, -lambda), nu,
                               abs_tol);
    // log of the elementary prefactor, with the 2^{3/2-n}/Gamma(n/2) correction folded in
    double log_e_t_m1 = t + std::log1p(-std::exp(-t));
    double log_sinh_t = t - std::log(2.0) + std::log1p(-std::exp(-2.0 * t));
    cxd logpre = (0.5 * (n - 2) + alpha) * std::log(2.0) + (alpha + rho) * t -
                 2.0 * alpha * log_e_t_m1 + (alpha - rho) * log_sinh_t +
                 (1.5 - n) * std::log(2.0) - std::log(std::tgamma(0.5 * n)) +
                 std::log(std::tgamma(0.5 * n));
    // the two Gamma(n/2) factors cancel; kept explicit above for clarity
    return std::exp(logpre) * F;
}

inline cxd phi_defining_integral(double lambda, double r, const Dimension& dim,
                                 const QuadratureConfig& cfg) {
    if (r == 0.0) return 1.0;
    const int n = dim.n;
    const double rho = 0.5 * (n - 1);
    const double cr = std::cosh(r), sr = std::sinh(r);
    const double const_n =
        std::tgamma(0.5 * n) / (std::sqrt(M_PI) * std::tgamma(0.5 * (n - 1)));
    double cap = (M_PI / 4.0) / std::max(1.0, std::abs(lambda) * sr);
    auto edges = make_edges(0.0, M_PI, cap);
    if (static_cast<int>(edges.size()) - 1 > cfg.max_panels)
        throw NumericError("spherical_function: oscillation exceeds max_panels", 0.0);
    cxd val = integrate_adaptive(
        [&](double s) {
            double base = cr - sr * std::cos(s);
            cxd p = std::exp(cxd(-rho, lambda) * std::log(base));
            return p * std::pow(std::sin(s), n - 2);
        },
        edges, cfg);
    return const_n * val;
}

inline cxd phi_large_r(double lambda, double r, const Dimension& dim, double abs_tol = 1e-16) {
    double rho = 0.5 * (dim.n - 1);
    double al = std::abs(lambda);
    cxd c = 1.0 / inv_c_alpha(al, 0.0, dim.n);
    cxd a2 = a2_corrected(0.0, dim.n, al, r, abs_tol);
    // for real lambda the (-lambda) term is the conjugate
    cxd half = std::exp(cxd(0.0, al * r)) * c * a2;
    return std::exp(-rho * r) * 2.0 * half.real();
}

inline cxd phi_eval(double lambda, double r, const Dimension& dim, const QuadratureConfig& cfg,
                    PhiRoute route = PhiRoute::Auto) {
    if (r == 0.0) return 1.0;
    if (route == PhiRoute::Auto)
        route = (r >= 0.6 && std::abs(lambda) >= 0.25) ? PhiRoute::LargeR : PhiRoute::Defining;
    if (route == PhiRoute::LargeR) return phi_large_r(lambda, r, dim, cfg.abs_tol * 1e-4);
    return phi_defining_integral(lambda, r, dim, cfg);
}

}  // namespace detail

// phi_lambda(r): radial eigenfunction of the Laplace-Beltrami operator,
// normalized phi_lambda(0) = 1; real and even in lambda.
inline double spherical_function(double lambda, double r, const Dimension& dim,
                                 const QuadratureConfig& cfg = QuadratureConfig{},
                                 PhiRoute route = PhiRoute::Auto) {
    if (r < 0) throw DomainError("spherical_function: r must be >= 0");
    return detail::phi_eval(lambda, r, dim, cfg, route).real();
}

// ---------------------------------------------------------------------------
// radial transforms (Abel reduction through the Mehler-Dirichlet kernel)
// ---------------------------------------------------------------------------

namespace detail {

// phi_lambda(r) = mdc_n (sinh r)^{2-n} int_0^r (2 sinh((r+s)/2) sinh((r-s)/2))^{(n-3)/2} cos(lambda s) ds
inline double mdc_constant(int n) {
    return std::pow(2.0, 0.5 * (n - 2)) * std::tgamma(0.5 * n) * std::sqrt(2.0 / M_PI) /
           std::tgamma(0.5 * (n - 1));
}

// exact inversion constant: F^{-1}(m)(r) = C_inv(n) int_0^inf m phi |c|^{-2} dlambda
inline double inversion_constant(const Dimension& dim) {
    return std::pow(2.0, dim.n - 2) / (M_PI * dim.sphere_area);
}

// Gauss-Legendre sub-panel plan over [lo,hi] with width cap; returns nodes and
// weights so integrands can be evaluated against many parameters cheaply.
inline void fixed_plan(double lo, double hi, double cap, int gl_nodes, std::vector<double>& xs,
                       std::vector<double>& ws) {
    auto edges = make_edges(lo, hi, cap);
    const QuadRule& rule = gauss_legendre(gl_nodes);
    xs.clear();
    ws.clear();
    xs.reserve((edges.size() - 1) * rule.x.size());
    ws.reserve(xs.capacity());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        double mid = 0.5 * (edges[p] + edges[p + 1]);
        double half = 0.5 * (edges[p + 1] - edges[p]);
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            xs.push_back(mid + half * rule.x[i]);
            ws.push_back(half * rule.w[i]);
        }
    }
}

// Abel-type weighted integral int_0^r (2 sinh((r+s)/2) sinh((r-s)/2))^{g} k(s) ds
// with g = (n-3)/2 > -1; endpoint handled by a Gauss-Jacobi block in (r-s)^g.
template <typename K>
cxd abel_integral(const K& k, double r, int n, const QuadratureConfig& cfg) {
    double g = 0.5 * (n - 3);
    double W = 0.5 * r;
    auto smooth = [&](double u) {  // (2 sinh(u/2) sinh(r-u/2)) / u, u = r-s
        double su = (u > 1e-8) ? std::sinh(0.5 * u) / (0.5 * u) : 1.0 + u * u / 24.0;
        return su * std::sinh(r - 0.5 * u);
    };
    cxd block = integrate_jacobi_block(
        [&](double u) { return std::pow(smooth(u), g) * k(r - u); }, W, g, cfg.jacobi_nodes);
    cxd interior = 0.0;
    if (r - W > 1e-14) {
        auto edges = make_edges(0.0, r - W, std::max(0.05, 0.25 * r), true, W);
        interior = integrate_adaptive(
            [&](double s) {
                double base = 2.0 * std::sinh(0.5 * (r + s)) * std::sinh(0.5 * (r - s));
                return std::pow(base, g) * k(s);
            },
            edges, cfg);
    }
    return block + interior;
}

}  // namespace detail

// Forward radial Helgason transform
//   F(f)(lambda) = omega_{n-1} int_0^R f(r) phi_lambda(r) (sinh r)^{n-1} dr
// computed by swapping with the Mehler-Dirichlet representation of phi:
// one Abel stage in s, then a cosine transform per lambda.
inline SpectralFunction radial_fourier(const RadialFunction& f, const std::vector<double>& lgrid,
                                       const QuadratureConfig& cfg = QuadratureConfig{}) {
    f.validate();
    cfg.validate();
    const int n = f.dim.n;
    const double R = f.grid.back();
    ComplexSpline fs(f.grid, f.values);

    // s-grid: refined f-grid plus a geometric cluster near s = R
    std::vector<double> sg;
    sg.push_back(0.0);
    for (std::size_t i = 0; i + 1 < f.grid.size(); ++i) {
        double a = f.grid[i], b = f.grid[i + 1];
        for (int k = 1; k <= 3; ++k) sg.push_back(a + (b - a) * k / 3.0);
    }
    for (int k = 2; k <= 40; ++k) {
        double s = R * (1.0 - std::pow(2.0, -k));
        if (s > 0) sg.push_back(s);
    }
    sg.push_back(R);
    std::sort(sg.begin(), sg.end());
    sg.erase(std::unique(sg.begin(), sg.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             sg.end());

    const double g = 0.5 * (n - 3);
    std::vector<cxd> FA(sg.size());
    for (std::size_t j = 0; j < sg.size(); ++j) {
        double s = sg[j];
        if (R - s < 1e-13) {
            FA[j] = 0.0;
            continue;
        }
        // int_s^R f(r) sinh r (2 sinh((r+s)/2) sinh((r-s)/2))^g dr, singular end at r = s
        double W = std::min(0.5 * (R - s), 0.5);
        auto smooth = [&](double u) {  // u = r - s
            double su = (u > 1e-8) ? std::sinh(0.5 * u) / (0.5 * u) : 1.0 + u * u / 24.0;
            return su * std::sinh(s + 0.5 * u);
        };
        cxd block = integrate_jacobi_block(
            [&](double u) {
                double r = s + u;
                return std::pow(smooth(u), g) * fs.eval(r, true) * std::sinh(r);
            },
            W, g, cfg.jacobi_nodes);
        cxd interior = 0.0;
        if (R - (s + W) > 1e-13) {
            auto edges = make_edges(s + W, R, std::max(0.05, 0.2 * (R - s)));
            interior = integrate_adaptive(
                [&](double r) {
                    double base = 2.0 * std::sinh(0.5 * (r + s)) * std::sinh(0.5 * (r - s));
                    return std::pow(base, g) * fs.eval(r, true) * std::sinh(r);
                },
                edges, cfg);
        }
        FA[j] = block + interior;
    }
    ComplexSpline FAs(sg, FA);

    const double pre = f.dim.sphere_area * detail::mdc_constant(n);
    SpectralFunction out;
    out.dim = f.dim;
    out.lgrid = lgrid;
    out.values.resize(lgrid.size());
    if (lgrid.size() > 64) {
        // bulk path: one fixed s-plan resolving the largest frequency, then a
        // weighted cosine dot product per lambda
        double lmax = lgrid.back();
        std::vector<double> sx, sw;
        detail::fixed_plan(0.0, R, (M_PI / 4.0) / std::max(1.0, lmax), 16, sx, sw);
        std::vector<cxd> fa(sx.size());
        for (std::size_t j = 0; j < sx.size(); ++j) fa[j] = sw[j] * FAs.eval(sx[j], true);
        parallel_for(lgrid.size(), [&](std::size_t i) {
            double lam = lgrid[i];
            cxd acc = 0.0;
            for (std::size_t j = 0; j < sx.size(); ++j) acc += fa[j] * std::cos(lam * sx[j]);
            out.values[i] = pre * acc;
        });
    } else {
        for (std::size_t i = 0; i < lgrid.size(); ++i) {
            double lam = lgrid[i];
            auto edges = make_edges(0.0, R, (M_PI / 4.0) / std::max(1.0, lam));
            cxd v = integrate_adaptive(
                [&](double s) { return FAs.eval(s, true) * std::cos(lam * s); }, edges, cfg);
            out.values[i] = pre * v;
        }
    }
    out.validate();
    return out;
}

// Inverse radial transform K(r) = C_inv(n) int_0^Lam m(lambda) phi_lambda(r) |c|^{-2} dlambda,
// evaluated as a cosine transform of m |c|^{-2} followed by an Abel stage.
// The spectral samples are integrated as given; callers must supply a grid on
// which m has decayed (checked by a tail estimate).
inline RadialFunction radial_inverse_fourier(const SpectralFunction& m,
                                             const std::vector<double>& rgrid,
                                             const QuadratureConfig& cfg = QuadratureConfig{},
                                             bool skip_tail_check = false) {
    m.validate();
    cfg.validate();
    const int n = m.dim.n;
    const Dimension& dim = m.dim;
    const double Lam = m.lgrid.back();
    ComplexSpline ms(m.lgrid, m.values);

    const double rmax = rgrid.back();
    // fixed lambda plan shared by every s (cap below a quarter period at rmax)
    double cap = std::min((M_PI / 4.0) / std::max(1.0, rmax), std::max(Lam / 96.0, 1e-3));
    std::vector<double> lx, lw;
    detail::fixed_plan(m.lgrid.front(), Lam, cap, 16, lx, lw);
    std::vector<cxd> wmd(lx.size());
    double mass = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        wmd[i] = lw[i] * ms.eval(lx[i]) * plancherel_density(lx[i], dim);
        mass += std::abs(wmd[i]);
    }

    if (!skip_tail_check) {
        // envelope of |m| dens near the grid end vs decay fitted over the
        // last octave; rejects multipliers whose tail mass is not negligible
        auto env = [&](double a, double b) {
            double e = 0.0;
            for (std::size_t i = 0; i < m.lgrid.size(); ++i)
                if (m.lgrid[i] >= a && m.lgrid[i] <= b)
                    e = std::max(e, std::abs(m.values[i]) * plancherel_density(m.lgrid[i], dim));
            return e;
        };
        double scale = env(m.lgrid.front(), Lam);
        double e_end = env(0.9 * Lam, Lam);
        if (e_end > std::max(10.0 * cfg.abs_tol, 3e-5 * scale)) {
            double e_mid = env(0.5 * Lam, 0.65 * Lam);
            double q = (e_mid > 0 && e_end > 0)
                           ? std::log(e_end / e_mid) / std::log(1.0 / 0.575)
                           : 1.0;
            double tail = (q < -1.2) ? e_end * Lam / (-1.0 - q)
                                     : std::numeric_limits<double>::infinity();
            if (!(tail <= 1e-3 * mass + 10.0 * cfg.abs_tol))
                throw NumericError("radial_inverse_fourier: spectral tail bound violated",
                                   cxd(tail, 0.0));
        }
    }

    // cosine stage on a uniform s-grid dense enough that the spline of the
    // band-limited k_c stays below ~1e-7 relative; cos evaluated by recurrence
    int ns = std::max<int>(256, static_cast<int>(std::ceil(rmax * Lam * 13.0)));
    ns = std::min(ns, 60000);
    std::vector<double> sgrid(ns + 1);
    std::vector<cxd> kc(ns + 1, 0.0);
    const double ds = rmax / ns;
    for (int j = 0; j <= ns; ++j) sgrid[j] = ds * j;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double twoc = 2.0 * std::cos(lx[i] * ds);
        double cprev = std::cos(lx[i] * ds);  // cos at j = -1 equals cos at j = 1
        double ccur = 1.0;
        const cxd wi = wmd[i];
        for (int j = 0; j <= ns; ++j) {
            kc[j] += wi * ccur;
            double cnext = twoc * ccur - cprev;
            cprev = ccur;
            ccur = cnext;
        }
    }
    ComplexSpline kcs(sgrid, kc);

    const double c_inv = detail::inversion_constant(dim);
    const double mdc = detail::mdc_constant(n);
    RadialFunction out;
    out.dim = dim;
    out.grid = rgrid;
    out.values.resize(rgrid.size());
    const double r_direct = std::max(0.05, 3.0 * rmax / ns);
    for (std::size_t i = 0; i < rgrid.size(); ++i) {
        double r = rgrid[i];
        if (r <= r_direct) {
            // direct lambda-sum with the defining phi (cheap for small r)
            cxd acc = 0.0;
            for (std::size_t k = 0; k < lx.size(); ++k)
                acc += wmd[k] * detail::phi_defining_integral(lx[k], r, dim, cfg);
            out.values[i] = c_inv * acc;
        } else {
            cxd abel = detail::abel_integral([&](double s) { return kcs.eval(s, true); }, r, n, cfg);
            out.values[i] = c_inv * mdc * std::pow(std::sinh(r), 2 - n) * abel;
        }
    }
    out.validate();
    return out;
}

// ---------------------------------------------------------------------------
// radial convolution
// ---------------------------------------------------------------------------

// f * K(z) = int f(w) K(d(z,w)) dw for radial f (profile about the origin) and
// radial kernel K, reduced to geodesic polar coordinates about the origin.
inline cxd radial_convolution(const RadialFunction& f, const RadialFunction& K, double rho_z,
                              const QuadratureConfig& cfg = QuadratureConfig{}) {
    f.validate();
    K.validate();
    const int n = f.dim.n;
    ComplexSpline fs(f.grid, f.values);
    ComplexSpline Ks(K.grid, K.values);
    const double omega_nm2 = 2.0 * std::pow(M_PI, 0.5 * (n - 1)) / std::tgamma(0.5 * (n - 1));
    const double crz = std::cosh(rho_z), srz = std::sinh(rho_z);
    const QuadRule& th = detail::gauss_legendre(48);

    auto theta_integral = [&](double s) {
        double cs = std::cosh(s), ss = std::sinh(s);
        cxd acc = 0.0;
        for (std::size_t i = 0; i < th.x.size(); ++i) {
            double theta = 0.5 * M_PI * (th.x[i] + 1.0);
            double w = 0.5 * M_PI * th.w[i];
            double q = crz * cs - srz * ss * std::cos(theta) - 1.0;
            double d = acosh1p(std::max(q, 0.0));
            cxd Kv = Ks.eval(d, true);
            acc += w * Kv * std::pow(std::sin(theta), n - 2);
        }
        return acc;
    };

    std::vector<double> edges;
    edges.push_back(f.grid.front());
    for (std::size_t i = 0; i + 1 < f.grid.size(); ++i) {
        double a = f.grid[i], b = f.grid[i + 1];
        double width = std::min({b - a, 0.1});
        for (double x = a + width; x < b - 1e-14; x += width) edges.push_back(x);
        edges.push_back(b);
    }
    cxd val = integrate_adaptive(
        [&](double s) {
            cxd fv = fs.eval(s, true);
            if (fv == cxd(0.0)) return cxd(0.0);
            return fv * theta_integral(s) * std::pow(std::sinh(s), n - 1);
        },
        edges, cfg);
    return omega_nm2 * val;
}

inline cxd radial_convolution(const RadialFunction& f, const RadialFunction& K,
                              const HyperbolicPoint& z,
                              const QuadratureConfig& cfg = QuadratureConfig{}) {
    return radial_convolution(f, K, rho(z), cfg);
}

// General (not necessarily radial) f on H^2 or H^3, by polar quadrature about z.
inline cxd radial_convolution(const std::function<cxd(const HyperbolicPoint&)>& f,
                              const RadialFunction& K, const HyperbolicPoint& z,
                              double support_radius,
                              const QuadratureConfig& cfg = QuadratureConfig{}) {
    K.validate();
    const int n = K.dim.n;
    if (n > 3) throw DomainError("radial_convolution: handle-based path supports n <= 3");
    ComplexSpline Ks(K.grid, K.values);
    auto frame = tangent_frame(z);
    const QuadRule& ang = detail::gauss_legendre(64);
    double smax = rho(z) + support_radius;

    auto angular = [&](double s) {
        double cs = std::cosh(s), ss = std::sinh(s);
        cxd acc = 0.0;
        if (n == 2) {
            for (std::size_t i = 0; i < ang.x.size(); ++i) {
                double th = M_PI * (ang.x[i] + 1.0);
                double w = M_PI * ang.w[i];
                std::vector<double> dir(3);
                for (int k = 0; k < 3; ++k)
                    dir[k] = std::cos(th) * frame[0][k] + std::sin(th) * frame[1][k];
                HyperbolicPoint wpt = geodesic_exp(z, dir, s);
                acc += w * f(wpt);
            }
        } else {
            const QuadRule& az = detail::gauss_legendre(48);
            for (std::size_t i = 0; i < ang.x.size(); ++i) {
                double th = 0.5 * M_PI * (ang.x[i] + 1.0);
                double wth = 0.5 * M_PI * ang.w[i] * std::sin(th);
                for (std::size_t j = 0; j < az.x.size(); ++j) {
                    double ps = M_PI * (az.x[j] + 1.0);
                    double w = wth * M_PI * az.w[j];
                    std::vector<double> dir(4);
                    for (int k = 0; k < 4; ++k)
                        dir[k] = std::cos(th) * frame[0][k] +
                                 std::sin(th) * (std::cos(ps) * frame[1][k] + std::sin(ps) * frame[2][k]);
                    HyperbolicPoint wpt = geodesic_exp(z, dir, s);
                    acc += w * f(wpt);
                }
            }
        }
        return acc;
    };

    auto edges = make_edges(0.0, smax, 0.1);
    cxd val = integrate_adaptive(
        [&](double s) {
            cxd Kv = Ks.eval(s, true);
            // K(d(z,w)) with w at geodesic distance s from z
            return Kv == cxd(0.0) ? cxd(0.0) : Kv * angular(s) * std::pow(std::sinh(s), n - 1);
        },
        edges, cfg);
    return val;
}

// ---------------------------------------------------------------------------
// CSV serialization
// ---------------------------------------------------------------------------

inline void write_csv(std::ostream& os, const RadialFunction& f) {
    os << "r,value_re,value_im\n";
    char buf[96];
    for (std::size_t i = 0; i < f.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid[i], f.values[i].real(),
                      f.values[i].imag());
        os << buf;
    }
}

inline void write_csv(std::ostream& os, const SpectralFunction& m) {
    os << "lambda,value_re,value_im\n";
    char buf[96];
    for (std::size_t i = 0; i < m.lgrid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", m.lgrid[i], m.values[i].real(),
                      m.values[i].imag());
        os << buf;
    }
}

namespace detail {
inline std::vector<std::array<double, 3>> read_csv_rows(std::istream& is) {
    std::vector<std::array<double, 3>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0])))
            continue;
        std::array<double, 3> row{};
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &row[0], &row[1], &row[2]) == 3)
            rows.push_back(row);
    }
    return rows;
}
}  // namespace detail

inline RadialFunction read_radial_csv(std::istream& is, const Dimension& dim) {
    RadialFunction f;
    f.dim = dim;
    for (const auto& row : detail::read_csv_rows(is)) {
        f.grid.push_back(row[0]);
        f.values.emplace_back(row[1], row[2]);
    }
    f.validate();
    return f;
}

inline SpectralFunction read_spectral_csv(std::istream& is, const Dimension& dim) {
    SpectralFunction m;
    m.dim = dim;
    for (const auto& row : detail::read_csv_rows(is)) {
        m.lgrid.push_back(row[0]);
        m.values.emplace_back(row[1], row[2]);
    }
    m.validate();
    return m;
}

}  // namespace hypmax
