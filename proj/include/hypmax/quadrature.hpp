#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "hypmax/errors.hpp"

namespace hypmax {

using cxd = std::complex<double>;

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    int max_panels = 4096;
    int jacobi_nodes = 64;

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0)) throw ConfigError("quadrature tolerances must be positive");
        if (max_panels < 1) throw ConfigError("max_panels must be >= 1");
        if (jacobi_nodes < 2) throw ConfigError("jacobi_nodes must be >= 2");
    }
};

struct QuadRule {
    std::vector<double> x;  // nodes
    std::vector<double> w;  // weights
};

namespace detail {

// Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n.
inline QuadRule make_gauss_legendre(int n) {
    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p1 = 0, p2 = 0;
        for (int it = 0; it < 100; ++it) {
            p1 = 1.0;
            p2 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * k + 1.0) * x * p2 - k * p3) / (k + 1.0);
            }
            double dp = n * (x * p1 - p2) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double dp = n * (x * p1 - p2) / (x * x - 1.0);
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = rule.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// Implicit-shift QL for a symmetric tridiagonal matrix, accumulating only the
// first row of the eigenvector matrix (all that Golub-Welsch needs).
inline void tridiag_ql_first_row(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw NumericError("tridiagonal QL failed to converge", 0.0);
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// Golub-Welsch rule for the Jacobi weight (1-x)^a (1+x)^b on [-1,1].
inline QuadRule make_gauss_jacobi(int n, double a, double b) {
    std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
    double ab = a + b;
    diag[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < n; ++k)
        diag[k] = (b * b - a * a) / ((2.0 * k + ab) * (2.0 * k + ab + 2.0));
    if (n > 1)
        off[0] = std::sqrt(4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0)));
    for (int k = 2; k < n; ++k) {
        double t = 2.0 * k + ab;
        off[k - 1] = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0)));
    }
    // total mass of the weight: 2^{a+b+1} B(a+1, b+1)
    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    tridiag_ql_first_row(diag, off, z);
    QuadRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return diag[i] < diag[j]; });
    for (int i = 0; i < n; ++i) {
        rule.x[i] = diag[idx[i]];
        rule.w[i] = mu0 * z[idx[i]] * z[idx[i]];
    }
    return rule;
}

inline const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

inline const QuadRule& gauss_jacobi(int n, double a, double b) {
    static std::map<std::tuple<int, long long, long long>, QuadRule> cache;
    static std::mutex mu;
    auto key = std::make_tuple(n, static_cast<long long>(std::llround(a * 1e12)),
                               static_cast<long long>(std::llround(b * 1e12)));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_gauss_jacobi(n, a, b)).first;
    return it->second;
}

}  // namespace detail

// Fixed Gauss-Legendre integral of a complex integrand on [lo, hi].
template <typename F>
cxd integrate_gl(const F& f, double lo, double hi, int n) {
    const QuadRule& rule = detail::gauss_legendre(n);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    cxd sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
        sum += rule.w[i] * f(mid + half * rule.x[i]);
    return half * sum;
}

// Endpoint-weighted block: \int_0^W u^a f(u) du with f smooth.
// Uses the Jacobi rule with weight (1-x)^a mapped by u = W(1-x)/2.
template <typename F>
cxd integrate_jacobi_block(const F& f, double W, double a, int nodes) {
    const QuadRule& rule = detail::gauss_jacobi(nodes, a, 0.0);
    double scale = std::pow(0.5 * W, a + 1.0);
    cxd sum = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        double u = 0.5 * W * (1.0 - rule.x[i]);
        sum += rule.w[i] * f(u);
    }
    return scale * sum;
}

// Adaptive panel integration of a smooth-per-panel complex integrand.
// `edges` seeds the panel structure (e.g. oscillation caps); panels whose
// GL16/GL32 discrepancy exceeds the budget are bisected.
template <typename F>
cxd integrate_adaptive(const F& f, std::vector<double> edges, const QuadratureConfig& cfg) {
    struct Panel {
        double lo, hi;
        cxd coarse, fine;
        double err;
    };
    auto eval_panel = [&](double lo, double hi) {
        Panel p;
        p.lo = lo;
        p.hi = hi;
        p.coarse = integrate_gl(f, lo, hi, 16);
        p.fine = integrate_gl(f, lo, hi, 32);
        p.err = std::abs(p.fine - p.coarse);
        return p;
    };
    std::vector<Panel> panels;
    panels.reserve(edges.size() * 2);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back(eval_panel(edges[i], edges[i + 1]));

    for (int round = 0; round < 64; ++round) {
        cxd total = 0.0;
        double err = 0.0;
        for (const Panel& p : panels) {
            total += p.fine;
            err += p.err;
        }
        double budget = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (err <= budget) return total;
        if (static_cast<int>(panels.size()) * 2 > cfg.max_panels)
            throw NumericError("adaptive quadrature exceeded max_panels", total);
        // split every panel holding more than its share of the error
        double per_panel = budget / static_cast<double>(panels.size());
        std::vector<Panel> next;
        next.reserve(panels.size() * 2);
        bool split_any = false;
        for (const Panel& p : panels) {
            if (p.err > 0.5 * per_panel) {
                double mid = 0.5 * (p.lo + p.hi);
                next.push_back(eval_panel(p.lo, mid));
                next.push_back(eval_panel(mid, p.hi));
                split_any = true;
            } else {
                next.push_back(p);
            }
        }
        panels.swap(next);
        if (!split_any) {
            cxd est = 0.0;
            for (const Panel& p : panels) est += p.fine;
            return est;
        }
    }
    cxd est = 0.0;
    for (const Panel& p : panels) est += p.fine;
    throw NumericError("adaptive quadrature did not converge", est);
}

// int_0^W u^c h(u) du with complex c (Re c > -1) and smooth h: dyadic pieces
// toward 0 (the factor u^{i Im c} oscillates in log u, which defeats a plain
// Jacobi rule), closed by a leading-order stub once the remaining mass is
// negligible.
template <typename H>
cxd integrate_complex_endpoint(const H& h, double W, cxd c, const QuadratureConfig& cfg) {
    if (W <= 0.0) return 0.0;
    cxd total = 0.0;
    double hi = W;
    double scale = std::pow(W, c.real() + 1.0);
    for (int k = 0; k < 200; ++k) {
        double lo = 0.5 * hi;
        total += integrate_gl(
            [&](double u) { return std::exp(c * std::log(u)) * h(u); }, lo, hi, 24);
        if (std::pow(lo, c.real() + 1.0) < 1e-3 * cfg.abs_tol * std::max(1.0, scale) ||
            lo < 1e-300) {
            total += h(0.5 * lo) * std::exp((c + 1.0) * std::log(lo)) / (c + 1.0);
            break;
        }
        hi = lo;
    }
    return total;
}

// Panel edges on [lo, hi] with width capped by `cap` (oscillation control)
// and optional geometric grading toward the right endpoint down to scale W0.
inline std::vector<double> make_edges(double lo, double hi, double cap, bool grade_right = false,
                                      double W0 = 0.0) {
    std::vector<double> edges;
    edges.push_back(lo);
    if (hi - lo < 1e-300) {
        edges.push_back(hi);
        return edges;
    }
    cap = std::max(cap, (hi - lo) * 1e-7);
    double x = lo;
    while (x < hi) {
        double w = cap;
        if (grade_right) w = std::min(w, std::max(0.35 * (hi - x + W0), W0 * 0.5));
        w = std::min(w, 0.5 * std::max(hi - lo, 1e-12));
        x = std::min(hi, x + w);
        if (hi - x < 0.25 * w) x = hi;
        edges.push_back(x);
    }
    return edges;
}

}  // namespace hypmax
