#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "hypmax/errors.hpp"
#include "hypmax/fourier.hpp"
#include "hypmax/geometry.hpp"
#include "hypmax/parallel.hpp"
#include "hypmax/special.hpp"

namespace hypmax {

// Parameters of the fractional mean M^alpha_t.
struct MeanOperatorSpec {
    ComplexOrder alpha;
    double t;
    QuadratureConfig q;

    MeanOperatorSpec(ComplexOrder a, double t_, QuadratureConfig q_ = QuadratureConfig{})
        : alpha(a), t(t_), q(q_) {
        if (!(t > 0)) throw DomainError("MeanOperatorSpec: t must be > 0");
        q.validate();
    }
};

// Geometric discretization of sup_{t>0}.
struct TGrid {
    std::vector<double> t_values;
    double refinement_factor = 1.05;

    static TGrid geometric(double t_min = 0.05, double t_max = 15.0, double factor = 1.05) {
        if (!(t_min > 0) || !(t_max > t_min) || !(factor > 1.0))
            throw ConfigError("TGrid: need 0 < t_min < t_max and factor > 1");
        TGrid g;
        g.refinement_factor = factor;
        for (double t = t_min; t <= t_max * (1.0 + 1e-12); t *= factor) g.t_values.push_back(t);
        return g;
    }

    // same span, roughly doubled density
    TGrid refined() const {
        TGrid g;
        g.refinement_factor = std::sqrt(refinement_factor);
        // keep the original nodes so the sup is monotone under refinement
        for (std::size_t i = 0; i < t_values.size(); ++i) {
            g.t_values.push_back(t_values[i]);
            if (i + 1 < t_values.size())
                g.t_values.push_back(std::sqrt(t_values[i] * t_values[i + 1]));
        }
        return g;
    }

    void validate() const {
        if (t_values.empty()) throw ConfigError("TGrid: empty");
        for (std::size_t i = 0; i < t_values.size(); ++i) {
            if (!(t_values[i] > 0)) throw ConfigError("TGrid: nonpositive t");
            if (i && !(t_values[i] > t_values[i - 1]))
                throw ConfigError("TGrid: not strictly increasing");
        }
    }
};

enum class MultiplierRoute { Auto, MehlerDirichlet, LargeT };

namespace detail {

// log of the elementary prefactor in Eq.-(2.6) form:
// 2^{(n-2)/2+alpha} Gamma(n/2) e^{alpha t} (e^t-1)^{-2 alpha} (sinh t)^{alpha-(n-2)/2}
inline cxd multiplier_prefactor_log(cxd alpha, int n, double t) {
    double log_e_t_m1 = t + std::log1p(-std::exp(-t));
    double log_sinh_t = t - std::log(2.0) + std::log1p(-std::exp(-2.0 * t));
    return (0.5 * (n - 2) + alpha) * std::log(2.0) + std::log(std::tgamma(0.5 * n)) +
           alpha * t - 2.0 * alpha * log_e_t_m1 + (alpha - 0.5 * (n - 2)) * log_sinh_t;
}

inline cxd multiplier_md(double lambda, const ComplexOrder& order, double t,
                         const QuadratureConfig& cfg) {
    cxd pre = std::exp(multiplier_prefactor_log(order.alpha, order.dim.n, t));
    return pre * legendre_p(order, lambda, t, cfg);
}

// Harish-Chandra form, exact for t > (log 2)/2 with the corrected a2.
inline cxd multiplier_large_t(double lambda, const ComplexOrder& order, double t,
                              double abs_tol) {
    const int n = order.dim.n;
    const double rho = 0.5 * (n - 1);
    cxd plus = std::exp(cxd(0.0, lambda * t)) / inv_c_alpha(lambda, order.alpha, n) *
               a2_corrected(order.alpha, n, lambda, t, abs_tol);
    cxd minus = std::exp(cxd(0.0, -lambda * t)) / inv_c_alpha(-lambda, order.alpha, n) *
                a2_corrected(order.alpha, n, -lambda, t, abs_tol);
    return std::exp(-rho * t) * (plus + minus);
}

}  // namespace detail

// Spectral multiplier m^alpha_t(lambda) of Eq.-(2.6) form (the normalized
// Legendre function with its explicit prefactor). Even in lambda.
inline cxd multiplier_m_alpha_t(double lambda, const MeanOperatorSpec& spec,
                                MultiplierRoute route = MultiplierRoute::Auto) {
    if (route == MultiplierRoute::Auto)
        route = (spec.t >= 0.6 && std::abs(lambda) >= 0.05) ? MultiplierRoute::LargeT
                                                            : MultiplierRoute::MehlerDirichlet;
    if (route == MultiplierRoute::LargeT) {
        if (spec.t <= 0.5 * std::log(2.0) + 1e-9)
            throw DomainError("multiplier LargeT route requires t > (log 2)/2");
        if (lambda == 0.0) route = MultiplierRoute::MehlerDirichlet;
    }
    if (route == MultiplierRoute::LargeT)
        return detail::multiplier_large_t(lambda, spec.alpha, spec.t, spec.q.abs_tol * 1e-4);
    return detail::multiplier_md(lambda, spec.alpha, spec.t, spec.q);
}

// ---------------------------------------------------------------------------
// spectral route: kernel construction and means
// ---------------------------------------------------------------------------

namespace detail {

// Kernel of M^alpha_t: the true spectral symbol is omega_{n-1} m^alpha_t, so
//   K^alpha_t(r) = C_inv(n) int_0^inf omega_{n-1} m^alpha_t phi_lambda |c|^{-2} dlambda.
// The truncation uses a smooth cos^2 rolloff so the reconstructed kernel's
// ringing beyond the jump at r = t stays at the tolerated 1e-3 level.
inline RadialFunction make_mean_kernel(const MeanOperatorSpec& spec, double rmax,
                                       double lambda_max = 0.0) {
    const Dimension& dim = spec.alpha.dim;
    const double t = spec.t;
    if (lambda_max <= 0.0) lambda_max = std::max(160.0, 320.0 / t);

    const double dl = (M_PI / 4.0) / std::max(2.0, t + rmax) / 2.0;
    int nl = static_cast<int>(std::ceil(lambda_max / dl)) + 1;
    nl = std::min(nl, 200000);
    SpectralFunction sym;
    sym.dim = dim;
    sym.lgrid.resize(nl);
    sym.values.resize(nl);
    const double w0 = 0.75 * lambda_max;
    for (int i = 0; i < nl; ++i) {
        double lam = lambda_max * i / (nl - 1);
        sym.lgrid[i] = lam;
        cxd m = multiplier_m_alpha_t(lam, spec, MultiplierRoute::Auto);
        double W = 1.0;
        if (lam > w0) {
            double x = (lam - w0) / (lambda_max - w0);
            double c = std::cos(0.5 * M_PI * x);
            W = c * c;
        }
        sym.values[i] = dim.sphere_area * m * W;
    }

    // kernel grid: clustered near the jump at r = t
    std::vector<double> rg;
    int base = 500;
    for (int i = 0; i <= base; ++i) rg.push_back(rmax * i / base);
    double cl = 0.12 * t;
    for (int i = 0; i <= 160; ++i) {
        double r = t - cl + 2.0 * cl * i / 160.0;
        if (r > 0 && r < rmax) rg.push_back(r);
    }
    std::sort(rg.begin(), rg.end());
    rg.erase(std::unique(rg.begin(), rg.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-13; }),
             rg.end());

    return radial_inverse_fourier(sym, rg, spec.q, /*skip_tail_check=*/true);
}

struct KernelKey {
    int n;
    long long are, aim, t, rmax, lmax;
    bool operator<(const KernelKey& o) const {
        return std::tie(n, are, aim, t, rmax, lmax) <
               std::tie(o.n, o.are, o.aim, o.t, o.rmax, o.lmax);
    }
};

// read-mostly kernel cache with single-writer insertion
class KernelCache {
public:
    static KernelCache& instance() {
        static KernelCache cache;
        return cache;
    }

    std::shared_ptr<const RadialFunction> get(const MeanOperatorSpec& spec, double rmax,
                                              double lambda_max = 0.0) {
        KernelKey key{spec.alpha.dim.n,
                      std::llround(spec.alpha.alpha.real() * 1e12),
                      std::llround(spec.alpha.alpha.imag() * 1e12),
                      std::llround(spec.t * 1e12),
                      std::llround(rmax * 1e9),
                      std::llround(lambda_max * 1e6)};
        {
            std::shared_lock lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        auto kern = std::make_shared<RadialFunction>(make_mean_kernel(spec, rmax, lambda_max));
        std::unique_lock lock(mu_);
        auto [it, inserted] = map_.emplace(key, kern);
        return it->second;
    }

    void clear() {
        std::unique_lock lock(mu_);
        map_.clear();
    }

private:
    std::shared_mutex mu_;
    std::map<KernelKey, std::shared_ptr<const RadialFunction>> map_;
};

}  // namespace detail

// Frequency-side state of the spectral route: the forward transform of f on a
// fixed quadrature plan. Independent of alpha and t, so one plan serves a
// whole family of means (and the full t-grid of the maximal function).
struct SpectralMeanPlan {
    Dimension dim;
    std::vector<double> nodes;   // lambda nodes
    std::vector<double> weights; // quadrature weights
    std::vector<cxd> fhat;       // F(f) at the nodes
    double lambda_max = 0.0;
};

// `max_freq` bounds t + rho_z over the intended evaluations (it fixes the
// lambda-panel cap). lambda_max <= 0 selects the truncation adaptively from
// the decay of F(f).
inline SpectralMeanPlan make_spectral_mean_plan(const RadialFunction& f, double max_freq,
                                                const QuadratureConfig& cfg,
                                                double lambda_max = 0.0) {
    f.validate();
    SpectralMeanPlan plan;
    plan.dim = f.dim;
    bool fixed = lambda_max > 0.0;
    if (!fixed) lambda_max = 160.0;
    double cap = (M_PI / 4.0) / std::max(1.0, max_freq);
    for (int attempt = 0;; ++attempt) {
        plan.lambda_max = lambda_max;
        detail::fixed_plan(0.0, lambda_max, cap, 16, plan.nodes, plan.weights);
        SpectralFunction F = radial_fourier(f, plan.nodes, cfg);
        plan.fhat = std::move(F.values);
        if (fixed || attempt >= 2) break;
        // extend while the end envelope of |F f| dens is not negligible
        double mass = 0.0, e_end = 0.0;
        for (std::size_t i = 0; i < plan.nodes.size(); ++i) {
            double v = std::abs(plan.fhat[i]) * plancherel_density(plan.nodes[i], plan.dim);
            mass += plan.weights[i] * v;
            if (plan.nodes[i] >= 0.9 * lambda_max) e_end = std::max(e_end, v);
        }
        if (e_end * 0.1 * lambda_max <= std::max(3e-5 * mass, cfg.abs_tol)) break;
        lambda_max *= 1.6;
    }
    return plan;
}

// M^alpha_t f at a single radius through the multiplier route: the exact
// Fubini form of "build K^alpha_t and convolve",
//   M^alpha_t f(z) = C_inv int sigma(lambda) F(f)(lambda) phi_lambda(rho_z) |c|^{-2} dlambda
// with sigma = omega_{n-1} m^alpha_t. Valid on the continued range of alpha.
inline cxd spherical_mean_spectral_at(const SpectralMeanPlan& plan,
                                      const MeanOperatorSpec& spec, double rho_z) {
    const Dimension& dim = plan.dim;
    const double c_inv = detail::inversion_constant(dim);
    std::size_t N = plan.nodes.size();
    std::vector<cxd> terms(N);
    parallel_for(N, [&](std::size_t i) {
        double lam = plan.nodes[i];
        cxd m = multiplier_m_alpha_t(lam, spec, MultiplierRoute::Auto);
        cxd phi = detail::phi_eval(lam, rho_z, dim, spec.q);
        terms[i] = plan.weights[i] * m * plan.fhat[i] * phi * plancherel_density(lam, dim);
    });
    cxd acc = 0.0;
    for (cxd v : terms) acc += v;
    return c_inv * dim.sphere_area * acc;
}

// M^alpha_t along the multiplier route on a grid of evaluation radii.
inline RadialFunction spherical_mean_spectral(const RadialFunction& f, const MeanOperatorSpec& spec,
                                              const std::vector<double>& rgrid) {
    f.validate();
    double max_rho = *std::max_element(rgrid.begin(), rgrid.end());
    auto plan = make_spectral_mean_plan(f, spec.t + max_rho, spec.q);
    RadialFunction out;
    out.dim = f.dim;
    out.grid = rgrid;
    out.values.resize(rgrid.size());
    for (std::size_t i = 0; i < rgrid.size(); ++i)
        out.values[i] = spherical_mean_spectral_at(plan, spec, rgrid[i]);
    return out;
}

// Kernel K^alpha_t reconstructed on a grid (spectral truncation with a smooth
// rolloff); used by the support check and kernel-route validation.
inline RadialFunction mean_kernel(const MeanOperatorSpec& spec, double rmax,
                                  double lambda_max = 0.0) {
    return detail::make_mean_kernel(spec, rmax, lambda_max);
}

// ---------------------------------------------------------------------------
// direct route (Eq. 1.8), Re alpha > 0
// ---------------------------------------------------------------------------

namespace detail {

// full prefactor of Eq. (1.8) combined with the kernel constant (2 e^t)^{alpha-1}:
//   2 e^t ((e^t-1)/sinh t)^{n-2} (e^t-1)^{-2 alpha-n+2} (2 e^t)^{alpha-1} / Gamma(alpha)
inline cxd direct_prefactor(cxd alpha, int n, double t) {
    double log_e_t_m1 = t + std::log1p(-std::exp(-t));
    double log_sinh_t = t - std::log(2.0) + std::log1p(-std::exp(-2.0 * t));
    cxd logpre = std::log(2.0) + t + (n - 2.0) * (log_e_t_m1 - log_sinh_t) +
                 (-2.0 * alpha - (n - 2.0)) * log_e_t_m1 +
                 (alpha - 1.0) * (std::log(2.0) + t);
    return std::exp(logpre) / complex_gamma(alpha);
}

// 2D polar-about-z quadrature of int_{B_t(z)} (cosh t - cosh d(z,w))^{alpha-1} f(w) dw
// for f radial about the origin. When margin > 0 the integrand is supported in
// s <= t - margin and any Re alpha is admissible.
inline cxd direct_mean_radial(const std::function<cxd(double)>& f_of_rho, double rho_z,
                              const MeanOperatorSpec& spec, double margin = 0.0) {
    const int n = spec.alpha.dim.n;
    const double t = spec.t;
    const cxd am1 = spec.alpha.alpha - 1.0;
    const QuadratureConfig& cfg = spec.q;
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
            cxd fv = f_of_rho(acosh1p(std::max(q, 0.0)));
            acc += w * fv * std::pow(std::sin(theta), n - 2);
        }
        return acc * std::pow(ss, n - 1);
    };

    cxd integral = 0.0;
    if (margin > 0.0) {
        // support certified away from the sphere: plain panels on [0, t-margin]
        auto edges = make_edges(0.0, t - margin, std::min(0.1, 0.25 * (t - margin)));
        integral = integrate_adaptive(
            [&](double s) {
                double base = 2.0 * std::sinh(0.5 * (t + s)) * std::sinh(0.5 * (t - s));
                return std::pow(cxd(base, 0.0), am1) * theta_integral(s);
            },
            edges, cfg);
    } else {
        // endpoint block at s = t with Jacobi weight u^{Re alpha - 1}
        double W = 0.5 * t;
        auto smooth = [&](double u) {
            double su = (u > 1e-8) ? std::sinh(0.5 * u) / (0.5 * u) : 1.0 + u * u / 24.0;
            return su * std::sinh(t - 0.5 * u);
        };
        cxd block;
        if (am1.imag() == 0.0) {
            block = integrate_jacobi_block(
                [&](double u) {
                    return std::pow(cxd(smooth(u), 0.0), am1) * theta_integral(t - u);
                },
                W, am1.real(), cfg.jacobi_nodes);
        } else {
            block = integrate_complex_endpoint(
                [&](double u) {
                    return std::pow(cxd(smooth(u), 0.0), am1) * theta_integral(t - u);
                },
                W, am1, cfg);
        }
        auto edges = make_edges(0.0, t - W, std::min(0.1, 0.25 * t), true, W);
        cxd interior = integrate_adaptive(
            [&](double s) {
                double base = 2.0 * std::sinh(0.5 * (t + s)) * std::sinh(0.5 * (t - s));
                return std::pow(cxd(base, 0.0), am1) * theta_integral(s);
            },
            edges, cfg);
        integral = block + interior;
    }
    return direct_prefactor(spec.alpha.alpha, n, t) * omega_nm2 * integral;
}

// general f on H^2 by full-angle polar quadrature about z
inline cxd direct_mean_h2(const std::function<cxd(const HyperbolicPoint&)>& f,
                          const HyperbolicPoint& z, const MeanOperatorSpec& spec,
                          double margin = 0.0) {
    const double t = spec.t;
    const cxd am1 = spec.alpha.alpha - 1.0;
    const QuadratureConfig& cfg = spec.q;
    auto frame = tangent_frame(z);
    const QuadRule& ang = detail::gauss_legendre(64);

    auto angle_integral = [&](double s) {
        cxd acc = 0.0;
        for (std::size_t i = 0; i < ang.x.size(); ++i) {
            double th = M_PI * (ang.x[i] + 1.0);
            double w = M_PI * ang.w[i];
            std::vector<double> dir(3);
            for (int k = 0; k < 3; ++k)
                dir[k] = std::cos(th) * frame[0][k] + std::sin(th) * frame[1][k];
            acc += w * f(geodesic_exp(z, dir, s));
        }
        return acc * std::sinh(s);
    };

    cxd integral = 0.0;
    if (margin > 0.0) {
        auto edges = make_edges(0.0, t - margin, std::min(0.1, 0.25 * (t - margin)));
        integral = integrate_adaptive(
            [&](double s) {
                double base = 2.0 * std::sinh(0.5 * (t + s)) * std::sinh(0.5 * (t - s));
                return std::pow(cxd(base, 0.0), am1) * angle_integral(s);
            },
            edges, cfg);
    } else {
        double W = 0.5 * t;
        auto smooth = [&](double u) {
            double su = (u > 1e-8) ? std::sinh(0.5 * u) / (0.5 * u) : 1.0 + u * u / 24.0;
            return su * std::sinh(t - 0.5 * u);
        };
        cxd block;
        if (am1.imag() == 0.0) {
            block = integrate_jacobi_block(
                [&](double u) {
                    return std::pow(cxd(smooth(u), 0.0), am1) * angle_integral(t - u);
                },
                W, am1.real(), cfg.jacobi_nodes);
        } else {
            block = integrate_complex_endpoint(
                [&](double u) {
                    return std::pow(cxd(smooth(u), 0.0), am1) * angle_integral(t - u);
                },
                W, am1, cfg);
        }
        auto edges = make_edges(0.0, t - W, std::min(0.1, 0.25 * t), true, W);
        cxd interior = integrate_adaptive(
            [&](double s) {
                double base = 2.0 * std::sinh(0.5 * (t + s)) * std::sinh(0.5 * (t - s));
                return std::pow(cxd(base, 0.0), am1) * angle_integral(s);
            },
            edges, cfg);
        integral = block + interior;
    }
    return direct_prefactor(spec.alpha.alpha, 2, t) * integral;
}

}  // namespace detail

// Direct Eq.-(1.8) evaluation for f radial about the origin (the profile is
// given as a function of rho). Requires Re alpha > 0.
inline cxd spherical_mean_direct(const std::function<cxd(double)>& f_of_rho,
                                 const HyperbolicPoint& z, const MeanOperatorSpec& spec) {
    if (spec.alpha.alpha.real() <= 0.0)
        throw DomainError(
            "spherical_mean_direct: Re alpha must be > 0; use the spectral route for the "
            "continued range");
    return detail::direct_mean_radial(f_of_rho, rho(z), spec);
}

// Direct evaluation for general f on H^2. Same Re alpha > 0 requirement.
inline cxd spherical_mean_direct(const std::function<cxd(const HyperbolicPoint&)>& f,
                                 const HyperbolicPoint& z, const MeanOperatorSpec& spec) {
    if (spec.alpha.dim.n != 2)
        throw DomainError("spherical_mean_direct: general-f path supports n = 2 only");
    if (spec.alpha.alpha.real() <= 0.0)
        throw DomainError("spherical_mean_direct: Re alpha must be > 0");
    return detail::direct_mean_h2(f, z, spec);
}

// Direct evaluation valid for any admissible alpha when supp f inside B_t(z)
// keeps the certified distance `margin` from the sphere (the situation of the
// counterexample proofs, where the integral is entire in alpha).
inline cxd spherical_mean_direct_contained(const std::function<cxd(const HyperbolicPoint&)>& f,
                                           const HyperbolicPoint& z, const MeanOperatorSpec& spec,
                                           double margin) {
    if (!(margin > 0)) throw ConfigError("spherical_mean_direct_contained: margin must be > 0");
    if (spec.alpha.dim.n != 2)
        throw DomainError("spherical_mean_direct_contained: supports n = 2 only");
    return detail::direct_mean_h2(f, z, spec, margin);
}

// ---------------------------------------------------------------------------
// maximal function over a t-grid
// ---------------------------------------------------------------------------

struct MaximalResult {
    double value = 0.0;
    double argmax_t = 0.0;
    TGrid grid;
};

inline MaximalResult maximal_function(const RadialFunction& f, double rho_z,
                                      const ComplexOrder& alpha, const TGrid& tg,
                                      const QuadratureConfig& cfg = QuadratureConfig{}) {
    tg.validate();
    MaximalResult res;
    res.grid = tg;
    // one forward transform shared across the whole t-grid
    auto plan = make_spectral_mean_plan(f, tg.t_values.back() + rho_z, cfg);
    std::vector<double> vals(tg.t_values.size());
    for (std::size_t i = 0; i < tg.t_values.size(); ++i) {
        MeanOperatorSpec spec(alpha, tg.t_values[i], cfg);
        vals[i] = std::abs(spherical_mean_spectral_at(plan, spec, rho_z));
    }
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] >= res.value) {
            res.value = vals[i];
            res.argmax_t = tg.t_values[i];
        }
    }
    return res;
}

inline MaximalResult maximal_function(const RadialFunction& f, const HyperbolicPoint& z,
                                      const ComplexOrder& alpha, const TGrid& tg,
                                      const QuadratureConfig& cfg = QuadratureConfig{}) {
    return maximal_function(f, rho(z), alpha, tg, cfg);
}

// ---------------------------------------------------------------------------
// dyadic multiplier sup (Eq. 5.3)
// ---------------------------------------------------------------------------

// sup over lambda in [2^{j-1}, 2^{j+1}] ([0,2] for j = 0) of |m^alpha_t|,
// by dense sampling plus golden-section refinement of the best bracket.
inline double dyadic_multiplier_sup(int j, const MeanOperatorSpec& spec,
                                    MultiplierRoute route = MultiplierRoute::Auto,
                                    int samples = 129) {
    if (j < 0) throw DomainError("dyadic_multiplier_sup: j must be >= 0");
    double lo = (j == 0) ? 0.0 : std::pow(2.0, j - 1);
    double hi = (j == 0) ? 2.0 : std::pow(2.0, j + 1);
    std::vector<double> lam(samples), mag(samples);
    for (int i = 0; i < samples; ++i) lam[i] = lo + (hi - lo) * i / (samples - 1);
    parallel_for(samples, [&](std::size_t i) {
        mag[i] = std::abs(multiplier_m_alpha_t(lam[i], spec, route));
    });
    double best = 0.0;
    int besti = 0;
    for (int i = 0; i < samples; ++i)
        if (mag[i] > best) {
            best = mag[i];
            besti = i;
        }
    // golden-section polish inside the bracketing interval
    double a = lam[std::max(0, besti - 1)], b = lam[std::min(samples - 1, besti + 1)];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = std::abs(multiplier_m_alpha_t(x1, spec, route));
    double f2 = std::abs(multiplier_m_alpha_t(x2, spec, route));
    for (int it = 0; it < 40 && (b - a) > 1e-10 * (1.0 + b); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = std::abs(multiplier_m_alpha_t(x2, spec, route));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = std::abs(multiplier_m_alpha_t(x1, spec, route));
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

}  // namespace hypmax
