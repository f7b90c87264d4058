#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hypmax/errors.hpp"
#include "hypmax/quadrature.hpp"

namespace hypmax {

// Ambient dimension of H^n (n >= 2), with the surface area of S^{n-1}
// precomputed since every radial integral needs it.
struct Dimension {
    int n = 2;
    double sphere_area = 2.0 * M_PI;  // omega_{n-1} = 2 pi^{n/2} / Gamma(n/2)

    Dimension() = default;
    explicit Dimension(int n_) : n(n_) {
        if (n < 2) throw DomainError("Dimension: n must be >= 2");
        sphere_area = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
    }
};

// Point on the upper hyperboloid sheet [z,z] = 1, z0 >= 1, in Minkowski
// coordinates (z0, zp).
struct HyperbolicPoint {
    double z0 = 1.0;
    std::vector<double> zp;  // length n

    int space_dim() const { return static_cast<int>(zp.size()); }
};

struct PolarCoord {
    double r = 0.0;
    std::vector<double> omega;  // unit vector in R^n
};

// Iwasawa coordinates (v, u) on R^{n-1} x R with group law
// (v,u)*(v',u') = (v + e^u v', u + u').
struct IwasawaCoord {
    std::vector<double> v;
    double u = 0.0;
};

inline double minkowski_form(const std::vector<double>& z, const std::vector<double>& w) {
    if (z.size() != w.size() || z.size() < 2)
        throw DomainError("minkowski_form: dimension mismatch");
    double s = z[0] * w[0];
    for (std::size_t i = 1; i < z.size(); ++i) s -= z[i] * w[i];
    return s;
}

inline std::vector<double> ambient(const HyperbolicPoint& z) {
    std::vector<double> a(z.zp.size() + 1);
    a[0] = z.z0;
    std::copy(z.zp.begin(), z.zp.end(), a.begin() + 1);
    return a;
}

inline double minkowski_form(const HyperbolicPoint& z, const HyperbolicPoint& w) {
    if (z.space_dim() != w.space_dim()) throw DomainError("minkowski_form: dimension mismatch");
    double s = z.z0 * w.z0;
    for (int i = 0; i < z.space_dim(); ++i) s -= z.zp[i] * w.zp[i];
    return s;
}

inline HyperbolicPoint origin_point(const Dimension& dim) {
    HyperbolicPoint z;
    z.z0 = 1.0;
    z.zp.assign(dim.n, 0.0);
    return z;
}

inline void validate_on_sheet(const HyperbolicPoint& z, double tol = 1e-10) {
    double q = z.z0 * z.z0;
    for (double c : z.zp) q -= c * c;
    if (std::abs(q - 1.0) > tol || z.z0 < 1.0 - tol)
        throw DomainError("HyperbolicPoint: not on the unit hyperboloid sheet");
}

// acosh(1+q) computed stably for small q >= 0.
inline double acosh1p(double q) {
    if (q < 0.0) {
        if (q >= -1e-9) return 0.0;  // roundoff slack near coincident points
        throw DomainError("geodesic distance: Minkowski form below the arcosh clamp slack");
    }
    return std::log1p(q + std::sqrt(q * (q + 2.0)));
}

// d(z,w) = arcosh([z,w]); evaluated through [z,w]-1 formed from coordinate
// differences so nearby points do not lose precision.
inline double geodesic_distance(const HyperbolicPoint& z, const HyperbolicPoint& w) {
    if (z.space_dim() != w.space_dim()) throw DomainError("geodesic_distance: dimension mismatch");
    double dspace = 0.0;
    for (int i = 0; i < z.space_dim(); ++i) {
        double d = z.zp[i] - w.zp[i];
        dspace += d * d;
    }
    double d0 = z.z0 - w.z0;
    // [z,w] - 1 = (|zp-wp|^2 - (z0-w0)^2)/2 when both points sit on the sheet
    double q = 0.5 * (dspace - d0 * d0);
    return acosh1p(q);
}

inline HyperbolicPoint from_polar(const PolarCoord& p, const Dimension& dim) {
    if (static_cast<int>(p.omega.size()) != dim.n)
        throw DomainError("from_polar: omega has wrong length");
    if (p.r < 0) throw DomainError("from_polar: r must be >= 0");
    HyperbolicPoint z;
    z.z0 = std::cosh(p.r);
    z.zp.resize(dim.n);
    double sh = std::sinh(p.r);
    for (int i = 0; i < dim.n; ++i) z.zp[i] = p.omega[i] * sh;
    return z;
}

inline HyperbolicPoint from_polar(double r, int axis, const Dimension& dim) {
    PolarCoord p;
    p.r = r;
    p.omega.assign(dim.n, 0.0);
    p.omega[axis] = 1.0;
    return from_polar(p, dim);
}

inline PolarCoord to_polar(const HyperbolicPoint& z) {
    PolarCoord p;
    p.r = acosh1p(z.z0 - 1.0);
    p.omega.assign(z.zp.size(), 0.0);
    double norm = 0.0;
    for (double c : z.zp) norm += c * c;
    norm = std::sqrt(norm);
    if (norm > 0) {
        for (std::size_t i = 0; i < z.zp.size(); ++i) p.omega[i] = z.zp[i] / norm;
    } else {
        p.omega[0] = 1.0;  // direction convention at the origin
    }
    return p;
}

// rho(z) = d(z, origin)
inline double rho(const HyperbolicPoint& z) { return acosh1p(z.z0 - 1.0); }

// Lorentz boost a(r): hyperbolic rotation in the (z0, z1) plane.
inline HyperbolicPoint lorentz_boost(double r, const HyperbolicPoint& z) {
    HyperbolicPoint out = z;
    double c = std::cosh(r), s = std::sinh(r);
    out.z0 = c * z.z0 + s * z.zp[0];
    out.zp[0] = s * z.z0 + c * z.zp[0];
    return out;
}

// Eq.-style distance in Iwasawa coordinates:
// arcosh(e^{-u-u'} |v-v'|^2 + cosh(u-u')).
inline double iwasawa_distance(const IwasawaCoord& a, const IwasawaCoord& b) {
    if (a.v.size() != b.v.size()) throw DomainError("iwasawa_distance: dimension mismatch");
    double dv2 = 0.0;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        double d = a.v[i] - b.v[i];
        dv2 += d * d;
    }
    double du = a.u - b.u;
    double sh = std::sinh(0.5 * du);
    double q = std::exp(-a.u - b.u) * dv2 + 2.0 * sh * sh;  // argument minus 1
    return acosh1p(q);
}

inline IwasawaCoord iwasawa_multiply(const IwasawaCoord& g, const IwasawaCoord& h) {
    if (g.v.size() != h.v.size()) throw DomainError("iwasawa_multiply: dimension mismatch");
    IwasawaCoord out;
    out.u = g.u + h.u;
    out.v.resize(g.v.size());
    double eu = std::exp(g.u);
    for (std::size_t i = 0; i < g.v.size(); ++i) out.v[i] = g.v[i] + eu * h.v[i];
    return out;
}

// Graph chart tau(x) = (sqrt(1+|x|^2), x).
inline HyperbolicPoint hyperboloid_chart(const std::vector<double>& x) {
    HyperbolicPoint z;
    double n2 = 0.0;
    for (double c : x) n2 += c * c;
    z.z0 = std::sqrt(1.0 + n2);
    z.zp = x;
    return z;
}

// Radial volume weight omega_{n-1} (sinh r)^{n-1}.
inline double polar_measure_weight(double r, const Dimension& dim) {
    if (r < 0) throw DomainError("polar_measure_weight: r must be >= 0");
    return dim.sphere_area * std::pow(std::sinh(r), dim.n - 1);
}

// Volume of the geodesic ball B_t, by quadrature.
inline double ball_volume(double t, const Dimension& dim,
                          const QuadratureConfig& cfg = QuadratureConfig{}) {
    if (t < 0) throw DomainError("ball_volume: t must be >= 0");
    if (t == 0) return 0.0;
    auto edges = make_edges(0.0, t, std::max(0.25, t / 8.0));
    cxd v = integrate_adaptive(
        [&](double r) { return cxd(std::pow(std::sinh(r), dim.n - 1), 0.0); }, edges, cfg);
    return dim.sphere_area * v.real();
}

// Geodesic from z with unit tangent dir ([z,dir]=0, [dir,dir]=-1):
// exp_z(s, dir) = cosh(s) z + sinh(s) dir.
inline HyperbolicPoint geodesic_exp(const HyperbolicPoint& z, const std::vector<double>& dir,
                                   double s) {
    HyperbolicPoint out;
    double c = std::cosh(s), sh = std::sinh(s);
    out.z0 = c * z.z0 + sh * dir[0];
    out.zp.resize(z.zp.size());
    for (std::size_t i = 0; i < z.zp.size(); ++i) out.zp[i] = c * z.zp[i] + sh * dir[i + 1];
    return out;
}

// Minkowski-orthonormal tangent frame at z (n vectors of length n+1).
inline std::vector<std::vector<double>> tangent_frame(const HyperbolicPoint& z) {
    int n = z.space_dim();
    std::vector<double> za = ambient(z);
    std::vector<std::vector<double>> frame;
    frame.reserve(n);
    for (int axis = 0; axis <= n && static_cast<int>(frame.size()) < n; ++axis) {
        std::vector<double> e(n + 1, 0.0);
        e[axis] = 1.0;
        // project out the z-component: x = e - [e,z] z  (uses [z,z] = 1)
        double ez = minkowski_form(e, za);
        for (int i = 0; i <= n; ++i) e[i] -= ez * za[i];
        // project out previous frame vectors, [f,f] = -1 so x += [x,f] f
        for (const auto& f : frame) {
            double xf = minkowski_form(e, f);
            for (int i = 0; i <= n; ++i) e[i] += xf * f[i];
        }
        double norm2 = -minkowski_form(e, e);
        if (norm2 < 1e-20) continue;  // degenerate direction, skip
        double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i <= n; ++i) e[i] *= inv;
        frame.push_back(e);
    }
    if (static_cast<int>(frame.size()) != n)
        throw NumericError("tangent_frame: failed to build a full frame", 0.0);
    return frame;
}

}  // namespace hypmax
