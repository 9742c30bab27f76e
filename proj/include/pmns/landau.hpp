#pragma once
// Closed-form one-point singular jet solutions, their forcing amplitude b(c),
// and quadrature verification of the weak formulation.
//
// The velocity/pressure family (axisymmetric about the x1-axis, homogeneous
// of degree -1, singular only at the origin):
//   u1 = 2 (c|x|^2 - 2 x1 |x| + c x1^2) / (|x| (c|x| - x1)^2)
//   u2 = 2 x2 (c x1 - |x|) / (|x| (c|x| - x1)^2)
//   u3 = 2 x3 (c x1 - |x|) / (|x| (c|x| - x1)^2)
//   p  = 4 (c x1 - |x|)   / (|x| (c|x| - x1)^2)
// for |c| > 1. The u1 numerator carries the factor 2 on the middle term that
// the original Tian-Xin display dropped; a regression test pins it. As a
// distributional solution the pair is driven by F = (b(c) delta_0, 0, 0).

#include <cmath>
#include <vector>

#include "pmns/core.hpp"
#include "pmns/grid.hpp"
#include "pmns/quadrature.hpp"
#include "pmns/transform.hpp"

namespace pmns {

struct LandauParams {
    double c;
    explicit LandauParams(double c_) : c(c_) {
        if (!(std::abs(c) > 1.0)) throw DomainError("LandauParams: requires |c| > 1");
    }
};

struct LandauSample {
    Vec3 u;
    double p;
};

inline LandauSample landau_eval(const LandauParams& params, const Vec3& x) {
    const double r = norm2(x);
    if (r == 0.0) throw DomainError("landau_eval: the origin is the singular point");
    const double c = params.c;
    const double den = c * r - x[0];
    const double scale = 1.0 / (r * den * den);
    LandauSample s;
    s.u[0] = 2.0 * (c * r * r - 2.0 * x[0] * r + c * x[0] * x[0]) * scale;
    s.u[1] = 2.0 * x[1] * (c * x[0] - r) * scale;
    s.u[2] = 2.0 * x[2] * (c * x[0] - r) * scale;
    s.p = 4.0 * (c * x[0] - r) * scale;
    return s;
}

// b(c) = 4 pi (4c + 2 c^2 log((c-1)/(c+1)) + (16/3) c / (c^2 - 1)),
// odd in c, decreasing on (1, inf), blows up as c -> 1+, decays like
// 16 pi / c for large |c|. The closed form cancels catastrophically for large
// |c| (4c against the log term), so switch to the artanh series there.
inline double b_of_c(double c) {
    if (!(std::abs(c) > 1.0)) throw DomainError("b_of_c: requires |c| > 1");
    const double a = std::abs(c);
    double val;
    if (a > 100.0) {
        // 4a + 2a^2 log((a-1)/(a+1)) = -4 sum_{j>=1} a^{1-2j} / (2j+1)
        double sum = 0.0, pw = 1.0 / a;
        for (int j = 1; j <= 12; ++j) {
            sum += pw / (2 * j + 1);
            pw /= a * a;
        }
        val = -4.0 * sum + (16.0 / 3.0) * a / (a * a - 1.0);
    } else {
        const double lg = std::log1p(-2.0 / (a + 1.0));  // log((a-1)/(a+1))
        val = 4.0 * a + 2.0 * a * a * lg + (16.0 / 3.0) * a / (a * a - 1.0);
    }
    return std::copysign(4.0 * kPi * val, c);
}

// Independent oracle for b(c): Gauss-Legendre quadrature of the 1-D surface
// integral b(c) = 2 pi Integral_{-1}^{1} 2 [ (c + (c^2-1)(c/(c-s)^2 - 2/(c-s)))
//                  (1 + 2 (c^2-1)/(c-s)^2) - 2/(c-s) ] ds.
inline double b_surface_quadrature(double c, int n_quad = 256) {
    if (!(std::abs(c) > 1.0)) throw DomainError("b_surface_quadrature: requires |c| > 1");
    if (n_quad < 64) throw ParameterError("b_surface_quadrature: n_quad must be >= 64");
    const GaussLegendre gl(n_quad);
    const double c2 = c * c - 1.0;
    const double integral = gl.integrate(-1.0, 1.0, [c, c2](double s) {
        const double d = c - s;
        const double inner = c + c2 * (c / (d * d) - 2.0 / d);
        return 2.0 * (inner * (1.0 + 2.0 * c2 / (d * d)) - 2.0 / d);
    });
    return 2.0 * kPi * integral;
}

enum class LandauBranch { positive_c, negative_c };

// Inverts b(c) on one monotone branch by bisection.
inline double c_of_b(double b_target, LandauBranch branch = LandauBranch::positive_c) {
    if (branch == LandauBranch::negative_c) {
        if (!(b_target < 0.0))
            throw DomainError("c_of_b: negative-c branch takes negative b only");
        return -c_of_b(-b_target, LandauBranch::positive_c);
    }
    if (!(b_target > 0.0)) throw DomainError("c_of_b: positive-c branch takes positive b only");

    double lo = 1.0 + 1e-9;
    while (b_of_c(lo) < b_target) {
        lo = 1.0 + (lo - 1.0) / 100.0;
        if (lo - 1.0 < 1e-300) throw DomainError("c_of_b: target above the attainable range");
    }
    double hi = 2.0;
    while (b_of_c(hi) > b_target) {
        hi *= 2.0;
        if (hi > 1e15) throw DomainError("c_of_b: target below the attainable range");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (b_of_c(mid) > b_target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Closed-form mollifier bump with analytic gradient:
// phi(x) = A exp(-r^2 / (R^2 - r^2)) for r = |x - center| < R, else 0.
struct BumpSpec {
    Vec3 center{0.0, 0.0, 0.0};
    double radius = 1.0;
    double amplitude = 1.0;

    double value(const Vec3& x) const {
        const Vec3 y = x - center;
        const double r2 = norm2sq(y);
        const double R2 = radius * radius;
        if (r2 >= R2) return 0.0;
        return amplitude * std::exp(-r2 / (R2 - r2));
    }
    Vec3 gradient(const Vec3& x) const {
        const Vec3 y = x - center;
        const double r2 = norm2sq(y);
        const double R2 = radius * radius;
        if (r2 >= R2) return {0.0, 0.0, 0.0};
        const double d = R2 - r2;
        const double phi = amplitude * std::exp(-r2 / d);
        const double factor = -2.0 * R2 / (d * d) * phi;
        return factor * y;
    }
};

struct WeakFormQuadrature {
    double rho0 = 0.1;           // coarsest excision radius
    int richardson_levels = 4;   // rho0, rho0/2, ...
    int n_radial = 48;           // panels on [rho0, r_outer]
    int gl_order = 8;            // per-panel Gauss order (radial and polar)
    int n_polar = 24;            // Gauss panels in cos(theta) use gl_order each
    int n_azimuth = 64;          // trapezoid points in the azimuth
    double fd_rel_step = 1e-5;   // relative step for velocity gradients
};

struct WeakFormResult {
    Vec3 momentum{0, 0, 0};      // rho -> 0 extrapolated pairings, k = 1..3
    double divergence = 0.0;     // extrapolated u . grad(phi) pairing
    double expected_first = 0.0; // -b(c) phi(0)
    std::vector<double> rho_levels;
    std::vector<Vec3> momentum_raw;
    std::vector<double> divergence_raw;
};

namespace detail {

// One radial shell's contribution to the four pairings.
struct ShellSums {
    Vec3 momentum{0, 0, 0};
    double divergence = 0.0;
};

inline ShellSums weak_form_shell(const LandauParams& prm, const BumpSpec& phi, double r_lo,
                                 double r_hi, const WeakFormQuadrature& q,
                                 const GaussLegendre& gl) {
    ShellSums sums;
    {
        // radial Gauss nodes on [r_lo, r_hi]
        for (std::size_t ir = 0; ir < gl.nodes.size(); ++ir) {
            const double r = 0.5 * (r_lo + r_hi) + 0.5 * (r_hi - r_lo) * gl.nodes[ir];
            const double wr = 0.5 * (r_hi - r_lo) * gl.weights[ir] * r * r;
            for (int mp = 0; mp < q.n_polar; ++mp) {
                const double mu_lo = -1.0 + 2.0 * mp / q.n_polar;
                const double mu_hi = -1.0 + 2.0 * (mp + 1) / q.n_polar;
                for (std::size_t im = 0; im < gl.nodes.size(); ++im) {
                    const double mu = 0.5 * (mu_lo + mu_hi) + 0.5 * (mu_hi - mu_lo) * gl.nodes[im];
                    const double wmu = 0.5 * (mu_hi - mu_lo) * gl.weights[im];
                    const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
                    for (int ia = 0; ia < q.n_azimuth; ++ia) {
                        const double az = kTwoPi * ia / q.n_azimuth;
                        const double waz = kTwoPi / q.n_azimuth;
                        const Vec3 x{r * mu, r * st * std::cos(az), r * st * std::sin(az)};
                        const Vec3 gphi = phi.gradient(x);
                        if (gphi[0] == 0.0 && gphi[1] == 0.0 && gphi[2] == 0.0 &&
                            phi.value(x) == 0.0)
                            continue;
                        const double w = wr * wmu * waz;
                        const LandauSample s = landau_eval(prm, x);
                        // velocity Jacobian by central differences, step
                        // relative to |x| (uniform relative accuracy: all
                        // integrand terms are homogeneous of degree -2)
                        const double h = q.fd_rel_step * r;
                        Mat3 grad_u;  // grad_u[3k + i] = d u_k / d x_i
                        for (int i = 0; i < 3; ++i) {
                            Vec3 xp = x, xm = x;
                            xp[i] += h;
                            xm[i] -= h;
                            const LandauSample sp = landau_eval(prm, xp);
                            const LandauSample sm = landau_eval(prm, xm);
                            for (int k = 0; k < 3; ++k)
                                grad_u[3 * k + i] = (sp.u[k] - sm.u[k]) / (2.0 * h);
                        }
                        const double u_dot_gphi = dot(s.u, gphi);
                        for (int k = 0; k < 3; ++k) {
                            const Vec3 guk{grad_u[3 * k], grad_u[3 * k + 1], grad_u[3 * k + 2]};
                            sums.momentum[k] +=
                                w * (dot(guk, gphi) - s.u[k] * u_dot_gphi - s.p * gphi[k]);
                        }
                        sums.divergence += w * u_dot_gphi;
                    }
                }
            }
        }
    }
    return sums;
}

}  // namespace detail

// The distributional pairings Integral (grad u_k . grad phi - u_k u . grad phi
// - p d_k phi) dx and Integral u . grad phi dx, computed over |x| >= rho with
// Richardson extrapolation in the excision radius (the integrands are
// homogeneous of degree -2, so I(rho) = I + c1 rho + c2 rho^2 + ...).
inline WeakFormResult weak_form_residual(double c, const BumpSpec& phi,
                                         const WeakFormQuadrature& q = {}) {
    const LandauParams prm(c);
    const GaussLegendre gl(q.gl_order);
    const double r_outer = norm2(phi.center) + phi.radius;
    if (!(q.rho0 < r_outer)) throw ParameterError("weak_form_residual: rho0 exceeds the support");

    WeakFormResult res;
    res.expected_first = -b_of_c(c) * phi.value({0.0, 0.0, 0.0});

    // shells between consecutive excision radii, finest first
    std::vector<double> rho(q.richardson_levels);
    for (int l = 0; l < q.richardson_levels; ++l) rho[l] = q.rho0 * std::pow(0.5, l);

    // common outer region [rho0, r_outer]: geometric panels near the
    // excision, uniform beyond 2*rho0
    detail::ShellSums outer;
    {
        std::vector<double> bounds{q.rho0};
        double b = q.rho0;
        while (b < std::min(2.0 * q.rho0, r_outer)) {
            b = std::min(b * 1.5, r_outer);
            bounds.push_back(b);
        }
        const double start = bounds.back();
        for (int p = 1; p <= q.n_radial; ++p)
            bounds.push_back(start + (r_outer - start) * p / q.n_radial);
        for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
            const auto s = detail::weak_form_shell(prm, phi, bounds[i], bounds[i + 1], q, gl);
            outer.momentum = outer.momentum + s.momentum;
            outer.divergence += s.divergence;
        }
    }

    // I(rho_l) accumulates the outer region plus every shell outside rho_l
    std::vector<Vec3> raw(q.richardson_levels, outer.momentum);
    std::vector<double> raw_div(q.richardson_levels, outer.divergence);
    detail::ShellSums acc;
    for (int l = 1; l < q.richardson_levels; ++l) {
        const auto s = detail::weak_form_shell(prm, phi, rho[l], rho[l - 1], q, gl);
        acc.momentum = acc.momentum + s.momentum;
        acc.divergence += s.divergence;
        raw[l] = raw[l] + acc.momentum;
        raw_div[l] += acc.divergence;
    }
    res.rho_levels = rho;
    res.momentum_raw = raw;
    res.divergence_raw = raw_div;

    // Richardson: eliminate the O(rho) then the O(rho^2) error terms.
    auto extrapolate = [&](std::vector<double> v) {
        std::vector<double> first;
        for (std::size_t j = 0; j + 1 < v.size(); ++j) first.push_back(2.0 * v[j + 1] - v[j]);
        if (first.size() < 2) return first.empty() ? v.back() : first.back();
        std::vector<double> second;
        for (std::size_t j = 0; j + 1 < first.size(); ++j)
            second.push_back((4.0 * first[j + 1] - first[j]) / 3.0);
        return second.back();
    };
    for (int k = 0; k < 3; ++k) {
        std::vector<double> v;
        for (const auto& m : raw) v.push_back(m[k]);
        res.momentum[k] = extrapolate(v);
    }
    res.divergence = extrapolate(raw_div);
    return res;
}

struct PointwiseResidual {
    Vec3 momentum{0, 0, 0};  // -Lap u + (u.grad) u + grad p
    double divergence = 0.0;
};

// Central finite differences of the closed forms; both residuals vanish as
// h -> 0 at rate h^2 away from the origin.
inline PointwiseResidual pointwise_residual(double c, const Vec3& x, double h) {
    if (norm2(x) == 0.0) throw DomainError("pointwise_residual: x must be nonzero");
    if (!(h > 0.0)) throw ParameterError("pointwise_residual: h must be positive");
    const LandauParams prm(c);
    const LandauSample s0 = landau_eval(prm, x);
    LandauSample sp[3], sm[3];
    for (int i = 0; i < 3; ++i) {
        Vec3 xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        sp[i] = landau_eval(prm, xp);
        sm[i] = landau_eval(prm, xm);
    }
    PointwiseResidual r;
    for (int k = 0; k < 3; ++k) {
        double lap = 0.0, conv = 0.0;
        for (int i = 0; i < 3; ++i) {
            lap += (sp[i].u[k] - 2.0 * s0.u[k] + sm[i].u[k]) / (h * h);
            conv += s0.u[i] * (sp[i].u[k] - sm[i].u[k]) / (2.0 * h);
        }
        const double gradp = (sp[k].p - sm[k].p) / (2.0 * h);
        r.momentum[k] = -lap + conv + gradp;
    }
    for (int i = 0; i < 3; ++i) r.divergence += (sp[i].u[i] - sm[i].u[i]) / (2.0 * h);
    return r;
}

// Band-limited surrogate of the closed-form velocity: samples on the dual
// spatial grid with the origin sample taken at the cell-center offset, then a
// forward transform. Approximate by construction (periodization, origin
// cell); intended for ratio checks and solver comparisons only.
inline SpectralVectorField landau_sample_spectral(const LandauParams& prm,
                                                  const FrequencyGrid& g) {
    PhysicalVectorField u(g);
    const double off = 0.5 * g.dx();
    for (std::size_t i = 0; i < g.size(); ++i) {
        Vec3 x = g.x(i);
        if (x[0] == 0.0 && x[1] == 0.0 && x[2] == 0.0) x = {off, off, off};
        const LandauSample s = landau_eval(prm, x);
        for (int j = 0; j < 3; ++j) u.comp(j)[i] = s.u[j];
    }
    return to_spectral(u);
}

}  // namespace pmns
