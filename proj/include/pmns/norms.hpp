#pragma once
// PM^a norms, weighted trajectory seminorms, and the diagnostic norms linking
// PM^2 to heat-characterized Besov norms and L^q interpolation.
//
// The ess-sup of the continuum norm becomes a lattice max here; for
// non-band-limited functions this under-estimates the true norm, and all
// comparisons in this project are between lattice quantities. Vector norms
// are componentwise maxima throughout (all bounds hold per component, so this
// choice keeps every inequality exact rather than costing a sqrt(3) fudge).

#include <cmath>
#include <limits>
#include <vector>

#include "pmns/core.hpp"
#include "pmns/grid.hpp"
#include "pmns/symbols.hpp"
#include "pmns/trajectory.hpp"
#include "pmns/transform.hpp"

namespace pmns {

struct PMNormReport {
    double a = 0.0;
    double value = 0.0;
    std::array<int, 3> argmax_k{0, 0, 0};
    Vec3 argmax_xi{0, 0, 0};
};

// max over lattice xi != 0 of |xi|^a max_j |u_hat_j(xi)|.
inline PMNormReport pm_norm(const SpectralVectorField& f, double a) {
    if (!(a >= 0.0 && a < 3.0)) throw ParameterError("pm_norm: a must lie in [0, 3)");
    const auto& g = f.grid();
    PMNormReport rep;
    rep.a = a;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_zero_mode(i)) continue;
        double amp = std::abs(f.comp(0)[i]);
        amp = std::max(amp, std::abs(f.comp(1)[i]));
        amp = std::max(amp, std::abs(f.comp(2)[i]));
        if (amp == 0.0) continue;
        const double w = std::pow(std::sqrt(g.xi_sq(i)), a) * amp;
        if (w > rep.value) {
            rep.value = w;
            rep.argmax_k = g.wavenumbers(i);
            rep.argmax_xi = g.xi(i);
        }
    }
    return rep;
}

inline double pm_norm_value(const SpectralVectorField& f, double a) { return pm_norm(f, a).value; }

inline double pm2_distance(const SpectralVectorField& a, const SpectralVectorField& b) {
    return pm_norm_value(a - b, 2.0);
}

inline double sup_pm2(const Trajectory& traj) {
    double m = 0.0;
    for (const auto& f : traj.fields) m = std::max(m, pm_norm_value(f, 2.0));
    return m;
}

struct TrajectorySeminorm {
    double a = 0.0;
    double value = 0.0;
    double argmax_time = 0.0;
};

// |||u|||_a = sup over sampled t > 0 of t^{a/2-1} ||u(t)||_{PM^a}.
inline TrajectorySeminorm trajectory_seminorm(const Trajectory& traj, double a) {
    if (!(a >= 2.0 && a < 3.0)) throw ParameterError("trajectory_seminorm: a must lie in [2, 3)");
    TrajectorySeminorm out;
    out.a = a;
    bool seen = false;
    for (std::size_t i = 0; i < traj.knot_count(); ++i) {
        const double t = traj.knots[i];
        if (!(t > 0.0)) continue;
        seen = true;
        const double w = std::pow(t, a / 2.0 - 1.0) * pm_norm_value(traj.at(i), a);
        if (w > out.value) {
            out.value = w;
            out.argmax_time = t;
        }
    }
    if (!seen) throw InputError("trajectory_seminorm: trajectory has no t > 0 samples");
    return out;
}

// Rectangle-rule L^q norm on the dual spatial grid, componentwise max.
// q = infinity gives the sup norm.
inline double lq_norm(const PhysicalVectorField& u, double q) {
    const auto& g = u.grid();
    double best = 0.0;
    if (std::isinf(q)) {
        for (int j = 0; j < 3; ++j)
            for (double v : u.comp(j)) best = std::max(best, std::abs(v));
        return best;
    }
    const double cell = std::pow(g.dx(), 3);
    for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (double v : u.comp(j)) s += std::pow(std::abs(v), q);
        best = std::max(best, std::pow(cell * s, 1.0 / q));
    }
    return best;
}

struct InterpolationCheck {
    double lhs_lq = 0.0;
    double rhs_bound = 0.0;
    double beta = 0.0;
};

// ||v||_{L^q} <= C ||v||_{PM^2}^beta ||v||_{PM^a}^{1-beta}, beta = (1-3/q)/(a-2).
// The constant follows the two-piece Hausdorff-Young recipe: split the
// Fourier integral at radius R, bound each piece by the matching PM norm, and
// optimize over R (the optimum is R = (||v||_a / ||v||_2)^{1/(a-2)}).
inline InterpolationCheck interpolation_check(const SpectralVectorField& f, double a, double q) {
    if (!(a > 2.0 && a < 3.0)) throw ParameterError("interpolation_check: a must lie in (2, 3)");
    if (!(q > 3.0 && q < 3.0 / (3.0 - a)))
        throw ParameterError("interpolation_check: q must lie in (3, 3/(3-a))");
    InterpolationCheck out;
    out.beta = (1.0 - 3.0 / q) / (a - 2.0);
    out.lhs_lq = lq_norm(to_physical(f), q);

    const double n2 = pm_norm_value(f, 2.0);
    const double na = pm_norm_value(f, a);
    if (n2 == 0.0 || na == 0.0) return out;  // zero field: both sides vanish

    const double p = q / (q - 1.0);  // conjugate exponent, in (1, 3/2)
    const double chy = std::pow(kTwoPi, -1.5 * (1.0 - 2.0 / q));
    const double A = 4.0 * kPi * std::pow(n2, p) / (3.0 - 2.0 * p);
    const double B = 4.0 * kPi * std::pow(na, p) / (a * p - 3.0);
    const double R = std::pow(na / n2, 1.0 / (a - 2.0));
    const double g = A * std::pow(R, 3.0 - 2.0 * p) + B * std::pow(R, 3.0 - a * p);
    out.rhs_bound = chy * std::pow(g, 1.0 / p);
    return out;
}

// sup over samples of t^{(1-3/p)/2} ||S(t) f||_{L^p}; the heat-characterized
// Besov norm diagnostic for the embedding PM^2 into B^{-1+3/p,inf}_p.
inline double besov_heat_norm(const SpectralVectorField& f, double p,
                              const std::vector<double>& t_samples) {
    if (!(p > 3.0)) throw ParameterError("besov_heat_norm: p must exceed 3");
    if (t_samples.empty()) throw ParameterError("besov_heat_norm: t_samples must be nonempty");
    const double alpha = 1.0 - (std::isinf(p) ? 0.0 : 3.0 / p);
    double best = 0.0;
    for (double t : t_samples) {
        if (!(t > 0.0)) throw ParameterError("besov_heat_norm: samples must be positive");
        const double v = std::pow(t, alpha / 2.0) * lq_norm(to_physical(heat_apply(f, t)), p);
        best = std::max(best, v);
    }
    return best;
}

}  // namespace pmns
