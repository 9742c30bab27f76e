#pragma once
// Fourier multipliers of the mild formulation: Leray projector symbol,
// heat semigroup, divergence contraction, and the constant kappa.

#include <vector>

#include "pmns/core.hpp"
#include "pmns/grid.hpp"

namespace pmns {

// P_hat(xi)_{jk} = delta_{jk} - xi_j xi_k / |xi|^2; identity at xi = 0
// (irrelevant there, the mode is pinned, but avoids 0/0).
inline Mat3 leray_symbol(const Vec3& xi) {
    const double q = norm2sq(xi);
    Mat3 p{1, 0, 0, 0, 1, 0, 0, 0, 1};
    if (q == 0.0) return p;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) p[3 * j + k] -= xi[j] * xi[k] / q;
    return p;
}

// Mode-wise projection onto divergence-free fields; zero mode untouched.
inline SpectralVectorField leray_apply(const SpectralVectorField& f) {
    const auto& g = f.grid();
    SpectralVectorField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_zero_mode(i)) continue;
        const Vec3 xi = g.xi(i);
        const double q = norm2sq(xi);
        const cplx v0 = f.comp(0)[i], v1 = f.comp(1)[i], v2 = f.comp(2)[i];
        const cplx xidotv = (xi[0] * v0 + xi[1] * v1 + xi[2] * v2) / q;
        out.comp(0)[i] = v0 - xi[0] * xidotv;
        out.comp(1)[i] = v1 - xi[1] * xidotv;
        out.comp(2)[i] = v2 - xi[2] * xidotv;
    }
    return out;
}

// Multiplier e^{-t |xi|^2}.
inline SpectralVectorField heat_apply(const SpectralVectorField& f, double t) {
    if (!(t >= 0.0)) throw ParameterError("heat_apply: t must be nonnegative");
    const auto& g = f.grid();
    SpectralVectorField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double m = std::exp(-t * g.xi_sq(i));
        for (int j = 0; j < 3; ++j) out.comp(j)[i] = m * f.comp(j)[i];
    }
    pin_zero_mode(out);
    return out;
}

struct KappaConstant {
    double value;
};

// Quasi-uniform sphere sample (golden-angle spiral).
inline std::vector<Vec3> fibonacci_sphere(int count) {
    std::vector<Vec3> pts;
    pts.reserve(count);
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = ga * i;
        pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return pts;
}

// kappa = max_{j,k} sup_xi |P_hat(xi)_{jk}|. The sup is 1, attained on
// coordinate-orthogonal directions; those are added to the sample explicitly
// together with the diagonal directions maximizing the off-diagonal entries.
inline KappaConstant kappa_estimate(int n_directions) {
    if (n_directions < 100) throw ParameterError("kappa_estimate: n_directions must be >= 100");
    std::vector<Vec3> dirs = fibonacci_sphere(n_directions);
    const double s = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < 3; ++a) {
        Vec3 e{0, 0, 0};
        e[a] = 1.0;
        dirs.push_back(e);
        for (int b = a + 1; b < 3; ++b)
            for (double sgn : {1.0, -1.0}) {
                Vec3 d{0, 0, 0};
                d[a] = s;
                d[b] = sgn * s;
                dirs.push_back(d);
            }
    }
    double best = 0.0;
    for (const auto& d : dirs) {
        const Mat3 p = leray_symbol(d);
        for (double entry : p) best = std::max(best, std::abs(entry));
    }
    return {best};
}

// Component j of the output is P_hat(xi) applied to sum_k i xi_k T_{jk}(xi).
// No sign flip here; the Duhamel term carries the minus.
inline SpectralVectorField divergence_contract(const SpectralTensorField& T) {
    const auto& g = T.grid();
    SpectralVectorField out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_zero_mode(i)) continue;
        const Vec3 xi = g.xi(i);
        cplx v[3];
        for (int j = 0; j < 3; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 3; ++k) s += xi[k] * T.comp(j, k)[i];
            v[j] = cplx{0.0, 1.0} * s;
        }
        const double q = norm2sq(xi);
        const cplx xidotv = (xi[0] * v[0] + xi[1] * v[1] + xi[2] * v[2]) / q;
        for (int j = 0; j < 3; ++j) out.comp(j)[i] = v[j] - xi[j] * xidotv;
    }
    return out;
}

// sup_xi |xi . u_hat(xi)|, the lattice divergence residual.
inline double divergence_linf(const SpectralVectorField& f) {
    const auto& g = f.grid();
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 xi = g.xi(i);
        const cplx d = xi[0] * f.comp(0)[i] + xi[1] * f.comp(1)[i] + xi[2] * f.comp(2)[i];
        m = std::max(m, std::abs(d));
    }
    return m;
}

}  // namespace pmns
