#pragma once
// Deterministic field builders shared by experiments, the CLI, and tests.

#include <climits>
#include <cstdint>
#include <random>

#include "pmns/core.hpp"
#include "pmns/grid.hpp"
#include "pmns/norms.hpp"
#include "pmns/symbols.hpp"
#include "pmns/transform.hpp"

namespace pmns {

// Hermitian pair mode: amp at k, conj(amp) at -k. k must be off the pinned rows.
inline SpectralVectorField single_mode_field(const FrequencyGrid& g, const std::array<int, 3>& k,
                                             const std::array<cplx, 3>& amp) {
    for (int j = 0; j < 3; ++j)
        if (!g.on_lattice(k[j]) || k[j] == -g.half())
            throw ParameterError("single_mode_field: mode off the usable lattice");
    if (k[0] == 0 && k[1] == 0 && k[2] == 0)
        throw ParameterError("single_mode_field: zero mode is pinned");
    SpectralVectorField f(g);
    const std::size_t i = g.index(k[0], k[1], k[2]);
    const std::size_t mi = g.mirror(i);
    for (int j = 0; j < 3; ++j) {
        f.comp(j)[i] = amp[j];
        f.comp(j)[mi] = std::conj(amp[j]);
    }
    return f;
}

// u_hat(xi) = scale * P(xi) dir * |xi|^degree: exactly homogeneous spectrum,
// Hermitian (real, even in xi), divergence-free.
inline SpectralVectorField homogeneous_divfree_field(const FrequencyGrid& g, const Vec3& dir,
                                                     double degree = -2.0, double scale = 1.0) {
    SpectralVectorField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_zero_mode(i) || g.is_nyquist(i)) continue;
        const Vec3 xi = g.xi(i);
        const Mat3 p = leray_symbol(xi);
        const double w = scale * std::pow(norm2(xi), degree);
        for (int j = 0; j < 3; ++j)
            f.comp(j)[i] = w * (p[3 * j] * dir[0] + p[3 * j + 1] * dir[1] + p[3 * j + 2] * dir[2]);
    }
    return f;
}

// Smooth band-limited profile, divergence-free.
inline SpectralVectorField gaussian_divfree_field(const FrequencyGrid& g, const Vec3& dir,
                                                  double sigma_xi, double scale) {
    SpectralVectorField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_zero_mode(i) || g.is_nyquist(i)) continue;
        const Vec3 xi = g.xi(i);
        const Mat3 p = leray_symbol(xi);
        const double w = scale * std::exp(-norm2sq(xi) / (2.0 * sigma_xi * sigma_xi));
        for (int j = 0; j < 3; ++j)
            f.comp(j)[i] = w * (p[3 * j] * dir[0] + p[3 * j + 1] * dir[1] + p[3 * j + 2] * dir[2]);
    }
    return f;
}

namespace detail {

// Bit-exact uniform in [0,1) from raw engine output (distribution classes are
// implementation-defined; reports must be reproducible across builds).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline cplx gaussian_pair(std::mt19937_64& rng) {
    const double u1 = std::max(uniform01(rng), 1e-300);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

}  // namespace detail

// Random Hermitian divergence-free field supported on kmin <= |k|_inf <= kmax,
// scaled to the requested PM^2 norm.
inline SpectralVectorField random_divfree_field(const FrequencyGrid& g, std::uint64_t seed,
                                                double pm2_target, int kmin_linf = 1,
                                                int kmax_linf = INT_MAX) {
    std::mt19937_64 rng(seed);
    SpectralVectorField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_zero_mode(i) || g.is_nyquist(i)) continue;
        const auto k = g.wavenumbers(i);
        // fill each Hermitian pair once, from its lexicographically positive half
        if (k[0] < 0 || (k[0] == 0 && k[1] < 0) || (k[0] == 0 && k[1] == 0 && k[2] < 0)) continue;
        const int linf = std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2])});
        if (linf < kmin_linf || linf > kmax_linf) continue;
        const std::size_t mi = g.mirror(i);
        for (int j = 0; j < 3; ++j) {
            const cplx v = detail::gaussian_pair(rng);
            f.comp(j)[i] = v;
            f.comp(j)[mi] = std::conj(v);
        }
    }
    f = leray_apply(f);
    const double norm = pm_norm_value(f, 2.0);
    if (norm > 0.0) f *= pm2_target / norm;
    return f;
}

}  // namespace pmns
