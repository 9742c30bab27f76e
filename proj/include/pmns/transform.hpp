#pragma once
// Forward/inverse transforms between the centered frequency lattice and its
// dual spatial grid, plus the dyadic rescaling maps.
//
// Continuum convention (carried exactly on the lattice):
//   f_hat(xi) = (2*pi)^(-3/2) * Integral e^{-i x.xi} f(x) dx
//   f(x)      = (2*pi)^(-3/2) * Integral e^{+i x.xi} f_hat(xi) dxi
// discretized with the product measures dx -> dx^3, dxi -> delta_xi^3. The
// pair is exactly invertible on the lattice: (2*pi)^-3 dx^3 dxi^3 n^3 = 1.
//
// FFTW computes transforms on [0,n)^3 index space; the centered transform is
// the standard one conjugated by a checkerboard sign and a global sign
// (-1)^(n/2) (from shifting both grids by n/2).

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "pmns/core.hpp"
#include "pmns/grid.hpp"

namespace pmns {

namespace detail {

class FftEngine {
  public:
    static FftEngine& instance() {
        static FftEngine e;
        return e;
    }

    // In-place centered DFT: out[k] = sum_m e^{sign * i 2pi (m.k)/n} in[m],
    // m,k centered. sign = -1 forward, +1 backward. Unnormalized.
    void centered_dft(const FrequencyGrid& g, std::vector<cplx>& data, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        Entry& e = plan(g.n, sign);
        const std::size_t total = g.size();
        const double global = (g.half() % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < total; ++i) {
            const double s = checkerboard(g, i);
            e.buf[i][0] = s * data[i].real();
            e.buf[i][1] = s * data[i].imag();
        }
        fftw_execute(e.plan);
        for (std::size_t i = 0; i < total; ++i) {
            const double s = global * checkerboard(g, i);
            data[i] = cplx{s * e.buf[i][0], s * e.buf[i][1]};
        }
    }

  private:
    struct Entry {
        fftw_plan plan = nullptr;
        fftw_complex* buf = nullptr;
    };

    static double checkerboard(const FrequencyGrid& g, std::size_t idx) {
        const auto k = g.wavenumbers(idx);
        // parity of the storage coordinates k_j + n/2
        const int p = (k[0] + k[1] + k[2] + 3 * g.half()) & 1;
        return p ? -1.0 : 1.0;
    }

    Entry& plan(int n, int sign) {
        auto key = std::make_pair(n, sign);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Entry e;
        const std::size_t total = static_cast<std::size_t>(n) * n * n;
        e.buf = fftw_alloc_complex(total);
        e.plan = fftw_plan_dft_3d(n, n, n, e.buf, e.buf,
                                  sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
        return cache_.emplace(key, e).first->second;
    }

    std::mutex mu_;
    std::map<std::pair<int, int>, Entry> cache_;
};

}  // namespace detail

// Max |f_hat(-xi) - conj(f_hat(xi))| over lattice points whose mirror exists.
inline double hermitian_deviation(const SpectralVectorField& f) {
    const auto& g = f.grid();
    double dev = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_nyquist(i)) continue;
        const std::size_t mi = g.mirror(i);
        if (mi < i) continue;  // each pair once
        for (int j = 0; j < 3; ++j)
            dev = std::max(dev, std::abs(f.comp(j)[mi] - std::conj(f.comp(j)[i])));
    }
    return dev;
}

// Project onto the Hermitian part; zero mode and Nyquist rows cleared.
inline void make_hermitian(SpectralVectorField& f) {
    const auto& g = f.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_nyquist(i)) {
            for (int j = 0; j < 3; ++j) f.comp(j)[i] = 0.0;
            continue;
        }
        const std::size_t mi = g.mirror(i);
        if (mi < i) continue;
        for (int j = 0; j < 3; ++j) {
            const cplx a = f.comp(j)[i];
            const cplx b = f.comp(j)[mi];
            const cplx sym = 0.5 * (a + std::conj(b));
            f.comp(j)[i] = sym;
            f.comp(j)[mi] = std::conj(sym);
        }
    }
    pin_zero_mode(f);
}

struct PhysicalTransformResult {
    PhysicalVectorField field;
    double max_imag_residue = 0.0;
};

// Inverse transform. Requires Hermitian symmetry; Nyquist rows are zeroed in
// the working copy before transforming so the output is real to round-off.
inline PhysicalTransformResult to_physical_checked(const SpectralVectorField& f,
                                                   double symmetry_rtol = 1e-10) {
    const auto& g = f.grid();
    const double dev = hermitian_deviation(f);
    const double scale = max_abs(f);
    if (dev > symmetry_rtol * std::max(scale, 1e-300))
        throw SymmetryError("to_physical: non-Hermitian input, max deviation " + std::to_string(dev),
                            dev);

    PhysicalTransformResult out;
    out.field = PhysicalVectorField(g);
    const double factor = kFourierFactor * std::pow(g.delta_xi, 3);
    for (int j = 0; j < 3; ++j) {
        std::vector<cplx> work = f.comp(j);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g.is_nyquist(i)) work[i] = 0.0;
        detail::FftEngine::instance().centered_dft(g, work, +1);
        auto& dst = out.field.comp(j);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const cplx v = factor * work[i];
            dst[i] = v.real();
            out.max_imag_residue = std::max(out.max_imag_residue, std::abs(v.imag()));
        }
    }
    return out;
}

inline PhysicalVectorField to_physical(const SpectralVectorField& f) {
    return to_physical_checked(f).field;
}

// Forward transform; zero mode forced to 0 and Nyquist rows cleared.
inline SpectralVectorField to_spectral(const PhysicalVectorField& u) {
    const auto& g = u.grid();
    SpectralVectorField out(g);
    const double factor = kFourierFactor * std::pow(g.dx(), 3);
    for (int j = 0; j < 3; ++j) {
        std::vector<cplx> work(g.size());
        const auto& src = u.comp(j);
        for (std::size_t i = 0; i < g.size(); ++i) work[i] = cplx{src[i], 0.0};
        detail::FftEngine::instance().centered_dft(g, work, -1);
        auto& dst = out.comp(j);
        for (std::size_t i = 0; i < g.size(); ++i) dst[i] = factor * work[i];
    }
    pin_zero_mode(out);
    zero_nyquist(out);
    return out;
}

// Spectral representation of x -> lambda * f(lambda * x) for lambda in {2, 1/2}:
// g_hat(xi) = lambda^{-2} f_hat(xi / lambda), modes with xi/lambda off the
// lattice dropped.
inline SpectralVectorField dyadic_rescale(const SpectralVectorField& f, double lambda) {
    const auto& g = f.grid();
    SpectralVectorField out(g);
    const bool up = std::abs(lambda - 2.0) < 1e-12;
    const bool down = std::abs(lambda - 0.5) < 1e-12;
    if (!up && !down) throw ParameterError("dyadic_rescale: unsupported lambda (must be 2 or 1/2)");

    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto k = g.wavenumbers(i);
        if (up) {
            if (k[0] % 2 != 0 || k[1] % 2 != 0 || k[2] % 2 != 0) continue;
            const std::size_t src = g.index(k[0] / 2, k[1] / 2, k[2] / 2);
            for (int j = 0; j < 3; ++j) out.comp(j)[i] = 0.25 * f.comp(j)[src];
        } else {
            if (!g.on_lattice(2 * k[0]) || !g.on_lattice(2 * k[1]) || !g.on_lattice(2 * k[2]))
                continue;
            const std::size_t src = g.index(2 * k[0], 2 * k[1], 2 * k[2]);
            for (int j = 0; j < 3; ++j) out.comp(j)[i] = 4.0 * f.comp(j)[src];
        }
    }
    pin_zero_mode(out);
    zero_nyquist(out);
    return out;
}

}  // namespace pmns
