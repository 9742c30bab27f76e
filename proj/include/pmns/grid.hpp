#pragma once
// Frequency lattice and the field containers every other module consumes.
//
// The lattice is {xi = delta_xi * k : k in Z^3, -n/2 <= k_j < n/2} with n even.
// The dual spatial grid is {x = dx * m : -n/2 <= m_j < n/2}, dx = 2*pi/(n*delta_xi),
// i.e. a periodic box of side 2*pi/delta_xi centered on the origin.
//
// Conventions baked in everywhere:
//   * the zero mode is pinned to 0 (mean-free velocity; PM norms and 1/|xi|^2
//     symbols are undefined there),
//   * Nyquist rows (k_j = -n/2) have no Hermitian partner on the asymmetric
//     range and are zeroed before inverse transforms.

#include <array>
#include <cstddef>
#include <vector>

#include "pmns/core.hpp"

namespace pmns {

struct FrequencyGrid {
    int n = 0;            // points per axis, even
    double delta_xi = 0;  // lattice spacing

    FrequencyGrid() = default;
    FrequencyGrid(int n_per_axis, double spacing) : n(n_per_axis), delta_xi(spacing) {
        if (n <= 0 || n % 2 != 0) throw ParameterError("FrequencyGrid: n_per_axis must be positive and even");
        if (!(delta_xi > 0)) throw ParameterError("FrequencyGrid: delta_xi must be positive");
    }

    std::size_t size() const {
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    }
    int half() const { return n / 2; }
    // max |xi_j| represented
    double cutoff() const { return delta_xi * n / 2.0; }
    double dx() const { return kTwoPi / (n * delta_xi); }
    double box_length() const { return kTwoPi / delta_xi; }

    // storage index for centered wavenumbers k_j in [-n/2, n/2)
    std::size_t index(int k1, int k2, int k3) const {
        const std::size_t a = static_cast<std::size_t>(k1 + half());
        const std::size_t b = static_cast<std::size_t>(k2 + half());
        const std::size_t c = static_cast<std::size_t>(k3 + half());
        return (a * n + b) * n + c;
    }
    std::array<int, 3> wavenumbers(std::size_t idx) const {
        const int c = static_cast<int>(idx % n) - half();
        const int b = static_cast<int>((idx / n) % n) - half();
        const int a = static_cast<int>(idx / (static_cast<std::size_t>(n) * n)) - half();
        return {a, b, c};
    }
    bool on_lattice(int k) const { return k >= -half() && k < half(); }

    Vec3 xi(std::size_t idx) const {
        const auto k = wavenumbers(idx);
        return {delta_xi * k[0], delta_xi * k[1], delta_xi * k[2]};
    }
    double xi_sq(std::size_t idx) const { return norm2sq(xi(idx)); }
    // dual spatial point with the same centered indexing
    Vec3 x(std::size_t idx) const {
        const auto m = wavenumbers(idx);
        const double h = dx();
        return {h * m[0], h * m[1], h * m[2]};
    }

    std::size_t zero_index() const { return index(0, 0, 0); }
    bool is_zero_mode(std::size_t idx) const { return idx == zero_index(); }
    bool is_nyquist(std::size_t idx) const {
        const auto k = wavenumbers(idx);
        return k[0] == -half() || k[1] == -half() || k[2] == -half();
    }
    // index of -k; only valid off the Nyquist rows
    std::size_t mirror(std::size_t idx) const {
        const auto k = wavenumbers(idx);
        return index(-k[0], -k[1], -k[2]);
    }

    bool operator==(const FrequencyGrid&) const = default;
};

inline void require_same_grid(const FrequencyGrid& a, const FrequencyGrid& b, const char* who) {
    if (!(a == b)) throw InputError(std::string(who) + ": grid mismatch");
}

// Complex Fourier coefficients of a 3-component vector field.
class SpectralVectorField {
  public:
    SpectralVectorField() = default;
    explicit SpectralVectorField(const FrequencyGrid& g)
        : grid_(g), comps_{std::vector<cplx>(g.size()), std::vector<cplx>(g.size()),
                           std::vector<cplx>(g.size())} {}

    const FrequencyGrid& grid() const { return grid_; }
    std::vector<cplx>& comp(int j) { return comps_[j]; }
    const std::vector<cplx>& comp(int j) const { return comps_[j]; }

    SpectralVectorField& operator+=(const SpectralVectorField& o) {
        require_same_grid(grid_, o.grid_, "SpectralVectorField::operator+=");
        for (int j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < comps_[j].size(); ++i) comps_[j][i] += o.comps_[j][i];
        return *this;
    }
    SpectralVectorField& operator-=(const SpectralVectorField& o) {
        require_same_grid(grid_, o.grid_, "SpectralVectorField::operator-=");
        for (int j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < comps_[j].size(); ++i) comps_[j][i] -= o.comps_[j][i];
        return *this;
    }
    SpectralVectorField& operator*=(double s) {
        for (int j = 0; j < 3; ++j)
            for (auto& v : comps_[j]) v *= s;
        return *this;
    }

    friend SpectralVectorField operator+(SpectralVectorField a, const SpectralVectorField& b) {
        a += b;
        return a;
    }
    friend SpectralVectorField operator-(SpectralVectorField a, const SpectralVectorField& b) {
        a -= b;
        return a;
    }
    friend SpectralVectorField operator*(double s, SpectralVectorField a) {
        a *= s;
        return a;
    }

  private:
    FrequencyGrid grid_;
    std::array<std::vector<cplx>, 3> comps_;
};

inline void pin_zero_mode(SpectralVectorField& f) {
    const std::size_t z = f.grid().zero_index();
    for (int j = 0; j < 3; ++j) f.comp(j)[z] = 0.0;
}

inline void zero_nyquist(SpectralVectorField& f) {
    const auto& g = f.grid();
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.is_nyquist(i))
            for (int j = 0; j < 3; ++j) f.comp(j)[i] = 0.0;
}

inline double max_abs(const SpectralVectorField& f) {
    double m = 0.0;
    for (int j = 0; j < 3; ++j)
        for (const auto& v : f.comp(j)) m = std::max(m, std::abs(v));
    return m;
}

// Real samples on the dual spatial grid.
class PhysicalVectorField {
  public:
    PhysicalVectorField() = default;
    explicit PhysicalVectorField(const FrequencyGrid& g)
        : grid_(g), comps_{std::vector<double>(g.size()), std::vector<double>(g.size()),
                           std::vector<double>(g.size())} {}

    const FrequencyGrid& grid() const { return grid_; }
    std::vector<double>& comp(int j) { return comps_[j]; }
    const std::vector<double>& comp(int j) const { return comps_[j]; }

  private:
    FrequencyGrid grid_;
    std::array<std::vector<double>, 3> comps_;
};

// Spectral coefficients of a 3x3 tensor field, component (j,k) at 3*j+k.
class SpectralTensorField {
  public:
    SpectralTensorField() = default;
    explicit SpectralTensorField(const FrequencyGrid& g) : grid_(g) {
        for (auto& c : comps_) c.assign(g.size(), cplx{0.0, 0.0});
    }

    const FrequencyGrid& grid() const { return grid_; }
    std::vector<cplx>& comp(int j, int k) { return comps_[3 * j + k]; }
    const std::vector<cplx>& comp(int j, int k) const { return comps_[3 * j + k]; }

  private:
    FrequencyGrid grid_;
    std::array<std::vector<cplx>, 9> comps_;
};

}  // namespace pmns
