#pragma once
// Shared basics: small vector/matrix helpers, error types, constants,
// and the PMNS_THREADS-capped parallel loop used by lattice sweeps.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pmns {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;  // row-major 3x3

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline const double kPiCubed = kPi * kPi * kPi;
// (2*pi)^(-3/2), the Fourier-convention factor carried by products and
// Dirac spectra throughout.
inline const double kFourierFactor = std::pow(kTwoPi, -1.5);

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2sq(const Vec3& a) { return dot(a, a); }
inline double norm2(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A parameter is outside its documented domain.
struct ParameterError : Error {
    using Error::Error;
};
struct DomainError : ParameterError {
    using ParameterError::ParameterError;
};
// Inputs are structurally incompatible (grid mismatch, bad knots, ...).
struct InputError : Error {
    using Error::Error;
};
struct SymmetryError : Error {
    double max_deviation;
    SymmetryError(const std::string& what, double dev) : Error(what), max_deviation(dev) {}
};
// Picard refusal: data norm exceeds the contraction threshold.
struct SmallnessError : Error {
    double data_norm;
    double threshold;
    SmallnessError(const std::string& what, double norm, double thr)
        : Error(what), data_norm(norm), threshold(thr) {}
};
struct ConvergenceError : Error {
    using Error::Error;
};
struct IOError : Error {
    using Error::Error;
};

// Worker cap from the environment; 0/unset means serial execution.
inline int worker_count() {
    static const int n = [] {
        const char* env = std::getenv("PMNS_THREADS");
        if (env == nullptr) return 1;
        int v = std::atoi(env);
        return v > 0 ? v : 1;
    }();
    return n;
}

// Chunked parallel map over [0, count). fn must be pure per-index; reductions
// stay with the caller so they remain deterministic.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const int workers = worker_count();
    if (workers <= 1 || count < 2048) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
        const std::size_t lo = static_cast<std::size_t>(w) * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace pmns
