#pragma once
// Gauss-Legendre nodes and the stabilized exponential moments used by the
// Duhamel quadrature.

#include <cmath>
#include <vector>

#include "pmns/core.hpp"

namespace pmns {

// Nodes/weights on [-1, 1] via Newton iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) {
        if (n < 1) throw ParameterError("GaussLegendre: order must be positive");
        nodes.resize(n);
        weights.resize(n);
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    template <typename Fn>
    double integrate(double a, double b, Fn&& fn) const {
        const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * fn(mid + rad * nodes[i]);
        return rad * s;
    }
};

// phi1m(w) = (1 - e^{-w})/w, phi2m(w) = (e^{-w} - 1 + w)/w^2. Both appear in
// exact integration of e^{-(t-tau) z} against piecewise-polynomial
// interpolants; series branches keep them accurate for small w.
inline double phi1m(double w) {
    if (std::abs(w) < 1e-8) return 1.0 - w / 2.0 + w * w / 6.0;
    return -std::expm1(-w) / w;
}

inline double phi2m(double w) {
    if (std::abs(w) < 0.25) {
        // 1/2 - w/6 + w^2/24 - ... = sum_{k>=0} (-w)^k / (k+2)!
        double term = 0.5, sum = 0.5;
        for (int k = 1; k <= 16; ++k) {
            term *= -w / (k + 2);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return (std::expm1(-w) + w) / (w * w);
}

}  // namespace pmns
