#include <catch2/catch_amalgamated.hpp>

#include "pmns/datasets.hpp"
#include "pmns/norms.hpp"
#include "pmns/symbols.hpp"

using namespace pmns;

namespace {

double max_field_diff(const SpectralVectorField& a, const SpectralVectorField& b) {
    double m = 0.0;
    for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < a.grid().size(); ++i)
            m = std::max(m, std::abs(a.comp(j)[i] - b.comp(j)[i]));
    return m;
}

}  // namespace

TEST_CASE("leray projector annihilates gradients") {
    FrequencyGrid g(8, 0.5);
    std::mt19937_64 rng(5);
    SpectralVectorField grad(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.is_zero_mode(i)) continue;
        const cplx ghat{static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                        static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5};
        const Vec3 xi = g.xi(i);
        for (int j = 0; j < 3; ++j) grad.comp(j)[i] = cplx{0.0, 1.0} * xi[j] * ghat;
    }
    const auto projected = leray_apply(grad);
    REQUIRE(max_abs(projected) < 1e-14 * max_abs(grad));
}

TEST_CASE("leray projector is idempotent and fixes divergence-free fields") {
    FrequencyGrid g(8, 0.5);
    const auto f = random_divfree_field(g, 17, 1.0, 1, 3);
    const auto pf = leray_apply(f);
    REQUIRE(max_field_diff(pf, f) < 1e-13 * max_abs(f));
    const auto ppf = leray_apply(pf);
    REQUIRE(max_field_diff(ppf, pf) < 1e-13 * max_abs(f));
    REQUIRE(divergence_linf(pf) < 1e-13 * max_abs(f));
}

TEST_CASE("leray symbol values and structure") {
    const Mat3 p = leray_symbol({1.0, 0.0, 0.0});
    const Mat3 expect{0, 0, 0, 0, 1, 0, 0, 0, 1};
    for (int i = 0; i < 9; ++i) REQUIRE(p[i] == Catch::Approx(expect[i]).margin(1e-15));

    // symmetric idempotent with trace 2 and P xi = 0 => eigenvalues {0, 1, 1}
    for (const auto& d : fibonacci_sphere(250)) {
        const Mat3 m = leray_symbol(d);
        double trace = 0.0;
        for (int a = 0; a < 3; ++a) {
            trace += m[3 * a + a];
            double pd = 0.0;
            for (int b = 0; b < 3; ++b) {
                REQUIRE(m[3 * a + b] == Catch::Approx(m[3 * b + a]).margin(1e-14));
                double mm = 0.0;
                for (int c = 0; c < 3; ++c) mm += m[3 * a + c] * m[3 * c + b];
                REQUIRE(mm == Catch::Approx(m[3 * a + b]).margin(1e-12));
                pd += m[3 * a + b] * d[b];
            }
            REQUIRE(pd == Catch::Approx(0.0).margin(1e-12));
        }
        REQUIRE(trace == Catch::Approx(2.0).margin(1e-12));
    }
}

TEST_CASE("kappa estimate") {
    const auto kappa = kappa_estimate(500);
    REQUIRE(kappa.value == Catch::Approx(1.0).margin(1e-12));

    double offdiag = 0.0;
    for (const auto& d : fibonacci_sphere(4000)) {
        const Mat3 m = leray_symbol(d);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (a != b) offdiag = std::max(offdiag, std::abs(m[3 * a + b]));
    }
    REQUIRE(offdiag <= 0.5 + 1e-12);

    REQUIRE_THROWS_AS(kappa_estimate(50), ParameterError);
}

TEST_CASE("heat semigroup basics") {
    FrequencyGrid g(16, 0.25);
    const auto f = random_divfree_field(g, 23, 1.3, 1, 7);

    SECTION("t = 0 is the identity") {
        REQUIRE(max_field_diff(heat_apply(f, 0.0), f) == 0.0);
    }
    SECTION("PM^2 norm never increases") {
        double prev = pm_norm_value(f, 2.0);
        for (double t : {0.1, 0.5, 2.0, 10.0}) {
            const double cur = pm_norm_value(heat_apply(f, t), 2.0);
            REQUIRE(cur <= prev + 1e-15);
            prev = cur;
        }
    }
    SECTION("semigroup law") {
        const auto a = heat_apply(heat_apply(f, 0.7), 1.1);
        const auto b = heat_apply(f, 1.8);
        REQUIRE(max_field_diff(a, b) < 1e-12 * max_abs(f));
    }
    SECTION("commutes with the leray projector") {
        auto mixed = random_divfree_field(g, 29, 1.0, 1, 7);
        mixed.comp(0)[g.index(2, 1, 0)] += 0.4;  // break divergence-freeness
        mixed.comp(0)[g.index(-2, -1, 0)] += 0.4;
        const auto a = heat_apply(leray_apply(mixed), 0.9);
        const auto b = leray_apply(heat_apply(mixed, 0.9));
        REQUIRE(max_field_diff(a, b) < 1e-13 * max_abs(mixed));
    }
    SECTION("negative time is rejected") {
        REQUIRE_THROWS_AS(heat_apply(f, -0.1), ParameterError);
    }
}

TEST_CASE("divergence contraction") {
    FrequencyGrid g(8, 0.5);

    SECTION("tensor supported on the zero mode only gives zero") {
        SpectralTensorField T(g);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) T.comp(j, k)[g.zero_index()] = 1.7;
        REQUIRE(max_abs(divergence_contract(T)) == 0.0);
    }

    SECTION("isotropic tensors are pure gradients and project to zero") {
        SpectralTensorField T(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double val = std::exp(-g.xi_sq(i));
            for (int j = 0; j < 3; ++j) T.comp(j, j)[i] = val;
        }
        const auto v = divergence_contract(T);
        REQUIRE(max_abs(v) < 1e-14);
    }

    SECTION("single-mode tensor matches the hand-computed contraction") {
        SpectralTensorField T(g);
        const std::array<int, 3> k{1, 2, 0};
        const std::size_t idx = g.index(k[0], k[1], k[2]);
        cplx entries[3][3];
        std::mt19937_64 rng(31);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                entries[a][b] = cplx{static_cast<double>(rng() >> 11) * 0x1.0p-53,
                                     static_cast<double>(rng() >> 11) * 0x1.0p-53};
                T.comp(a, b)[idx] = entries[a][b];
            }
        const auto v = divergence_contract(T);

        const Vec3 xi = g.xi(idx);
        cplx w[3];
        for (int a = 0; a < 3; ++a) {
            w[a] = 0.0;
            for (int b = 0; b < 3; ++b) w[a] += cplx{0.0, 1.0} * xi[b] * entries[a][b];
        }
        const Mat3 p = leray_symbol(xi);
        for (int a = 0; a < 3; ++a) {
            cplx expect = 0.0;
            for (int b = 0; b < 3; ++b) expect += p[3 * a + b] * w[b];
            REQUIRE(std::abs(v.comp(a)[idx] - expect) < 1e-14);
        }
    }

    SECTION("output is always divergence-free") {
        SpectralTensorField T(g);
        std::mt19937_64 rng(37);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (auto& c : T.comp(a, b))
                    c = cplx{static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                             static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5};
        const auto v = divergence_contract(T);
        REQUIRE(divergence_linf(v) < 1e-12 * max_abs(v));
    }
}
