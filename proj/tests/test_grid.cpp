#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <cstdio>
#include <filesystem>

#include "pmns/datasets.hpp"
#include "pmns/grid.hpp"
#include "pmns/norms.hpp"
#include "pmns/serialize.hpp"
#include "pmns/transform.hpp"

using namespace pmns;

namespace {

// Direct O(N^2) evaluation of the forward transform definition:
// f_hat(xi) = (2*pi)^(-3/2) dx^3 sum_x e^{-i x.xi} f(x).
SpectralVectorField direct_forward(const PhysicalVectorField& u) {
    const auto& g = u.grid();
    SpectralVectorField out(g);
    const double factor = kFourierFactor * std::pow(g.dx(), 3);
    for (std::size_t ik = 0; ik < g.size(); ++ik) {
        const Vec3 xi = g.xi(ik);
        for (int j = 0; j < 3; ++j) {
            cplx s = 0.0;
            for (std::size_t im = 0; im < g.size(); ++im) {
                const Vec3 x = g.x(im);
                s += std::polar(1.0, -dot(x, xi)) * u.comp(j)[im];
            }
            out.comp(j)[ik] = factor * s;
        }
    }
    pin_zero_mode(out);
    zero_nyquist(out);
    return out;
}

double max_field_diff(const SpectralVectorField& a, const SpectralVectorField& b) {
    double m = 0.0;
    for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < a.grid().size(); ++i)
            m = std::max(m, std::abs(a.comp(j)[i] - b.comp(j)[i]));
    return m;
}

}  // namespace

TEST_CASE("frequency grid indexing and flags") {
    FrequencyGrid g(8, 0.5);
    REQUIRE(g.size() == 512);
    REQUIRE(g.cutoff() == Catch::Approx(2.0));
    REQUIRE(g.dx() == Catch::Approx(kTwoPi / 4.0));

    for (int k1 : {-4, -1, 0, 3})
        for (int k2 : {-4, 0, 2})
            for (int k3 : {-3, 0, 1}) {
                const auto idx = g.index(k1, k2, k3);
                const auto back = g.wavenumbers(idx);
                REQUIRE(back[0] == k1);
                REQUIRE(back[1] == k2);
                REQUIRE(back[2] == k3);
            }
    REQUIRE(g.is_zero_mode(g.index(0, 0, 0)));
    REQUIRE(g.is_nyquist(g.index(-4, 0, 0)));
    REQUIRE_FALSE(g.is_nyquist(g.index(3, 3, 3)));
    REQUIRE(g.mirror(g.index(1, 2, -3)) == g.index(-1, -2, 3));

    REQUIRE_THROWS_AS(FrequencyGrid(7, 0.5), ParameterError);
    REQUIRE_THROWS_AS(FrequencyGrid(8, 0.0), ParameterError);
}

TEST_CASE("zero field transforms to zero field") {
    FrequencyGrid g(8, 0.5);
    SpectralVectorField f(g);
    const auto u = to_physical(f);
    for (int j = 0; j < 3; ++j)
        for (double v : u.comp(j)) REQUIRE(v == 0.0);
}

TEST_CASE("conjugate mode pair gives a cosine") {
    FrequencyGrid g(8, 0.5);
    const std::array<int, 3> k{1, 2, -3};
    SpectralVectorField f = single_mode_field(g, k, {cplx{0.5, 0.0}, 0.0, 0.0});
    const Vec3 xi0 = {g.delta_xi * k[0], g.delta_xi * k[1], g.delta_xi * k[2]};
    const double amp = kFourierFactor * std::pow(g.delta_xi, 3);

    const auto u = to_physical(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.x(i);
        REQUIRE(u.comp(0)[i] == Catch::Approx(amp * std::cos(dot(x, xi0))).margin(1e-14));
        REQUIRE(u.comp(1)[i] == Catch::Approx(0.0).margin(1e-15));
    }
}

TEST_CASE("forward transform matches the direct summation oracle on 4^3") {
    FrequencyGrid g(4, 0.5);
    // mean-free, Nyquist-free samples (the conventions pin those modes)
    const auto u = to_physical(random_divfree_field(g, 7, 1.0, 1, 1));

    const auto fast = to_spectral(u);
    const auto slow = direct_forward(u);
    REQUIRE(max_field_diff(fast, slow) < 1e-13);

    // Parseval under the convention's measures
    double phys = 0.0, spec = 0.0;
    for (int j = 0; j < 3; ++j) {
        for (double v : u.comp(j)) phys += v * v;
        for (const auto& c : fast.comp(j)) spec += std::norm(c);
    }
    phys *= std::pow(g.dx(), 3);
    spec *= std::pow(g.delta_xi, 3);
    REQUIRE(phys == Catch::Approx(spec).epsilon(1e-12));
    REQUIRE(phys > 0.0);
}

TEST_CASE("round trip is the identity to 1e-12 relative") {
    FrequencyGrid g(16, 0.25);
    const auto f = random_divfree_field(g, 42, 1.0, 1, 5);
    const auto round = to_spectral(to_physical(f));
    REQUIRE(max_field_diff(round, f) < 1e-12 * max_abs(f));
}

TEST_CASE("constant physical field maps to the zero spectrum") {
    FrequencyGrid g(8, 0.5);
    PhysicalVectorField u(g);
    for (int j = 0; j < 3; ++j)
        for (auto& v : u.comp(j)) v = 3.7;
    const auto f = to_spectral(u);
    REQUIRE(max_abs(f) < 1e-12);
}

TEST_CASE("imaginary residue of the inverse transform stays tiny") {
    FrequencyGrid g(16, 0.25);
    const auto f = random_divfree_field(g, 3, 2.5, 1, 7);
    const auto res = to_physical_checked(f);
    double mag = 0.0;
    for (int j = 0; j < 3; ++j)
        for (double v : res.field.comp(j)) mag = std::max(mag, std::abs(v));
    REQUIRE(res.max_imag_residue < 1e-10 * mag);
}

TEST_CASE("non-Hermitian input is rejected with the deviation reported") {
    FrequencyGrid g(8, 0.5);
    auto f = random_divfree_field(g, 11, 1.0, 1, 3);
    f.comp(1)[g.index(1, 1, 1)] += cplx{0.0, 0.3};
    try {
        to_physical(f);
        FAIL("expected SymmetryError");
    } catch (const SymmetryError& e) {
        REQUIRE(e.max_deviation > 0.1);
    }
}

TEST_CASE("dyadic rescale on homogeneous data") {
    FrequencyGrid g(16, 0.25);
    const auto f = homogeneous_divfree_field(g, {1.0, 0.5, -0.25}, -2.0, 1.0);
    const auto r = dyadic_rescale(f, 2.0);

    SECTION("equals f on the common (even) lattice, zero elsewhere") {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto k = g.wavenumbers(i);
            const bool even = k[0] % 2 == 0 && k[1] % 2 == 0 && k[2] % 2 == 0;
            for (int j = 0; j < 3; ++j) {
                if (even && !g.is_zero_mode(i) && !g.is_nyquist(i))
                    REQUIRE(std::abs(r.comp(j)[i] - f.comp(j)[i]) < 1e-14);
                else if (!even || g.is_nyquist(i))
                    REQUIRE(r.comp(j)[i] == cplx{0.0, 0.0});
            }
        }
    }

    // The norm identities hold exactly when the maximizing mode survives the
    // sublattice restriction; dir = e1 puts it at the smallest |xi| with
    // xi_1 = 0, which every dyadic image contains.
    const auto axis = homogeneous_divfree_field(g, {1.0, 0.0, 0.0}, -2.0, 1.0);
    const auto axis_r = dyadic_rescale(axis, 2.0);

    SECTION("PM^2 norm is invariant under f -> lambda f(lambda .)") {
        REQUIRE(pm_norm_value(axis_r, 2.0) ==
                Catch::Approx(pm_norm_value(axis, 2.0)).epsilon(1e-13));
    }

    SECTION("pure scaling f(lambda .) obeys the lambda^(a-3) law") {
        for (double a : {0.5, 1.0, 2.0}) {
            const auto pure = 0.5 * axis_r;  // spectral form of f(2x)
            REQUIRE(pm_norm_value(pure, a) ==
                    Catch::Approx(std::pow(2.0, a - 3.0) * pm_norm_value(axis, a)).epsilon(1e-12));
        }
    }

    SECTION("rescale by 2 then 1/2 restores surviving modes") {
        const auto back = dyadic_rescale(r, 0.5);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto k = g.wavenumbers(i);
            const bool survives = 2 * k[0] > -g.half() && 2 * k[0] < g.half() &&
                                  2 * k[1] > -g.half() && 2 * k[1] < g.half() &&
                                  2 * k[2] > -g.half() && 2 * k[2] < g.half() &&
                                  !g.is_zero_mode(i);
            for (int j = 0; j < 3; ++j) {
                if (survives)
                    REQUIRE(std::abs(back.comp(j)[i] - f.comp(j)[i]) < 1e-14);
                else
                    REQUIRE(back.comp(j)[i] == cplx{0.0, 0.0});
            }
        }
    }

    SECTION("non-dyadic lambda is rejected") {
        REQUIRE_THROWS_AS(dyadic_rescale(f, 3.0), ParameterError);
    }
}

TEST_CASE("binary container round trip") {
    FrequencyGrid g(8, 0.3125);
    const auto f = random_divfree_field(g, 99, 0.7, 1, 3);
    const auto path = std::filesystem::temp_directory_path() / "pmns_test_field.pmns";
    write_field(path, f);
    const auto back = read_field(path);
    REQUIRE(back.grid() == g);
    REQUIRE(max_field_diff(back, f) == 0.0);
    std::filesystem::remove(path);

    REQUIRE_THROWS_AS(read_field("/nonexistent/pmns_field.pmns"), IOError);
}
