#pragma once
// Time-sampled spectral fields and the external-force description.

#include <cmath>
#include <utility>
#include <vector>

#include "pmns/core.hpp"
#include "pmns/grid.hpp"
#include "pmns/symbols.hpp"

namespace pmns {

// Knot samples of a spectral trajectory; knots start at 0 and increase.
struct Trajectory {
    FrequencyGrid grid;
    std::vector<double> knots;
    std::vector<SpectralVectorField> fields;

    Trajectory() = default;
    Trajectory(FrequencyGrid g, std::vector<double> t, std::vector<SpectralVectorField> f)
        : grid(g), knots(std::move(t)), fields(std::move(f)) {
        validate();
    }

    static Trajectory zero(const FrequencyGrid& g, const std::vector<double>& t) {
        std::vector<SpectralVectorField> f(t.size(), SpectralVectorField(g));
        return Trajectory(g, t, std::move(f));
    }

    void validate() const {
        if (knots.empty()) throw InputError("Trajectory: empty knot list");
        if (knots.size() != fields.size()) throw InputError("Trajectory: knots/fields size mismatch");
        if (knots.front() != 0.0) throw InputError("Trajectory: knots must start at 0");
        for (std::size_t i = 1; i < knots.size(); ++i)
            if (!(knots[i] > knots[i - 1])) throw InputError("Trajectory: knots must increase");
        for (const auto& f : fields) require_same_grid(grid, f.grid(), "Trajectory");
    }

    std::size_t knot_count() const { return knots.size(); }
    const SpectralVectorField& at(std::size_t i) const { return fields[i]; }

    std::size_t knot_index(double t) const {
        for (std::size_t i = 0; i < knots.size(); ++i) {
            const double scale = std::max({1.0, std::abs(t), std::abs(knots[i])});
            if (std::abs(knots[i] - t) <= 1e-12 * scale) return i;
        }
        throw InputError("Trajectory: t is not a knot (no interpolation policy for off-knot times)");
    }
};

// {0, t_min r^0, ..., t_max} with geometric interior spacing.
inline std::vector<double> geometric_knots(double t_min, double t_max, int count) {
    if (!(t_min > 0) || !(t_max > t_min) || count < 2)
        throw ParameterError("geometric_knots: need 0 < t_min < t_max and count >= 2");
    std::vector<double> t{0.0};
    const double r = std::pow(t_max / t_min, 1.0 / (count - 1));
    for (int i = 0; i < count; ++i) t.push_back(t_min * std::pow(r, i));
    t.back() = t_max;
    return t;
}

// External force: zero, a Dirac atom at the origin, a fixed spectral field,
// or time-sampled spectral fields.
class ForceSpec {
  public:
    enum class Kind { Zero, Dirac, Fixed, Sampled };

    static ForceSpec zero() { return ForceSpec(Kind::Zero); }
    // F = (b_1 delta_0, b_2 delta_0, b_3 delta_0); spectrum is the constant
    // (2*pi)^(-3/2) b off the pinned modes.
    static ForceSpec dirac(const Vec3& b) {
        ForceSpec f(Kind::Dirac);
        f.amplitude_ = b;
        return f;
    }
    static ForceSpec fixed_field(SpectralVectorField field) {
        ForceSpec f(Kind::Fixed);
        f.field_ = std::move(field);
        return f;
    }
    static ForceSpec sampled(Trajectory traj) {
        ForceSpec f(Kind::Sampled);
        f.traj_ = std::move(traj);
        return f;
    }

    Kind kind() const { return kind_; }
    bool time_independent() const { return kind_ != Kind::Sampled; }
    const Vec3& amplitude() const { return amplitude_; }
    const SpectralVectorField& fixed() const { return field_; }
    const Trajectory& samples() const { return traj_; }

    // F_hat on the lattice at time t.
    SpectralVectorField spectrum(const FrequencyGrid& g, double t) const {
        switch (kind_) {
            case Kind::Zero:
                return SpectralVectorField(g);
            case Kind::Dirac: {
                SpectralVectorField f(g);
                for (int j = 0; j < 3; ++j) {
                    const cplx v = kFourierFactor * amplitude_[j];
                    for (auto& c : f.comp(j)) c = v;
                }
                pin_zero_mode(f);
                zero_nyquist(f);
                return f;
            }
            case Kind::Fixed:
                require_same_grid(field_.grid(), g, "ForceSpec::spectrum");
                return field_;
            case Kind::Sampled: {
                require_same_grid(traj_.grid, g, "ForceSpec::spectrum");
                return traj_.at(traj_.knot_index(t));
            }
        }
        throw Error("ForceSpec: unreachable");
    }

    // sup over time of the PM (a = 0) norm, excluding the zero mode.
    double pm0_sup(const FrequencyGrid& g) const {
        switch (kind_) {
            case Kind::Zero:
                return 0.0;
            case Kind::Dirac: {
                const double binf = std::max({std::abs(amplitude_[0]), std::abs(amplitude_[1]),
                                              std::abs(amplitude_[2])});
                return binf * kFourierFactor;
            }
            case Kind::Fixed:
                return max_offzero_abs(field_);
            case Kind::Sampled: {
                double m = 0.0;
                for (const auto& f : traj_.fields) m = std::max(m, max_offzero_abs(f));
                return m;
            }
        }
        throw Error("ForceSpec: unreachable");
    }

  private:
    explicit ForceSpec(Kind k) : kind_(k) {}

    static double max_offzero_abs(const SpectralVectorField& f) {
        const auto& g = f.grid();
        double m = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g.is_zero_mode(i)) continue;
            for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(f.comp(j)[i]));
        }
        return m;
    }

    Kind kind_;
    Vec3 amplitude_{0, 0, 0};
    SpectralVectorField field_;
    Trajectory traj_;
};

}  // namespace pmns
