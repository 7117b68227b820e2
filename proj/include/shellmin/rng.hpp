#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "shellmin/types.hpp"

namespace shellmin {

// Seeded RNG helpers. Distributions are written out by hand instead of
// using std::uniform_real_distribution etc. so that a given seed produces
// the same stream on every standard library (runs must be reproducible
// byte-for-byte across toolchains).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform in [0,1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        // Box-Muller; draws two uniforms per call, cache unused half.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec unit_vector(Index dim) {
        Vec v(dim);
        double n2 = 0.0;
        do {
            for (Index i = 0; i < dim; ++i) v[i] = normal();
            n2 = v.squaredNorm();
        } while (n2 < 1e-24);
        return v / std::sqrt(n2);
    }

    Vec point_in_ball(Index dim) {
        Vec v = unit_vector(dim);
        double u = uniform();
        return v * std::pow(u, 1.0 / static_cast<double>(dim));
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stable per-trial seed derivation (splitmix64 step over the master seed).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace shellmin
