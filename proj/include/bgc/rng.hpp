#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "bgc/gaussian_state.hpp"

namespace bgc {

/// Deterministic uniform sampler. Draws are derived from raw mt19937_64
/// output so a given seed produces the same sequence on every platform and
/// standard library (std::uniform_real_distribution makes no such promise).
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform angle in [0, 2*pi).
    double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }

private:
    std::mt19937_64 engine_;
};

/// Draws a random valid Gaussian state: n uniform in [0, 3], |m| uniform
/// below the purity bound sqrt((n + 1/2)^2 - 1/4) with uniform phase, and
/// |d| uniform in [0, 2] with uniform phase (zero if requested, e.g. for
/// environment states).
inline GaussianState sample_state(SampleRng& rng, bool zero_displacement = false) {
    GaussianState s;
    s.n = rng.uniform(0.0, 3.0);
    const double m_max = std::sqrt((s.n + 0.5) * (s.n + 0.5) - 0.25);
    s.m = std::polar(rng.uniform() * m_max, rng.angle());
    if (zero_displacement) {
        s.d = {0.0, 0.0};
    } else {
        s.d = std::polar(rng.uniform(0.0, 2.0), rng.angle());
    }
    return s;
}

}  // namespace bgc
