#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "bgc/channels.hpp"
#include "bgc/coupling.hpp"
#include "bgc/gaussian_state.hpp"
#include "bgc/rng.hpp"

/// Degradability classification and the composition-identity checks.
///
/// The invariant q = |A11|^2 - |A12|^2 of a coupling decides the verdict:
/// q <= 1/2 channels are anti-degradable, q >= 1/2 weakly degradable (both at
/// q = 1/2). For canonical channels the degrading maps are again canonical
/// channels with the same environment:
///   weak (k >= 1/2):  E~[k] = E~[k'] o E[k]   with k'  = (2k - 1)/k
///   anti (k <= 1/2):  E[k]  = E~[k''] o E~[k] with k'' = (1 - 2k)/(1 - k)
/// Both identities are verified numerically on random input states.
namespace bgc {

/// Canonical family a channel is unitarily equivalent to, if any.
enum class EquivalentMap { kBeamSplitter, kAmplifier, kConjugateAmplifier, kNone };

inline const char* to_string(EquivalentMap m) {
    switch (m) {
        case EquivalentMap::kBeamSplitter: return "BS of transmissivity q";
        case EquivalentMap::kAmplifier: return "amplifier";
        case EquivalentMap::kConjugateAmplifier: return "conjugate amplifier";
        case EquivalentMap::kNone: return "none";
    }
    return "none";
}

/// Degradability verdict for a coupling matrix.
struct Classification {
    double q = 0.0;
    bool weakly_degradable = false;
    bool anti_degradable = false;
    /// k' of the weak-degrading construction; absent at the q = 1 boundary
    /// and below q = 1/2.
    std::optional<double> degrading_k;
    /// k'' of the anti-degrading construction; present only in the
    /// beam-splitter regime 0 < q <= 1/2.
    std::optional<double> antidegrading_k;
    /// Canonical family the channel is equivalent to (none at q = 0, 1).
    EquivalentMap equivalent_map = EquivalentMap::kNone;
    /// Parameter of the equivalent map: transmissivity or gain q, or 1 - q
    /// for the conjugate amplifier.
    std::optional<double> equivalent_k;
    std::string notes;
};

/// Weak-degrading parameter k' = (2k - 1)/k, defined for k >= 1/2.
inline double degrading_k(double k) {
    if (!(k >= 0.5 - kBoundaryBand)) {
        throw std::domain_error("degrading_k: requires k >= 1/2");
    }
    return (2.0 * k - 1.0) / k;
}

/// Anti-degrading parameter k'' = (1 - 2k)/(1 - k), defined for k in [0, 1/2].
inline double antidegrading_k(double k) {
    if (!(k >= -kBoundaryBand && k <= 0.5 + kBoundaryBand)) {
        throw std::domain_error("antidegrading_k: requires k in [0, 1/2]");
    }
    return (1.0 - 2.0 * k) / (1.0 - k);
}

/// Classifies a coupling by its invariant q. Boundary values q = 0 and q = 1
/// (within the tolerance band) keep their flags but carry no constructive
/// degrading parameter and no canonical equivalent; the notes say why.
inline Classification classify(const CouplingMatrix& A) {
    require_valid_coupling(A, "classify");
    Classification c;
    c.q = compute_q(A);
    const bool at_zero = std::abs(c.q) <= kBoundaryBand;
    const bool at_one = std::abs(c.q - 1.0) <= kBoundaryBand;

    c.weakly_degradable = c.q >= 0.5 - kBoundaryBand;
    c.anti_degradable = c.q <= 0.5 + kBoundaryBand;

    if (at_zero) {
        c.notes =
            "q = 0: an equivalent beam-splitter/amplifier form does not always exist; "
            "the channel is anti-degradable but no degrading construction is provided";
        return c;
    }
    if (at_one) {
        c.notes =
            "q = 1: an equivalent beam-splitter/amplifier form does not always exist; "
            "the channel is weakly degradable but no degrading construction is provided";
        return c;
    }

    if (c.q < 0.0) {
        c.equivalent_map = EquivalentMap::kConjugateAmplifier;
        c.equivalent_k = 1.0 - c.q;
    } else if (c.q < 1.0) {
        c.equivalent_map = EquivalentMap::kBeamSplitter;
        c.equivalent_k = c.q;
    } else {
        c.equivalent_map = EquivalentMap::kAmplifier;
        c.equivalent_k = c.q;
    }

    if (c.weakly_degradable) {
        c.degrading_k = degrading_k(c.q);
    }
    if (c.anti_degradable && c.q > kBoundaryBand) {
        c.antidegrading_k = antidegrading_k(std::min(c.q, 0.5));
    }
    return c;
}

/// Residual of a composition-identity check over random input states.
struct ResidualReport {
    std::string identity;  ///< "composition3" (weak) or "NUOVA33" (anti)
    double k = 0.0;
    double k_prime = 0.0;  ///< k' (weak) or k'' (anti)
    double max_residual = 0.0;
    int samples = 0;
};

namespace detail {

inline void require_samples(int samples, const char* where) {
    if (samples < 1) {
        throw std::domain_error(std::string(where) + ": samples must be >= 1");
    }
}

}  // namespace detail

/// Checks E~[k] = E~[k'] o E[k] (same environment on both sides) on random
/// input states and reports the max distance between the two sides.
inline ResidualReport verify_weak_degradability(double k, const GaussianState& env,
                                                int samples, std::uint64_t seed) {
    if (!(k >= 0.5 - kBoundaryBand)) {
        throw std::domain_error("verify_weak_degradability: requires k >= 1/2");
    }
    require_env_state(env, "verify_weak_degradability");
    detail::require_samples(samples, "verify_weak_degradability");
    if (std::abs(k - 0.5) <= kBoundaryBand) k = 0.5;

    const double kp = std::max(0.0, degrading_k(k));
    const KChannel direct{k, env};
    const KChannel degrade{kp, env};
    SampleRng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const GaussianState rho = sample_state(rng);
        const GaussianState lhs = apply_k_complementary(direct, rho);
        const GaussianState rhs = apply_k_complementary(degrade, apply_k(direct, rho));
        worst = std::max(worst, state_distance(lhs, rhs));
    }
    return {"composition3", k, kp, worst, samples};
}

/// Checks E[k] = E~[k''] o E~[k] (same environment on both sides) on random
/// input states and reports the max distance between the two sides.
inline ResidualReport verify_anti_degradability(double k, const GaussianState& env,
                                                int samples, std::uint64_t seed) {
    if (!(k >= -kBoundaryBand && k <= 0.5 + kBoundaryBand)) {
        throw std::domain_error("verify_anti_degradability: requires k in [0, 1/2]");
    }
    require_env_state(env, "verify_anti_degradability");
    detail::require_samples(samples, "verify_anti_degradability");
    if (std::abs(k) <= kBoundaryBand) k = 0.0;
    if (std::abs(k - 0.5) <= kBoundaryBand) k = 0.5;

    const double kpp = std::max(0.0, antidegrading_k(k));
    const KChannel direct{k, env};
    const KChannel degrade{kpp, env};
    SampleRng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const GaussianState rho = sample_state(rng);
        const GaussianState lhs = apply_k(direct, rho);
        const GaussianState rhs =
            apply_k_complementary(degrade, apply_k_complementary(direct, rho));
        worst = std::max(worst, state_distance(lhs, rhs));
    }
    return {"NUOVA33", k, kpp, worst, samples};
}

}  // namespace bgc
