#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bgc/channels.hpp"
#include "bgc/coupling.hpp"
#include "bgc/gaussian_state.hpp"
#include "bgc/rng.hpp"

/// Decomposition of a generic coupling into squeezers plus a canonical
/// beam-splitter or amplifier coupling.
///
/// Every coupling with invariant q outside {0, 1} factors as
///
///   U = (R_a(phase_a) (x) R_b(phase_b)) (S_a (x) S_b) U^(k) S_b' R_b(-global_phase)
///
/// with U^(k) the canonical beam splitter (0 < q < 1, k = q) or amplifier
/// (q > 1, k = q); for q < 0 the mode exchange is prepended and the rest
/// decomposes the exchanged coupling, an amplifier of gain k = 1 - q. At the
/// channel level this reads: rotate and squeeze the environment (S_b',
/// global_phase), apply the canonical channel (or its complementary map when
/// exchanged), then squeeze and rotate the output.
namespace bgc {

/// A coupling sits at q = 0 or q = 1: an equivalent canonical form does not
/// always exist there, so no decomposition is attempted.
class unsupported_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DecompositionCase { kBeamSplitter, kAmplifier, kConjugateAmplifier };

inline const char* to_string(DecompositionCase c) {
    switch (c) {
        case DecompositionCase::kBeamSplitter: return "BS";
        case DecompositionCase::kAmplifier: return "Amplifier";
        case DecompositionCase::kConjugateAmplifier: return "ConjugateAmplifier";
    }
    return "BS";
}

/// Factorization record; reproduces the channel of the original coupling
/// (the parameters themselves are canonicalized, not unique).
struct Decomposition {
    DecompositionCase kind = DecompositionCase::kBeamSplitter;
    /// Parameter of the canonical factor: q, q, or 1 - q by case.
    double k = 0.5;
    SqueezeParams sa;        ///< output squeezer on the carrier
    SqueezeParams sb;        ///< output squeezer on the environment mode
    SqueezeParams sb_prime;  ///< environment pre-squeezer
    double phase_a = 0.0;    ///< output phase rotation on the carrier
    double phase_b = 0.0;    ///< output phase rotation on the environment mode
    double global_phase = 0.0;  ///< environment pre-rotation is R_b(-global_phase)
    bool swapped = false;    ///< true iff q < 0 (mode exchange prepended)
};

namespace detail {

/// Magnitudes below this are treated as exactly zero when pinning phases of
/// degenerate (zero-magnitude) squeezers.
inline constexpr double kDegenerateTol = 1e-12;

inline Matrix4cd phase_gauge(double gamma, double delta) {
    Matrix4cd d = Matrix4cd::Zero();
    d(0, 0) = std::polar(1.0, -gamma);
    d(1, 1) = std::polar(1.0, gamma);
    d(2, 2) = std::polar(1.0, -delta);
    d(3, 3) = std::polar(1.0, delta);
    return d;
}

/// Heisenberg matrix of the inverse squeezers (S_a (x) S_b)^-1.
inline Matrix4cd inverse_squeeze_pair(const SqueezeParams& sa, const SqueezeParams& sb) {
    Matrix4cd m = Matrix4cd::Identity();
    const double ca = std::cosh(sa.r), sha = std::sinh(sa.r);
    const complexd pa = std::polar(1.0, sa.phi);
    m(0, 0) = ca;
    m(0, 1) = -pa * sha;
    m(1, 0) = -std::conj(pa) * sha;
    m(1, 1) = ca;
    const double cb = std::cosh(sb.r), shb = std::sinh(sb.r);
    const complexd pb = std::polar(1.0, sb.phi);
    m(2, 2) = cb;
    m(2, 3) = -pb * shb;
    m(3, 2) = -std::conj(pb) * shb;
    m(3, 3) = cb;
    return m;
}

}  // namespace detail

/// Extracts the factorization of a valid coupling. Throws unsupported_error
/// when q is within the boundary band of 0 or 1.
inline Decomposition decompose(const CouplingMatrix& A_in) {
    require_valid_coupling(A_in, "decompose");
    const double q = compute_q(A_in);
    if (std::abs(q) <= kBoundaryBand || std::abs(q - 1.0) <= kBoundaryBand) {
        throw unsupported_error(
            "decompose: q is within tolerance of 0 or 1, where an equivalent "
            "beam-splitter/amplifier form does not always exist; no decomposition "
            "is constructed");
    }
    constexpr double pi = std::numbers::pi;

    Decomposition dec;
    dec.swapped = q < 0.0;
    const CouplingMatrix work = dec.swapped ? swap_coupling(A_in) : A_in;
    const Matrix4cd& W = work.a;
    const double qq = compute_q(work);
    dec.k = qq;
    dec.kind = dec.swapped ? DecompositionCase::kConjugateAmplifier
               : (qq < 1.0 ? DecompositionCase::kBeamSplitter
                           : DecompositionCase::kAmplifier);

    const bool bs = qq < 1.0;
    const double sq = std::sqrt(qq);
    const double sq1 = std::sqrt(std::abs(qq - 1.0));

    // Phase gauge: output rotations making A11 real positive and the
    // canonical cross entry (A13 for the BS case, A14 for the amplifier)
    // real negative.
    const double gamma = std::arg(W(0, 0));
    const double delta = bs ? std::arg(W(0, 2)) - pi : pi - std::arg(W(0, 3));
    dec.phase_a = normalize_angle(-gamma);
    dec.phase_b = normalize_angle(-delta);
    const Matrix4cd Wp = W * detail::phase_gauge(gamma, delta);

    // Output squeezer on the carrier, from the gauged row-0 pair (cols 0, 1):
    // Wp(0,0) = sqrt(q) cosh r, Wp(0,1) = sqrt(q) e^{i phi} sinh r.
    const double mag_r = std::abs(Wp(0, 1));
    if (mag_r > detail::kDegenerateTol) {
        dec.sa.r = std::asinh(mag_r / sq);
        dec.sa.phi = normalize_angle(std::arg(Wp(0, 1)));
    }

    // Output squeezer on the environment mode, from the other row-0 pair:
    //   BS:  Wp(0,2) = -sqrt(1-q) cosh s, Wp(0,3) = -sqrt(1-q) e^{i psi} sinh s
    //   amp: Wp(0,3) = -sqrt(q-1) cosh s, Wp(0,2) = -sqrt(q-1) e^{-i psi} sinh s
    const double mag_s = std::abs(bs ? Wp(0, 3) : Wp(0, 2));
    if (mag_s > detail::kDegenerateTol) {
        dec.sb.r = std::asinh(mag_s / sq1);
        dec.sb.phi = bs ? normalize_angle(std::arg(-Wp(0, 3)))
                        : normalize_angle(-std::arg(-Wp(0, 2)));
    }

    // Strip the output squeezers; what is left of the environment row is the
    // canonical coupling dressed by the environment pre-squeezer and
    // pre-rotation: App(2,2) = sqrt(q) cosh t e^{i phi0},
    // App(2,3) = sqrt(q) sinh t e^{i (phi0 + phi')}.
    const Matrix4cd App = Wp * detail::inverse_squeeze_pair(dec.sa, dec.sb);
    dec.global_phase = normalize_angle(std::arg(App(2, 2)));
    const double mag_t = std::abs(App(2, 3));
    if (mag_t > detail::kDegenerateTol) {
        dec.sb_prime.r = std::asinh(mag_t / sq);
        dec.sb_prime.phi = normalize_angle(std::arg(App(2, 3)) - dec.global_phase);
    }
    return dec;
}

/// Rebuilds the coupling matrix of a decomposition by composing its factors.
inline CouplingMatrix reconstruct_coupling(const Decomposition& dec) {
    std::vector<CouplingMatrix> factors;
    if (dec.swapped) {
        factors.push_back(exchange_coupling());
    }
    factors.push_back(rotation_coupling_a(dec.phase_a));
    factors.push_back(rotation_coupling_b(dec.phase_b));
    factors.push_back(squeeze_coupling_a(dec.sa));
    factors.push_back(squeeze_coupling_b(dec.sb));
    factors.push_back(dec.kind == DecompositionCase::kBeamSplitter ? bs_coupling(dec.k)
                                                                   : amp_coupling(dec.k));
    factors.push_back(squeeze_coupling_b(dec.sb_prime));
    factors.push_back(rotation_coupling_b(-dec.global_phase));
    return compose_couplings(factors);
}

/// Runs the channel of a decomposition on an input state: dress the
/// environment, apply the canonical channel (the complementary amplifier map
/// when exchanged), then dress the output.
inline GaussianState apply_decomposed(const Decomposition& dec, const GaussianState& env,
                                      const GaussianState& rho) {
    const bool is_bs = dec.kind == DecompositionCase::kBeamSplitter;
    if (dec.k < 0.0 || (is_bs && dec.k > 1.0) || (!is_bs && dec.k < 1.0) ||
        dec.swapped != (dec.kind == DecompositionCase::kConjugateAmplifier)) {
        throw std::invalid_argument("apply_decomposed: inconsistent decomposition record");
    }
    require_env_state(env, "apply_decomposed");
    require_valid_state(rho, "apply_decomposed");

    const GaussianState env_prime =
        apply_squeeze(apply_rotation(env, -dec.global_phase), dec.sb_prime);
    const KChannel core{dec.k, env_prime};
    if (!dec.swapped) {
        const GaussianState mid = apply_k(core, rho);
        return apply_rotation(apply_squeeze(mid, dec.sa), dec.phase_a);
    }
    const GaussianState mid = apply_k_complementary(core, rho);
    return apply_rotation(apply_squeeze(mid, dec.sb), dec.phase_b);
}

/// Target family for generated test couplings: q in (0, 1), q > 1, or q < 0.
enum class CouplingRegime { kBSq, kAMPq, kNEGq };

/// Builds a valid coupling in the requested regime by composing random
/// squeezers and rotations around a canonical factor (plus the mode exchange
/// for the negative-q regime). `k` pins the canonical parameter (the target
/// q is k for kBSq/kAMPq and 1 - k for kNEGq); when absent it is drawn from
/// the seed. With dressed = false the bare canonical coupling is returned.
inline CouplingMatrix generate_coupling(std::uint64_t seed, CouplingRegime regime,
                                        std::optional<double> k = std::nullopt,
                                        bool dressed = true) {
    SampleRng rng(seed);
    double kk = 0.0;
    if (regime == CouplingRegime::kBSq) {
        kk = k ? *k : rng.uniform(0.05, 0.95);
        if (!(kk > kBoundaryBand && kk < 1.0 - kBoundaryBand)) {
            throw std::domain_error("generate_coupling: kBSq requires k in (0, 1)");
        }
    } else {
        kk = k ? *k : 1.0 + rng.uniform(0.1, 4.0);
        if (!(kk > 1.0 + kBoundaryBand)) {
            throw std::domain_error("generate_coupling: amplifier regimes require k > 1");
        }
    }

    const CouplingMatrix canonical =
        regime == CouplingRegime::kBSq ? bs_coupling(kk) : amp_coupling(kk);
    if (!dressed) {
        return regime == CouplingRegime::kNEGq ? swap_coupling(canonical) : canonical;
    }

    const SqueezeParams sa{rng.uniform(0.0, 0.8), rng.angle()};
    const SqueezeParams sb{rng.uniform(0.0, 0.8), rng.angle()};
    const SqueezeParams sb_prime{rng.uniform(0.0, 0.8), rng.angle()};
    const double rot_a = rng.angle();
    const double rot_b = rng.angle();
    const double rot_env = rng.angle();

    std::vector<CouplingMatrix> factors;
    if (regime == CouplingRegime::kNEGq) {
        factors.push_back(exchange_coupling());
    }
    factors.push_back(rotation_coupling_a(rot_a));
    factors.push_back(rotation_coupling_b(rot_b));
    factors.push_back(squeeze_coupling_a(sa));
    factors.push_back(squeeze_coupling_b(sb));
    factors.push_back(canonical);
    factors.push_back(squeeze_coupling_b(sb_prime));
    factors.push_back(rotation_coupling_b(rot_env));
    return compose_couplings(factors);
}

/// Residual of the decomposition check over random input states.
struct DecompositionReport {
    double max_residual = 0.0;
    int samples = 0;
};

/// Compares the channel of A evaluated directly against the channel run
/// through decompose/apply_decomposed on random input states.
inline DecompositionReport verify_decomposition(const CouplingMatrix& A,
                                                const GaussianState& env, int samples,
                                                std::uint64_t seed) {
    const Decomposition dec = decompose(A);
    require_env_state(env, "verify_decomposition");
    if (samples < 1) {
        throw std::domain_error("verify_decomposition: samples must be >= 1");
    }
    const ChannelSpec spec{A, env};
    SampleRng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const GaussianState rho = sample_state(rng);
        worst = std::max(worst,
                         state_distance(apply_general(spec, rho), apply_decomposed(dec, env, rho)));
    }
    return {worst, samples};
}

}  // namespace bgc
