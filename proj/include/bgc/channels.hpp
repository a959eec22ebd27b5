#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "bgc/coupling.hpp"
#include "bgc/gaussian_state.hpp"

/// One-mode Gaussian channels obtained by coupling the carrier mode to a
/// single environment mode through a two-mode Gaussian unitary and tracing
/// out one side.
///
/// Two evaluation paths are provided and must agree:
///  - apply_k / apply_k_complementary: closed-form affine maps for the
///    canonical beam-splitter (k in [0, 1]) and amplifier (k > 1) couplings;
///  - apply_general / apply_general_complementary: moment evolution under an
///    arbitrary coupling matrix, used as the reference path.
namespace bgc {

/// Canonical channel of parameter k with a fixed Gaussian environment state.
/// k in [0, 1] selects a beam splitter of transmissivity k; k > 1 an
/// amplifier of gain k. The environment must carry no displacement.
struct KChannel {
    double k = 1.0;
    GaussianState env = vacuum_state();
};

/// A channel given by an explicit coupling matrix plus environment state.
struct ChannelSpec {
    CouplingMatrix coupling;
    GaussianState env = vacuum_state();
};

inline void require_env_state(const GaussianState& env, const char* where) {
    require_valid_state(env, where);
    if (std::abs(env.d) > kStateTol) {
        throw std::invalid_argument(std::string(where) +
                                    ": environment state must have zero displacement");
    }
}

inline void require_k_channel(const KChannel& ch, const char* where) {
    if (!(ch.k >= 0.0) || !std::isfinite(ch.k)) {
        throw std::invalid_argument(std::string(where) + ": k must be finite and >= 0");
    }
    require_env_state(ch.env, where);
}

/// Beam-splitter coupling of transmissivity k in [0, 1].
inline CouplingMatrix bs_coupling(double k) {
    if (!(k >= 0.0 && k <= 1.0)) {
        throw std::invalid_argument("bs_coupling: transmissivity must lie in [0, 1]");
    }
    const double ck = std::sqrt(k);
    const double sk = std::sqrt(1.0 - k);
    CouplingMatrix A;
    A.a.setZero();
    A.a(0, 0) = ck;
    A.a(1, 1) = ck;
    A.a(2, 2) = ck;
    A.a(3, 3) = ck;
    A.a(0, 2) = -sk;
    A.a(1, 3) = -sk;
    A.a(2, 0) = sk;
    A.a(3, 1) = sk;
    return A;
}

/// Amplifier coupling of gain k >= 1.
inline CouplingMatrix amp_coupling(double k) {
    if (!(k >= 1.0)) {
        throw std::invalid_argument("amp_coupling: gain must be >= 1");
    }
    const double ck = std::sqrt(k);
    const double sk = std::sqrt(k - 1.0);
    CouplingMatrix A;
    A.a.setZero();
    A.a(0, 0) = ck;
    A.a(1, 1) = ck;
    A.a(2, 2) = ck;
    A.a(3, 3) = ck;
    A.a(0, 3) = -sk;
    A.a(1, 2) = -sk;
    A.a(2, 1) = -sk;
    A.a(3, 0) = -sk;
    return A;
}

/// Canonical coupling for a channel parameter k >= 0: beam splitter for
/// k <= 1, amplifier beyond.
inline CouplingMatrix coupling_for_k(double k) {
    return (k <= 1.0) ? bs_coupling(k) : amp_coupling(k);
}

/// Coupling of the same unitary read out on the other mode: prepending the
/// mode exchange shifts every column pair, turning the channel into its
/// complementary one. Maps q to 1 - q.
inline CouplingMatrix swap_coupling(const CouplingMatrix& A) {
    CouplingMatrix out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out.a(i, j) = A.a(i, (j + 2) % 4);
        }
    }
    return out;
}

/// Output state of the canonical channel E[k] on input rho.
inline GaussianState apply_k(const KChannel& ch, const GaussianState& rho) {
    require_k_channel(ch, "apply_k");
    require_valid_state(rho, "apply_k");
    const double k = ch.k;
    const GaussianState& e = ch.env;
    GaussianState out;
    if (k <= 1.0) {
        out.n = k * rho.n + (1.0 - k) * e.n;
        out.m = k * rho.m + (1.0 - k) * e.m;
        out.d = std::sqrt(k) * rho.d;
    } else {
        out.n = k * rho.n + (k - 1.0) * e.n + (k - 1.0);
        out.m = k * rho.m + (k - 1.0) * std::conj(e.m);
        out.d = std::sqrt(k) * rho.d;
    }
    return out;
}

/// State left on the environment mode by the same interaction: the output of
/// the complementary channel E~[k].
inline GaussianState apply_k_complementary(const KChannel& ch, const GaussianState& rho) {
    require_k_channel(ch, "apply_k_complementary");
    require_valid_state(rho, "apply_k_complementary");
    const double k = ch.k;
    const GaussianState& e = ch.env;
    GaussianState out;
    if (k <= 1.0) {
        out.n = (1.0 - k) * rho.n + k * e.n;
        out.m = (1.0 - k) * rho.m + k * e.m;
        out.d = -std::sqrt(1.0 - k) * rho.d;
    } else {
        out.n = (k - 1.0) * rho.n + k * e.n + (k - 1.0);
        out.m = (k - 1.0) * std::conj(rho.m) + k * e.m;
        out.d = std::sqrt(k - 1.0) * std::conj(rho.d);
    }
    return out;
}

namespace detail {

/// Joint first moments (a, a', b, b') of rho (x) env.
inline Eigen::Vector4cd joint_mean(const GaussianState& rho, const GaussianState& env) {
    Eigen::Vector4cd mu;
    mu << rho.d, std::conj(rho.d), env.d, std::conj(env.d);
    return mu;
}

/// Joint symmetrized central second moments S(i,j) = <{v_i, v_j}/2> - <v_i><v_j>
/// of rho (x) env in the (a, a', b, b') ordering.
inline Matrix4cd joint_second_moments(const GaussianState& rho, const GaussianState& env) {
    Matrix4cd sigma = Matrix4cd::Zero();
    sigma(0, 0) = rho.m;
    sigma(0, 1) = rho.n + 0.5;
    sigma(1, 0) = rho.n + 0.5;
    sigma(1, 1) = std::conj(rho.m);
    sigma(2, 2) = env.m;
    sigma(2, 3) = env.n + 0.5;
    sigma(3, 2) = env.n + 0.5;
    sigma(3, 3) = std::conj(env.m);
    return sigma;
}

/// Evolves the joint moments through the unitary with coupling matrix A and
/// reads the single-mode state off one 2x2 block. The Heisenberg relation
/// U v U' = A v means the state's moments transform with B = A^-1:
/// <v>' = B <v> and S' = B S B^T.
inline GaussianState conjugate_and_trace(const ChannelSpec& spec, const GaussianState& rho,
                                         int block) {
    const Matrix4cd B = symplectic_inverse(spec.coupling.a);
    const Eigen::Vector4cd mu = B * joint_mean(rho, spec.env);
    const Matrix4cd sigma = B * joint_second_moments(rho, spec.env) * B.transpose();
    GaussianState out;
    out.d = mu(block);
    out.m = sigma(block, block);
    out.n = 0.5 * (sigma(block, block + 1) + sigma(block + 1, block)).real() - 0.5;
    return out;
}

}  // namespace detail

/// Output state on the carrier mode under an arbitrary coupling. Reference
/// path: agrees with apply_k when the coupling is bs_coupling(k) or
/// amp_coupling(k).
inline GaussianState apply_general(const ChannelSpec& spec, const GaussianState& rho) {
    require_valid_coupling(spec.coupling, "apply_general");
    require_env_state(spec.env, "apply_general");
    require_valid_state(rho, "apply_general");
    return detail::conjugate_and_trace(spec, rho, 0);
}

/// State left on the environment mode under an arbitrary coupling; the
/// complementary-channel counterpart of apply_general.
inline GaussianState apply_general_complementary(const ChannelSpec& spec,
                                                 const GaussianState& rho) {
    require_valid_coupling(spec.coupling, "apply_general_complementary");
    require_env_state(spec.env, "apply_general_complementary");
    require_valid_state(rho, "apply_general_complementary");
    return detail::conjugate_and_trace(spec, rho, 2);
}

}  // namespace bgc
