#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

/// Core value types for one-mode Gaussian states and the conventions the
/// whole library is built on.
///
/// A one-mode Gaussian state is stored as the triple (n, m, d):
///
///   n : symmetrized photon-number offset, n + 1/2 = <a'a + aa'>/2 - |<a>|^2
///   m : anomalous second moment, m = <a^2> - <a>^2
///   d : displacement, d = <a>
///
/// The characteristic function chi(mu) = Tr[rho exp(mu a' - mu* a)] of such a
/// state is, everywhere in this library,
///
///   chi(mu) = exp[ -(n + 1/2)|mu|^2 + Re(m conj(mu)^2) + mu conj(d) - conj(mu) d ]
///
/// which normalizes the vacuum to chi(mu) = exp(-|mu|^2/2), so n is directly
/// the mean photon number of a thermal state. The sign and placement of m in
/// the quadratic form is fixed by this formula and by the squeezing action
/// below; the Fock-basis oracle in the test suite pins it numerically.
///
/// Heisenberg convention for the squeezer: S(r, phi) a S(r, phi)' =
/// a cosh r + e^{i phi} a' sinh r. Applying the squeezer to a state means
/// rho -> S rho S'.
namespace bgc {

using complexd = std::complex<double>;

/// Residual tolerance for symplectic/constraint checks.
inline constexpr double kConstraintTol = 1e-10;
/// Max-norm tolerance for state equality over (n, Re m, Im m, Re d, Im d).
inline constexpr double kStateTol = 1e-9;
/// Half-width of the band around q = 0 and q = 1 treated as the boundary.
inline constexpr double kBoundaryBand = 1e-9;

/// One-mode Gaussian state. Immutable value; all operations return new states.
struct GaussianState {
    double n = 0.0;    ///< symmetrized second-moment offset, n >= 0
    complexd m{0, 0};  ///< anomalous moment <a^2> - <a>^2
    complexd d{0, 0};  ///< displacement <a>
};

/// Magnitude/phase pair for a single-mode squeezing unitary S(r, phi).
struct SqueezeParams {
    double r = 0.0;    ///< squeeze magnitude
    double phi = 0.0;  ///< squeeze phase, canonical range [0, 2pi)
};

inline GaussianState vacuum_state() { return {}; }

inline GaussianState thermal_state(double mean_photons) {
    if (mean_photons < 0.0) {
        throw std::invalid_argument("thermal_state: mean photon number must be >= 0");
    }
    return {mean_photons, {0, 0}, {0, 0}};
}

/// Value of (n + 1/2)^2 - |m|^2, the symplectic invariant of the covariance.
/// Valid states have it >= 1/4; equality (within tolerance) means purity.
inline double uncertainty_invariant(const GaussianState& s) {
    const double h = s.n + 0.5;
    return h * h - std::norm(s.m);
}

inline bool is_valid_state(const GaussianState& s, double tol = kStateTol) {
    return s.n >= -tol && uncertainty_invariant(s) >= 0.25 - tol;
}

inline bool is_pure_state(const GaussianState& s, double tol = kStateTol) {
    return std::abs(uncertainty_invariant(s) - 0.25) <= tol;
}

inline void require_valid_state(const GaussianState& s, const char* where) {
    if (!is_valid_state(s)) {
        throw std::invalid_argument(std::string(where) +
                                    ": state violates the uncertainty relation");
    }
}

/// Max-norm distance over (n, Re m, Im m, Re d, Im d).
inline double state_distance(const GaussianState& a, const GaussianState& b) {
    double r = std::abs(a.n - b.n);
    r = std::max(r, std::abs(a.m.real() - b.m.real()));
    r = std::max(r, std::abs(a.m.imag() - b.m.imag()));
    r = std::max(r, std::abs(a.d.real() - b.d.real()));
    r = std::max(r, std::abs(a.d.imag() - b.d.imag()));
    return r;
}

/// Wraps an angle into [0, 2pi).
inline double normalize_angle(double theta) {
    const double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t == two_pi) t = 0.0;
    return t + 0.0;  // flushes -0.0 to +0.0
}

/// Evaluates the characteristic function chi(mu) of `state` at `mu`.
///
/// chi(mu) = exp[-(n+1/2)|mu|^2 + Re(m conj(mu)^2) + mu conj(d) - conj(mu) d].
/// |chi(mu)| <= 1 for every valid state and chi(0) = 1.
inline complexd char_fn_eval(const GaussianState& state, complexd mu) {
    require_valid_state(state, "char_fn_eval");
    const complexd mu_conj = std::conj(mu);
    const complexd exponent =
        -(state.n + 0.5) * std::norm(mu) +
        (state.m * mu_conj * mu_conj).real() +
        mu * std::conj(state.d) - mu_conj * state.d;
    return std::exp(exponent);
}

/// Applies the squeezing unitary, rho -> S(r, phi) rho S(r, phi)'.
///
/// Covariance transforms by the Bogoliubov conjugation of the squeezer and
/// the displacement accordingly:
///   n' + 1/2 = cosh(2r)(n + 1/2) - sinh(2r) Re(e^{-i phi} m)
///   m'       = cosh(r)^2 m - cosh(r) sinh(r) e^{i phi} (2n + 1) + sinh(r)^2 e^{2i phi} conj(m)
///   d'       = cosh(r) d - sinh(r) e^{i phi} conj(d)
/// Purity (and the symplectic invariant generally) is preserved.
inline GaussianState apply_squeeze(const GaussianState& state, const SqueezeParams& s) {
    require_valid_state(state, "apply_squeeze");
    const double c = std::cosh(s.r);
    const double sh = std::sinh(s.r);
    const complexd phase = std::polar(1.0, s.phi);
    const double half = state.n + 0.5;

    GaussianState out;
    out.n = (c * c + sh * sh) * half - 2.0 * c * sh * (std::conj(phase) * state.m).real() - 0.5;
    out.m = c * c * state.m - c * sh * phase * (2.0 * half) +
            sh * sh * phase * phase * std::conj(state.m);
    out.d = c * state.d - sh * phase * std::conj(state.d);
    return out;
}

/// Applies the phase rotation rho -> R(theta) rho R(theta)' with
/// R(theta) = exp(i theta a'a): d -> e^{i theta} d, m -> e^{2i theta} m.
inline GaussianState apply_rotation(const GaussianState& state, double theta) {
    require_valid_state(state, "apply_rotation");
    const complexd phase = std::polar(1.0, theta);
    return {state.n, phase * phase * state.m, phase * state.d};
}

}  // namespace bgc
