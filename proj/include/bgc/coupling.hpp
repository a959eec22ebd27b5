#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "bgc/gaussian_state.hpp"

/// Linear couplings between the carrier mode a and the environment mode b.
///
/// A coupling is the 4x4 complex matrix A of the Heisenberg action
/// U v U' = A v on the ordered operator vector v = (a, a', b, b'). Preserving
/// the Bosonic commutation relations constrains rows 1 and 3 (0-based: 0 and
/// 2), while rows 2 and 4 are forced to be the conjugate partners of rows 1
/// and 3: taking the adjoint of U a U' swaps each (annihilator, creator)
/// column pair and conjugates the coefficients.
namespace bgc {

using Matrix4cd = Eigen::Matrix4cd;

/// 4x4 complex symplectic coupling matrix over (a, a', b, b').
struct CouplingMatrix {
    Matrix4cd a = Matrix4cd::Identity();
};

/// Per-constraint residuals of a coupling-matrix validation.
struct CouplingValidation {
    double row_norm_a = 0.0;      ///< |[a', a''] - 1|
    double row_norm_b = 0.0;      ///< |[b', b''] - 1|
    double cross_comm = 0.0;      ///< |[a', b']|
    double cross_comm_dag = 0.0;  ///< |[a', b'']|
    double conj_row_a = 0.0;      ///< max entry deviation of row 2 from its partner form
    double conj_row_b = 0.0;      ///< max entry deviation of row 4 from its partner form
    double tol = kConstraintTol;

    double max_residual() const {
        return std::max({row_norm_a, row_norm_b, cross_comm, cross_comm_dag,
                         conj_row_a, conj_row_b});
    }
    bool passed() const { return max_residual() <= tol; }
};

/// Conjugate-partner row derived from an (annihilator) row: conjugate the
/// entries and swap the columns within the (a, a') and (b, b') pairs.
inline Eigen::RowVector4cd conjugate_partner_row(const Eigen::RowVector4cd& row) {
    Eigen::RowVector4cd out;
    out(0) = std::conj(row(1));
    out(1) = std::conj(row(0));
    out(2) = std::conj(row(3));
    out(3) = std::conj(row(2));
    return out;
}

/// Checks the commutation-preservation constraints of a coupling matrix and
/// reports the residual of every constraint. Passes iff the max residual is
/// within `tol`.
inline CouplingValidation validate_coupling(const CouplingMatrix& A,
                                            double tol = kConstraintTol) {
    const Matrix4cd& M = A.a;
    CouplingValidation v;
    v.tol = tol;

    auto signed_norm = [&](int row) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            acc += sign * std::norm(M(row, j));
        }
        return acc;
    };
    v.row_norm_a = std::abs(signed_norm(0) - 1.0);
    v.row_norm_b = std::abs(signed_norm(2) - 1.0);

    // [a', b'] = 0 and [a', b''] = 0 between the transformed modes.
    const complexd comm = M(0, 0) * M(2, 1) - M(0, 1) * M(2, 0) +
                          M(0, 2) * M(2, 3) - M(0, 3) * M(2, 2);
    complexd comm_dag{0, 0};
    for (int j = 0; j < 4; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        comm_dag += sign * M(0, j) * std::conj(M(2, j));
    }
    v.cross_comm = std::abs(comm);
    v.cross_comm_dag = std::abs(comm_dag);

    const Eigen::RowVector4cd want_row1 = conjugate_partner_row(M.row(0));
    const Eigen::RowVector4cd want_row3 = conjugate_partner_row(M.row(2));
    v.conj_row_a = (M.row(1) - want_row1).cwiseAbs().maxCoeff();
    v.conj_row_b = (M.row(3) - want_row3).cwiseAbs().maxCoeff();
    return v;
}

inline void require_valid_coupling(const CouplingMatrix& A, const char* where) {
    const CouplingValidation v = validate_coupling(A);
    if (!v.passed()) {
        throw std::invalid_argument(std::string(where) +
                                    ": coupling matrix violates the commutation constraints");
    }
}

/// The invariant q = |A11|^2 - |A12|^2 classifying the channel family.
inline double compute_q(const CouplingMatrix& A) {
    return std::norm(A.a(0, 0)) - std::norm(A.a(0, 1));
}

inline CouplingMatrix identity_coupling() { return {}; }

/// Builds a coupling from its two independent rows (the a' and b' rows); the
/// conjugate-partner rows are filled in.
inline CouplingMatrix coupling_from_rows(const Eigen::RowVector4cd& row_a,
                                         const Eigen::RowVector4cd& row_b) {
    CouplingMatrix A;
    A.a.row(0) = row_a;
    A.a.row(1) = conjugate_partner_row(row_a);
    A.a.row(2) = row_b;
    A.a.row(3) = conjugate_partner_row(row_b);
    return A;
}

/// Coupling matrix of a squeezer acting on the carrier mode only.
inline CouplingMatrix squeeze_coupling_a(const SqueezeParams& s) {
    const double c = std::cosh(s.r);
    const double sh = std::sinh(s.r);
    const complexd p = std::polar(1.0, s.phi);
    CouplingMatrix A;
    A.a(0, 0) = c;
    A.a(0, 1) = p * sh;
    A.a(1, 0) = std::conj(p) * sh;
    A.a(1, 1) = c;
    return A;
}

/// Coupling matrix of a squeezer acting on the environment mode only.
inline CouplingMatrix squeeze_coupling_b(const SqueezeParams& s) {
    const double c = std::cosh(s.r);
    const double sh = std::sinh(s.r);
    const complexd p = std::polar(1.0, s.phi);
    CouplingMatrix A;
    A.a(2, 2) = c;
    A.a(2, 3) = p * sh;
    A.a(3, 2) = std::conj(p) * sh;
    A.a(3, 3) = c;
    return A;
}

/// Coupling matrix of the phase rotation exp(i theta a'a) on the carrier.
inline CouplingMatrix rotation_coupling_a(double theta) {
    const complexd p = std::polar(1.0, theta);
    CouplingMatrix A;
    A.a(0, 0) = std::conj(p);
    A.a(1, 1) = p;
    return A;
}

/// Coupling matrix of the phase rotation exp(i theta b'b) on the environment.
inline CouplingMatrix rotation_coupling_b(double theta) {
    const complexd p = std::polar(1.0, theta);
    CouplingMatrix A;
    A.a(2, 2) = std::conj(p);
    A.a(3, 3) = p;
    return A;
}

/// Coupling matrix of the mode-exchange unitary (a <-> b).
inline CouplingMatrix exchange_coupling() {
    CouplingMatrix A;
    A.a.setZero();
    A.a(0, 2) = 1.0;
    A.a(1, 3) = 1.0;
    A.a(2, 0) = 1.0;
    A.a(3, 1) = 1.0;
    return A;
}

/// Coupling matrix of an operator product U_1 U_2 ... U_n given the factors'
/// coupling matrices in operator order (leftmost factor first). Heisenberg
/// matrices compose in reverse: M(UV) = M(V) M(U).
inline CouplingMatrix compose_couplings(const std::vector<CouplingMatrix>& factors) {
    Matrix4cd m = Matrix4cd::Identity();
    for (const CouplingMatrix& f : factors) {
        m = f.a * m;
    }
    return {m};
}

/// Inverse of a symplectic coupling via the commutation form: A^-1 = -W A^T W
/// with W the block-diagonal commutator matrix of (a, a', b, b').
inline Matrix4cd symplectic_inverse(const Matrix4cd& A) {
    Matrix4cd W = Matrix4cd::Zero();
    W(0, 1) = 1.0;
    W(1, 0) = -1.0;
    W(2, 3) = 1.0;
    W(3, 2) = -1.0;
    return -W * A.transpose() * W;
}

}  // namespace bgc
