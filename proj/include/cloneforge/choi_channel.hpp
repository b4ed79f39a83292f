#pragma once

// Choi-operator formalism for 1->2 cloning channels covariant under the
// discrete Weyl-Heisenberg group.
//
// A channel M: B(H) -> B(H x H) is represented by the positive operator
//
//   R = (M x id) |I>><<I|      on   clone1 (x) clone2 (x) input,
//
// with composite index ((i1*d)+i2)*d+i3. Trace preservation reads
// Tr_{1,2}[R] = I_3 and covariance [R, U x U x U*] = 0 for every group
// element. The commutant of {U x U x U*} is spanned by the d^2 x d^2
// family
//
//   T_{ab} = (1/d) U_a^dag U_b (x) |U_a>><<U_b|     (slot 1 | slots 2,3)
//
// so every trace-preserving covariant R is R = sum_{ab} r_{ab} T_{ab}
// with r positive and unit-trace; extremal R have rank-one r.
//
// Everything here is specialized to the Weyl-Heisenberg action, whose
// H^(x)3 decomposition has a single irrep class of multiplicity d^2. A
// general group would need one r-block per inequivalent irrep.

#include <vector>

#include "cloneforge/wh_group.hpp"

namespace cloneforge {

// Positive d^3 x d^3 operator on clone1 (x) clone2 (x) input.
struct ChoiOperator {
    int d = 0;
    Matrix m;
};

// Coordinates of a covariant operator on the multiplicity space,
// indexed by (r,s) -> r*d + s. PSD with unit trace for channels.
struct RMatrix {
    int d = 0;
    Matrix m;
};

// Outcome of a residual-based predicate.
struct CheckResult {
    bool ok = false;
    double residual = 0.0;
};

struct ExtremalityReport {
    bool extremal = false;
    double projector_residual = 0.0;
    int rank = 0;
};

// Validates Hermiticity, positivity and Tr R = d; throws on failure.
ChoiOperator make_choi(int d, Matrix m, double tol = 1e-8);

// Standard partial trace. `dims` lists the tensor factor sizes (leftmost
// slowest), `keep` the zero-based factors to retain, in ascending order.
Matrix partial_trace(const Matrix& op, const std::vector<int>& dims, const std::vector<int>& keep);

// M(rho) = Tr_3[(I x I x rho^T) R], a density matrix on clone1 (x) clone2.
// A non-trace-preserving R is not an error: the result then has trace != 1
// and `tp_warning`, when given, is set.
Matrix apply_channel(const ChoiOperator& r, const Matrix& rho, bool* tp_warning = nullptr);

// residual = ||Tr_{1,2}[R] - I_3||_F
CheckResult is_trace_preserving(const ChoiOperator& r, double tol = 1e-10);

// residual = max_{pq} ||[R, U_pq x U_pq x U_pq^*]||_F over all d^2 elements
CheckResult is_covariant(const ChoiOperator& r, double tol = 1e-10);

// Uniform group average of W R W^dag over the d^2 elements W = U x U x U*.
// Projects onto the covariant set; idempotent; preserves trace preservation.
ChoiOperator twirl(const ChoiOperator& r);

// T_{ab} as a dense d^3 x d^3 matrix.
Matrix isomorphism_T(int d, WeylIndex a, WeylIndex b);

// Orthogonal rank-d projector onto H (x) |U_{rs}>>; equals T_{aa}.
Matrix subspace_projector(int d, WeylIndex idx);

// Tr[T_{ab}^dag M], evaluated from the sparse structure of T (O(d^4)).
Cx hs_inner_T(int d, WeylIndex a, WeylIndex b, const Matrix& m);

// r_{ab} = (1/d) Tr[T_{ab}^dag R]. Rejects R whose covariance residual
// exceeds `cov_tol` (the coordinates only faithfully represent covariant
// operators).
RMatrix r_matrix_from_choi(const ChoiOperator& r, double cov_tol = 1e-8);

// R = sum_{ab} r_{ab} T_{ab}. Requires r PSD with unit trace.
ChoiOperator choi_from_r(const RMatrix& r, double tol = 1e-8);

// Extremal iff R is a rank-d projector: ||R^2 - R||_F <= tol and
// numerical rank d (singular values above sqrt(tol)).
ExtremalityReport is_extremal(const ChoiOperator& r, double tol = 1e-10);

// max_{pq} || (U x U x U* x U*) |psi> - |psi> || for |psi> in C^{d^4} on
// clones (1,2) (x) input (3) (x) ancilla (4).
double strong_covariance_residual(const Vector& psi, int d);

}  // namespace cloneforge
