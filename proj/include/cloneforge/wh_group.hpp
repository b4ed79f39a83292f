#pragma once

// Discrete Weyl-Heisenberg (generalized Pauli) operators on C^d and the
// generalized Bell vectors built from them. Fixes every index and phase
// convention used by the rest of the library:
//
//   omega          = exp(+2*pi*i/d)
//   U_{pq}         = sum_k omega^{kq} |k+p mod d><k|        (shift p, clock q)
//   |U_{rs}>>      = sum_k omega^{ks} |k+r mod d>|k>        (norm sqrt(d))
//   vectorize(A)   = |A>> with composite index m*d+n for |m>|n>
//
// At d=2 these reduce to the Pauli group: U_01 = sigma_z, U_10 = sigma_x,
// U_11 = -i*sigma_y.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cloneforge {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dimensions above this are rejected loudly instead of thrashing memory
// (Choi operators are d^3 x d^3).
inline constexpr int kMaxDim = 64;

// Group element label (p,q) in Z_d x Z_d.
struct WeylIndex {
    int p = 0;
    int q = 0;

    bool operator==(const WeylIndex&) const = default;
};

// Throws std::invalid_argument unless 2 <= d <= kMaxDim.
void check_dim(int d);

// Throws std::invalid_argument unless idx is valid for dimension d.
void check_index(int d, WeylIndex idx);

// Flat (r,s) -> r*d + s enumeration of the d^2 group elements.
std::vector<WeylIndex> group_elements(int d);

// omega^power with omega = exp(2*pi*i/d).
Cx root_of_unity(int d, long long power);

// The d x d unitary U_{pq}.
Matrix weyl_operator(int d, WeylIndex idx);

// Phase chi with U_g U_a U_g^dag = chi * U_a; chi = omega^{a.p*g.q - g.p*a.q}.
Cx conjugation_phase(int d, WeylIndex g, WeylIndex a);

// |U_{rs}>> in C^{d^2}, unnormalized (norm sqrt(d)).
Vector bell_vector(int d, WeylIndex idx);

// |A>> = sum_{mn} A_{mn} |m>|n>; requires A square.
Vector vectorize(const Matrix& a);

// Inverse of vectorize; requires v.size() to be a perfect square.
Matrix devectorize(const Vector& v);

// Monomial form of a Weyl operator: U|k> = phase[k] |shift[k]>. Applying a
// tensor power of Weyl operators this way is O(size) instead of a matmul.
struct WeylAction {
    std::vector<int> shift;
    std::vector<Cx> phase;

    int dim() const { return static_cast<int>(shift.size()); }
};

// Action of U_{pq} (conjugated = false) or of its entrywise conjugate
// U_{pq}^* (conjugated = true).
WeylAction weyl_action(int d, WeylIndex idx, bool conjugated = false);

// Tensor product of monomial actions, leftmost factor slowest
// (row-major composite index).
WeylAction tensor(const WeylAction& a, const WeylAction& b);

// y = W x for the monomial W described by `act`.
Vector apply_action(const WeylAction& act, const Vector& x);

// W M W^dag for the monomial W described by `act`.
Matrix conjugate_by_action(const WeylAction& act, const Matrix& m);

// Frobenius norm of W M - M W without forming either product densely.
double commutator_norm(const WeylAction& act, const Matrix& m);

}  // namespace cloneforge
