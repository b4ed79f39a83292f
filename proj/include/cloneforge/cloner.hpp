#pragma once

// Double-Bell parametrization of extremal covariant cloners.
//
// Every extremal Weyl-Heisenberg covariant 1->2 cloner is fixed by a unit
// vector a in C^{d^2}: its Choi operator is the rank-d projector
// R(a) = sum a_{rs} a^*_{r's'} T_{rs,r's'} and its purification is the
// double-Bell state
//
//   |Psi(a)> = sum_{rs} a_{rs} |U_{rs}^dag>>_{14} |U_{rs}>>_{23} / d
//
// on clones (1,2), input (3) and ancilla (4). Clone 2 is the branch that
// is perfect at a = e_0 (the paper's "Bob"); clone 1 is the anti-clone
// side paired with the ancilla.

#include <string>
#include <vector>

#include "cloneforge/choi_channel.hpp"
#include "cloneforge/ensembles.hpp"

namespace cloneforge {

// Unit vector in C^{d^2}, index (r,s) -> r*d + s.
struct CoefficientVector {
    int d = 0;
    Vector a;
};

enum class Clone { one, two };

struct FidelityRow {
    std::string state;
    double clone1 = 0.0;
    double clone2 = 0.0;
};

struct FidelityReport {
    std::vector<FidelityRow> per_state;  // finite ensembles only
    double average1 = 0.0;
    double average2 = 0.0;
};

// Validates dimension and unit norm (1e-12); throws otherwise.
CoefficientVector make_coefficients(int d, Vector a);

// R(a); trace-preserving, covariant and extremal by construction.
ChoiOperator choi_from_coefficients(const CoefficientVector& a);

// The purification |Psi(a)> in C^{d^4}; satisfies d Tr_4 |Psi><Psi| = R(a).
Vector joint_output_state(const CoefficientVector& a);

// <psi| rho_k |psi> with rho_k the reduced state of clone k after cloning
// the pure input psi. Computed by channel application and partial trace.
double clone_fidelity(const CoefficientVector& a, const Vector& psi, Clone which);

// Same, against a prebuilt Choi operator (avoids rebuilding R in loops).
double clone_fidelity(const ChoiOperator& r, const Vector& psi, Clone which);

// Quadratic kernel M_k with F_k(psi) = (psi x psi^*)^dag M_k (psi x psi^*);
// the contraction of R over the opposite clone slot.
Matrix clone_fidelity_kernel(const ChoiOperator& r, Clone which);

// Ensemble average of the single-clone fidelity. Finite and torus
// ensembles average state by state; the Haar ensemble uses the exact
// second-moment rule applied to the quadratic fidelity integrand.
double average_fidelity(const CoefficientVector& a, const Ensemble& e, Clone which);

// Both averages plus per-state rows for finite ensembles.
FidelityReport fidelity_report(const CoefficientVector& a, const Ensemble& e);

}  // namespace cloneforge
