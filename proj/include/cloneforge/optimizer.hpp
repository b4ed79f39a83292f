#pragma once

// Exact optimization over the covariant convex set.
//
// The average single-clone fidelity is a quadratic form a^dag Phi a in the
// double-Bell coefficients (equivalently Tr[Phi r] on the full convex set
// of r-matrices), so the optimal trade-off between the two clones reduces
// to top-eigenvector problems for lambda*Phi_E + (1-lambda)*Phi_B. The
// golden_* functions carry the closed-form optima used as references.

#include <string>
#include <vector>

#include "cloneforge/cloner.hpp"

namespace cloneforge {

enum class Preset { bb84, phase, six_state, cube, fourier, universal, multi_phase };

Preset preset_from_name(const std::string& name);
std::string preset_name(Preset p);

// Hermitian d^2 x d^2 form with 0 <= Phi <= I.
struct FidelityForm {
    int d = 0;
    Clone clone = Clone::two;
    Matrix phi;
};

struct TradeoffPoint {
    double lambda = 0.0;
    double f_b = 0.0;  // clone 2 ("Bob")
    double f_e = 0.0;  // clone 1 ("Eve")
    CoefficientVector a_opt;
    bool degenerate = false;
    bool real_nonnegative = false;  // optimum realizable with a_i >= 0
};

struct TradeoffCurve {
    std::string ensemble;
    std::vector<TradeoffPoint> points;  // sorted by f_b ascending
};

// Phi with average_fidelity(a, e, which) = a^dag Phi a, computed by
// evaluating the ensemble-averaged fidelity functional on the T-basis.
FidelityForm fidelity_matrix(const Ensemble& e, Clone which);

// Maximizes lambda*F_E + (1-lambda)*F_B over unit coefficient vectors:
// the top eigenvector of the blended form, phase-fixed so the largest
// component is real positive. `degenerate` flags a top eigengap < 1e-9.
TradeoffPoint scalarized_optimum(const FidelityForm& phi_e, const FidelityForm& phi_b,
                                 double lambda);

// One scalarized optimum per lambda, assembled into a Pareto-sorted curve.
TradeoffCurve pareto_sweep(const Ensemble& e, const std::vector<double>& lambdas);
TradeoffCurve pareto_sweep(const Ensemble& e, int grid_points = 201);

// Frontier point with F_B pinned to fb_target by bisection on lambda.
TradeoffPoint constrained_optimum(const Ensemble& e, double fb_target, double tol = 1e-8);

// Closed-form F_E(F_B) for the presets with published trade-off curves
// (bb84/phase, six-state/cube, fourier, universal). Throws out-of-domain.
double golden_tradeoff(Preset p, double fb, int d);

// Closed-form optimal coefficient vectors for the same presets.
CoefficientVector golden_coefficients(Preset p, double fb, int d);

// Closed-form symmetric optimum F_B = F_E where published.
double symmetric_fidelity(Preset p, int d);

// The input ensemble each preset optimizes over. grid_n is the torus grid
// order (phase / multi-phase); ignored elsewhere.
Ensemble preset_ensemble(Preset p, int d, int grid_n = 8);

}  // namespace cloneforge
