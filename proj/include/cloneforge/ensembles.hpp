#pragma once

// Invariant input-state families and their exact averaging rules.
//
// Finite ensembles carry explicit weighted states. Torus ensembles realize
// a uniform phase grid; a grid of order N >= 5 integrates trigonometric
// polynomials of degree <= 2 per phase exactly, which covers every
// fidelity integrand. The Haar ensemble is symbolic: quadratic integrands
// average exactly through the second-moment identity
//
//   E[ P_psi (x) P_psi^T ] = (I + |I>><<I|) / (d(d+1)),
//
// anything else falls back to seeded Monte Carlo.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cloneforge/wh_group.hpp"

namespace cloneforge {

enum class EnsembleKind { finite, torus, haar };

struct WeightedState {
    Vector psi;
    double weight = 0.0;
    std::string label;
};

struct Ensemble {
    int d = 0;
    EnsembleKind kind = EnsembleKind::finite;
    std::string name;
    std::vector<WeightedState> states;  // explicit states (finite and torus)
    int grid_n = 0;                     // torus grid order per phase
};

// d=2: the four eigenstates of sigma_x and sigma_y, weight 1/4 each.
Ensemble bb84();

// d=2: the six eigenstates of sigma_x, sigma_y, sigma_z, weight 1/6 each.
Ensemble six_state();

// d=2: the eight states with Bloch vectors (+-1,+-1,+-1)/sqrt(3).
Ensemble cube();

// d=2: (|0> + e^{i phi}|1>)/sqrt(2) on the uniform N-point grid, N >= 5.
Ensemble equatorial(int n);

// Computational basis plus its Fourier transform, weight 1/(2d) each.
Ensemble fourier_pair(int d);

// (|0> + sum_k e^{i phi_k}|k>)/sqrt(d) on an N^(d-1) product grid;
// requires N >= 5 and d <= 5 to keep the grid tractable.
Ensemble multi_phase(int d, int n);

// All pure states under the Haar measure (symbolic).
Ensemble universal(int d);

// Weighted average of f over the ensemble. Finite and torus kinds sum the
// explicit states; the Haar kind falls back to Monte Carlo with the given
// sample budget and seed (throws if samples == 0).
double average(const Ensemble& e, const std::function<double(const Vector&)>& f,
               int haar_samples = 0, std::uint64_t seed = 20259);

// E[ P_psi (x) P_psi^T ] as a d^2 x d^2 matrix, exact for every kind.
// Any integrand quadratic in P_psi averages as Tr[K . moment].
Matrix input_output_moment(const Ensemble& e);

// Exact average of the quadratic integrand f(psi) = w^dag K w, w = psi (x) psi^*.
double average_quadratic(const Ensemble& e, const Matrix& k);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

// Haar-uniform Monte Carlo estimate of E[f(psi)] with standard error.
MonteCarloEstimate haar_average_mc(int d, const std::function<double(const Vector&)>& f,
                                   int samples, std::uint64_t seed);

// One Haar-uniform pure state (normalized complex Gaussian).
Vector haar_state(int d, std::mt19937_64& rng);

}  // namespace cloneforge
