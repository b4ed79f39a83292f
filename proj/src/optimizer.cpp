#include "cloneforge/optimizer.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cloneforge {

namespace {

constexpr double kDegenerateGap = 1e-9;

void require_d(Preset p, int d, int want) {
    if (d != want) {
        throw std::invalid_argument(preset_name(p) + " preset requires d = " + std::to_string(want));
    }
}

double checked_sqrt(double x) {
    if (x < -1e-12) throw std::domain_error("F_B outside the formula's domain");
    return std::sqrt(std::max(0.0, x));
}

void check_fb_range(double fb, double lo) {
    if (fb < lo - 1e-12 || fb > 1.0 + 1e-12) {
        throw std::domain_error("F_B = " + std::to_string(fb) + " outside [" + std::to_string(lo) +
                                ", 1]");
    }
}

// Largest-magnitude component made real positive.
Vector phase_fixed(Vector a) {
    Eigen::Index imax = 0;
    a.cwiseAbs().maxCoeff(&imax);
    const Cx z = a(imax);
    if (std::abs(z) > 0.0) a *= std::conj(z) / std::abs(z);
    return a;
}

bool is_real_nonnegative(const Vector& a) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (std::abs(a(i).imag()) > 1e-9 || a(i).real() < -1e-9) return false;
    }
    return true;
}

}  // namespace

Preset preset_from_name(const std::string& name) {
    if (name == "bb84") return Preset::bb84;
    if (name == "phase" || name == "equatorial") return Preset::phase;
    if (name == "six-state") return Preset::six_state;
    if (name == "cube") return Preset::cube;
    if (name == "fourier") return Preset::fourier;
    if (name == "universal") return Preset::universal;
    if (name == "multi-phase") return Preset::multi_phase;
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::bb84: return "bb84";
        case Preset::phase: return "phase";
        case Preset::six_state: return "six-state";
        case Preset::cube: return "cube";
        case Preset::fourier: return "fourier";
        case Preset::universal: return "universal";
        case Preset::multi_phase: return "multi-phase";
    }
    throw std::logic_error("unreachable");
}

Ensemble preset_ensemble(Preset p, int d, int grid_n) {
    switch (p) {
        case Preset::bb84: require_d(p, d, 2); return bb84();
        case Preset::phase: require_d(p, d, 2); return equatorial(grid_n);
        case Preset::six_state: require_d(p, d, 2); return six_state();
        case Preset::cube: require_d(p, d, 2); return cube();
        case Preset::fourier: return fourier_pair(d);
        case Preset::universal: return universal(d);
        case Preset::multi_phase: return multi_phase(d, grid_n);
    }
    throw std::logic_error("unreachable");
}

FidelityForm fidelity_matrix(const Ensemble& e, Clone which) {
    const int d = e.d;
    const long long dd = static_cast<long long>(d) * d;
    const Matrix m2 = input_output_moment(e);  // E[P (x) P^T] on (clone, input)

    // Embed into clone1(x)clone2(x)input with identity on the other clone.
    Matrix avg = Matrix::Zero(dd * d, dd * d);
    if (which == Clone::two) {
        for (int i1 = 0; i1 < d; ++i1) avg.block(i1 * dd, i1 * dd, dd, dd) = m2;
    } else {
        for (int i1 = 0; i1 < d; ++i1)
            for (int i3 = 0; i3 < d; ++i3)
                for (int j1 = 0; j1 < d; ++j1)
                    for (int j3 = 0; j3 < d; ++j3) {
                        const Cx v = m2(i1 * d + i3, j1 * d + j3);
                        if (v == Cx(0.0)) continue;
                        for (int i2 = 0; i2 < d; ++i2)
                            avg((static_cast<long long>(i1) * d + i2) * d + i3,
                                (static_cast<long long>(j1) * d + i2) * d + j3) = v;
                    }
    }

    const auto idx = group_elements(d);
    Matrix phi(dd, dd);
    for (int i = 0; i < dd; ++i)
        for (int j = 0; j < dd; ++j) phi(i, j) = hs_inner_T(d, idx[i], idx[j], avg);
    phi = 0.5 * (phi + phi.adjoint()).eval();  // clean roundoff

    Eigen::SelfAdjointEigenSolver<Matrix> es(phi, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 || es.eigenvalues().maxCoeff() > 1.0 + 1e-10) {
        throw std::logic_error("fidelity_matrix: eigenvalues escaped [0, 1]");
    }
    return {d, which, std::move(phi)};
}

TradeoffPoint scalarized_optimum(const FidelityForm& phi_e, const FidelityForm& phi_b,
                                 double lambda) {
    if (phi_e.d != phi_b.d) throw std::invalid_argument("scalarized_optimum: dimension mismatch");
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("lambda outside [0, 1]");
    const Matrix blend = lambda * phi_e.phi + (1.0 - lambda) * phi_b.phi;
    Eigen::SelfAdjointEigenSolver<Matrix> es(blend);
    const Eigen::Index n = blend.rows();
    const Vector top = phase_fixed(es.eigenvectors().col(n - 1));

    TradeoffPoint pt;
    pt.lambda = lambda;
    pt.degenerate = n > 1 && (es.eigenvalues()(n - 1) - es.eigenvalues()(n - 2)) < kDegenerateGap;
    pt.f_b = (top.adjoint() * phi_b.phi * top).value().real();
    pt.f_e = (top.adjoint() * phi_e.phi * top).value().real();
    pt.a_opt = make_coefficients(phi_e.d, top.normalized());
    pt.real_nonnegative = is_real_nonnegative(pt.a_opt.a);
    return pt;
}

TradeoffCurve pareto_sweep(const Ensemble& e, const std::vector<double>& lambdas) {
    const FidelityForm phi_e = fidelity_matrix(e, Clone::one);
    const FidelityForm phi_b = fidelity_matrix(e, Clone::two);
    TradeoffCurve curve;
    curve.ensemble = e.name;
    curve.points.reserve(lambdas.size());
    for (double lam : lambdas) curve.points.push_back(scalarized_optimum(phi_e, phi_b, lam));
    std::sort(curve.points.begin(), curve.points.end(),
              [](const TradeoffPoint& x, const TradeoffPoint& y) { return x.f_b < y.f_b; });
    return curve;
}

TradeoffCurve pareto_sweep(const Ensemble& e, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("pareto_sweep: need at least 2 grid points");
    std::vector<double> lambdas(grid_points);
    for (int i = 0; i < grid_points; ++i) lambdas[i] = static_cast<double>(i) / (grid_points - 1);
    return pareto_sweep(e, lambdas);
}

TradeoffPoint constrained_optimum(const Ensemble& e, double fb_target, double tol) {
    const FidelityForm phi_e = fidelity_matrix(e, Clone::one);
    const FidelityForm phi_b = fidelity_matrix(e, Clone::two);

    TradeoffPoint at_zero = scalarized_optimum(phi_e, phi_b, 0.0);
    TradeoffPoint at_one = scalarized_optimum(phi_e, phi_b, 1.0);
    if (fb_target > at_zero.f_b + tol || fb_target < at_one.f_b - tol) {
        throw std::domain_error("F_B target " + std::to_string(fb_target) +
                                " outside the achievable range [" + std::to_string(at_one.f_b) +
                                ", " + std::to_string(at_zero.f_b) + "]");
    }
    if (std::abs(at_zero.f_b - fb_target) <= tol) return at_zero;
    if (std::abs(at_one.f_b - fb_target) <= tol) return at_one;

    // F_B is non-increasing in lambda along the frontier.
    double lo = 0.0, hi = 1.0;
    TradeoffPoint mid_pt;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        mid_pt = scalarized_optimum(phi_e, phi_b, mid);
        if (std::abs(mid_pt.f_b - fb_target) <= tol) return mid_pt;
        (mid_pt.f_b > fb_target ? lo : hi) = mid;
    }
    throw std::domain_error("constrained_optimum: bisection failed to pin F_B = " +
                            std::to_string(fb_target) + " (frontier may jump there)");
}

double golden_tradeoff(Preset p, double fb, int d) {
    switch (p) {
        case Preset::bb84:
        case Preset::phase:
            require_d(p, d, 2);
            check_fb_range(fb, 0.0);
            return 0.5 + checked_sqrt(fb * (1.0 - fb));
        case Preset::six_state:
        case Preset::cube:
            require_d(p, d, 2);
            check_fb_range(fb, 1.0 / 3.0);
            return 1.0 - fb / 2.0 + checked_sqrt((3.0 * fb - 1.0) * (1.0 - fb)) / 2.0;
        case Preset::fourier:
            check_dim(d);
            check_fb_range(fb, 0.0);
            return fb / d + (d - 1.0) * (1.0 - fb) / d +
                   2.0 / d * checked_sqrt((d - 1.0) * fb * (1.0 - fb));
        case Preset::universal:
            check_dim(d);
            check_fb_range(fb, 1.0 / (d + 1.0));
            return 1.0 - ((static_cast<double>(d) * d - 2.0) * fb + 2.0 - d) / (static_cast<double>(d) * d) +
                   2.0 * std::sqrt(d - 1.0) / (static_cast<double>(d) * d) *
                       checked_sqrt((1.0 - fb) * ((d + 1.0) * fb - 1.0));
        case Preset::multi_phase:
            throw std::invalid_argument("multi-phase has no published closed-form trade-off");
    }
    throw std::logic_error("unreachable");
}

CoefficientVector golden_coefficients(Preset p, double fb, int d) {
    Vector a;
    switch (p) {
        case Preset::bb84:
        case Preset::phase: {
            require_d(p, d, 2);
            check_fb_range(fb, 0.0);
            const double s = checked_sqrt(fb * (1.0 - fb));
            a = Vector(4);
            a << fb, 1.0 - fb, s, s;  // (I, sigma_z, sigma_x, -i sigma_y) branches
            break;
        }
        case Preset::six_state:
        case Preset::cube: {
            require_d(p, d, 2);
            check_fb_range(fb, 1.0 / 3.0);
            const double a0 = checked_sqrt((3.0 * fb - 1.0) / 2.0);
            const double ai = checked_sqrt((1.0 - fb) / 2.0);
            a = Vector(4);
            a << a0, ai, ai, ai;
            break;
        }
        case Preset::fourier: {
            check_dim(d);
            check_fb_range(fb, 0.0);
            a = Vector::Zero(static_cast<Eigen::Index>(d) * d);
            const double edge = checked_sqrt(fb * (1.0 - fb) / (d - 1.0));
            a(0) = fb;
            for (int r = 1; r < d; ++r) {
                a(static_cast<Eigen::Index>(r) * d) = edge;  // (r, 0)
                a(r) = edge;                                 // (0, r)
                for (int s = 1; s < d; ++s) a(static_cast<Eigen::Index>(r) * d + s) = (1.0 - fb) / (d - 1.0);
            }
            break;
        }
        case Preset::universal: {
            check_dim(d);
            check_fb_range(fb, 1.0 / (d + 1.0));
            a = Vector::Constant(static_cast<Eigen::Index>(d) * d,
                                 checked_sqrt((1.0 - fb) / (static_cast<double>(d) * (d - 1.0))));
            a(0) = checked_sqrt(((d + 1.0) * fb - 1.0) / d);
            break;
        }
        case Preset::multi_phase:
            throw std::invalid_argument("multi-phase has no published closed-form coefficients");
    }
    if (std::abs(a.norm() - 1.0) > 1e-12) {
        throw std::logic_error("golden_coefficients: analytic normalization failed");
    }
    return make_coefficients(d, a.normalized());
}

double symmetric_fidelity(Preset p, int d) {
    switch (p) {
        case Preset::bb84:
        case Preset::phase:
            require_d(p, d, 2);
            return 0.5 + 1.0 / std::sqrt(8.0);
        case Preset::six_state:
        case Preset::cube:
            require_d(p, d, 2);
            return 5.0 / 6.0;
        case Preset::fourier:
            check_dim(d);
            return 0.5 * (1.0 + 1.0 / std::sqrt(static_cast<double>(d)));
        case Preset::universal:
            check_dim(d);
            return 0.5 + 1.0 / (d + 1.0);
        case Preset::multi_phase:
            throw std::invalid_argument("multi-phase has no published closed-form optimum");
    }
    throw std::logic_error("unreachable");
}

}  // namespace cloneforge
