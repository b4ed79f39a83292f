#include "cloneforge/cloner.hpp"

#include <cmath>
#include <stdexcept>

namespace cloneforge {

CoefficientVector make_coefficients(int d, Vector a) {
    check_dim(d);
    if (a.size() != static_cast<Eigen::Index>(d) * d) {
        throw std::invalid_argument("coefficient vector must have length d^2");
    }
    if (std::abs(a.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("coefficient vector must have unit norm");
    }
    return {d, std::move(a)};
}

ChoiOperator choi_from_coefficients(const CoefficientVector& a) {
    check_dim(a.d);
    if (std::abs(a.a.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("choi_from_coefficients: coefficients not normalized");
    }
    return choi_from_r({a.d, a.a * a.a.adjoint()});
}

Vector joint_output_state(const CoefficientVector& a) {
    check_dim(a.d);
    if (std::abs(a.a.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("joint_output_state: coefficients not normalized");
    }
    const int d = a.d;
    // Psi[i1,i2,i3,i4] = (1/d) sum_a a_a U_a^dag(i1,i4) U_a(i2,i3)
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * d * d * d);
    const auto idx = group_elements(d);
    for (int t = 0; t < d * d; ++t) {
        const Cx c = a.a(t);
        if (c == Cx(0.0)) continue;
        const Matrix u = weyl_operator(d, idx[t]);
        const Matrix ud = u.adjoint();
        for (int i1 = 0; i1 < d; ++i1) {
            for (int i4 = 0; i4 < d; ++i4) {
                if (ud(i1, i4) == Cx(0.0)) continue;
                const Cx left = c * ud(i1, i4) / static_cast<double>(d);
                for (int i2 = 0; i2 < d; ++i2) {
                    for (int i3 = 0; i3 < d; ++i3) {
                        if (u(i2, i3) == Cx(0.0)) continue;
                        psi((((static_cast<Eigen::Index>(i1) * d + i2) * d + i3) * d) + i4) +=
                            left * u(i2, i3);
                    }
                }
            }
        }
    }
    return psi;
}

double clone_fidelity(const ChoiOperator& r, const Vector& psi, Clone which) {
    const int d = r.d;
    if (psi.size() != d) throw std::invalid_argument("clone_fidelity: state dimension mismatch");
    const Matrix out = apply_channel(r, psi * psi.adjoint());
    const Matrix rho_k =
        partial_trace(out, {d, d}, {which == Clone::one ? 0 : 1});
    return (psi.adjoint() * rho_k * psi).value().real();
}

double clone_fidelity(const CoefficientVector& a, const Vector& psi, Clone which) {
    return clone_fidelity(choi_from_coefficients(a), psi, which);
}

Matrix clone_fidelity_kernel(const ChoiOperator& r, Clone which) {
    const int d = r.d;
    const long long dd = static_cast<long long>(d) * d;
    Matrix k = Matrix::Zero(dd, dd);
    if (which == Clone::one) {
        // K[(i1,i3),(j1,j3)] = sum_{i2} R[(i1,i2,i3),(j1,i2,j3)]
        for (int i1 = 0; i1 < d; ++i1)
            for (int i3 = 0; i3 < d; ++i3)
                for (int j1 = 0; j1 < d; ++j1)
                    for (int j3 = 0; j3 < d; ++j3) {
                        Cx sum = 0.0;
                        for (int i2 = 0; i2 < d; ++i2)
                            sum += r.m((static_cast<long long>(i1) * d + i2) * d + i3,
                                       (static_cast<long long>(j1) * d + i2) * d + j3);
                        k(i1 * d + i3, j1 * d + j3) = sum;
                    }
    } else {
        // K[(i2,i3),(j2,j3)] = sum_{i1} R[(i1,i2,i3),(i1,j2,j3)]
        for (int i2 = 0; i2 < d; ++i2)
            for (int i3 = 0; i3 < d; ++i3)
                for (int j2 = 0; j2 < d; ++j2)
                    for (int j3 = 0; j3 < d; ++j3) {
                        Cx sum = 0.0;
                        for (int i1 = 0; i1 < d; ++i1)
                            sum += r.m((static_cast<long long>(i1) * d + i2) * d + i3,
                                       (static_cast<long long>(i1) * d + j2) * d + j3);
                        k(i2 * d + i3, j2 * d + j3) = sum;
                    }
    }
    return k;
}

double average_fidelity(const CoefficientVector& a, const Ensemble& e, Clone which) {
    if (e.d != a.d) throw std::invalid_argument("average_fidelity: ensemble dimension mismatch");
    const ChoiOperator r = choi_from_coefficients(a);
    if (e.kind == EnsembleKind::haar) {
        return average_quadratic(e, clone_fidelity_kernel(r, which));
    }
    double sum = 0.0;
    for (const auto& ws : e.states) sum += ws.weight * clone_fidelity(r, ws.psi, which);
    return sum;
}

FidelityReport fidelity_report(const CoefficientVector& a, const Ensemble& e) {
    if (e.d != a.d) throw std::invalid_argument("fidelity_report: ensemble dimension mismatch");
    const ChoiOperator r = choi_from_coefficients(a);
    FidelityReport rep;
    if (e.kind == EnsembleKind::haar) {
        rep.average1 = average_quadratic(e, clone_fidelity_kernel(r, Clone::one));
        rep.average2 = average_quadratic(e, clone_fidelity_kernel(r, Clone::two));
        return rep;
    }
    double sum1 = 0.0, sum2 = 0.0;
    for (const auto& ws : e.states) {
        const double f1 = clone_fidelity(r, ws.psi, Clone::one);
        const double f2 = clone_fidelity(r, ws.psi, Clone::two);
        sum1 += ws.weight * f1;
        sum2 += ws.weight * f2;
        if (e.kind == EnsembleKind::finite) rep.per_state.push_back({ws.label, f1, f2});
    }
    rep.average1 = sum1;
    rep.average2 = sum2;
    return rep;
}

}  // namespace cloneforge
