#include "cloneforge/choi_channel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cloneforge {

namespace {

long long pow_ll(int base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

// U_pq x U_pq x U_pq^* as a monomial action on C^{d^3}.
WeylAction rep3(int d, WeylIndex g) {
    const WeylAction u = weyl_action(d, g, false);
    const WeylAction uc = weyl_action(d, g, true);
    return tensor(tensor(u, u), uc);
}

// U_pq x U_pq x U_pq^* x U_pq^* on C^{d^4}.
WeylAction rep4(int d, WeylIndex g) {
    const WeylAction u = weyl_action(d, g, false);
    const WeylAction uc = weyl_action(d, g, true);
    return tensor(tensor(tensor(u, u), uc), uc);
}

void check_choi_dims(const ChoiOperator& r) {
    check_dim(r.d);
    const long long n = pow_ll(r.d, 3);
    if (r.m.rows() != n || r.m.cols() != n) {
        throw std::invalid_argument("ChoiOperator: matrix is not d^3 x d^3");
    }
}

}  // namespace

ChoiOperator make_choi(int d, Matrix m, double tol) {
    check_dim(d);
    const long long n = pow_ll(d, 3);
    if (m.rows() != n || m.cols() != n) {
        throw std::invalid_argument("make_choi: matrix is not d^3 x d^3");
    }
    if ((m - m.adjoint()).norm() > tol) {
        throw std::invalid_argument("make_choi: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -100 * tol) {
        throw std::invalid_argument("make_choi: matrix is not positive semidefinite");
    }
    if (std::abs(m.trace().real() - d) > tol * d) {
        throw std::invalid_argument("make_choi: trace is not d");
    }
    return {d, std::move(m)};
}

Matrix partial_trace(const Matrix& op, const std::vector<int>& dims, const std::vector<int>& keep) {
    long long total = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("partial_trace: nonpositive factor dimension");
        total *= d;
    }
    if (op.rows() != total || op.cols() != total) {
        throw std::invalid_argument("partial_trace: factor dimensions do not multiply to matrix size");
    }
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= static_cast<int>(dims.size()) ||
            (i > 0 && keep[i] <= keep[i - 1])) {
            throw std::invalid_argument("partial_trace: keep set must be ascending and in range");
        }
    }

    // Strides of each factor in the composite row-major index.
    const int n = static_cast<int>(dims.size());
    std::vector<long long> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

    std::vector<int> traced;
    for (int i = 0; i < n; ++i) {
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);
    }

    long long keep_size = 1;
    for (int i : keep) keep_size *= dims[i];
    long long traced_size = 1;
    for (int i : traced) traced_size *= dims[i];

    Matrix out = Matrix::Zero(keep_size, keep_size);
    // Enumerate kept (row, col) multi-indices and sum the traced diagonal.
    for (long long kr = 0; kr < keep_size; ++kr) {
        for (long long kc = 0; kc < keep_size; ++kc) {
            long long row_base = 0, col_base = 0;
            long long tmp_r = kr, tmp_c = kc;
            for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
                const int f = keep[i];
                row_base += (tmp_r % dims[f]) * stride[f];
                col_base += (tmp_c % dims[f]) * stride[f];
                tmp_r /= dims[f];
                tmp_c /= dims[f];
            }
            Cx sum = 0.0;
            for (long long t = 0; t < traced_size; ++t) {
                long long off = 0;
                long long tmp = t;
                for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
                    const int f = traced[i];
                    off += (tmp % dims[f]) * stride[f];
                    tmp /= dims[f];
                }
                sum += op(row_base + off, col_base + off);
            }
            out(kr, kc) = sum;
        }
    }
    return out;
}

Matrix apply_channel(const ChoiOperator& r, const Matrix& rho, bool* tp_warning) {
    check_choi_dims(r);
    const int d = r.d;
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument("apply_channel: input state has wrong dimension");
    }
    if (tp_warning) *tp_warning = !is_trace_preserving(r).ok;

    // out[(i1,i2),(j1,j2)] = sum_{k,i3} rho(k, i3) R[(i1,i2,k),(j1,j2,i3)]
    const int dd = d * d;
    Matrix out = Matrix::Zero(dd, dd);
    for (int a = 0; a < dd; ++a) {
        for (int b = 0; b < dd; ++b) {
            Cx sum = 0.0;
            for (int k = 0; k < d; ++k) {
                for (int i3 = 0; i3 < d; ++i3) {
                    sum += rho(k, i3) * r.m(static_cast<long long>(a) * d + k,
                                           static_cast<long long>(b) * d + i3);
                }
            }
            out(a, b) = sum;
        }
    }
    return out;
}

CheckResult is_trace_preserving(const ChoiOperator& r, double tol) {
    check_choi_dims(r);
    const int d = r.d;
    const Matrix tr12 = partial_trace(r.m, {d, d, d}, {2});
    const double residual = (tr12 - Matrix::Identity(d, d)).norm();
    return {residual <= tol, residual};
}

CheckResult is_covariant(const ChoiOperator& r, double tol) {
    check_choi_dims(r);
    double worst = 0.0;
    for (const WeylIndex g : group_elements(r.d)) {
        worst = std::max(worst, commutator_norm(rep3(r.d, g), r.m));
    }
    return {worst <= tol, worst};
}

ChoiOperator twirl(const ChoiOperator& r) {
    check_choi_dims(r);
    const int d = r.d;
    Matrix avg = Matrix::Zero(r.m.rows(), r.m.cols());
    for (const WeylIndex g : group_elements(d)) {
        avg += conjugate_by_action(rep3(d, g), r.m);
    }
    avg /= static_cast<double>(d) * d;
    return {d, std::move(avg)};
}

Matrix isomorphism_T(int d, WeylIndex a, WeylIndex b) {
    check_index(d, a);
    check_index(d, b);
    const Matrix x = weyl_operator(d, a).adjoint() * weyl_operator(d, b);
    const Vector ua = bell_vector(d, a);
    const Vector ub = bell_vector(d, b);
    const long long dd = static_cast<long long>(d) * d;
    Matrix t(dd * d, dd * d);
    for (int i1 = 0; i1 < d; ++i1) {
        for (int j1 = 0; j1 < d; ++j1) {
            t.block(i1 * dd, j1 * dd, dd, dd) =
                (x(i1, j1) / static_cast<double>(d)) * (ua * ub.adjoint());
        }
    }
    return t;
}

Matrix subspace_projector(int d, WeylIndex idx) { return isomorphism_T(d, idx, idx); }

Cx hs_inner_T(int d, WeylIndex a, WeylIndex b, const Matrix& m) {
    check_index(d, a);
    check_index(d, b);
    const long long n = pow_ll(d, 3);
    if (m.rows() != n || m.cols() != n) {
        throw std::invalid_argument("hs_inner_T: matrix is not d^3 x d^3");
    }
    // T_ab^dag = T_ba = (1/d) (U_b^dag U_a) x |U_b>><<U_a|, so
    // Tr[T_ba M] = (1/d) sum X(i1,j1) u_b[I] conj(u_a[J]) M[(j1,J),(i1,I)]
    // where the Bell vectors have d nonzeros each.
    const Matrix x = weyl_operator(d, b).adjoint() * weyl_operator(d, a);
    const long long dd = static_cast<long long>(d) * d;
    Cx sum = 0.0;
    for (int k = 0; k < d; ++k) {            // nonzero of u_b at I = (k+b.p)*d + k
        const long long bi = static_cast<long long>((k + b.p) % d) * d + k;
        const Cx ub = root_of_unity(d, static_cast<long long>(k) * b.q);
        for (int l = 0; l < d; ++l) {        // nonzero of u_a at J = (l+a.p)*d + l
            const long long aj = static_cast<long long>((l + a.p) % d) * d + l;
            const Cx ua_conj = root_of_unity(d, -static_cast<long long>(l) * a.q);
            for (int i1 = 0; i1 < d; ++i1) {
                for (int j1 = 0; j1 < d; ++j1) {
                    if (x(i1, j1) == Cx(0.0)) continue;
                    sum += x(i1, j1) * ub * ua_conj * m(j1 * dd + aj, i1 * dd + bi);
                }
            }
        }
    }
    return sum / static_cast<double>(d);
}

RMatrix r_matrix_from_choi(const ChoiOperator& r, double cov_tol) {
    const CheckResult cov = is_covariant(r, cov_tol);
    if (!cov.ok) {
        throw std::invalid_argument("r_matrix_from_choi: operator is not covariant (residual " +
                                    std::to_string(cov.residual) + ")");
    }
    const int d = r.d;
    const auto idx = group_elements(d);
    const int n = d * d;
    Matrix rm(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            rm(i, j) = hs_inner_T(d, idx[i], idx[j], r.m) / static_cast<double>(d);
        }
    }
    return {d, std::move(rm)};
}

ChoiOperator choi_from_r(const RMatrix& r, double tol) {
    check_dim(r.d);
    const int d = r.d;
    const int n = d * d;
    if (r.m.rows() != n || r.m.cols() != n) {
        throw std::invalid_argument("choi_from_r: matrix is not d^2 x d^2");
    }
    if ((r.m - r.m.adjoint()).norm() > tol) {
        throw std::invalid_argument("choi_from_r: r is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument("choi_from_r: r is not positive semidefinite");
    }
    if (std::abs(r.m.trace().real() - 1.0) > tol) {
        throw std::invalid_argument("choi_from_r: Tr r != 1");
    }

    // R = sum_{ab} r_ab T_ab accumulated over the d^3 nonzeros of each T_ab:
    // T_ab[(i1, (k+a.p)d+k), (j1, (l+b.p)d+l)] = X(i1,j1) w^{ks} conj(w^{ls'}) / d
    // with X = U_a^dag U_b.
    const long long dd = static_cast<long long>(d) * d;
    Matrix out = Matrix::Zero(dd * d, dd * d);
    const auto idx = group_elements(d);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Cx w = r.m(i, j);
            if (w == Cx(0.0)) continue;
            const WeylIndex a = idx[i], b = idx[j];
            const Matrix x = weyl_operator(d, a).adjoint() * weyl_operator(d, b);
            for (int k = 0; k < d; ++k) {
                const long long ai = static_cast<long long>((k + a.p) % d) * d + k;
                const Cx ua = root_of_unity(d, static_cast<long long>(k) * a.q);
                for (int l = 0; l < d; ++l) {
                    const long long bj = static_cast<long long>((l + b.p) % d) * d + l;
                    const Cx ub_conj = root_of_unity(d, -static_cast<long long>(l) * b.q);
                    const Cx coeff = w * ua * ub_conj / static_cast<double>(d);
                    for (int i1 = 0; i1 < d; ++i1) {
                        for (int j1 = 0; j1 < d; ++j1) {
                            out(i1 * dd + ai, j1 * dd + bj) += coeff * x(i1, j1);
                        }
                    }
                }
            }
        }
    }
    return {d, std::move(out)};
}

ExtremalityReport is_extremal(const ChoiOperator& r, double tol) {
    const CheckResult cov = is_covariant(r, std::max(tol, 1e-8));
    if (!cov.ok) {
        throw std::invalid_argument("is_extremal: operator is not covariant (residual " +
                                    std::to_string(cov.residual) + ")");
    }
    ExtremalityReport rep;
    rep.projector_residual = (r.m * r.m - r.m).norm();
    // R is Hermitian, so singular values are |eigenvalues|.
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.m, Eigen::EigenvaluesOnly);
    const double thresh = std::sqrt(tol);
    rep.rank = static_cast<int>((es.eigenvalues().array().abs() > thresh).count());
    rep.extremal = rep.projector_residual <= tol && rep.rank == r.d;
    return rep;
}

double strong_covariance_residual(const Vector& psi, int d) {
    check_dim(d);
    if (psi.size() != pow_ll(d, 4)) {
        throw std::invalid_argument("strong_covariance_residual: vector is not length d^4");
    }
    double worst = 0.0;
    for (const WeylIndex g : group_elements(d)) {
        worst = std::max(worst, (apply_action(rep4(d, g), psi) - psi).norm());
    }
    return worst;
}

}  // namespace cloneforge
