#include "cloneforge/wh_group.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cloneforge {

void check_dim(int d) {
    if (d < 2 || d > kMaxDim) {
        throw std::invalid_argument("dimension d = " + std::to_string(d) +
                                    " out of range [2, " + std::to_string(kMaxDim) + "]");
    }
}

void check_index(int d, WeylIndex idx) {
    check_dim(d);
    if (idx.p < 0 || idx.p >= d || idx.q < 0 || idx.q >= d) {
        throw std::invalid_argument("Weyl index (" + std::to_string(idx.p) + "," +
                                    std::to_string(idx.q) + ") out of range for d = " +
                                    std::to_string(d));
    }
}

std::vector<WeylIndex> group_elements(int d) {
    check_dim(d);
    std::vector<WeylIndex> out;
    out.reserve(static_cast<std::size_t>(d) * d);
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) out.push_back({r, s});
    return out;
}

Cx root_of_unity(int d, long long power) {
    const long long m = ((power % d) + d) % d;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / d;
    return {std::cos(angle), std::sin(angle)};
}

Matrix weyl_operator(int d, WeylIndex idx) {
    check_index(d, idx);
    Matrix u = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        u((k + idx.p) % d, k) = root_of_unity(d, static_cast<long long>(k) * idx.q);
    }
    return u;
}

Cx conjugation_phase(int d, WeylIndex g, WeylIndex a) {
    check_index(d, g);
    check_index(d, a);
    return root_of_unity(d, static_cast<long long>(a.p) * g.q - static_cast<long long>(g.p) * a.q);
}

Vector bell_vector(int d, WeylIndex idx) {
    check_index(d, idx);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int k = 0; k < d; ++k) {
        v(((k + idx.p) % d) * d + k) = root_of_unity(d, static_cast<long long>(k) * idx.q);
    }
    return v;
}

Vector vectorize(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("vectorize: matrix must be square");
    const Eigen::Index d = a.rows();
    Vector v(d * d);
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index n = 0; n < d; ++n) v(m * d + n) = a(m, n);
    return v;
}

Matrix devectorize(const Vector& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) throw std::invalid_argument("devectorize: length is not a perfect square");
    Matrix a(d, d);
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index n = 0; n < d; ++n) a(m, n) = v(m * d + n);
    return a;
}

WeylAction weyl_action(int d, WeylIndex idx, bool conjugated) {
    check_index(d, idx);
    WeylAction act;
    act.shift.resize(d);
    act.phase.resize(d);
    for (int k = 0; k < d; ++k) {
        act.shift[k] = (k + idx.p) % d;
        const long long pw = static_cast<long long>(k) * idx.q;
        act.phase[k] = root_of_unity(d, conjugated ? -pw : pw);
    }
    return act;
}

WeylAction tensor(const WeylAction& a, const WeylAction& b) {
    WeylAction out;
    const int na = a.dim(), nb = b.dim();
    out.shift.resize(static_cast<std::size_t>(na) * nb);
    out.phase.resize(static_cast<std::size_t>(na) * nb);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            out.shift[static_cast<std::size_t>(i) * nb + j] = a.shift[i] * nb + b.shift[j];
            out.phase[static_cast<std::size_t>(i) * nb + j] = a.phase[i] * b.phase[j];
        }
    }
    return out;
}

Vector apply_action(const WeylAction& act, const Vector& x) {
    if (x.size() != act.dim()) throw std::invalid_argument("apply_action: size mismatch");
    Vector y(x.size());
    for (int k = 0; k < act.dim(); ++k) y(act.shift[k]) = act.phase[k] * x(k);
    return y;
}

Matrix conjugate_by_action(const WeylAction& act, const Matrix& m) {
    const int n = act.dim();
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("conjugate_by_action: size mismatch");
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out(act.shift[i], act.shift[j]) = act.phase[i] * std::conj(act.phase[j]) * m(i, j);
        }
    }
    return out;
}

double commutator_norm(const WeylAction& act, const Matrix& m) {
    const int n = act.dim();
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("commutator_norm: size mismatch");
    // (WM)(s[i], j) = phase[i] M(i, j); (MW)(i, s[j]) = phase[j] M(i, j).
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Cx wm = act.phase[i] * m(i, j);          // lands at (shift[i], j)
            const Cx mw = m(act.shift[i], act.shift[j]) * act.phase[j];  // value of MW at (shift[i], j)
            sum += std::norm(wm - mw);
        }
    }
    return std::sqrt(sum);
}

}  // namespace cloneforge
