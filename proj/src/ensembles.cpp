#include "cloneforge/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cloneforge {

namespace {

Vector qubit(Cx a0, Cx a1) {
    Vector v(2);
    v << a0, a1;
    return v;
}

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

Ensemble bb84() {
    Ensemble e{2, EnsembleKind::finite, "bb84", {}, 0};
    e.states = {
        {qubit(kInvSqrt2, kInvSqrt2), 0.25, "+x"},
        {qubit(kInvSqrt2, -kInvSqrt2), 0.25, "-x"},
        {qubit(kInvSqrt2, Cx(0.0, kInvSqrt2)), 0.25, "+y"},
        {qubit(kInvSqrt2, Cx(0.0, -kInvSqrt2)), 0.25, "-y"},
    };
    return e;
}

Ensemble six_state() {
    Ensemble e{2, EnsembleKind::finite, "six-state", {}, 0};
    const double w = 1.0 / 6.0;
    e.states = {
        {qubit(1.0, 0.0), w, "+z"},
        {qubit(0.0, 1.0), w, "-z"},
        {qubit(kInvSqrt2, kInvSqrt2), w, "+x"},
        {qubit(kInvSqrt2, -kInvSqrt2), w, "-x"},
        {qubit(kInvSqrt2, Cx(0.0, kInvSqrt2)), w, "+y"},
        {qubit(kInvSqrt2, Cx(0.0, -kInvSqrt2)), w, "-y"},
    };
    return e;
}

Ensemble cube() {
    Ensemble e{2, EnsembleKind::finite, "cube", {}, 0};
    const double r = 1.0 / std::sqrt(3.0);
    for (int sx = -1; sx <= 1; sx += 2) {
        for (int sy = -1; sy <= 1; sy += 2) {
            for (int sz = -1; sz <= 1; sz += 2) {
                // Bloch vector n -> |psi> with cos(theta/2), e^{i phi} sin(theta/2).
                const double nx = sx * r, ny = sy * r, nz = sz * r;
                const double theta = std::acos(nz);
                const double phi = std::atan2(ny, nx);
                Vector v = qubit(std::cos(theta / 2),
                                 std::polar(std::sin(theta / 2), phi));
                std::string label = std::string(sx > 0 ? "+" : "-") + (sy > 0 ? "+" : "-") +
                                    (sz > 0 ? "+" : "-");
                e.states.push_back({std::move(v), 1.0 / 8.0, std::move(label)});
            }
        }
    }
    return e;
}

Ensemble equatorial(int n) {
    if (n < 5) throw std::invalid_argument("equatorial: grid order must be >= 5");
    Ensemble e{2, EnsembleKind::torus, "equatorial", {}, n};
    for (int j = 0; j < n; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / n;
        e.states.push_back({qubit(kInvSqrt2, std::polar(kInvSqrt2, phi)), 1.0 / n,
                            "phi=" + std::to_string(j) + "/" + std::to_string(n)});
    }
    return e;
}

Ensemble fourier_pair(int d) {
    check_dim(d);
    Ensemble e{d, EnsembleKind::finite, "fourier", {}, 0};
    const double w = 1.0 / (2.0 * d);
    for (int m = 0; m < d; ++m) {
        Vector v = Vector::Zero(d);
        v(m) = 1.0;
        e.states.push_back({std::move(v), w, "comp" + std::to_string(m)});
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int m = 0; m < d; ++m) {
        Vector v(d);
        for (int p = 0; p < d; ++p) v(p) = scale * root_of_unity(d, static_cast<long long>(m) * p);
        e.states.push_back({std::move(v), w, "dual" + std::to_string(m)});
    }
    return e;
}

Ensemble multi_phase(int d, int n) {
    check_dim(d);
    if (n < 5) throw std::invalid_argument("multi_phase: grid order must be >= 5");
    if (d > 5) throw std::invalid_argument("multi_phase: d > 5 makes the N^(d-1) grid intractable");
    Ensemble e{d, EnsembleKind::torus, "multi-phase", {}, n};
    long long total = 1;
    for (int i = 0; i < d - 1; ++i) total *= n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (long long idx = 0; idx < total; ++idx) {
        Vector v(d);
        v(0) = scale;
        long long rem = idx;
        for (int k = 1; k < d; ++k) {
            const int j = static_cast<int>(rem % n);
            rem /= n;
            v(k) = std::polar(scale, 2.0 * std::numbers::pi * j / n);
        }
        e.states.push_back({std::move(v), 1.0 / static_cast<double>(total), ""});
    }
    return e;
}

Ensemble universal(int d) {
    check_dim(d);
    return {d, EnsembleKind::haar, "universal", {}, 0};
}

double average(const Ensemble& e, const std::function<double(const Vector&)>& f,
               int haar_samples, std::uint64_t seed) {
    if (e.kind == EnsembleKind::haar) {
        if (haar_samples <= 0) {
            throw std::invalid_argument(
                "average: Haar ensemble needs a Monte Carlo sample budget for a generic "
                "integrand; use average_quadratic for exact fidelity-type averages");
        }
        return haar_average_mc(e.d, f, haar_samples, seed).mean;
    }
    double sum = 0.0;
    for (const auto& ws : e.states) sum += ws.weight * f(ws.psi);
    return sum;
}

Matrix input_output_moment(const Ensemble& e) {
    const int d = e.d;
    const long long dd = static_cast<long long>(d) * d;
    if (e.kind == EnsembleKind::haar) {
        Vector id_vec = vectorize(Matrix::Identity(d, d));
        Matrix m = Matrix::Identity(dd, dd) + id_vec * id_vec.adjoint();
        m /= static_cast<double>(d) * (d + 1);
        return m;
    }
    Matrix m = Matrix::Zero(dd, dd);
    for (const auto& ws : e.states) {
        const Matrix p = ws.psi * ws.psi.adjoint();
        // kron(P, P^T), accumulated blockwise
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                m.block(i * d, j * d, d, d) += (ws.weight * p(i, j)) * p.transpose();
    }
    return m;
}

double average_quadratic(const Ensemble& e, const Matrix& k) {
    const long long dd = static_cast<long long>(e.d) * e.d;
    if (k.rows() != dd || k.cols() != dd) {
        throw std::invalid_argument("average_quadratic: kernel is not d^2 x d^2");
    }
    return (k * input_output_moment(e)).trace().real();
}

Vector haar_state(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Cx(gauss(rng), gauss(rng));
    v.normalize();
    return v;
}

MonteCarloEstimate haar_average_mc(int d, const std::function<double(const Vector&)>& f,
                                   int samples, std::uint64_t seed) {
    check_dim(d);
    if (samples < 2) throw std::invalid_argument("haar_average_mc: need at least 2 samples");
    std::mt19937_64 rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double v = f(haar_state(d, rng));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, (sum_sq - samples * mean * mean) / (samples - 1));
    return {mean, std::sqrt(var / samples), samples};
}

}  // namespace cloneforge
