#include <doctest.h>

#include "cloneforge/optimizer.hpp"
#include "test_util.hpp"

using namespace cloneforge;

TEST_CASE("fidelity_matrix: clone-2 forms of the qubit ensembles") {
    // cube: Phi_B = diag(1, 1/3, 1/3, 1/3) on the (I, sz, sx, -isy) branches
    const FidelityForm cube_b = fidelity_matrix(cube(), Clone::two);
    Matrix expect = Matrix::Zero(4, 4);
    expect.diagonal() << 1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
    CHECK((cube_b.phi - expect).norm() <= 1e-12);

    // six-state and universal d=2 share the same forms (paper equivalences)
    const FidelityForm six_b = fidelity_matrix(six_state(), Clone::two);
    const FidelityForm uni_b = fidelity_matrix(universal(2), Clone::two);
    CHECK((six_b.phi - cube_b.phi).norm() <= 1e-12);
    CHECK((uni_b.phi - cube_b.phi).norm() <= 1e-12);
    const FidelityForm cube_e = fidelity_matrix(cube(), Clone::one);
    const FidelityForm six_e = fidelity_matrix(six_state(), Clone::one);
    const FidelityForm uni_e = fidelity_matrix(universal(2), Clone::one);
    CHECK((six_e.phi - cube_e.phi).norm() <= 1e-12);
    CHECK((uni_e.phi - cube_e.phi).norm() <= 1e-12);

    // e0 is a perfect clone 2 for every preset ensemble
    for (const Ensemble& e : {bb84(), six_state(), cube(), equatorial(8), fourier_pair(3),
                              universal(3), multi_phase(3, 8)}) {
        const FidelityForm phi = fidelity_matrix(e, Clone::two);
        CHECK(phi.phi(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("fidelity_matrix: equatorial grid equals bb84 exactly") {
    CHECK((fidelity_matrix(equatorial(8), Clone::one).phi -
           fidelity_matrix(bb84(), Clone::one).phi)
              .norm() <= 1e-14);
    CHECK((fidelity_matrix(equatorial(8), Clone::two).phi -
           fidelity_matrix(bb84(), Clone::two).phi)
              .norm() <= 1e-14);
}

TEST_CASE("scalarized_optimum: endpoints and symmetric points") {
    for (const Ensemble& e : {bb84(), six_state(), cube(), fourier_pair(3), universal(3)}) {
        const FidelityForm phi_e = fidelity_matrix(e, Clone::one);
        const FidelityForm phi_b = fidelity_matrix(e, Clone::two);

        // lambda = 0 maximizes F_B alone: the trivial cloner wins
        const TradeoffPoint p0 = scalarized_optimum(phi_e, phi_b, 0.0);
        CHECK(p0.f_b == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(p0.f_e == doctest::Approx(1.0 / e.d).epsilon(1e-9));
        CHECK(std::abs(p0.a_opt.a(0)) == doctest::Approx(1.0).epsilon(1e-9));
    }

    // lambda = 1/2: six-state and bb84 symmetric optima
    {
        const Ensemble e = six_state();
        const TradeoffPoint p = scalarized_optimum(fidelity_matrix(e, Clone::one),
                                                   fidelity_matrix(e, Clone::two), 0.5);
        CHECK(p.f_b == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
        CHECK(p.f_e == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
        CHECK_FALSE(p.degenerate);
        CHECK(p.real_nonnegative);
    }
    {
        const Ensemble e = bb84();
        const TradeoffPoint p = scalarized_optimum(fidelity_matrix(e, Clone::one),
                                                   fidelity_matrix(e, Clone::two), 0.5);
        const double expect = 0.5 + 1.0 / std::sqrt(8.0);
        CHECK(p.f_b == doctest::Approx(expect).epsilon(1e-10));
        CHECK(p.f_e == doctest::Approx(expect).epsilon(1e-10));
    }

    CHECK_THROWS_AS(scalarized_optimum(fidelity_matrix(bb84(), Clone::one),
                                       fidelity_matrix(bb84(), Clone::two), 1.5),
                    std::invalid_argument);
}

TEST_CASE("pareto_sweep: golden frontiers at 1e-6") {
    struct Case {
        Preset preset;
        int d;
    };
    const std::vector<Case> cases = {{Preset::bb84, 2},    {Preset::six_state, 2},
                                     {Preset::fourier, 2}, {Preset::fourier, 3},
                                     {Preset::universal, 2}, {Preset::universal, 4}};
    for (const Case c : cases) {
        const Ensemble e = preset_ensemble(c.preset, c.d);
        const TradeoffCurve curve = pareto_sweep(e, 101);
        REQUIRE(curve.points.size() == 101);

        int compared = 0;
        for (const auto& pt : curve.points) {
            if (pt.degenerate) continue;
            CHECK(std::abs(golden_tradeoff(c.preset, pt.f_b, c.d) - pt.f_e) <= 1e-6);
            ++compared;
        }
        CHECK(compared >= 95);

        // Pareto shape: F_E non-increasing as F_B grows along the sorted curve
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            CHECK(curve.points[i].f_e <= curve.points[i - 1].f_e + 1e-9);
        }

        // endpoint: perfect clone 2 with F_E = 1/d
        const auto& last = curve.points.back();
        CHECK(last.f_b == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(last.f_e == doctest::Approx(1.0 / c.d).epsilon(1e-8));
    }
}

TEST_CASE("constrained_optimum: targeted frontier points") {
    // six-state symmetric point by F_B target
    {
        const TradeoffPoint p = constrained_optimum(six_state(), 5.0 / 6.0, 1e-8);
        CHECK(p.f_b == doctest::Approx(5.0 / 6.0).epsilon(1e-7));
        CHECK(p.f_e == doctest::Approx(5.0 / 6.0).epsilon(1e-6));
    }
    // bb84 at F_B = 0.9: F_E = 1/2 + sqrt(0.09) = 0.8
    {
        const TradeoffPoint p = constrained_optimum(bb84(), 0.9, 1e-8);
        CHECK(p.f_b == doctest::Approx(0.9).epsilon(1e-7));
        CHECK(p.f_e == doctest::Approx(0.8).epsilon(1e-6));
    }
    // F_B = 1 is the trivial cloner
    {
        const TradeoffPoint p = constrained_optimum(universal(2), 1.0, 1e-8);
        CHECK(std::abs(p.a_opt.a(0)) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(p.f_e == doctest::Approx(0.5).epsilon(1e-6));
    }
    // unreachable targets are refused
    CHECK_THROWS_AS(constrained_optimum(bb84(), 0.2, 1e-8), std::domain_error);
    CHECK_THROWS_AS(constrained_optimum(bb84(), 1.1, 1e-8), std::domain_error);
}

TEST_CASE("golden_tradeoff: fixed points and cross-checks") {
    const double bb = 0.5 + 1.0 / std::sqrt(8.0);
    CHECK(golden_tradeoff(Preset::bb84, bb, 2) == doctest::Approx(bb).epsilon(1e-12));
    CHECK(golden_tradeoff(Preset::six_state, 5.0 / 6.0, 2) ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(golden_tradeoff(Preset::universal, 0.75, 3) == doctest::Approx(0.75).epsilon(1e-12));

    // fourier at d=2 coincides with bb84
    CHECK(golden_tradeoff(Preset::fourier, bb, 2) == doctest::Approx(bb).epsilon(1e-12));
    for (double fb : {0.55, 0.7, 0.85, 0.97}) {
        CHECK(golden_tradeoff(Preset::fourier, fb, 2) ==
              doctest::Approx(golden_tradeoff(Preset::bb84, fb, 2)).epsilon(1e-12));
    }

    // universal at d=2 coincides with six-state
    for (double fb : {0.4, 0.6, 5.0 / 6.0, 0.95}) {
        CHECK(golden_tradeoff(Preset::universal, fb, 2) ==
              doctest::Approx(golden_tradeoff(Preset::six_state, fb, 2)).epsilon(1e-12));
    }

    CHECK_THROWS_AS(golden_tradeoff(Preset::bb84, 1.2, 2), std::domain_error);
    CHECK_THROWS_AS(golden_tradeoff(Preset::six_state, 0.2, 2), std::domain_error);
    CHECK_THROWS_AS(golden_tradeoff(Preset::universal, 0.1, 3), std::domain_error);
    CHECK_THROWS_AS(golden_tradeoff(Preset::multi_phase, 0.8, 3), std::invalid_argument);
}

TEST_CASE("golden_coefficients: published vectors") {
    // six-state at F_B = 5/6: (sqrt(3)/2, 1/(2 sqrt(3)) x3)
    {
        const CoefficientVector a = golden_coefficients(Preset::six_state, 5.0 / 6.0, 2);
        Vector expect(4);
        expect << std::sqrt(3.0) / 2.0, 0.5 / std::sqrt(3.0), 0.5 / std::sqrt(3.0),
            0.5 / std::sqrt(3.0);
        CHECK((a.a - expect).norm() <= 1e-12);
    }
    // bb84 structure at generic F_B
    {
        const double fb = 0.77;
        const CoefficientVector a = golden_coefficients(Preset::bb84, fb, 2);
        CHECK(a.a(0).real() == doctest::Approx(fb));
        CHECK(a.a(1).real() == doctest::Approx(1 - fb));
        CHECK(a.a(2).real() == doctest::Approx(std::sqrt(fb * (1 - fb))));
        CHECK(a.a(3).real() == doctest::Approx(std::sqrt(fb * (1 - fb))));
        CHECK(std::abs(a.a.norm() - 1.0) <= 1e-12);
    }
    // universal d=2 equals six-state at every admissible F_B
    for (double fb : {0.5, 2.0 / 3.0, 5.0 / 6.0, 0.9}) {
        const CoefficientVector u = golden_coefficients(Preset::universal, fb, 2);
        const CoefficientVector s = golden_coefficients(Preset::six_state, fb, 2);
        CHECK((u.a - s.a).norm() <= 1e-12);
    }
    CHECK_THROWS_AS(golden_coefficients(Preset::universal, 0.2, 3), std::domain_error);
}

TEST_CASE("extremality suffices: Tr[Phi r] <= lambda_max over the full convex set") {
    std::mt19937_64 rng(51);
    for (int d : {2, 3}) {
        std::vector<Ensemble> ensembles = {fourier_pair(d), universal(d)};
        if (d == 2) ensembles.push_back(six_state());
        for (const Ensemble& e : ensembles) {
            const FidelityForm phi = fidelity_matrix(e, Clone::two);
            Eigen::SelfAdjointEigenSolver<Matrix> es(phi.phi);
            const double lam_max = es.eigenvalues().maxCoeff();
            for (int trial = 0; trial < 50; ++trial) {
                const Matrix r = cftest::random_psd_unit_trace(d * d, rng);
                CHECK((phi.phi * r).trace().real() <= lam_max + 1e-10);
            }
            // equality at the rank-one top-eigenvector r
            const Vector top = es.eigenvectors().col(d * d - 1);
            const Matrix r_top = top * top.adjoint();
            CHECK((phi.phi * r_top).trace().real() == doctest::Approx(lam_max).epsilon(1e-12));
        }
    }
}

TEST_CASE("frontier optimality: random cloners never beat a sweep point") {
    std::mt19937_64 rng(52);
    for (const Ensemble& e : {bb84(), universal(3)}) {
        const FidelityForm phi_e = fidelity_matrix(e, Clone::one);
        const FidelityForm phi_b = fidelity_matrix(e, Clone::two);
        const TradeoffCurve curve = pareto_sweep(e, 21);
        for (const auto& pt : curve.points) {
            for (int trial = 0; trial < 100; ++trial) {
                const Vector a = cftest::random_unit_vector(e.d * e.d, rng);
                const double fb = (a.adjoint() * phi_b.phi * a).value().real();
                const double fe = (a.adjoint() * phi_e.phi * a).value().real();
                if (fb >= pt.f_b - 1e-9) CHECK(fe <= pt.f_e + 1e-9);
            }
        }
    }
}

TEST_CASE("symmetric_fidelity closed forms") {
    CHECK(symmetric_fidelity(Preset::bb84, 2) == doctest::Approx(0.5 + 1.0 / std::sqrt(8.0)));
    CHECK(symmetric_fidelity(Preset::phase, 2) == doctest::Approx(0.5 + 1.0 / std::sqrt(8.0)));
    CHECK(symmetric_fidelity(Preset::six_state, 2) == doctest::Approx(5.0 / 6.0));
    CHECK(symmetric_fidelity(Preset::cube, 2) == doctest::Approx(5.0 / 6.0));
    CHECK(symmetric_fidelity(Preset::universal, 5) == doctest::Approx(0.5 + 1.0 / 6.0));
    CHECK(symmetric_fidelity(Preset::fourier, 9) == doctest::Approx((1.0 + 1.0 / 3.0) / 2.0));
    CHECK_THROWS_AS(symmetric_fidelity(Preset::multi_phase, 3), std::invalid_argument);
}

TEST_CASE("preset parsing round-trips") {
    for (Preset p : {Preset::bb84, Preset::phase, Preset::six_state, Preset::cube, Preset::fourier,
                     Preset::universal, Preset::multi_phase}) {
        CHECK(preset_from_name(preset_name(p)) == p);
    }
    CHECK_THROWS_AS(preset_from_name("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(preset_ensemble(Preset::bb84, 3), std::invalid_argument);
}
