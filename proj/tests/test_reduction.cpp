#include "catch_amalgamated.hpp"

#include "rsdual/reduction.hpp"
#include "rsdual/sampling.hpp"

using namespace rsdual;
using Catch::Matchers::WithinAbs;

TEST_CASE("section lands on the constraint surface in every chart") {
    for (int n = 2; n <= 5; ++n) {
        const Coupling c = Coupling::standard(n);
        for (int s = 0; s < 10; ++s) {
            Rng rng = sample_rng(1, "sec", n, s);
            const ProjectivePoint u = random_point(c, rng);
            for (int j = 0; j < n; ++j) {
                const DoublePoint p = section_F(u, j, c);
                CHECK(constraint_residual(p, c) < 1e-12);
                CHECK(unitarity_defect(p.A) < 1e-12);
                CHECK(unitarity_defect(p.B) < 1e-12);
                CHECK(projective_distance(f_beta_inv(p, c), u) < 1e-10);
            }
        }
    }
}

TEST_CASE("f_beta_inv is blind to the choice of representative") {
    // the residual gauge group is the diagonal torus fixing mu0
    const Coupling c(4, 0.2);
    Rng rng(2);
    const ProjectivePoint u = random_point(c, rng);
    const DoublePoint p = section_F(u, c);
    for (int s = 0; s < 5; ++s) {
        const CMatrix g = random_torus(4, rng).rho().asDiagonal();
        CHECK(projective_distance(f_beta_inv(conjugate(p, g), c), u) < 1e-10);
    }
}

TEST_CASE("f_beta_inv rejects pairs off the constraint surface") {
    const Coupling c(3, 0.3);
    Rng rng(3);
    CHECK_THROWS_AS(f_beta_inv(random_double(3, rng), c), ConstraintViolation);
}

TEST_CASE("local section agrees with the global one on the polytope") {
    for (int n = 2; n <= 5; ++n) {
        const Coupling c = Coupling::standard(n);
        for (int s = 0; s < 10; ++s) {
            Rng rng = sample_rng(4, "local", n, s);
            const ProjectivePoint u = random_interior_point(c, rng);
            const auto [xi, tau] = e_param_inv(u, c);
            const DoublePoint p = local_section(xi, tau, c);
            CHECK(constraint_residual(p, c) < 1e-11);
            CHECK(projective_distance(f_beta_inv(p, c), u) < 1e-10);
        }
    }
}

TEST_CASE("f_alpha: local formula and inverse") {
    for (int n = 2; n <= 5; ++n) {
        const Coupling c = Coupling::standard(n);
        for (int s = 0; s < 10; ++s) {
            Rng rng = sample_rng(5, "alpha", n, s);
            const ProjectivePoint u = random_interior_point(c, rng);
            const ReducedPoint a = f_alpha(u, c);
            CHECK(constraint_residual(a.rep, c) < 1e-11);
            CHECK(projective_distance(f_alpha_inv(a.rep, c), u) < 1e-10);
            const auto [xi, tau] = e_param_inv(u, c);
            CHECK(projective_distance(f_beta_inv(alpha_local_section(xi, tau, c), c), a.label) < 1e-10);
        }
    }
}

TEST_CASE("dualities are mutually inverse") {
    for (int n = 2; n <= 4; ++n) {
        const Coupling c = Coupling::standard(n);
        for (int s = 0; s < 10; ++s) {
            Rng rng = sample_rng(6, "dual", n, s);
            const ProjectivePoint u = random_point(c, rng);
            CHECK(projective_distance(duality(Duality::S, duality(Duality::SInverse, u, c), c), u) < 1e-10);
            CHECK(projective_distance(duality(Duality::SInverse, duality(Duality::S, u, c), c), u) < 1e-10);
        }
    }
    CHECK(parse_duality("Sinv") == Duality::SInverse);
    CHECK_THROWS_AS(parse_duality("T"), DomainViolation);
}

TEST_CASE("duality: n=2 midpoint is fixed by R squared and exchanges J with the actions") {
    const Coupling c(2, kPi / 6);
    CVector v(2);
    v << std::sqrt(kPi / 3), std::sqrt(kPi / 3);
    const ProjectivePoint u = canonicalize(v, c);
    const ProjectivePoint s = duality(Duality::S, u, c);
    CHECK_THAT(moment_J(s, c)(0), WithinAbs(action_variables(u, c)(0), 1e-12));
    CHECK(projective_distance(duality(Duality::R, duality(Duality::R, u, c), c), u) < 1e-12);
}

TEST_CASE("reduced position flows are the rotations") {
    const Coupling c(3, 0.3);
    Rng rng(7);
    for (int s = 0; s < 5; ++s) {
        const ProjectivePoint u = random_point(c, rng);
        for (int k = 0; k < 2; ++k) {
            const auto h = InvariantHamiltonian::spectral(k, Side::Second);
            const double t = 0.83;
            RVector th = RVector::Zero(2);
            th(k) = t;
            CHECK(projective_distance(reduced_flow(u, h, t, c), rot_action(TorusElement(th), u, c)) < 1e-10);
            CHECK(projective_distance(reduced_flow(u, h, 2 * kPi, c), u) < 1e-10);
        }
    }
}

TEST_CASE("reduced action flows conserve the actions and are periodic") {
    const Coupling c(4, 0.2);
    Rng rng(8);
    for (int s = 0; s < 5; ++s) {
        const ProjectivePoint u = random_point(c, rng);
        const RVector act = action_variables(u, c);
        for (int k = 0; k < 3; ++k) {
            const auto h = InvariantHamiltonian::spectral(k, Side::First);
            const ProjectivePoint v = reduced_flow(u, h, 1.7, c);
            CHECK((action_variables(v, c) - act).norm() < 1e-10);
            CHECK(projective_distance(reduced_flow(u, h, 2 * kPi, c), u) < 1e-10);
            CHECK(projective_distance(reduced_flow(v, h, -1.7, c), u) < 1e-10);
        }
    }
}

TEST_CASE("reduced trace flows conserve all invariants of both sides") {
    const Coupling c(3, 0.3);
    Rng rng(9);
    const ProjectivePoint u = random_interior_point(c, rng);
    for (auto h : {InvariantHamiltonian::re_trace(1, Side::First), InvariantHamiltonian::im_trace(2, Side::Second)}) {
        const ProjectivePoint v = reduced_flow(u, h, 3.1, c);
        const double h0 = hamiltonian_value(h, section_F(u, c), c);
        CHECK_THAT(hamiltonian_value(h, section_F(v, c), c), WithinAbs(h0, 1e-10));
        if (h.side == Side::First) CHECK((action_variables(v, c) - action_variables(u, c)).norm() < 1e-10);
        else CHECK((moment_J(v, c) - moment_J(u, c)).norm() < 1e-10);
    }
}

TEST_CASE("mapping class words act on the reduced space") {
    const Coupling c(3, 0.3);
    Rng rng(10);
    const ProjectivePoint u = random_point(c, rng);
    using A = Automorphism;
    CHECK(projective_distance(mapclass_on_P({A::S, A::S, A::S, A::S}, u, c), u) < 1e-10);
    CHECK(projective_distance(mapclass_on_P({A::T, A::S, A::T, A::Ttilde}, u, c), u) < 1e-10);
    CHECK(projective_distance(mapclass_on_P({A::T}, mapclass_on_P({A::S}, u, c), c),
                              mapclass_on_P({A::S, A::T}, u, c)) < 1e-10);
}
