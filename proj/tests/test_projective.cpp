#include "catch_amalgamated.hpp"

#include "rsdual/numdiff.hpp"
#include "rsdual/projective.hpp"
#include "rsdual/sampling.hpp"

using namespace rsdual;
using Catch::Matchers::WithinAbs;

TEST_CASE("canonicalize: norm and pivot") {
    for (int n = 2; n <= 5; ++n) {
        const Coupling c = Coupling::standard(n);
        for (int s = 0; s < 20; ++s) {
            Rng rng = sample_rng(1, "canon", n, s);
            const CVector raw = random_complex_vector(n, rng);
            const ProjectivePoint u = canonicalize(raw, c);
            CHECK_THAT(u.u().squaredNorm(), WithinAbs(c.chi0(), 1e-13));
            const int j = u.best_chart();
            CHECK(u(j).imag() == 0.0);
            CHECK(u(j).real() >= 0.0);
            // idempotent and phase/scale blind
            CHECK((canonicalize(u.u(), c).u() - u.u()).norm() < 1e-14);
            CHECK((canonicalize(std::polar(2.5, 0.7) * raw, c).u() - u.u()).norm() < 1e-13);
        }
    }
}

TEST_CASE("canonicalize: ties go to the smallest index") {
    const Coupling c(3, 0.3);
    CVector v(3);
    v << cplx(0, 1), cplx(0, -1), 0.5;
    const ProjectivePoint u = canonicalize(v, c);
    CHECK(u(0).imag() == 0.0);
    CHECK(u(0).real() > 0.0);
    CHECK_THROWS_AS(canonicalize(CVector::Zero(3), c), ZeroVector);
}

TEST_CASE("e_param: n=2 midpoint") {
    const Coupling c(2, kPi / 6);
    RVector xi(2);
    xi << kPi / 2, kPi / 2;
    const ProjectivePoint u = e_param(AlcovePoint::full(xi, c), TorusElement::identity(2), c);
    CHECK(std::abs(u(0) - std::sqrt(kPi / 3)) < 1e-15);
    CHECK(std::abs(u(1) - std::sqrt(kPi / 3)) < 1e-15);
}

TEST_CASE("e_param round trip and chart violation") {
    const Coupling c(4, 0.25);
    for (int s = 0; s < 20; ++s) {
        Rng rng = sample_rng(4, "eparam", 4, s);
        const ProjectivePoint u = random_interior_point(c, rng);
        const auto [xi, tau] = e_param_inv(u, c);
        CHECK(xi.region() == Region::PolytopeInterior);
        CHECK(projective_distance(e_param(xi, tau, c), u) < 1e-13);
        CHECK((moment_J_full(u, c) - xi.xi()).norm() < 1e-13);
    }
    CVector v(4);
    v << 1.0, 0.0, 1.0, 1.0;
    CHECK_THROWS_AS(e_param_inv(canonicalize(v, c), c), ChartViolation);
}

TEST_CASE("moment_J image lies in the polytope") {
    const Coupling c(3, 0.3);
    for (int s = 0; s < 50; ++s) {
        Rng rng = sample_rng(2, "J", 3, s);
        const RVector J = moment_J(random_point(c, rng), c);
        CHECK(J.minCoeff() >= c.y() - 1e-15);
        CHECK(J.sum() <= kPi - c.y() + 1e-13);
    }
}

TEST_CASE("Fubini-Study form pulls back to the Darboux form under E") {
    const Coupling c(3, 0.3);
    Rng rng(8);
    const ProjectivePoint u = random_interior_point(c, rng);
    const auto [xi, tau] = e_param_inv(u, c);
    const int j = c.n() - 1;
    const double h = 1e-6;
    // coordinates (xi_1, xi_2, theta_1, theta_2)
    auto chart_of = [&](const RVector& q) {
        return to_chart(e_param(AlcovePoint::polytope(q.head(2), c), TorusElement(q.tail(2)), c), j, c).w;
    };
    RVector q0(4);
    q0 << xi(0), xi(1), tau.theta()(0), tau.theta()(1);
    std::vector<CVector> d(4);
    for (int a = 0; a < 4; ++a) {
        RVector e = RVector::Zero(4);
        e(a) = h;
        d[a] = (chart_of(q0 + e) - chart_of(q0 - e)) / (2 * h);
    }
    // sum d theta_k ^ d xi_k
    CHECK_THAT(fs_omega_eval(u, j, d[2], d[0], c), WithinAbs(1.0, 1e-8));
    CHECK_THAT(fs_omega_eval(u, j, d[3], d[1], c), WithinAbs(1.0, 1e-8));
    CHECK_THAT(fs_omega_eval(u, j, d[0], d[1], c), WithinAbs(0.0, 1e-8));
    CHECK_THAT(fs_omega_eval(u, j, d[2], d[3], c), WithinAbs(0.0, 1e-8));
    CHECK_THAT(fs_omega_eval(u, j, d[2], d[1], c), WithinAbs(0.0, 1e-8));
}

namespace {

// Pushforward of a chart tangent by a map CP -> CP into the best chart of the image.
CVector push(const std::function<ProjectivePoint(const ProjectivePoint&)>& f, const ProjectivePoint& u, int j,
             const CVector& v, int k, const Coupling& c, double h = 1e-6) {
    const ChartCoords cc = to_chart(u, j, c);
    const CVector a = to_chart(f(from_chart(chart_shift(cc, v, h), c)), k, c).w;
    const CVector b = to_chart(f(from_chart(chart_shift(cc, v, -h), c)), k, c).w;
    return (a - b) / (2 * h);
}

}  // namespace

TEST_CASE("fs_omega_eval is chart independent") {
    const Coupling c(4, 0.2);
    Rng rng(21);
    for (int s = 0; s < 10; ++s) {
        const ProjectivePoint u = random_interior_point(c, rng);
        const CVector v1 = random_complex_vector(3, rng), v2 = random_complex_vector(3, rng);
        const double w0 = fs_omega_eval(u, 0, v1, v2, c);
        auto id = [](const ProjectivePoint& p) { return p; };
        for (int k = 1; k < 4; ++k) {
            const double wk = fs_omega_eval(u, k, push(id, u, 0, v1, k, c), push(id, u, 0, v2, k, c), c);
            CHECK_THAT(wk, WithinAbs(w0, 1e-5));
        }
    }
}

TEST_CASE("involutions: signs of the symplectic form") {
    const Coupling c(3, 0.3);
    Rng rng(12);
    for (int s = 0; s < 10; ++s) {
        const ProjectivePoint u = random_interior_point(c, rng);
        const int j = u.best_chart();
        const CVector v1 = random_complex_vector(2, rng), v2 = random_complex_vector(2, rng);
        const double w = fs_omega_eval(u, j, v1, v2, c);
        const std::pair<Involution, double> cases[] = {
            {Involution::C, -1.0}, {Involution::Gamma, -1.0}, {Involution::Sigma, 1.0}};
        for (auto [inv, sign] : cases) {
            auto f = [&, inv = inv](const ProjectivePoint& p) { return involution(inv, p, c); };
            const ProjectivePoint fu = f(u);
            const int k = fu.best_chart();
            const double wi = fs_omega_eval(fu, k, push(f, u, j, v1, k, c), push(f, u, j, v2, k, c), c);
            CHECK_THAT(wi, WithinAbs(sign * w, 1e-5));
        }
    }
}

TEST_CASE("involutions: actions on J and special cases") {
    const Coupling c(4, 0.2);
    Rng rng(13);
    for (int s = 0; s < 20; ++s) {
        const ProjectivePoint u = random_point(c, rng);
        const RVector J = moment_J(u, c);
        CHECK((moment_J(involution(Involution::C, u, c), c) - J).norm() < 1e-14);
        CHECK((moment_J(involution(Involution::Gamma, u, c), c) - J.reverse()).norm() < 1e-14);
        CHECK((moment_J(involution(Involution::Sigma, u, c), c) - J.reverse()).norm() < 1e-14);
        for (auto inv : {Involution::C, Involution::Gamma, Involution::Sigma})
            CHECK(projective_distance(involution(inv, involution(inv, u, c), c), u) < 1e-14);
    }
    const Coupling c2(2, 0.3);
    const ProjectivePoint u = random_point(c2, rng);
    CHECK(projective_distance(involution(Involution::C, u, c2), involution(Involution::Gamma, u, c2)) < 1e-15);
    CHECK(projective_distance(involution(Involution::Sigma, u, c2), u) < 1e-15);
}

TEST_CASE("rotational action: flows of J and invariance") {
    const Coupling c(3, 0.3);
    Rng rng(14);
    const ProjectivePoint u = random_interior_point(c, rng);
    const TorusElement tau = random_torus(3, rng);
    CHECK((moment_J(rot_action(tau, u, c), c) - moment_J(u, c)).norm() < 1e-14);

    // The generator of the k-th rotation is the Hamiltonian field of J_k.
    const int j = u.best_chart();
    const ChartCoords cc = to_chart(u, j, c);
    for (int k = 0; k < 2; ++k) {
        RVector th = RVector::Zero(2);
        th(k) = 1e-6;
        const CVector gen =
            (to_chart(rot_action(TorusElement(th), u, c), j, c).w - to_chart(rot_action(TorusElement(-th), u, c), j, c).w) / 2e-6;
        auto Jk = [&](const ProjectivePoint& p) { return moment_J(p, c)(k); };
        const RVector g = chart_gradient(Jk, cc, c, 1e-6);
        for (int s = 0; s < 4; ++s) {
            const CVector v = random_complex_vector(2, rng);
            double dJ = 0.0;
            for (int m = 0; m < 2; ++m) dJ += g(2 * m) * v(m).real() + g(2 * m + 1) * v(m).imag();
            CHECK_THAT(fs_omega_eval(u, j, gen, v, c), WithinAbs(dJ, 1e-7));
        }
    }
}

TEST_CASE("chart coordinates round trip") {
    const Coupling c(5, 0.1);
    Rng rng(15);
    const ProjectivePoint u = random_point(c, rng);
    for (int j = 0; j < 5; ++j) CHECK(projective_distance(from_chart(to_chart(u, j, c), c), u) < 1e-14);
    ChartCoords bad{0, CVector::Constant(4, 10.0)};
    CHECK_THROWS_AS(from_chart(bad, c), ChartViolation);
}
