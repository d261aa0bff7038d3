#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rsdual/io.hpp"
#include "rsdual/numdiff.hpp"
#include "rsdual/reduction.hpp"
#include "rsdual/sampling.hpp"

namespace rsdual {

struct SuiteConfig {
    std::vector<int> n_list{2, 3};
    std::string y_rule = "pi/(2n)";  // or "explicit" with y_values
    std::vector<double> y_values;
    int samples = 50;
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerances;
    std::vector<std::string> checks;  // names or group prefixes; empty selects all
    int jobs = 1;
    double fd_step = 1e-5;
};

struct CheckResult {
    std::string name;
    int n = 0;
    double y = 0.0;
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    double wall_time = 0.0;
    int first_failure = -1;
    json failing_sample;
    std::string error;
};

struct SuiteReport {
    std::vector<CheckResult> results;
    bool all_pass() const {
        return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
    }
};

inline json to_json(const CheckResult& r) {
    json j{{"name", r.name},           {"n", r.n},
           {"y", r.y},                 {"samples", r.samples},
           {"max_residual", r.max_residual}, {"tolerance", r.tolerance},
           {"pass", r.pass},           {"wall_time", r.wall_time}};
    if (r.first_failure >= 0) j["first_failure"] = {{"index", r.first_failure}, {"sample", r.failing_sample}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

inline json to_json(const SuiteReport& rep) {
    json checks = json::array();
    for (const auto& r : rep.results) checks.push_back(to_json(r));
    return {{"pass", rep.all_pass()}, {"checks", checks}};
}

// Poisson bracket of two functions on CP^{n-1} for chi0 * omega_FS, from chart gradients.
inline double poisson_bracket_fs(const std::function<double(const ProjectivePoint&)>& fa,
                                 const std::function<double(const ProjectivePoint&)>& fb, const ProjectivePoint& u,
                                 const Coupling& c, double h = 1e-5) {
    const ChartCoords cc = to_chart(u, u.best_chart(), c);
    const CVector Xa = chart_hamiltonian_field(chart_gradient(fa, cc, c, h));
    const CVector Xb = chart_hamiltonian_field(chart_gradient(fb, cc, c, h));
    return fs_omega_chart(Xa, Xb);
}

namespace checks {

struct Sample {
    double residual = 0.0;
    json point;
};

struct Context {
    const Coupling& c;
    Rng& rng;
    int index;
    double h;
    json point;  // sample under test, dumped if the check throws
};

using Fn = std::function<Sample(Context&)>;

struct Def {
    std::string name;
    double tolerance;
    int min_n;
    int max_n;
    Fn fn;
};

inline double polytope_violation(const RVector& x, const Coupling& c) {
    const double lo = c.y() - x.minCoeff();
    const double hi = x.sum() - (kPi - c.y());
    return std::max({0.0, lo, hi});
}

inline RVector reversed(const RVector& x) { return x.reverse(); }

inline CMatrix antidiagonal(int n) {
    CMatrix e = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) e(k, n - 1 - k) = 1.0;
    return e;
}

inline ProjectivePoint vertex_point(int k, const Coupling& c) {
    CVector u = CVector::Zero(c.n());
    u(k) = std::sqrt(c.chi0());
    return ProjectivePoint::canonical(u, c);
}

// Random Theta = e^{-ip} with sum p = 0.
inline RVector random_momenta(int n, Rng& rng) {
    std::uniform_real_distribution<double> U(-kPi, kPi);
    RVector p(n);
    for (int k = 0; k < n - 1; ++k) p(k) = U(rng);
    p(n - 1) = -p.head(n - 1).sum();
    return p;
}

inline CVector theta_of(const RVector& p) {
    CVector t(p.size());
    for (int k = 0; k < p.size(); ++k) t(k) = std::polar(1.0, -p(k));
    return t;
}

inline double lax_unitarity(const CMatrix& L) {
    return std::max(unitarity_defect(L), std::abs(L.determinant() - 1.0));
}

inline std::vector<Def> registry() {
    std::vector<Def> d;

    d.push_back({"constraint", 1e-10, 2, 99, [](Context& x) {
                     const ProjectivePoint u = random_point(x.c, x.rng);
                     x.point = point_to_json(u);
                     double r = 0.0;
                     for (int j = 0; j < x.c.n(); ++j) {
                         if (std::abs(u(j)) <= x.c.tol().chart) continue;
                         const CMatrix m = moment(section_F(u, j, x.c)) * x.c.mu0().adjoint();
                         r = std::max(r, (m - CMatrix::Identity(x.c.n(), x.c.n())).norm());
                     }
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"section_overlap", 1e-9, 2, 99, [](Context& x) {
                     const ProjectivePoint u = random_point(x.c, x.rng);
                     x.point = point_to_json(u);
                     double r = 0.0;
                     for (int j = 0; j < x.c.n(); ++j)
                         r = std::max(r, projective_distance(f_beta_inv(section_F(u, j, x.c), x.c), u));
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"pullback", 1e-5, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_interior_point(c, x.rng);
                     x.point = point_to_json(u);
                     const int j = u.best_chart();
                     const ChartCoords cc = to_chart(u, j, c);
                     auto F = [&](const ChartCoords& w) { return section_F(from_chart(w, c), j, c); };
                     const DoublePoint p = F(cc);
                     double r = 0.0;
                     for (int pair = 0; pair < 5; ++pair) {
                         const CVector v1 = random_complex_vector(c.n() - 1, x.rng);
                         const CVector v2 = random_complex_vector(c.n() - 1, x.rng);
                         const DoubleTangent t1 = chart_pushforward(F, cc, v1, x.h);
                         const DoubleTangent t2 = chart_pushforward(F, cc, v2, x.h);
                         // FD tangents are tangent only up to O(h^2).
                         const double w = omega_eval(p, t1, t2, 1e-6);
                         r = std::max(r, std::abs(w - fs_omega_eval(u, j, v1, v2, c)));
                     }
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"toric", 1e-9, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_interior_point(c, x.rng);
                     x.point = point_to_json(u);
                     const RVector act = action_variables(u, c);
                     const RVector J = moment_J_full(u, c);
                     double r = 0.0;
                     for (int j = 0; j < c.n(); ++j) {
                         const DoublePoint p = section_F(u, j, c);
                         r = std::max(r, (spectral_xi(p.A, c).xi.head() - act).norm());
                         r = std::max(r, (spectral_xi(p.B, c).xi.xi() - J).norm());
                     }
                     const TorusElement tau = random_torus(c.n(), x.rng);
                     const ProjectivePoint ru = rot_action(tau, u, c);
                     const DoublePoint pb = torus_action(section_F(u, c), Side::Second, tau, c);
                     r = std::max(r, projective_distance(f_beta_inv(pb, c), ru));
                     const DoublePoint pa = torus_action(f_alpha(u, c).rep, Side::First, tau, c);
                     r = std::max(r, projective_distance(f_alpha_inv(pa, c), ru));
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"duality.square", 1e-8, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_point(c, x.rng);
                     x.point = point_to_json(u);
                     const ProjectivePoint s2 = duality(Duality::S, duality(Duality::S, u, c), c);
                     double r = projective_distance(s2, involution(Involution::Sigma, u, c));
                     if (c.n() == 2) r = std::max(r, projective_distance(s2, u));
                     const ProjectivePoint r2 = duality(Duality::R, duality(Duality::R, u, c), c);
                     r = std::max(r, projective_distance(r2, u));
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"duality.exchange", 1e-8, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_point(c, x.rng);
                     x.point = point_to_json(u);
                     const ProjectivePoint s = duality(Duality::S, u, c);
                     const CMatrix Ks = global_lax(s, c);
                     double r = (moment_J(s, c) - action_variables(u, c)).norm();
                     r = std::max(r, (spectral_xi(Ks, c).xi.head() - reversed(moment_J(u, c))).norm());
                     const CMatrix D = alcove_delta_diag(moment_J_full(u, c), c).asDiagonal();
                     for (int m = 1; m < c.n(); ++m) {
                         const cplx a = matrix_integer_power(Ks, m).trace();
                         const cplx b = matrix_integer_power(D, m).trace();
                         r = std::max(r, std::abs(a - std::conj(b)));
                     }
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"duality.intertwining", 1e-8, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_point(c, x.rng);
                     x.point = point_to_json(u);
                     const ProjectivePoint a = duality(Duality::SInverse, u, c);
                     const ProjectivePoint b = involution(
                         Involution::Gamma, duality(Duality::SInverse, involution(Involution::C, u, c), c), c);
                     double r = projective_distance(a, b);
                     const ProjectivePoint rr = duality(Duality::R, u, c);
                     r = std::max(r, projective_distance(rr, duality(Duality::S, involution(Involution::Gamma, u, c), c)));
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"duality.lax_symmetry", 1e-9, 2, 99, [](Context& x) {
                     // K o C and K o sigma hold up to conjugation by delta(J(u)).
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_point(c, x.rng);
                     x.point = point_to_json(u);
                     const CMatrix K = global_lax(u, c);
                     const CMatrix e = antidiagonal(c.n());
                     const CMatrix Du = alcove_delta_diag(moment_J_full(u, c), c).asDiagonal();
                     double r = (global_lax(involution(Involution::C, u, c), c) - Du.adjoint() * K.conjugate() * Du).norm();
                     r = std::max(r, (global_lax(involution(Involution::Gamma, u, c), c) - e * K.transpose() * e).norm());
                     r = std::max(r, (global_lax(involution(Involution::Sigma, u, c), c) - e * Du * K.adjoint() * Du.adjoint() * e).norm());
                     const CMatrix Dg = alcove_delta_diag(moment_J_full(involution(Involution::Gamma, u, c), c), c).asDiagonal();
                     r = std::max(r, (Dg - e * Du.adjoint() * e).norm());
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"mapclass.origin", 1e-8, 2, 99, [](Context& x) {
                     const ProjectivePoint u = random_point(x.c, x.rng);
                     x.point = point_to_json(u);
                     const double r = projective_distance(mapclass_on_P({Automorphism::S}, u, x.c),
                                                          duality(Duality::S, u, x.c));
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"mapclass.dehn", 1e-8, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_point(c, x.rng);
                     x.point = point_to_json(u);
                     const ProjectivePoint s = duality(Duality::S, u, c);
                     const std::vector<Automorphism> w{Automorphism::T, Automorphism::Ttilde, Automorphism::T};
                     double r = projective_distance(mapclass_on_P(w, s, c), u);
                     r = std::max(r, projective_distance(reduced_flow(u, InvariantHamiltonian::twist(Side::Second), 1.0, c),
                                                         mapclass_on_P({Automorphism::T}, u, c)));
                     r = std::max(r, projective_distance(reduced_flow(u, InvariantHamiltonian::twist(Side::First), 1.0, c),
                                                         mapclass_on_P({Automorphism::Ttilde}, u, c)));
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"mapclass.central", 1e-10, 2, 99, [](Context& x) {
                     const DoublePoint p = random_double(x.c.n(), x.rng);
                     DoublePoint q = p;
                     for (int k = 0; k < 4; ++k) q = auto_apply(Automorphism::S, q);
                     const DoublePoint z = auto_apply(Automorphism::Q, p);
                     const double r = (q.A - z.A).norm() + (q.B - z.B).norm();
                     return Sample{r, json{{"A", matrix_to_json(p.A)}, {"B", matrix_to_json(p.B)}}};
                 }});

    d.push_back({"lax.moment_equation", 1e-10, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const AlcovePoint xi = random_shifted_alcove(c, x.rng);
                     const CMatrix L = local_lax(xi, theta_of(random_momenta(c.n(), x.rng)), c);
                     const CMatrix D = alcove_delta(xi, c);
                     const CVector v = v_vector(xi, c).v.cast<cplx>();
                     const double r = (L * D * L.inverse() - mu_of_v(v, c) * D).norm();
                     return Sample{r, real_vector_to_json(xi.xi())};
                 }});

    d.push_back({"lax.unitary", 1e-9, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const AlcovePoint xi = random_shifted_alcove(c, x.rng);
                     double r = lax_unitarity(local_lax(xi, theta_of(random_momenta(c.n(), x.rng)), c));
                     const ProjectivePoint u = random_point(c, x.rng);
                     x.point = point_to_json(u);
                     r = std::max(r, lax_unitarity(global_lax(u, c)));
                     CVector b = random_complex_vector(c.n(), x.rng);
                     b(x.index % c.n()) = 0.0;
                     r = std::max(r, lax_unitarity(global_lax(ProjectivePoint::canonical(b, c), c)));
                     if (x.index == 0)
                         for (int k = 0; k < c.n(); ++k) r = std::max(r, lax_unitarity(global_lax(vertex_point(k, c), c)));
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"lax.hamiltonian", 1e-12, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const AlcovePoint xi = random_shifted_alcove(c, x.rng);
                     const RVector p = random_momenta(c.n(), x.rng);
                     const double r = std::abs(local_hamiltonian(xi, p, c) - local_lax(xi, theta_of(p), c).trace().real());
                     return Sample{r, real_vector_to_json(xi.xi())};
                 }});

    d.push_back({"lax.closed_form", 1e-12, 2, 2, [](Context&) {
                     // Frozen n = 2, y = pi/6, xi = (pi/2, pi/2) values.
                     const Coupling c(2, kPi / 6.0);
                     const AlcovePoint xi = AlcovePoint::full(RVector::Constant(2, kPi / 2.0), c);
                     const double s3 = std::sqrt(3.0);
                     CMatrix Lx(2, 2);
                     Lx << s3 / 2.0, cplx(0, -0.5), cplx(0, -0.5), s3 / 2.0;
                     double r = (local_lax(xi, CVector::Ones(2), c) - Lx).norm();
                     r = std::max(r, std::abs(local_hamiltonian(xi, RVector::Zero(2), c) - s3));
                     r = std::max(r, (w_factors(xi, c).W_plus.array() - std::sqrt(s3 / 2.0)).abs().maxCoeff());
                     r = std::max(r, (v_vector(xi, c).z.array() - 0.5).abs().maxCoeff());
                     const ProjectivePoint u = e_param(xi, TorusElement::identity(2), c);
                     r = std::max(r, (global_lax(u, c) - Lx).norm());
                     CMatrix Kb(2, 2);
                     Kb << 0.0, -std::polar(1.0, kPi / 6.0), -std::polar(1.0, 5.0 * kPi / 6.0), 0.0;
                     r = std::max(r, (global_lax(vertex_point(1, c), c) - Kb).norm());
                     return Sample{r, json()};
                 }});

    d.push_back({"gradient", 1e-6, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const int n = c.n();
                     const CMatrix A = random_su(n, x.rng);
                     const CMatrix Z = random_su_algebra(n, x.rng);
                     const CMatrix Ep = expm_skew(x.h * Z), Em = expm_skew(-x.h * Z);
                     std::vector<InvariantHamiltonian> hs;
                     for (int j = 0; j < n - 1; ++j) hs.push_back(InvariantHamiltonian::spectral(j, Side::First));
                     for (int m = 1; m <= 3; ++m) {
                         hs.push_back(InvariantHamiltonian::re_trace(m, Side::First));
                         hs.push_back(InvariantHamiltonian::im_trace(m, Side::First));
                     }
                     double r = 0.0;
                     for (const auto& h : hs) {
                         const double fd = (hamiltonian_value(h, CMatrix(Ep * A), c) - hamiltonian_value(h, CMatrix(Em * A), c)) /
                                           (2.0 * x.h);
                         r = std::max(r, std::abs(fd - scalar_product(Z, gradient(h, A, c))));
                     }
                     return Sample{r, json{{"A", matrix_to_json(A)}}};
                 }});

    d.push_back({"normalization", 1e-12, 2, 99, [](Context& x) {
                     const AlcovePoint xi = random_shifted_alcove(x.c, x.rng);
                     return Sample{std::abs(v_vector(xi, x.c).z.sum() - 1.0), real_vector_to_json(xi.xi())};
                 }});

    d.push_back({"spectra", 1e-10, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const AlcovePoint xi = random_shifted_alcove(c, x.rng);
                     const CVector d = alcove_delta_diag(xi.xi(), c);
                     const CVector v = v_vector(xi, c).v.cast<cplx>();
                     const CMatrix M = mu_of_v(v, c) * d.asDiagonal();
                     const CVector ev = Eigen::ComplexEigenSolver<CMatrix>(M, false).eigenvalues();
                     std::vector<bool> used(ev.size(), false);
                     double r = 0.0;
                     for (int k = 0; k < d.size(); ++k) {
                         int best = -1;
                         for (int m = 0; m < ev.size(); ++m)
                             if (!used[m] && (best < 0 || std::abs(ev(m) - d(k)) < std::abs(ev(best) - d(k)))) best = m;
                         used[best] = true;
                         r = std::max(r, std::abs(ev(best) - d(k)));
                     }
                     return Sample{r, real_vector_to_json(xi.xi())};
                 }});

    d.push_back({"global_lax.overlap", 1e-9, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_interior_point(c, x.rng);
                     x.point = point_to_json(u);
                     const CMatrix K = global_lax(u, c);
                     double r = 0.0;
                     for (int j = 0; j < c.n(); ++j) r = std::max(r, (global_lax_rep(u.representative(j, c), c) - K).norm());
                     const auto [xi, tau] = e_param_inv(u, c);
                     const CVector De = tau.delta_embedding();
                     const CMatrix loc = De.conjugate().asDiagonal() * local_lax(xi, tau.rho().conjugate(), c) * De.asDiagonal();
                     r = std::max(r, (loc - K).norm());
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"global_lax.boundary", 1e-6, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     CVector b = random_complex_vector(c.n(), x.rng);
                     b(x.index % c.n()) = 0.0;
                     const ProjectivePoint u0 = ProjectivePoint::canonical(b, c);
                     x.point = point_to_json(u0);
                     const CVector dir = random_complex_vector(c.n(), x.rng).normalized();
                     const ProjectivePoint ue = ProjectivePoint::canonical(u0.u() + 1e-7 * dir, c);
                     const double r = (global_lax(ue, c) - global_lax(u0, c)).norm();
                     return Sample{r, point_to_json(u0)};
                 }});

    d.push_back({"commutativity", 1e-5, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_interior_point(c, x.rng);
                     x.point = point_to_json(u);
                     double r = 0.0;
                     for (int k = 0; k < c.n() - 1; ++k) {
                         for (int l = k; l < c.n() - 1; ++l) {
                             auto fk = [&c, k](const ProjectivePoint& p) { return action_variables(p, c)(k); };
                             auto fl = [&c, l](const ProjectivePoint& p) { return action_variables(p, c)(l); };
                             r = std::max(r, std::abs(poisson_bracket_fs(fk, fl, u, c, x.h)));
                             auto jk = [&c, k](const ProjectivePoint& p) { return moment_J(p, c)(k); };
                             auto jl = [&c, l](const ProjectivePoint& p) { return moment_J(p, c)(l); };
                             r = std::max(r, std::abs(poisson_bracket_fs(jk, jl, u, c, x.h)));
                         }
                     }
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"commutativity.flow", 1e-8, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     const ProjectivePoint u = random_interior_point(c, x.rng);
                     x.point = point_to_json(u);
                     const RVector a0 = action_variables(u, c);
                     const InvariantHamiltonian h = InvariantHamiltonian::re_trace(1, Side::First);
                     double r = 0.0;
                     for (int s = 1; s <= 20; ++s)
                         r = std::max(r, (action_variables(reduced_flow(u, h, 0.5 * s, c), c) - a0).norm());
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"polytope", 1e-9, 2, 99, [](Context& x) {
                     const ProjectivePoint u = random_point(x.c, x.rng);
                     x.point = point_to_json(u);
                     const double r = std::max(polytope_violation(moment_J(u, x.c), x.c),
                                               polytope_violation(action_variables(u, x.c), x.c));
                     return Sample{r, point_to_json(u)};
                 }});

    d.push_back({"polytope.vertices", 1e-3, 2, 99, [](Context& x) {
                     const Coupling& c = x.c;
                     double r = 0.0;
                     for (int k = 0; k < c.n(); ++k) {
                         RVector V = RVector::Constant(c.n() - 1, c.y());
                         if (k < c.n() - 1) V(k) += c.chi0();
                         const ProjectivePoint near = ProjectivePoint::canonical(
                             vertex_point(k, c).u() + 1e-4 * random_complex_vector(c.n(), x.rng), c);
                         r = std::max(r, (moment_J(near, c) - V).norm());
                         const ProjectivePoint pre = duality(Duality::SInverse, near, c);
                         r = std::max(r, (action_variables(pre, c) - V).norm());
                     }
                     return Sample{r, json()};
                 }});

    return d;
}

inline bool selected(const std::string& name, const std::vector<std::string>& sel) {
    if (sel.empty()) return true;
    const std::string group = name.substr(0, name.find('.'));
    for (const auto& s : sel)
        if (s == name || s == group) return true;
    return false;
}

}  // namespace checks

inline std::vector<std::string> check_names() {
    std::vector<std::string> out;
    for (const auto& d : checks::registry()) out.push_back(d.name);
    return out;
}

inline std::vector<double> couplings_for(const SuiteConfig& cfg, int n) {
    if (cfg.y_rule == "pi/(2n)" && cfg.y_values.empty()) return {kPi / (2.0 * n)};
    if (cfg.y_values.empty()) throw ConfigError("explicit y rule needs at least one value");
    return cfg.y_values;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

inline SuiteReport run_suite(const SuiteConfig& cfg) {
    const auto defs = checks::registry();
    for (const auto& s : cfg.checks) {
        const bool known = std::any_of(defs.begin(), defs.end(), [&](const checks::Def& d) {
            return d.name == s || d.name.substr(0, d.name.find('.')) == s;
        });
        if (!known) throw ConfigError("unknown check '" + s + "'");
    }
    for (const auto& [k, v] : cfg.tolerances) {
        const bool known = std::any_of(defs.begin(), defs.end(), [&](const checks::Def& d) { return d.name == k; });
        if (!known) throw ConfigError("tolerance for unknown check '" + k + "'");
        if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
    }
    if (cfg.samples < 1) throw ConfigError("samples must be positive");
    if (cfg.n_list.empty()) throw ConfigError("n_list is empty");

    SuiteReport rep;
    for (int n : cfg.n_list) {
        if (n < 2) throw ConfigError("n must be at least 2");
        for (double y : couplings_for(cfg, n)) {
            if (!(y > 0.0 && y < kPi / n)) throw ConfigError("y outside (0, pi/n)");
            const Coupling c(n, y);
            for (const auto& d : defs) {
                if (!checks::selected(d.name, cfg.checks) || n < d.min_n || n > d.max_n) continue;
                CheckResult res;
                res.name = d.name;
                res.n = n;
                res.y = y;
                res.samples = cfg.samples;
                auto it = cfg.tolerances.find(d.name);
                res.tolerance = it != cfg.tolerances.end() ? it->second : d.tolerance;

                std::vector<checks::Sample> out(cfg.samples);
                std::vector<std::string> errors(cfg.samples);
                const auto t0 = std::chrono::steady_clock::now();
                parallel_for(cfg.samples, cfg.jobs, [&](int i) {
                    Rng rng = sample_rng(cfg.seed, d.name, n, i);
                    checks::Context ctx{c, rng, i, cfg.fd_step, json()};
                    try {
                        out[i] = d.fn(ctx);
                        if (!std::isfinite(out[i].residual)) errors[i] = "non-finite residual";
                    } catch (const std::exception& e) {
                        errors[i] = e.what();
                        out[i].point = ctx.point;
                    }
                });
                res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                for (int i = 0; i < cfg.samples; ++i) {
                    const bool bad = !errors[i].empty() || out[i].residual > res.tolerance;
                    if (errors[i].empty()) res.max_residual = std::max(res.max_residual, out[i].residual);
                    if (bad && res.first_failure < 0) {
                        res.first_failure = i;
                        res.failing_sample = out[i].point;
                        res.error = errors[i];
                    }
                }
                res.pass = res.first_failure < 0;
                rep.results.push_back(std::move(res));
            }
        }
    }
    return rep;
}

}  // namespace rsdual
