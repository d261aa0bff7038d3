#pragma once

#include <string>
#include <vector>

#include "rsdual/double.hpp"
#include "rsdual/projective.hpp"
#include "rsdual/rs_lax.hpp"

namespace rsdual {

// Gauge matrix G^j(u): unitary, with G^{-1} mu_v G = mu0 where mu_v is the moment of (K, delta).
inline CMatrix section_gauge(const ProjectivePoint& u, int j, const Coupling& c) {
    const int n = c.n();
    const CVector rep = u.representative(j, c);
    const ShiftedData s = shifted_from_point(u, c);
    RVector wp, wm;
    detail::smooth_w(s.xi, s.r2, c.y(), wp, wm);
    const double pre = v_prefactor(c);
    CVector x(n);
    for (int k = 0; k < n; ++k) x(k) = pre * wp(k) * rep(k);
    x(j) = x(j).real();
    return pivot_reflection(x, j) * swap_matrix(n, j).cast<cplx>();
}

// Section F_j of the reduction over chart j.
inline DoublePoint section_F(const ProjectivePoint& u, int j, const Coupling& c) {
    const CMatrix G = section_gauge(u, j, c);
    const CMatrix K = global_lax(u, c);
    const RVector xi = (u.moduli_squared().array() + c.y()).matrix();
    const CMatrix D = alcove_delta_diag(xi, c).asDiagonal();
    return {G.adjoint() * K * G, G.adjoint() * D * G};
}

inline DoublePoint section_F(const ProjectivePoint& u, const Coupling& c) {
    return section_F(u, u.best_chart(), c);
}

// (g_y^{-1} L(delta, rho(tau)^{-1}) g_y, g_y^{-1} delta g_y) on the open polytope.
inline DoublePoint local_section(const AlcovePoint& xi, const TorusElement& tau, const Coupling& c) {
    const CMatrix g = reflection_g_chart(xi, c.n() - 1, c).cast<cplx>();
    const CMatrix L = local_lax(xi, tau.rho().conjugate(), c);
    const CMatrix D = alcove_delta(xi, c);
    return {g.adjoint() * L * g, g.adjoint() * D * g};
}

// Image of E(xi, tau) under f_alpha, written with the local Lax matrix at -y.
inline DoublePoint alpha_local_section(const AlcovePoint& xi, const TorusElement& tau, const Coupling& c) {
    const RVector vm = v_vector_minus(xi, c);
    const CMatrix g = reflection_g(vm).cast<cplx>();
    const CMatrix L = local_lax_signed(xi, tau.rho(), c, -c.y());
    const CMatrix D = alcove_delta(xi, c);
    return conjugate({D, L}, g.adjoint());
}

// Inverse of f_beta: recovers u from any representative of a reduced point.
inline ProjectivePoint f_beta_inv(const DoublePoint& p, const Coupling& c) {
    const int n = c.n();
    const double res = constraint_residual(p, c);
    if (res > c.tol().constraint) throw ConstraintViolation("pair is not on the constraint surface");
    const SpectralData sd = spectral_xi(p.B, c);
    if (!sd.xi.in_shifted_alcove()) throw ConstraintViolation("spectrum of B lies outside the shifted alcove");
    const CMatrix Ap = sd.g * p.A * sd.g.adjoint();
    const RVector& xi = sd.xi.xi();
    const RVector r2 = (xi.array() - c.y()).cwiseMax(0.0).matrix();
    const CMatrix Lam = lambda_matrix(xi, r2, c);

    // A' = D K D^{-1} with D diagonal; D is fixed up to scale by the superdiagonal.
    CVector D(n);
    D(n - 1) = 1.0;
    for (int k = n - 2; k >= 0; --k) {
        cplx ratio = Ap(k, k + 1) / Lam(k, k + 1);
        D(k) = D(k + 1) * ratio / std::abs(ratio);
    }
    const CMatrix K = D.conjugate().asDiagonal() * Ap * D.asDiagonal();

    int j = 0;
    for (int k = 1; k < n; ++k)
        if (xi(k) > xi(j)) j = k;
    const int col = (j + 1) % n;
    const double rj = std::sqrt(r2(j));
    CVector u(n);
    for (int k = 0; k < n; ++k) u(k) = k == j ? cplx(rj) : std::conj(K(k, col) / (rj * Lam(k, col)));
    return ProjectivePoint::canonical(u, c);
}

// A reduced point: a constraint-surface representative with its CP^{n-1} label.
struct ReducedPoint {
    DoublePoint rep;
    ProjectivePoint label;
};

inline ReducedPoint f_beta(const ProjectivePoint& u, const Coupling& c) {
    return {section_F(u, c), u};
}

inline ReducedPoint f_alpha(const ProjectivePoint& u, const Coupling& c) {
    const DoublePoint rep = auto_apply(Automorphism::Nu, section_F(involution(Involution::Gamma, u, c), c));
    return {rep, f_beta_inv(rep, c)};
}

inline ProjectivePoint f_alpha_inv(const DoublePoint& p, const Coupling& c) {
    return involution(Involution::Gamma, f_beta_inv(auto_apply(Automorphism::Nu, p), c), c);
}

enum class Duality { S, SInverse, R };

inline Duality parse_duality(const std::string& s) {
    if (s == "S") return Duality::S;
    if (s == "S_inv" || s == "Sinv") return Duality::SInverse;
    if (s == "R") return Duality::R;
    throw DomainViolation("unknown duality map '" + s + "'");
}

// S = f_alpha^{-1} o f_beta, S^{-1} = f_beta^{-1} o f_alpha, R = C o S.
inline ProjectivePoint duality(Duality which, const ProjectivePoint& u, const Coupling& c) {
    switch (which) {
        case Duality::S: return f_alpha_inv(section_F(u, c), c);
        case Duality::SInverse: return f_beta_inv(f_alpha(u, c).rep, c);
        case Duality::R: return involution(Involution::C, f_alpha_inv(section_F(u, c), c), c);
    }
    return u;
}

// Applies the double automorphisms of the word in order, then projects back.
inline ProjectivePoint mapclass_on_P(const std::vector<Automorphism>& word, const ProjectivePoint& u,
                                     const Coupling& c) {
    DoublePoint p = section_F(u, c);
    for (Automorphism a : word) p = auto_apply(a, p);
    return f_beta_inv(p, c);
}

// Reduced flow of an invariant Hamiltonian. The unreduced flows are explicit,
// so one lift suffices for any t.
inline ProjectivePoint reduced_flow(const ProjectivePoint& u, const InvariantHamiltonian& h, double t,
                                    const Coupling& c) {
    return f_beta_inv(flow(section_F(u, c), h, t, c), c);
}

// Xi o K: spectral coordinates of the Lax matrix.
inline RVector action_variables(const ProjectivePoint& u, const Coupling& c) {
    return spectral_xi(global_lax(u, c), c).xi.head();
}

}  // namespace rsdual
