#pragma once

#include <string>

#include "rsdual/suN.hpp"

namespace rsdual {

// Point (A, B) of the double D = SU(n) x SU(n).
struct DoublePoint {
    CMatrix A, B;
};

struct DoubleTangent {
    CMatrix dA, dB;
};

inline CMatrix moment(const DoublePoint& p) {
    return p.A * p.B * p.A.adjoint() * p.B.adjoint();
}

inline double constraint_residual(const DoublePoint& p, const Coupling& c) {
    return (moment(p) - c.mu0()).norm();
}

// Psi_g(A, B) = (g A g^{-1}, g B g^{-1}) for unitary g.
inline DoublePoint conjugate(const DoublePoint& p, const CMatrix& g) {
    return {g * p.A * g.adjoint(), g * p.B * g.adjoint()};
}

enum class Side { First, Second };

// Invariant functions on SU(n), lifted to D through A (First) or B (Second).
struct InvariantHamiltonian {
    enum class Kind { Spectral, ReTrace, ImTrace, Twist };
    Kind kind = Kind::Spectral;
    int index = 0;  // 0-based spectral index, or the power m for trace kinds
    Side side = Side::First;

    static InvariantHamiltonian spectral(int j, Side s) { return {Kind::Spectral, j, s}; }
    static InvariantHamiltonian re_trace(int m, Side s) { return {Kind::ReTrace, m, s}; }
    static InvariantHamiltonian im_trace(int m, Side s) { return {Kind::ImTrace, m, s}; }
    // tr (sum_k Xi_k lambda_k)^2; its time-s flow is C -> C^s.
    static InvariantHamiltonian twist(Side s) { return {Kind::Twist, 0, s}; }
};

inline CMatrix matrix_integer_power(const CMatrix& C, int m) {
    const int n = int(C.rows());
    CMatrix base = m >= 0 ? C : CMatrix(C.adjoint());
    CMatrix out = CMatrix::Identity(n, n);
    for (int k = 0; k < std::abs(m); ++k) out = out * base;
    return out;
}

inline double hamiltonian_value(const InvariantHamiltonian& h, const CMatrix& C, const Coupling& c) {
    switch (h.kind) {
        case InvariantHamiltonian::Kind::Spectral: return spectral_xi(C, c).xi(h.index);
        case InvariantHamiltonian::Kind::ReTrace: return matrix_integer_power(C, h.index).trace().real();
        case InvariantHamiltonian::Kind::ImTrace: return matrix_integer_power(C, h.index).trace().imag();
        case InvariantHamiltonian::Kind::Twist: {
            const RVector xi = spectral_xi(C, c).xi.xi();
            RVector d = RVector::Zero(c.n());
            for (int k = 0; k < c.n() - 1; ++k) d += xi(k) * c.weight(k);
            return d.squaredNorm();
        }
    }
    return 0.0;
}

inline double hamiltonian_value(const InvariantHamiltonian& h, const DoublePoint& p, const Coupling& c) {
    return hamiltonian_value(h, h.side == Side::First ? p.A : p.B, c);
}

// Gradient with d/dt h(e^{t zeta} C) = <zeta, grad h(C)>.
inline CMatrix gradient(const InvariantHamiltonian& h, const CMatrix& C, const Coupling& c) {
    const int n = c.n();
    switch (h.kind) {
        case InvariantHamiltonian::Kind::Spectral: return grad_spectral(C, h.index, c);
        case InvariantHamiltonian::Kind::ReTrace: {
            const CMatrix P = matrix_integer_power(C, h.index);
            return project_su(-double(h.index) * (P - P.adjoint()));
        }
        case InvariantHamiltonian::Kind::ImTrace: {
            const CMatrix P = matrix_integer_power(C, h.index);
            CMatrix G = kI * double(h.index) * (P + P.adjoint());
            G.diagonal().array() -= G.trace() / double(n);
            return G;
        }
        case InvariantHamiltonian::Kind::Twist: {
            const SpectralData sd = spectral_xi(C, c);
            RVector d = RVector::Zero(n);
            for (int k = 0; k < n - 1; ++k) d += sd.xi(k) * c.weight(k);
            return sd.g.adjoint() * (-2.0 * kI * d).asDiagonal() * sd.g;
        }
    }
    return CMatrix::Zero(n, n);
}

// exp(t grad h(C)), using closed forms where available.
inline CMatrix gradient_exp(const InvariantHamiltonian& h, const CMatrix& C, double t, const Coupling& c) {
    const int n = c.n();
    switch (h.kind) {
        case InvariantHamiltonian::Kind::Spectral: {
            const SpectralData sd = spectral_xi(C, c);
            CVector d = CVector::Ones(n);
            d(h.index) = std::polar(1.0, -t);
            d(h.index + 1) = std::polar(1.0, t);
            return sd.g.adjoint() * d.asDiagonal() * sd.g;
        }
        case InvariantHamiltonian::Kind::Twist: return matrix_power(C, t, c);
        default: return expm_skew(t * gradient(h, C, c));
    }
}

// Side First: (A, B e^{-t grad h(A)}); side Second: (A e^{t grad h(B)}, B).
inline DoublePoint flow(const DoublePoint& p, const InvariantHamiltonian& h, double t, const Coupling& c) {
    if (h.side == Side::First) return {p.A, p.B * gradient_exp(h, p.A, -t, c)};
    return {p.A * gradient_exp(h, p.B, t, c), p.B};
}

// Psi^a_tau = (A, B g(A)^{-1} rho(tau) g(A)); Psi^b_tau = (A g(B)^{-1} rho(tau)^{-1} g(B), B).
inline DoublePoint torus_action(const DoublePoint& p, Side side, const TorusElement& tau, const Coupling& c) {
    const CVector r = tau.rho();
    if (side == Side::First) {
        const SpectralData sd = spectral_xi(p.A, c);
        return {p.A, p.B * sd.g.adjoint() * r.asDiagonal() * sd.g};
    }
    const SpectralData sd = spectral_xi(p.B, c);
    return {p.A * sd.g.adjoint() * r.conjugate().asDiagonal() * sd.g, p.B};
}

enum class Automorphism { S, T, Ttilde, Q, Nu };

inline DoublePoint auto_apply(Automorphism a, const DoublePoint& p) {
    switch (a) {
        case Automorphism::S: return {p.B.adjoint(), p.B * p.A * p.B.adjoint()};
        case Automorphism::T: return {p.A * p.B, p.B};
        case Automorphism::Ttilde: return {p.A, p.B * p.A.adjoint()};
        case Automorphism::Q: {
            const CMatrix mu = moment(p);
            return conjugate(p, mu.adjoint());
        }
        case Automorphism::Nu: return {p.B.conjugate(), p.A.conjugate()};
    }
    return p;
}

inline Automorphism parse_automorphism(const std::string& s) {
    if (s == "S") return Automorphism::S;
    if (s == "T") return Automorphism::T;
    if (s == "Ttilde" || s == "T~") return Automorphism::Ttilde;
    if (s == "Q") return Automorphism::Q;
    if (s == "nu") return Automorphism::Nu;
    throw DomainViolation("unknown automorphism '" + s + "'");
}

inline double tangency_defect(const CMatrix& A, const CMatrix& dA) {
    const CMatrix X = A.adjoint() * dA;
    return std::max((X + X.adjoint()).norm(), std::abs(X.trace()));
}

// Quasi-Hamiltonian 2-form omega at p.
inline double omega_eval(const DoublePoint& p, const DoubleTangent& v1, const DoubleTangent& v2,
                         double tangency_tol = 1e-9) {
    for (const DoubleTangent* v : {&v1, &v2}) {
        const double scale = std::max(1.0, std::max(v->dA.norm(), v->dB.norm()));
        if (tangency_defect(p.A, v->dA) > tangency_tol * scale || tangency_defect(p.B, v->dB) > tangency_tol * scale)
            throw TangencyViolation("tangent vector is not tangent to SU(n) x SU(n)");
    }
    const CMatrix Ai = p.A.adjoint(), Bi = p.B.adjoint();
    const CMatrix AB = p.A * p.B, BA = p.B * p.A;
    const CMatrix ABi = AB.adjoint(), BAi = BA.adjoint();
    auto wedge = [](const CMatrix& x1, const CMatrix& y1, const CMatrix& x2, const CMatrix& y2) {
        return scalar_product(x1, y2) - scalar_product(x2, y1);
    };
    auto parts = [&](const DoubleTangent& v) {
        struct P { CMatrix a1, b1, a2, b2, ab, ba; };
        return P{Ai * v.dA, v.dB * Bi, v.dA * Ai, Bi * v.dB,
                 ABi * (v.dA * p.B + p.A * v.dB), BAi * (v.dB * p.A + p.B * v.dA)};
    };
    const auto x = parts(v1), y = parts(v2);
    const double twice = wedge(x.a1, x.b1, y.a1, y.b1) + wedge(x.a2, x.b2, y.a2, y.b2) - wedge(x.ab, x.ba, y.ab, y.ba);
    return 0.5 * twice;
}

}  // namespace rsdual
