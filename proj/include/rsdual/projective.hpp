#pragma once

#include <cmath>
#include <utility>

#include "rsdual/suN.hpp"

namespace rsdual {

// A point of CP^{n-1} stored as its canonical representative: |u|^2 = chi0 and
// the largest-modulus coordinate (lowest index on ties) real and non-negative.
class ProjectivePoint {
public:
    ProjectivePoint() = default;

    static ProjectivePoint canonical(const CVector& u, const Coupling& c) {
        if (u.size() != c.n()) throw DomainViolation("projective point needs n coordinates");
        const double norm = u.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) throw ZeroVector("cannot canonicalize the zero vector");
        CVector v = u * (std::sqrt(c.chi0()) / norm);
        int piv = 0;
        for (int k = 1; k < v.size(); ++k)
            if (std::abs(v(k)) > std::abs(v(piv)) + c.tol().phase_pivot) piv = k;
        v *= std::conj(v(piv)) / std::abs(v(piv));
        v(piv) = std::abs(v(piv));
        ProjectivePoint p;
        p.u_ = v;
        return p;
    }

    const CVector& u() const { return u_; }
    cplx operator()(int k) const { return u_(k); }
    int size() const { return int(u_.size()); }

    int best_chart() const {
        int j = 0;
        for (int k = 1; k < size(); ++k)
            if (std::abs(u_(k)) > std::abs(u_(j))) j = k;
        return j;
    }

    // Representative with u_j real positive.
    CVector representative(int j, const Coupling& c) const {
        const double m = std::abs(u_(j));
        if (m <= c.tol().chart) throw ChartViolation("point is not in the requested chart");
        CVector v = u_ * (std::conj(u_(j)) / m);
        v(j) = m;
        return v;
    }

    RVector moduli_squared() const { return u_.cwiseAbs2(); }

private:
    CVector u_;
};

inline ProjectivePoint canonicalize(const CVector& u, const Coupling& c) {
    return ProjectivePoint::canonical(u, c);
}

// min over phases |a - e^{i g} b| for the stored representatives.
inline double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
    const cplx ov = b.u().dot(a.u());
    const cplx ph = std::abs(ov) > 0.0 ? ov / std::abs(ov) : cplx(1.0);
    return (a.u() - ph * b.u()).norm();
}

// Chart j coordinates: the n-1 entries of the chart representative other than u_j.
struct ChartCoords {
    int j = 0;
    CVector w;
};

inline ChartCoords to_chart(const ProjectivePoint& u, int j, const Coupling& c) {
    const CVector rep = u.representative(j, c);
    ChartCoords cc{j, CVector(c.n() - 1)};
    for (int k = 0, m = 0; k < c.n(); ++k)
        if (k != j) cc.w(m++) = rep(k);
    return cc;
}

inline CVector chart_representative(const ChartCoords& cc, const Coupling& c) {
    const double rest = c.chi0() - cc.w.squaredNorm();
    if (!(rest > 0.0)) throw ChartViolation("chart coordinates outside the chart ball");
    CVector u(c.n());
    for (int k = 0, m = 0; k < c.n(); ++k) u(k) = (k == cc.j) ? cplx(std::sqrt(rest)) : cc.w(m++);
    return u;
}

inline ProjectivePoint from_chart(const ChartCoords& cc, const Coupling& c) {
    return ProjectivePoint::canonical(chart_representative(cc, c), c);
}

// E(xi, tau) = (tau_1 sqrt(xi_1 - y), ..., tau_{n-1} sqrt(xi_{n-1} - y), sqrt(xi_n - y)).
inline ProjectivePoint e_param(const AlcovePoint& xi, const TorusElement& tau, const Coupling& c) {
    const int n = c.n();
    if (xi.region() != Region::PolytopeInterior) throw DomainViolation("E is defined on the open polytope");
    if (tau.size() != n - 1) throw DomainViolation("torus element has wrong size");
    CVector u(n);
    for (int k = 0; k < n; ++k) {
        const double r = std::sqrt(xi(k) - c.y());
        u(k) = k < n - 1 ? tau.tau(k) * r : cplx(r);
    }
    return ProjectivePoint::canonical(u, c);
}

inline std::pair<AlcovePoint, TorusElement> e_param_inv(const ProjectivePoint& u, const Coupling& c) {
    const int n = c.n();
    const CVector rep = u.representative(n - 1, c);
    RVector xi(n), theta(n - 1);
    for (int k = 0; k < n; ++k) {
        if (std::abs(rep(k)) < c.tol().chart) throw ChartViolation("E^{-1} needs all coordinates nonzero");
        xi(k) = std::norm(rep(k)) + c.y();
        if (k < n - 1) theta(k) = std::arg(rep(k));
    }
    return {AlcovePoint::full(xi, c), TorusElement(theta)};
}

// J_k(u) = |u_k|^2 + y for k = 1..n-1.
inline RVector moment_J(const ProjectivePoint& u, const Coupling& c) {
    return (u.moduli_squared().head(c.n() - 1).array() + c.y()).matrix();
}

inline RVector moment_J_full(const ProjectivePoint& u, const Coupling& c) {
    return (u.moduli_squared().array() + c.y()).matrix();
}

inline double fs_omega_chart(const CVector& v1, const CVector& v2) {
    // i sum_k (conj(v1_k) v2_k - conj(v2_k) v1_k)
    return -2.0 * v1.dot(v2).imag();
}

// chi0 * omega_FS evaluated on two chart-j tangent vectors at u.
inline double fs_omega_eval(const ProjectivePoint& u, int j, const CVector& v1, const CVector& v2,
                            const Coupling& c) {
    if (std::abs(u(j)) <= c.tol().chart) throw ChartViolation("point is not in the requested chart");
    if (v1.size() != c.n() - 1 || v2.size() != c.n() - 1) throw DomainViolation("chart tangent has wrong size");
    return fs_omega_chart(v1, v2);
}

inline ProjectivePoint rot_action(const TorusElement& tau, const ProjectivePoint& u, const Coupling& c) {
    CVector v = u.u();
    for (int k = 0; k < tau.size(); ++k) v(k) *= tau.tau(k);
    return ProjectivePoint::canonical(v, c);
}

enum class Involution { C, Gamma, Sigma };

// C: complex conjugation; Gamma: (conj u_{n-1}, ..., conj u_1, conj u_n); Sigma = C o Gamma.
inline CVector involution_vector(Involution which, const CVector& u) {
    const int n = int(u.size());
    CVector v(n);
    switch (which) {
        case Involution::C: v = u.conjugate(); break;
        case Involution::Gamma:
            for (int k = 0; k < n - 1; ++k) v(k) = std::conj(u(n - 2 - k));
            v(n - 1) = std::conj(u(n - 1));
            break;
        case Involution::Sigma:
            for (int k = 0; k < n - 1; ++k) v(k) = u(n - 2 - k);
            v(n - 1) = u(n - 1);
            break;
    }
    return v;
}

inline ProjectivePoint involution(Involution which, const ProjectivePoint& u, const Coupling& c) {
    return ProjectivePoint::canonical(involution_vector(which, u.u()), c);
}

}  // namespace rsdual
