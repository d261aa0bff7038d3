#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "rsdual/types.hpp"

namespace rsdual {

// Problem parameters: rank n and coupling y in (0, pi/n).
class Coupling {
public:
    Coupling(int n, double y, Tolerances tol = {}) : n_(n), y_(y), tol_(tol) {
        if (n < 2) throw DomainViolation("rank n must be at least 2");
        if (!(y > 0.0) || !(y < kPi / n))
            throw DomainViolation("coupling y must lie in (0, pi/n)");
        weights_ = RMatrix::Zero(n - 1, n);
        for (int k = 0; k < n - 1; ++k)
            for (int m = 0; m < n; ++m)
                weights_(k, m) = (m <= k ? 1.0 : 0.0) - double(k + 1) / n;
        mu0_ = CVector::Constant(n, std::exp(2.0 * kI * y));
        mu0_(n - 1) = std::exp(2.0 * kI * double(1 - n) * y);
    }

    // y = pi / (2n), the default used by the verification suite.
    static Coupling standard(int n, Tolerances tol = {}) { return Coupling(n, kPi / (2.0 * n), tol); }

    int n() const { return n_; }
    double y() const { return y_; }
    double chi0() const { return kPi - n_ * y_; }
    const Tolerances& tol() const { return tol_; }
    Tolerances& tol() { return tol_; }

    // Diagonal of the fundamental weight lambda_{k+1}, k = 0..n-2.
    RVector weight(int k) const { return weights_.row(k).transpose(); }
    const RMatrix& weights() const { return weights_; }

    const CVector& mu0_diag() const { return mu0_; }
    CMatrix mu0() const { return mu0_.asDiagonal(); }

private:
    int n_;
    double y_;
    Tolerances tol_;
    RMatrix weights_;
    CVector mu0_;
};

enum class Region { Alcove, OpenAlcove, ShiftedAlcove, PolytopeInterior };

inline const char* to_string(Region r) {
    switch (r) {
        case Region::Alcove: return "alcove";
        case Region::OpenAlcove: return "open_alcove";
        case Region::ShiftedAlcove: return "shifted_alcove";
        case Region::PolytopeInterior: return "polytope_interior";
    }
    return "?";
}

// A point xi of the closed alcove, stored with all n components (sum = pi).
class AlcovePoint {
public:
    AlcovePoint() = default;

    static AlcovePoint full(const RVector& xi, const Coupling& c) {
        if (xi.size() != c.n()) throw AlcoveViolation("alcove point needs n components");
        const double tol = c.tol().alcove;
        if (std::abs(xi.sum() - kPi) > tol * std::max(1.0, double(c.n())))
            throw AlcoveViolation("alcove components must sum to pi");
        if (xi.minCoeff() < -tol) throw AlcoveViolation("alcove components must be non-negative");
        AlcovePoint p;
        p.xi_ = xi.cwiseMax(0.0);
        p.region_ = classify(p.xi_, c);
        return p;
    }

    // From the first n-1 components; the last one is pi minus their sum.
    static AlcovePoint polytope(const RVector& head, const Coupling& c) {
        if (head.size() != c.n() - 1) throw AlcoveViolation("polytope point needs n-1 components");
        RVector xi(c.n());
        xi.head(c.n() - 1) = head;
        xi(c.n() - 1) = kPi - head.sum();
        return full(xi, c);
    }

    static Region classify(const RVector& xi, const Coupling& c) {
        const double lo = xi.minCoeff();
        const double eps = c.tol().alcove;
        if (lo > c.y()) return Region::PolytopeInterior;
        if (lo >= c.y() - eps) return Region::ShiftedAlcove;
        if (lo > 0.0) return Region::OpenAlcove;
        return Region::Alcove;
    }

    const RVector& xi() const { return xi_; }
    double operator()(int k) const { return xi_(k); }
    int size() const { return int(xi_.size()); }
    Region region() const { return region_; }
    bool in_shifted_alcove() const {
        return region_ == Region::ShiftedAlcove || region_ == Region::PolytopeInterior;
    }
    RVector head() const { return xi_.head(xi_.size() - 1); }

private:
    RVector xi_;
    Region region_ = Region::Alcove;
};

// Element of the torus T^{n-1}, stored as angles reduced to (-pi, pi].
class TorusElement {
public:
    TorusElement() = default;
    explicit TorusElement(const RVector& theta) : theta_(theta) {
        for (int k = 0; k < theta_.size(); ++k) theta_(k) = reduce(theta_(k));
    }
    static TorusElement identity(int n) { return TorusElement(RVector::Zero(n - 1)); }

    static double reduce(double a) {
        double r = std::remainder(a, 2.0 * kPi);
        if (r <= -kPi) r += 2.0 * kPi;
        return r;
    }

    const RVector& theta() const { return theta_; }
    int size() const { return int(theta_.size()); }
    cplx tau(int k) const { return std::polar(1.0, theta_(k)); }

    // rho(tau) = exp(i sum_j theta_j (E_jj - E_{j+1,j+1})), as a diagonal.
    CVector rho() const {
        const int n = size() + 1;
        CVector d(n);
        for (int m = 0; m < n; ++m) {
            const double cur = m < n - 1 ? theta_(m) : 0.0;
            const double prev = m > 0 ? theta_(m - 1) : 0.0;
            d(m) = std::polar(1.0, cur - prev);
        }
        return d;
    }

    // Delta(tau) = diag(tau_1, ..., tau_{n-1}, 1).
    CVector delta_embedding() const {
        CVector d(size() + 1);
        for (int k = 0; k < size(); ++k) d(k) = tau(k);
        d(size()) = 1.0;
        return d;
    }

    TorusElement operator*(const TorusElement& o) const { return TorusElement(theta_ + o.theta_); }
    TorusElement inverse() const { return TorusElement(-theta_); }

private:
    RVector theta_;
};

struct SpectralData {
    AlcovePoint xi;
    CMatrix g;  // A = g^{-1} delta(xi) g
    bool regular = false;
};

// <eta, zeta> = -1/2 tr(eta zeta)
inline double scalar_product(const CMatrix& eta, const CMatrix& zeta) {
    return -0.5 * (eta * zeta).trace().real();
}

inline CVector alcove_delta_diag(const RVector& xi, const Coupling& c) {
    const int n = c.n();
    CVector d(n);
    for (int m = 0; m < n; ++m) {
        double phase = 0.0;
        for (int k = 0; k < n - 1; ++k) phase += xi(k) * c.weights()(k, m);
        d(m) = std::polar(1.0, -2.0 * phase);
    }
    return d;
}

inline CMatrix alcove_delta(const AlcovePoint& xi, const Coupling& c) {
    return alcove_delta_diag(xi.xi(), c).asDiagonal();
}

inline double unitarity_defect(const CMatrix& U) {
    return (U.adjoint() * U - CMatrix::Identity(U.rows(), U.cols())).norm();
}

// Anti-Hermitian traceless part.
inline CMatrix project_su(const CMatrix& X) {
    CMatrix a = 0.5 * (X - X.adjoint());
    a.diagonal().array() -= a.trace() / double(X.rows());
    return a;
}

// exp of an anti-Hermitian matrix through the Hermitian eigenproblem of -iX.
inline CMatrix expm_skew(const CMatrix& X) {
    const CMatrix H = -kI * 0.5 * (X - X.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const RVector& lam = es.eigenvalues();
    CVector e(lam.size());
    for (int k = 0; k < lam.size(); ++k) e(k) = std::polar(1.0, lam(k));
    return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

inline SpectralData spectral_xi(const CMatrix& A, const Coupling& c) {
    const int n = c.n();
    if (A.rows() != n || A.cols() != n) throw DomainViolation("matrix has wrong size");
    if (unitarity_defect(A) > c.tol().unitary * std::sqrt(double(n)) * 10.0)
        throw DomainViolation("matrix is not unitary");

    Eigen::ComplexSchur<CMatrix> schur(A);
    const CMatrix& T = schur.matrixT();
    const CMatrix& U = schur.matrixU();

    std::vector<double> phase(n);
    for (int m = 0; m < n; ++m) phase[m] = std::arg(T(m, m));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return phase[a] < phase[b]; });

    // Each cyclic roll of the sorted phases is a candidate; exactly one has the
    // leading entry of delta(xi) equal to the first eigenvalue.
    int best_s = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    RVector best_xi(n);
    for (int s = 0; s < n; ++s) {
        RVector theta(n);
        for (int k = 0; k < n; ++k) theta(k) = phase[order[(s + k) % n]] + (s + k >= n ? 2.0 * kPi : 0.0);
        RVector xi(n);
        double head = 0.0;
        for (int k = 0; k < n - 1; ++k) {
            xi(k) = std::max(0.0, 0.5 * (theta(k + 1) - theta(k)));
            head += xi(k);
        }
        xi(n - 1) = kPi - head;
        double lead = 0.0;
        for (int k = 0; k < n; ++k) lead += (k + 1) * xi(k);
        lead *= 2.0 / n;
        const double dist = std::abs(std::polar(1.0, lead) - std::polar(1.0, theta(0)));
        if (dist < best_dist) {
            best_dist = dist;
            best_s = s;
            best_xi = xi;
        }
    }

    SpectralData out;
    out.xi = AlcovePoint::full(best_xi, c);
    out.g.resize(n, n);
    for (int k = 0; k < n; ++k) {
        CVector v = U.col(order[(best_s + k) % n]);
        for (int m = 0; m < n; ++m) {
            if (std::abs(v(m)) > c.tol().phase_pivot) {
                v *= std::conj(v(m)) / std::abs(v(m));
                break;
            }
        }
        out.g.row(k) = v.adjoint();
    }
    out.regular = 2.0 * best_xi.minCoeff() > c.tol().gap;
    return out;
}

// Gradient of the spectral function Xi_j (0-based j < n-1) at a regular A.
inline CMatrix grad_spectral(const CMatrix& A, int j, const Coupling& c) {
    const int n = c.n();
    if (j < 0 || j >= n - 1) throw DomainViolation("spectral index out of range");
    const SpectralData sd = spectral_xi(A, c);
    if (!sd.regular) throw NonRegular("spectral gradient requested at a non-regular element");
    CVector d = CVector::Zero(n);
    d(j) = -kI;
    d(j + 1) = kI;
    return sd.g.adjoint() * d.asDiagonal() * sd.g;
}

// C^s = g^{-1} exp(-2 i s sum_k Xi_k(C) lambda_k) g.
inline CMatrix matrix_power(const CMatrix& C, double s, const Coupling& c) {
    const SpectralData sd = spectral_xi(C, c);
    return sd.g.adjoint() * alcove_delta_diag(s * sd.xi.xi(), c).asDiagonal() * sd.g;
}

}  // namespace rsdual
