#pragma once

#include <cmath>

#include "rsdual/projective.hpp"
#include "rsdual/suN.hpp"

namespace rsdual {

namespace detail {

inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// xi_k + xi_{k+1} + ... (p terms, indices mod n)
inline double cyclic_sum(const RVector& xi, int k, int p) {
    const int n = int(xi.size());
    double s = 0.0;
    for (int q = 0; q < p; ++q) s += xi((k + q) % n);
    return s;
}

// Smooth factors w_k^{+y} and w_k^{-y} with W_k(y) = r_k w_k^{+y} and
// W_k(-y) = r_{k-1} w_k^{-y}; r2 holds r_k^2 = xi_k - y.
inline void smooth_w(const RVector& xi, const RVector& r2, double y, RVector& wp, RVector& wm) {
    const int n = int(xi.size());
    wp.resize(n);
    wm.resize(n);
    for (int k = 0; k < n; ++k) {
        const int km = (k + n - 1) % n;
        double a = sinc(r2(k)) / std::sin(xi(k));
        for (int p = 2; p <= n - 1; ++p) {
            const double s = cyclic_sum(xi, k, p);
            a *= std::sin(s - y) / std::sin(s);
        }
        double b = sinc(r2(km)) / std::sin(xi(km));
        for (int p = 1; p <= n - 2; ++p) {
            const double s = cyclic_sum(xi, k, p);
            b *= std::sin(s + y) / std::sin(s);
        }
        wp(k) = std::sqrt(a);
        wm(k) = std::sqrt(b);
    }
}

inline RVector shifted_r2(const AlcovePoint& xi, const Coupling& c) {
    if (!xi.in_shifted_alcove()) throw DomainViolation("point is outside the shifted alcove");
    return (xi.xi().array() - c.y()).cwiseMax(0.0).matrix();
}

// C_{jl}(y) = 2 i sin y / (e^{iy} delta_j / delta_l - e^{-iy}), in closed form
// with a = half the phase difference of delta_j / delta_l.
inline double half_phase(const RVector& xi, int j, int l) {
    if (l < j) return xi.segment(l, j - l).sum();
    if (l > j) return -xi.segment(j, l - j).sum();
    return 0.0;
}

}  // namespace detail

struct WFactors {
    RVector W_plus, W_minus;  // W_k(delta, y), W_k(delta, -y)
    RVector w_plus, w_minus;  // smooth factors
};

inline WFactors w_factors(const AlcovePoint& xi, const Coupling& c) {
    const int n = c.n();
    const RVector r2 = detail::shifted_r2(xi, c);
    WFactors f;
    detail::smooth_w(xi.xi(), r2, c.y(), f.w_plus, f.w_minus);
    f.W_plus.resize(n);
    f.W_minus.resize(n);
    for (int k = 0; k < n; ++k) {
        f.W_plus(k) = std::sqrt(r2(k)) * f.w_plus(k);
        f.W_minus(k) = std::sqrt(r2((k + n - 1) % n)) * f.w_minus(k);
    }
    return f;
}

// Local Lax matrix L_{ys}(delta(xi), Theta) for a signed coupling ys = +y or -y.
inline CMatrix local_lax_signed(const AlcovePoint& xi, const CVector& theta, const Coupling& c, double ys) {
    const int n = c.n();
    if (theta.size() != n) throw DomainViolation("Theta must have n diagonal entries");
    const WFactors f = w_factors(xi, c);
    const RVector& Wa = ys > 0 ? f.W_plus : f.W_minus;
    const RVector& Wb = ys > 0 ? f.W_minus : f.W_plus;
    const CVector d = alcove_delta_diag(xi.xi(), c);
    const cplx e = std::polar(1.0, ys);
    CMatrix L(n, n);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            const cplx den = e * d(j) / d(l) - 1.0 / e;
            if (std::abs(den) < c.tol().denominator)
                throw SingularDenominator("Cauchy denominator vanishes");
            L(j, l) = (e - 1.0 / e) / den * Wa(j) * Wb(l) * theta(l);
        }
    }
    return L;
}

inline CMatrix local_lax(const AlcovePoint& xi, const CVector& theta, const Coupling& c) {
    return local_lax_signed(xi, theta, c, c.y());
}

// H = sum_j cos p_j prod_{k != j} [1 - sin^2 y / sin^2(x_j - x_k)]^{1/2}, delta_j = e^{2 i x_j}.
inline double local_hamiltonian(const AlcovePoint& xi, const RVector& p, const Coupling& c) {
    const int n = c.n();
    if (p.size() != n) throw DomainViolation("momentum vector needs n entries");
    if (!xi.in_shifted_alcove()) throw DomainViolation("point is outside the shifted alcove");
    const double sy2 = std::pow(std::sin(c.y()), 2);
    double H = 0.0;
    for (int j = 0; j < n; ++j) {
        double prod = 1.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const double s = std::sin(detail::half_phase(xi.xi(), j, k));
            prod *= std::sqrt(std::max(0.0, 1.0 - sy2 / (s * s)));
        }
        H += std::cos(p(j)) * prod;
    }
    return H;
}

struct VVector {
    RVector v;
    RVector z;  // z = v^2, sums to 1
};

inline double v_prefactor(const Coupling& c) {
    return std::sqrt(std::sin(c.y()) / std::sin(c.n() * c.y()));
}

inline VVector v_vector(const AlcovePoint& xi, const Coupling& c) {
    const WFactors f = w_factors(xi, c);
    VVector out;
    out.v = v_prefactor(c) * f.W_plus;
    out.z = out.v.cwiseAbs2();
    return out;
}

// v(xi, -y) = sqrt(sin y / sin ny) W(delta, -y).
inline RVector v_vector_minus(const AlcovePoint& xi, const Coupling& c) {
    return v_prefactor(c) * w_factors(xi, c).W_minus;
}

// mu_v = e^{2iy} 1 + (e^{2i(1-n)y} - e^{2iy}) v v^*.
inline CMatrix mu_of_v(const CVector& v, const Coupling& c) {
    const int n = c.n();
    if (v.size() != n) throw DomainViolation("vector has wrong size");
    if (std::abs(v.squaredNorm() - 1.0) > c.tol().norm) throw NormViolation("vector must have unit norm");
    const cplx a = std::exp(2.0 * kI * c.y());
    const cplx b = std::exp(2.0 * kI * double(1 - n) * c.y());
    return a * CMatrix::Identity(n, n) + (b - a) * v * v.adjoint();
}

// Reflection g(v) with last column v; requires v_n != -1.
inline RMatrix reflection_g(const RVector& v, double pole_tol = 1e-12) {
    const int n = int(v.size());
    const double d = 1.0 + v(n - 1);
    if (d < pole_tol) throw PoleAtMinusOne("reflection undefined at v_n = -1");
    RMatrix g(n, n);
    for (int j = 0; j < n - 1; ++j) {
        for (int l = 0; l < n - 1; ++l) g(j, l) = (j == l ? 1.0 : 0.0) - v(j) * v(l) / d;
        g(j, n - 1) = v(j);
        g(n - 1, j) = -v(j);
    }
    g(n - 1, n - 1) = v(n - 1);
    return g;
}

// T^j = 1 - E_jj - E_nn + E_jn + E_nj (identity for j = n).
inline RMatrix swap_matrix(int n, int j) {
    RMatrix T = RMatrix::Identity(n, n);
    if (j != n - 1) {
        T(j, j) = T(n - 1, n - 1) = 0.0;
        T(j, n - 1) = T(n - 1, j) = 1.0;
    }
    return T;
}

// g_y^j(xi) = T^j g(T^j v(xi, y)); last column equals v.
inline RMatrix reflection_g_chart(const AlcovePoint& xi, int j, const Coupling& c) {
    const RVector v = v_vector(xi, c).v;
    const RMatrix T = swap_matrix(c.n(), j);
    return T * reflection_g(T * v);
}

// Complex reflection with pivot j: the conjugation of the real pivot-j reflection
// by a diagonal phase. x_j must be real with 1 + x_j > 0 and |x| = 1.
inline CMatrix pivot_reflection(const CVector& x, int j) {
    const int n = int(x.size());
    const double d = 1.0 + x(j).real();
    if (d < 1e-12) throw PoleAtMinusOne("reflection pivot at -1");
    CMatrix M(n, n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            if (k == j && l == j) M(k, l) = x(j).real();
            else if (l == j) M(k, l) = std::conj(x(k));
            else if (k == j) M(k, l) = -x(l);
            else M(k, l) = (k == l ? 1.0 : 0.0) - std::conj(x(k)) * x(l) / d;
        }
    }
    return M;
}

// Lambda(xi) with r_k r_{l-1} Lambda_{kl} = L(delta(xi), 1)_{kl} off the cyclic
// superdiagonal and Lambda = L on it. r2 holds r_k^2 = xi_k - y.
inline CMatrix lambda_matrix(const RVector& xi, const RVector& r2, const Coupling& c) {
    const int n = c.n();
    const double y = c.y(), sy = std::sin(y);
    RVector wp, wm;
    detail::smooth_w(xi, r2, y, wp, wm);
    CMatrix Lam(n, n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const bool super = (l == k + 1) || (k == n - 1 && l == 0);
            if (super) {
                Lam(k, l) = -sy * std::polar(1.0, xi(k)) * wp(k) * wm(l) / detail::sinc(r2(k));
            } else {
                const double a = detail::half_phase(xi, k, l);
                const double s = std::sin(y + a);
                if (std::abs(s) < c.tol().denominator) throw SingularDenominator("Lambda denominator vanishes");
                Lam(k, l) = sy * std::polar(1.0, -a) / s * wp(k) * wm(l);
            }
        }
    }
    return Lam;
}

struct ShiftedData {
    RVector xi;
    RVector r2;
};

inline ShiftedData shifted_from_vector(const CVector& u, const Coupling& c) {
    if (u.size() != c.n()) throw DomainViolation("vector has wrong size");
    ShiftedData s;
    s.r2 = u.cwiseAbs2();
    const double err = std::abs(s.r2.sum() - c.chi0());
    if (err > c.tol().norm * std::max(1.0, c.chi0())) throw NormViolation("|u|^2 must equal chi0");
    s.xi = (s.r2.array() + c.y()).matrix();
    return s;
}

inline ShiftedData shifted_from_point(const ProjectivePoint& u, const Coupling& c) {
    return shifted_from_vector(u.u(), c);
}

// Global Lax matrix K^y evaluated on a representative u with |u|^2 = chi0.
inline CMatrix global_lax_rep(const CVector& u, const Coupling& c) {
    const int n = c.n();
    const ShiftedData s = shifted_from_vector(u, c);
    const CMatrix Lam = lambda_matrix(s.xi, s.r2, c);
    CMatrix K(n, n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const bool super = (l == k + 1) || (k == n - 1 && l == 0);
            const int lm = (l + n - 1) % n;
            K(k, l) = super ? Lam(k, l) : std::conj(u(k)) * u(lm) * Lam(k, l);
        }
    }
    return K;
}

// Global Lax matrix K^y(u), smooth on all of CP^{n-1}.
inline CMatrix global_lax(const ProjectivePoint& u, const Coupling& c) { return global_lax_rep(u.u(), c); }

}  // namespace rsdual
