#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "rsdual/double.hpp"
#include "rsdual/projective.hpp"

namespace rsdual {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Independent stream for one (label, n, index) triple.
inline Rng sample_rng(std::uint64_t seed, std::string_view label, int n, int index) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ fnv1a(label));
    s = splitmix64(s ^ std::uint64_t(n));
    s = splitmix64(s ^ std::uint64_t(index));
    return Rng(s);
}

inline CVector random_complex_vector(int n, Rng& rng) {
    std::normal_distribution<double> N;
    CVector v(n);
    for (int k = 0; k < n; ++k) v(k) = cplx(N(rng), N(rng));
    return v;
}

inline ProjectivePoint random_point(const Coupling& c, Rng& rng) {
    return ProjectivePoint::canonical(random_complex_vector(c.n(), rng), c);
}

// Resamples until min_k |u_k|^2 > 0.05 chi0 / n.
inline ProjectivePoint random_interior_point(const Coupling& c, Rng& rng) {
    const double floor = 0.05 * c.chi0() / c.n();
    for (;;) {
        ProjectivePoint u = random_point(c, rng);
        if (u.moduli_squared().minCoeff() > floor) return u;
    }
}

// Uniform point of the shifted alcove.
inline AlcovePoint random_shifted_alcove(const Coupling& c, Rng& rng) {
    std::exponential_distribution<double> E(1.0);
    RVector e(c.n());
    for (int k = 0; k < c.n(); ++k) e(k) = E(rng);
    RVector xi = (c.y() + c.chi0() * (e / e.sum()).array()).matrix();
    xi(c.n() - 1) = kPi - xi.head(c.n() - 1).sum();
    return AlcovePoint::full(xi, c);
}

inline TorusElement random_torus(int n, Rng& rng) {
    std::uniform_real_distribution<double> U(-kPi, kPi);
    RVector t(n - 1);
    for (int k = 0; k < n - 1; ++k) t(k) = U(rng);
    return TorusElement(t);
}

inline CMatrix random_su_algebra(int n, Rng& rng) {
    std::normal_distribution<double> N;
    CMatrix X(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) X(a, b) = cplx(N(rng), N(rng));
    return project_su(X);
}

// Haar-distributed SU(n) element.
inline CMatrix random_su(int n, Rng& rng) {
    std::normal_distribution<double> N;
    CMatrix Z(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Z(a, b) = cplx(N(rng), N(rng));
    Eigen::HouseholderQR<CMatrix> qr(Z);
    CMatrix Q = qr.householderQ();
    const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) Q.col(k) *= R(k, k) / std::abs(R(k, k));
    const cplx d = Q.determinant();
    return Q * std::pow(d, -1.0 / n);
}

inline DoublePoint random_double(int n, Rng& rng) {
    CMatrix A = random_su(n, rng);
    return {A, random_su(n, rng)};
}

}  // namespace rsdual
