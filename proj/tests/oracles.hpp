#pragma once

// Independent reference formulas in long double, written from the defining
// products rather than the closed forms used by the library.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using ld = long double;
using lc = std::complex<long double>;
constexpr ld pi = 3.141592653589793238462643383279502884L;

// delta_11 = exp((2i/n) sum_j j xi_j), delta_kk = exp(2i sum_{j<k} xi_j) delta_11
inline std::vector<lc> delta(const std::vector<ld>& xi) {
    const int n = int(xi.size());
    ld lead = 0;
    for (int j = 0; j < n; ++j) lead += (j + 1) * xi[j];
    lead *= 2.0L / n;
    std::vector<lc> d(n);
    ld acc = 0;
    for (int k = 0; k < n; ++k) {
        d[k] = std::polar(1.0L, lead + 2 * acc);
        acc += xi[k];
    }
    return d;
}

// W_j(delta, y) = prod_{k != j} [(e^{iy} d_j - e^{-iy} d_k)/(d_j - d_k)]^{1/2}
inline std::vector<ld> W(const std::vector<ld>& xi, ld y) {
    const auto d = delta(xi);
    const int n = int(xi.size());
    const lc e = std::polar(1.0L, y);
    std::vector<ld> out(n);
    for (int j = 0; j < n; ++j) {
        lc p = 1;
        for (int k = 0; k < n; ++k)
            if (k != j) p *= (e * d[j] - d[k] / e) / (d[j] - d[k]);
        out[j] = std::sqrt(std::max(0.0L, p.real()));
    }
    return out;
}

// z_l = (e^{2iy}-1)/(e^{2niy}-1) prod_{j != l} (d_j - e^{2iy} d_l)/(d_j - d_l)
inline std::vector<ld> z_cauchy(const std::vector<ld>& xi, ld y) {
    const auto d = delta(xi);
    const int n = int(xi.size());
    const lc q = std::polar(1.0L, 2 * y);
    const lc pre = (q - 1.0L) / (std::polar(1.0L, 2 * n * y) - 1.0L);
    std::vector<ld> z(n);
    for (int l = 0; l < n; ++l) {
        lc p = pre;
        for (int j = 0; j < n; ++j)
            if (j != l) p *= (d[j] - q * d[l]) / (d[j] - d[l]);
        z[l] = p.real();
    }
    return z;
}

// z_l = sin(y)^n / sin(ny) prod_{j=l+1}^{l+n-1} (cot y - cot(xi_l + ... + xi_{j-1})), cyclic
inline std::vector<ld> z_cot(const std::vector<ld>& xi, ld y) {
    const int n = int(xi.size());
    std::vector<ld> z(n);
    for (int l = 0; l < n; ++l) {
        ld p = std::pow(std::sin(y), ld(n)) / std::sin(n * y);
        ld s = 0;
        for (int j = 1; j < n; ++j) {
            s += xi[(l + j - 1) % n];
            p *= 1.0L / std::tan(y) - 1.0L / std::tan(s);
        }
        z[l] = p;
    }
    return z;
}

// L_{jl} = (e^{iy} - e^{-iy}) / (e^{iy} d_j/d_l - e^{-iy}) W_j(y) W_l(-y) Theta_l
inline std::vector<std::vector<lc>> lax(const std::vector<ld>& xi, const std::vector<lc>& theta, ld y) {
    const auto d = delta(xi);
    const auto Wp = W(xi, y), Wm = W(xi, -y);
    const int n = int(xi.size());
    const lc e = std::polar(1.0L, y);
    std::vector<std::vector<lc>> L(n, std::vector<lc>(n));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) L[j][l] = (e - 1.0L / e) / (e * d[j] / d[l] - 1.0L / e) * Wp[j] * Wm[l] * theta[l];
    return L;
}

// H = sum_j cos p_j prod_{k != j} [1 - sin^2 y / sin^2(x_j - x_k)]^{1/2}
inline ld hamiltonian(const std::vector<ld>& xi, const std::vector<ld>& p, ld y) {
    const int n = int(xi.size());
    std::vector<ld> x(n);
    for (int k = 1; k < n; ++k) x[k] = x[k - 1] + xi[k - 1];
    ld H = 0;
    for (int j = 0; j < n; ++j) {
        ld prod = 1;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const ld s = std::sin(x[j] - x[k]);
            prod *= std::sqrt(1 - std::sin(y) * std::sin(y) / (s * s));
        }
        H += std::cos(p[j]) * prod;
    }
    return H;
}

}  // namespace oracle
