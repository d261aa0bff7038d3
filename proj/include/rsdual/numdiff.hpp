#pragma once

#include <functional>

#include "rsdual/double.hpp"
#include "rsdual/projective.hpp"

namespace rsdual {

// Shift of chart coordinates by a real multiple of a complex direction.
inline ChartCoords chart_shift(const ChartCoords& cc, const CVector& v, double t) {
    return {cc.j, cc.w + t * v};
}

// Central difference of a matrix-pair valued map along a chart direction.
template <class Map>
DoubleTangent chart_pushforward(const Map& F, const ChartCoords& cc, const CVector& v, double h) {
    const DoublePoint p = F(chart_shift(cc, v, h));
    const DoublePoint m = F(chart_shift(cc, v, -h));
    return {(p.A - m.A) / (2.0 * h), (p.B - m.B) / (2.0 * h)};
}

// Tangent of the curve t -> Phi(A e^{tX}, B e^{tY}) at t = 0.
template <class Map>
DoubleTangent double_pushforward(const Map& Phi, const DoublePoint& p, const CMatrix& X, const CMatrix& Y,
                                 double h) {
    const DoublePoint a = Phi(DoublePoint{p.A * expm_skew(h * X), p.B * expm_skew(h * Y)});
    const DoublePoint b = Phi(DoublePoint{p.A * expm_skew(-h * X), p.B * expm_skew(-h * Y)});
    return {(a.A - b.A) / (2.0 * h), (a.B - b.B) / (2.0 * h)};
}

// Real gradient of f in chart j, ordered (Re w_1, Im w_1, Re w_2, ...).
inline RVector chart_gradient(const std::function<double(const ProjectivePoint&)>& f, const ChartCoords& cc,
                              const Coupling& c, double h) {
    const int m = int(cc.w.size());
    RVector g(2 * m);
    for (int k = 0; k < m; ++k) {
        for (int part = 0; part < 2; ++part) {
            CVector e = CVector::Zero(m);
            e(k) = part == 0 ? cplx(1.0) : kI;
            const double fp = f(from_chart(chart_shift(cc, e, h), c));
            const double fm = f(from_chart(chart_shift(cc, e, -h), c));
            g(2 * k + part) = (fp - fm) / (2.0 * h);
        }
    }
    return g;
}

// Hamiltonian vector field for the chart form i sum dw^* ^ dw, with omega(X_f, .) = df.
inline CVector chart_hamiltonian_field(const RVector& grad) {
    const int m = int(grad.size()) / 2;
    CVector X(m);
    for (int k = 0; k < m; ++k) X(k) = cplx(-0.5 * grad(2 * k + 1), 0.5 * grad(2 * k));
    return X;
}

}  // namespace rsdual
