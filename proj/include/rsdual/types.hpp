#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rsdual {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define RSDUAL_ERROR(Name)                                                   \
    class Name : public Error {                                              \
    public:                                                                  \
        using Error::Error;                                                  \
        const char* kind() const noexcept override { return #Name; }         \
    }

RSDUAL_ERROR(AlcoveViolation);
RSDUAL_ERROR(NonRegular);
RSDUAL_ERROR(TangencyViolation);
RSDUAL_ERROR(DomainViolation);
RSDUAL_ERROR(SingularDenominator);
RSDUAL_ERROR(NormViolation);
RSDUAL_ERROR(PoleAtMinusOne);
RSDUAL_ERROR(ChartViolation);
RSDUAL_ERROR(ZeroVector);
RSDUAL_ERROR(ConstraintViolation);
RSDUAL_ERROR(NumericallyAmbiguous);
RSDUAL_ERROR(ConfigError);

#undef RSDUAL_ERROR

struct Tolerances {
    double alcove = 1e-12;       // |sum xi - pi| and lower bounds on xi
    double unitary = 1e-10;
    double gap = 1e-8;           // regularity of eigenphases
    double phase_pivot = 1e-12;  // eigenvector / canonical phase pivot
    double tangency = 1e-9;
    double denominator = 1e-12;
    double norm = 1e-9;          // |u|^2 against chi0, relative
    double chart = 1e-12;
    double constraint = 1e-8;
    double fd_step = 1e-5;
};

}  // namespace rsdual
