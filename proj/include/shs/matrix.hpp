#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "shs/error.hpp"

namespace shs {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

inline ComplexMatrix adjoint_of(const ComplexMatrix& m) {
    return m.adjoint();
}

// Frobenius-relative Hermitian defect, 0 for exactly Hermitian input.
inline double hermitian_defect(const ComplexMatrix& m) {
    double scale = m.norm();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).norm() / scale;
}

inline void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw Error(errc::not_square, std::string(who) + " requires a square matrix");
}

inline void require_finite(const ComplexMatrix& m, const char* who) {
    if (m.rows() < 1 || m.cols() < 1)
        throw Error(errc::bad_input, std::string(who) + ": empty matrix");
    if (!all_finite(m))
        throw Error(errc::bad_input, std::string(who) + ": non-finite entries");
}

} // namespace shs
