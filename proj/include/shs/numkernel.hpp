#pragma once

#include <utility>
#include <vector>

#include "shs/matrix.hpp"

// Dense complex kernels shared by every other module. All routines are pure
// and operate on value-semantics Eigen matrices; n <= ~200 is the design
// envelope, so plain O(n^3) algorithms throughout.

namespace shs {

// Default relative threshold for every rank decision (singular values or
// eigenvalues below tol * largest are treated as zero).
inline constexpr double kDefaultRankTol = 1e-10;
// Negative PSD eigenvalues within -kDefaultPsdTol * ||A|| are clamped to 0.
inline constexpr double kDefaultPsdTol = 1e-10;
// Relative Hermitian-defect allowed before herm_eig refuses the input.
inline constexpr double kDefaultHermTol = 1e-10;
// Backward-stability constant for the factorization residual invariants:
// reconstruction errors are bounded by kResidualKappa * n * eps * ||M||.
inline constexpr double kResidualKappa = 50.0;

struct HermitianEigen {
    RealVector values;     // ascending
    ComplexMatrix vectors; // unitary, columns are eigenvectors
};

struct GeneralEigenvalues {
    std::vector<Complex> values; // unordered multiset, with multiplicity
};

struct SvdResult {
    ComplexMatrix u;
    RealVector singular_values; // descending, nonnegative
    ComplexMatrix v;
};

struct LstsqResult {
    ComplexMatrix solution; // minimum-norm least-squares solution
    double residual_norm;   // Frobenius norm of coefficient*solution - rhs
};

HermitianEigen herm_eig(const ComplexMatrix& m, double herm_tol = kDefaultHermTol);

GeneralEigenvalues general_eig(const ComplexMatrix& m);

SvdResult svd(const ComplexMatrix& m);

ComplexMatrix pinv(const ComplexMatrix& m, double tol_rank = kDefaultRankTol);

ComplexMatrix psd_sqrt(const ComplexMatrix& a, double psd_tol = kDefaultPsdTol);

LstsqResult lstsq_min_norm(const ComplexMatrix& coefficient, const ComplexMatrix& rhs);

// Orthonormal basis of the range; 0-column matrix for rank-0 input.
ComplexMatrix orth_range(const ComplexMatrix& m, double tol_rank = kDefaultRankTol);

// Largest singular value. 2-norm of the zero-size matrix is 0.
double spectral_norm(const ComplexMatrix& m);

// Kronecker product, used to vectorize linear matrix equations:
// vec(A X B) = (B^T (x) A) vec(X) with column-major vec.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexVector vec_cols(const ComplexMatrix& m);

// max |lambda| over general_eig(m); 0 for 0x0 input.
double spectral_radius(const ComplexMatrix& m);

} // namespace shs
