#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kleinian/matrix.hpp"

namespace kleinian {

// LU with partial pivoting over a division ring.  Row operations multiply on
// the left, consistent with matrices acting on column vectors from the left.
template <class S>
Mat<S> lu_solve(Mat<S> a, Mat<S> b);

template <class S>
Mat<S> inverse(const Mat<S>& a);

double determinant(const RMatrix& a);
Complex determinant(const CMatrix& a);

// Truncated-series matrix exponential with scaling and squaring; valid over
// the quaternions as well since only one matrix is involved.
template <class S>
Mat<S> expm(const Mat<S>& x);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns
};

struct SymmetricEigen {
  std::vector<double> values;
  RMatrix vectors;
};

// Cyclic Jacobi for Hermitian (resp. real symmetric) matrices.
HermitianEigen eigen_hermitian(const CMatrix& a);
SymmetricEigen eigen_symmetric(const RMatrix& a);

struct Svd {
  std::vector<double> singular_values;  // descending
  CMatrix u;
  CMatrix v;
};

struct RealSvd {
  std::vector<double> singular_values;
  RMatrix u;
  RMatrix v;
};

// One-sided Jacobi; computes small singular values without forming the
// normal matrix.
Svd svd(const CMatrix& a);
RealSvd svd(const RMatrix& a);

// Columns of V whose singular value is at most rel_tol times the largest.
std::vector<std::vector<Complex>> null_space(const CMatrix& a, double rel_tol);
std::vector<std::vector<double>> null_space(const RMatrix& a, double rel_tol);

struct ComplexEigen {
  std::vector<Complex> values;
  CMatrix vectors;        // columns, unit Euclidean norm
  double backward_error;  // max_i ||A v_i - lambda_i v_i||
};

struct SchurDecomposition {
  CMatrix t;  // upper triangular
  CMatrix z;  // unitary, A = Z T Z*
};

SchurDecomposition schur(const CMatrix& a);

// General complex eigensolver: Hessenberg reduction followed by shifted QR,
// eigenvectors by triangular back-substitution.  Throws NumericError when
// the iteration fails to deflate.
ComplexEigen eigen_complex(const CMatrix& a);

}  // namespace kleinian
