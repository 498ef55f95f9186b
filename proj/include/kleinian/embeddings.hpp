#pragma once

#include "kleinian/matrix.hpp"

namespace kleinian {

// Real and complex pictures of complex and quaternion scalars, extended
// entrywise to matrices.  All three scalar embeddings are unital ring
// homomorphisms.

// z = x + iy  ->  [[x, -y], [y, x]]
RMatrix complex_to_real(const Complex& z);
RMatrix complexify_to_real(const CMatrix& g);

// q = a + bi + cj + dk  ->  4x4 real matrix with first row (a, b, c, d).
RMatrix quat_to_real(const Quaternion& q);
RMatrix quatify_to_real(const HMatrix& g);

// q = z + wj  ->  [[z, w], [-conj(w), conj(z)]]
CMatrix quat_to_complex(const Quaternion& q);
CMatrix complexify(const HMatrix& g);

// Complex coordinates of a quaternionic column vector, compatible with the
// entrywise matrix embedding: complexify(g) * vec_complexify(v) equals
// vec_complexify(g * v).
std::vector<Complex> vec_complexify(const std::vector<Quaternion>& v);
std::vector<Quaternion> vec_quaternify(const std::vector<Complex>& u);

// Image of right multiplication by j in the complex coordinates; a complex
// subspace closed under this map corresponds to a quaternionic subspace.
std::vector<Complex> j_twist(const std::vector<Complex>& u);

// Sum of the lower-left entries of the 2x2 diagonal blocks of
// complexify_to_real(g); identical to Im(trace(g)) by construction.
double embedded_imag_diag_sum(const RMatrix& embedded);

// Entrywise container changes (no structural embedding).
HMatrix promote_to_quaternion(const CMatrix& g);
CMatrix promote_to_complex(const RMatrix& g);
// z-part of each entry q = z + wj; the w-defect is the caller's concern.
CMatrix complex_part(const HMatrix& g);

}  // namespace kleinian
