#pragma once

#include <optional>
#include <vector>

#include "kleinian/matrix.hpp"

namespace kleinian {

// Hermitian vector space of signature (n, 1) with the diagonal form
// diag(1, ..., 1, -1); the projectivized negative cone is the hyperbolic
// space the groups act on.
struct HermitianSpace {
  int n = 1;
  ScalarField field = ScalarField::complex;

  int dim() const { return n + 1; }
};

// diag(I_p, -I_q).
template <class S>
Mat<S> form_diag(int p, int q) {
  Mat<S> f = Mat<S>::identity(p + q);
  for (int r = p; r < p + q; ++r) f(r, r) = ScalarTraits<S>::from_real(-1.0);
  return f;
}

template <class S>
Mat<S> signature_form(int dim) {
  return form_diag<S>(dim - 1, 1);
}

// <z, w> = w* I_{n,1} z.  Right-linear in z, conjugate-linear in w.
template <class S>
S form_eval(const std::vector<S>& z, const std::vector<S>& w) {
  if (z.size() != w.size() || z.empty())
    throw ValidationError("form_eval: dimension mismatch");
  S s{};
  const size_t last = z.size() - 1;
  for (size_t r = 0; r < last; ++r) s += conjugate(w[r]) * z[r];
  s -= conjugate(w[last]) * z[last];
  return s;
}

enum class VectorClass { negative, null, positive };

template <class S>
VectorClass classify_vector(const std::vector<S>& z, double tol) {
  double norm2 = 0.0;
  for (const S& x : z) norm2 += abs_sq(x);
  if (norm2 == 0.0) throw ValidationError("classify_vector: zero vector");
  const double q = real_part(form_eval(z, z));
  if (std::abs(q) <= tol * norm2) return VectorClass::null;
  return q < 0.0 ? VectorClass::negative : VectorClass::positive;
}

template <class S>
S form_eval(const HermitianSpace& space, const std::vector<S>& z,
            const std::vector<S>& w) {
  if (static_cast<int>(z.size()) != space.dim() ||
      static_cast<int>(w.size()) != space.dim())
    throw ValidationError("form_eval: dimension mismatch with the space");
  return form_eval(z, w);
}

template <class S>
VectorClass classify_vector(const HermitianSpace& space,
                            const std::vector<S>& z, double tol) {
  if (static_cast<int>(z.size()) != space.dim())
    throw ValidationError("classify_vector: dimension mismatch");
  return classify_vector(z, tol);
}

// Distance on the projectivized negative cone,
// cosh^2(rho/2) = <p,q><q,p> / (<p,p><q,q>).
// The numerator is |<p,q>|^2 and the denominator a product of two negative
// reals, so the ratio is real for quaternion scalars as well; the
// imaginary defect is checked against tol.
template <class S>
double bergman_distance(const std::vector<S>& p, const std::vector<S>& q,
                        double tol = 1e-9) {
  if (classify_vector(p, tol) != VectorClass::negative ||
      classify_vector(q, tol) != VectorClass::negative)
    throw ValidationError("bergman_distance: points must be negative class");
  const S pq = form_eval(p, q);
  const S qp = form_eval(q, p);
  const S pp = form_eval(p, p);
  const S qq = form_eval(q, q);
  const S num = pq * qp;
  const S den = pp * qq;
  if (imag_norm(num) > tol * (1.0 + abs_val(num)) ||
      imag_norm(den) > tol * (1.0 + abs_val(den)))
    throw NumericError("bergman_distance: ratio has imaginary defect");
  double ratio = real_part(num) / real_part(den);
  if (ratio < 1.0) ratio = 1.0;
  return 2.0 * std::acosh(std::sqrt(ratio));
}

template <class S>
double bergman_distance(const HermitianSpace& space, const std::vector<S>& p,
                        const std::vector<S>& q, double tol = 1e-9) {
  if (static_cast<int>(p.size()) != space.dim() ||
      static_cast<int>(q.size()) != space.dim())
    throw ValidationError("bergman_distance: dimension mismatch");
  return bergman_distance(p, q, tol);
}

struct OrthoBasis {
  std::vector<std::vector<Complex>> positive;
  std::vector<std::vector<Complex>> negative;
};

struct OrthoBasisH {
  std::vector<std::vector<Quaternion>> positive;
  std::vector<std::vector<Quaternion>> negative;
};

// Gram-Schmidt against the indefinite form with modulus pivoting.  Vectors
// are normalized to <v,v> = +-1, positives listed first.  Returns nothing
// when the span is degenerate to tolerance (a null direction survives).
std::optional<OrthoBasis> hyperbolic_gram_schmidt(
    std::vector<std::vector<Complex>> vectors, double tol);
std::optional<OrthoBasisH> hyperbolic_gram_schmidt(
    std::vector<std::vector<Quaternion>> vectors, double tol);

struct Signature {
  int positive = 0;
  int negative = 0;
  int null = 0;
};

// Signature of the form restricted to the span of the given vectors.
Signature restricted_signature(const std::vector<std::vector<Complex>>& basis,
                               double tol);
Signature restricted_signature(
    const std::vector<std::vector<Quaternion>>& basis, double tol);

}  // namespace kleinian
