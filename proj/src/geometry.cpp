#include "kleinian/geometry.hpp"

#include <algorithm>

#include "kleinian/embeddings.hpp"
#include "kleinian/linalg.hpp"

namespace kleinian {

namespace {

template <class S, class Basis>
std::optional<Basis> gram_schmidt_impl(std::vector<std::vector<S>> vectors,
                                       double tol) {
  Basis out;
  std::vector<std::vector<S>> ortho;  // normalized, mixed signs
  std::vector<double> signs;
  while (!vectors.empty()) {
    // Pick the remaining vector with the largest |<v,v>| relative to its
    // Euclidean norm; a degenerate span shows up as all pivots vanishing.
    int best = -1;
    double best_q = 0.0;
    for (size_t i = 0; i < vectors.size(); ++i) {
      const double n2 = vec_norm(vectors[i]);
      if (n2 < tol) continue;
      const double q = std::abs(real_part(form_eval(vectors[i], vectors[i]))) /
                       (n2 * n2);
      if (q > best_q) {
        best_q = q;
        best = static_cast<int>(i);
      }
    }
    if (best < 0 || best_q <= tol) {
      // Leftover directions are null or numerically zero.
      for (const auto& v : vectors)
        if (vec_norm(v) > std::sqrt(tol)) return std::nullopt;
      break;
    }
    std::vector<S> v = vectors[best];
    vectors.erase(vectors.begin() + best);
    const double q = real_part(form_eval(v, v));
    const double scale = 1.0 / std::sqrt(std::abs(q));
    for (S& x : v) x = x * ScalarTraits<S>::from_real(scale);
    const double sign = q > 0.0 ? 1.0 : -1.0;
    for (auto& w : vectors) {
      // c = <w,v>/<v,v> keeps <w - v c, v> = 0 under right-linearity.
      const S c = form_eval(w, v) * ScalarTraits<S>::from_real(sign);
      for (size_t r = 0; r < w.size(); ++r) w[r] -= v[r] * c;
    }
    ortho.push_back(std::move(v));
    signs.push_back(sign);
  }
  for (size_t i = 0; i < ortho.size(); ++i) {
    if (signs[i] > 0.0)
      out.positive.push_back(std::move(ortho[i]));
    else
      out.negative.push_back(std::move(ortho[i]));
  }
  return out;
}

}  // namespace

std::optional<OrthoBasis> hyperbolic_gram_schmidt(
    std::vector<std::vector<Complex>> vectors, double tol) {
  return gram_schmidt_impl<Complex, OrthoBasis>(std::move(vectors), tol);
}

std::optional<OrthoBasisH> hyperbolic_gram_schmidt(
    std::vector<std::vector<Quaternion>> vectors, double tol) {
  return gram_schmidt_impl<Quaternion, OrthoBasisH>(std::move(vectors), tol);
}

Signature restricted_signature(const std::vector<std::vector<Complex>>& basis,
                               double tol) {
  const int k = static_cast<int>(basis.size());
  CMatrix gram(k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) gram(r, c) = form_eval(basis[c], basis[r]);
  const HermitianEigen e = eigen_hermitian(gram);
  Signature sig;
  double scale = 0.0;
  for (double v : e.values) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1.0);
  for (double v : e.values) {
    if (std::abs(v) <= tol * scale)
      ++sig.null;
    else if (v > 0.0)
      ++sig.positive;
    else
      ++sig.negative;
  }
  return sig;
}

Signature restricted_signature(
    const std::vector<std::vector<Quaternion>>& basis, double tol) {
  // Complexified Gram doubles every eigenvalue.
  const int k = static_cast<int>(basis.size());
  HMatrix gram(k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) gram(r, c) = form_eval(basis[c], basis[r]);
  const HermitianEigen e = eigen_hermitian(complexify(gram));
  Signature sig;
  double scale = 0.0;
  for (double v : e.values) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, 1.0);
  for (double v : e.values) {
    if (std::abs(v) <= tol * scale)
      ++sig.null;
    else if (v > 0.0)
      ++sig.positive;
    else
      ++sig.negative;
  }
  sig.positive /= 2;
  sig.negative /= 2;
  sig.null /= 2;
  return sig;
}

}  // namespace kleinian
