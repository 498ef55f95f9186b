#include "kleinian/isometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "kleinian/embeddings.hpp"
#include "kleinian/geometry.hpp"
#include "kleinian/linalg.hpp"
#include "kleinian/words.hpp"

namespace kleinian {

const char* isometry_kind_name(IsometryKind k) {
  switch (k) {
    case IsometryKind::loxodromic: return "loxodromic";
    case IsometryKind::parabolic: return "parabolic";
    case IsometryKind::elliptic: return "elliptic";
  }
  return "?";
}

namespace {

CMatrix to_complex_picture(const CMatrix& g) { return g; }
CMatrix to_complex_picture(const HMatrix& g) { return complexify(g); }
CMatrix to_complex_picture(const RMatrix& g) {
  CMatrix m(g.rows, g.cols);
  for (size_t i = 0; i < g.a.size(); ++i) m.a[i] = Complex{g.a[i], 0.0};
  return m;
}

std::vector<Complex> to_ambient(const std::vector<Complex>& v,
                                const CMatrix&) {
  return v;
}
std::vector<Quaternion> to_ambient(const std::vector<Complex>& v,
                                   const HMatrix&) {
  return vec_quaternify(v);
}
std::vector<double> to_ambient(const std::vector<Complex>& v,
                               const RMatrix&) {
  // Real witnesses keep only the dominant real direction; used for SO(m,1)
  // elements, whose extremal eigenvectors are real up to phase.
  std::vector<double> w(v.size());
  double phase_re = 1.0, phase_im = 0.0, best = 0.0;
  for (const Complex& z : v)
    if (std::abs(z) > best) {
      best = std::abs(z);
      phase_re = z.real() / std::abs(z);
      phase_im = z.imag() / std::abs(z);
    }
  for (size_t r = 0; r < v.size(); ++r)
    w[r] = v[r].real() * phase_re + v[r].imag() * phase_im;
  return w;
}

}  // namespace

template <class S>
IsometryClassification<S> classify_isometry(const Mat<S>& g,
                                            const GroupSpec& spec,
                                            double tol) {
  const MembershipReport mem = group_membership(g, spec, std::max(tol, 1e-7));
  if (!mem.member)
    throw ValidationError("classify_isometry: membership failure, residual " +
                          std::to_string(mem.residual));
  const CMatrix m = to_complex_picture(g);
  const ComplexEigen eig = eigen_complex(m);
  if (eig.backward_error > 1e-10 * std::max(1.0, m.frobenius_norm()))
    throw NumericError("classify_isometry: eigen solve did not converge");

  IsometryClassification<S> out;
  double rad_max = 0.0, rad_min = 1e300;
  int idx_max = 0, idx_min = 0;
  for (size_t k = 0; k < eig.values.size(); ++k) {
    const double r = std::abs(eig.values[k]);
    if (r > rad_max) {
      rad_max = r;
      idx_max = static_cast<int>(k);
    }
    if (r < rad_min) {
      rad_min = r;
      idx_min = static_cast<int>(k);
    }
  }
  if (rad_max > 1.0 + tol) {
    out.kind = IsometryKind::loxodromic;
    out.margin = rad_max - 1.0;
    out.fixed_points.push_back(to_ambient(eig.vectors.col(idx_max), g));
    out.fixed_points.push_back(to_ambient(eig.vectors.col(idx_min), g));
    return out;
  }
  // Unit spectrum: elliptic iff some eigenvector projects inside.
  double best_neg = 0.0;
  double min_q = 1e300;
  int neg_idx = -1, null_idx = 0;
  for (int k = 0; k < eig.vectors.cols; ++k) {
    const auto v = to_ambient(eig.vectors.col(k), g);
    const double q = real_part(form_eval(v, v));
    const double rel = std::abs(q) / 1.0;  // eigenvectors have unit norm
    if (q < 0.0 && rel > tol && rel > best_neg) {
      best_neg = rel;
      neg_idx = k;
    }
    if (rel < min_q) {
      min_q = rel;
      null_idx = k;
    }
  }
  if (neg_idx >= 0) {
    out.kind = IsometryKind::elliptic;
    out.margin = best_neg;
    out.fixed_points.push_back(to_ambient(eig.vectors.col(neg_idx), g));
    return out;
  }
  out.kind = IsometryKind::parabolic;
  out.margin = std::max(min_q, 1.0 + tol - rad_max);
  out.fixed_points.push_back(to_ambient(eig.vectors.col(null_idx), g));
  return out;
}

template IsometryClassification<Complex> classify_isometry(const CMatrix&,
                                                           const GroupSpec&,
                                                           double);
template IsometryClassification<Quaternion> classify_isometry(const HMatrix&,
                                                              const GroupSpec&,
                                                              double);
template IsometryClassification<double> classify_isometry(const RMatrix&,
                                                          const GroupSpec&,
                                                          double);

namespace {

// Chordal separation of projectivized vectors; right-scalar invariant.
template <class S>
double projective_separation(const std::vector<S>& u,
                             const std::vector<S>& v) {
  S dot{};
  for (size_t r = 0; r < u.size(); ++r) dot += conjugate(v[r]) * u[r];
  const double nu = vec_norm(u), nv = vec_norm(v);
  const double cos2 = abs_sq(dot) / (nu * nu * nv * nv);
  return std::sqrt(std::max(0.0, 1.0 - cos2));
}

}  // namespace

template <class S>
Elementarity nonelementary_heuristic(const std::vector<Mat<S>>& gens,
                                     const GroupSpec& spec, int word_len,
                                     double separation_tol) {
  if (gens.empty()) return Elementarity::inconclusive;
  const WordBall ball =
      word_ball(static_cast<int>(gens.size()), std::max(word_len, 1), 2000);
  const std::vector<Mat<S>> inv = invert_all(gens);
  std::vector<std::array<std::vector<S>, 2>> axes;
  for (const Word& w : ball.words) {
    const Mat<S> m = evaluate_word(w, gens, inv);
    IsometryClassification<S> cls;
    try {
      cls = classify_isometry(m, spec, 1e-7);
    } catch (const std::exception&) {
      continue;  // membership drift on long words; skip
    }
    if (cls.kind != IsometryKind::loxodromic) continue;
    std::array<std::vector<S>, 2> pair{cls.fixed_points[0],
                                       cls.fixed_points[1]};
    for (const auto& other : axes) {
      double min_sep = 1e300;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          min_sep = std::min(
              min_sep, projective_separation(pair[a], other[b]));
      if (min_sep > separation_tol) return Elementarity::nonelementary;
    }
    axes.push_back(std::move(pair));
  }
  return Elementarity::inconclusive;
}

template Elementarity nonelementary_heuristic(const std::vector<CMatrix>&,
                                              const GroupSpec&, int, double);
template Elementarity nonelementary_heuristic(const std::vector<HMatrix>&,
                                              const GroupSpec&, int, double);
template Elementarity nonelementary_heuristic(const std::vector<RMatrix>&,
                                              const GroupSpec&, int, double);

}  // namespace kleinian
