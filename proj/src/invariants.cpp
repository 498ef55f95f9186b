#include "kleinian/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "kleinian/embeddings.hpp"
#include "kleinian/linalg.hpp"
#include "kleinian/rng.hpp"
#include "kleinian/traces.hpp"

namespace kleinian {

const char* schur_type_name(SchurType t) {
  switch (t) {
    case SchurType::real: return "real";
    case SchurType::complex: return "complex";
    case SchurType::quaternion: return "quaternion";
    case SchurType::unknown: return "unknown";
  }
  return "?";
}

const char* detection_kind_name(DetectionKind k) {
  switch (k) {
    case DetectionKind::real_form: return "real_form";
    case DetectionKind::complex_line: return "complex_line";
    case DetectionKind::reducible: return "reducible";
    case DetectionKind::none: return "none";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Commutants.  The commutant of the generators equals the commutant of the
// generated algebra, so the linear system only stacks the generators.

namespace {

constexpr double kNullTol = 1e-8;  // relative singular-value threshold

std::vector<CMatrix> commutant(const std::vector<CMatrix>& gens) {
  const int n = gens.at(0).rows;
  CMatrix m(static_cast<int>(gens.size()) * n * n, n * n);
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    const CMatrix& g = gens[gi];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const int row = static_cast<int>(gi) * n * n + r * n + c;
        for (int s = 0; s < n; ++s) {
          m(row, s * n + c) += g(r, s);   // (g X)(r,c)
          m(row, r * n + s) -= g(s, c);   // (X g)(r,c)
        }
      }
  }
  std::vector<CMatrix> basis;
  for (const auto& v : null_space(m, kNullTol)) {
    CMatrix b(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) b(r, c) = v[r * n + c];
    basis.push_back(std::move(b));
  }
  return basis;
}

// Real-linear commutant over the quaternions: unknowns are the 4 n^2 real
// coordinates of X, conditions g X - X g = 0 per generator.
std::vector<HMatrix> commutant(const std::vector<HMatrix>& gens) {
  const int n = gens.at(0).rows;
  const int cols = 4 * n * n;
  RMatrix m(static_cast<int>(gens.size()) * cols, cols);
  const Quaternion units[4] = {Quaternion{1.0}, Quaternion::unit_i(),
                               Quaternion::unit_j(), Quaternion::unit_k()};
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    const HMatrix& g = gens[gi];
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        for (int e = 0; e < 4; ++e) {
          const int col = (s * n + t) * 4 + e;
          // Image of the basis element E_{st} * unit_e under X -> gX - Xg.
          HMatrix img(n);
          for (int r = 0; r < n; ++r) img(r, t) += g(r, s) * units[e];
          for (int c = 0; c < n; ++c) img(s, c) -= units[e] * g(t, c);
          const int row0 = static_cast<int>(gi) * cols;
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
              const Quaternion& q = img(r, c);
              const int rc = row0 + (r * n + c) * 4;
              m(rc + 0, col) += q.a;
              m(rc + 1, col) += q.b;
              m(rc + 2, col) += q.c;
              m(rc + 3, col) += q.d;
            }
        }
  }
  std::vector<HMatrix> basis;
  for (const auto& v : null_space(m, kNullTol)) {
    HMatrix b(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const int at = (r * n + c) * 4;
        b(r, c) = Quaternion{v[at], v[at + 1], v[at + 2], v[at + 3]};
      }
    basis.push_back(std::move(b));
  }
  return basis;
}

template <class S>
double commutation_residual(const Mat<S>& x, const std::vector<Mat<S>>& gens) {
  double res = 0.0;
  for (const auto& g : gens) res = std::max(res, max_abs_diff(g * x, x * g));
  return res;
}

// Euclidean Gram-Schmidt over the scalar ring; coefficients multiply on the
// right.  Drops vectors below the independence tolerance.
template <class S>
std::vector<std::vector<S>> orthonormalize(std::vector<std::vector<S>> vs,
                                           double tol = 1e-8) {
  std::vector<std::vector<S>> out;
  for (auto& v : vs) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : out) {
        S dot{};
        for (size_t r = 0; r < v.size(); ++r) dot += conjugate(u[r]) * v[r];
        for (size_t r = 0; r < v.size(); ++r) v[r] -= u[r] * dot;
      }
    const double norm = vec_norm(v);
    if (norm <= tol) continue;
    for (auto& x : v) x = x * ScalarTraits<S>::from_real(1.0 / norm);
    out.push_back(std::move(v));
  }
  return out;
}

template <class S>
Mat<S> basis_matrix(const std::vector<std::vector<S>>& basis) {
  const int n = static_cast<int>(basis.at(0).size());
  const int k = static_cast<int>(basis.size());
  Mat<S> b(n, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < n; ++r) b(r, c) = basis[c][r];
  return b;
}

// max_g ||(I - P) g P|| with P the orthogonal projector onto the span.
template <class S>
double invariance_residual(const std::vector<std::vector<S>>& basis,
                           const std::vector<Mat<S>>& gens) {
  const Mat<S> b = basis_matrix(basis);
  const Mat<S> p = b * b.conj_transpose();
  const Mat<S> id = Mat<S>::identity(p.rows);
  double res = 0.0;
  for (const auto& g : gens)
    res = std::max(res, ((id - p) * (g * p)).max_abs());
  return res;
}

template <class S>
double projector_distance(const std::vector<std::vector<S>>& a,
                          const std::vector<std::vector<S>>& b) {
  const Mat<S> pa = basis_matrix(a) * basis_matrix(a).conj_transpose();
  const Mat<S> pb = basis_matrix(b) * basis_matrix(b).conj_transpose();
  return max_abs_diff(pa, pb);
}

// Restriction of g to an invariant subspace with Euclidean-orthonormal
// basis columns B: r = B* g B.
template <class S>
std::vector<Mat<S>> restrict_all(const std::vector<Mat<S>>& gens,
                                 const std::vector<std::vector<S>>& basis) {
  const Mat<S> b = basis_matrix(basis);
  const Mat<S> bh = b.conj_transpose();
  std::vector<Mat<S>> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(bh * (g * b));
  return out;
}

// Solution space of gamma S = S conj(gamma) over all generators.
std::vector<CMatrix> real_structure_space(const std::vector<CMatrix>& gens) {
  const int k = gens.at(0).rows;
  CMatrix m(static_cast<int>(gens.size()) * k * k, k * k);
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    const CMatrix& g = gens[gi];
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        const int row = static_cast<int>(gi) * k * k + r * k + c;
        for (int s = 0; s < k; ++s) {
          m(row, s * k + c) += g(r, s);               // (gamma S)(r,c)
          m(row, r * k + s) -= std::conj(g(s, c));    // (S conj(gamma))(r,c)
        }
      }
  }
  std::vector<CMatrix> basis;
  for (const auto& v : null_space(m, kNullTol)) {
    CMatrix b(k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) b(r, c) = v[r * k + c];
    basis.push_back(std::move(b));
  }
  return basis;
}

CMatrix conj_entrywise(const CMatrix& m) {
  CMatrix out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = std::conj(m.a[i]);
  return out;
}

// Frobenius-Schur style classification of an irreducible complex
// restriction: no intertwiner -> complex; S conj(S) = +cI -> real;
// -cI -> quaternion.
SchurType schur_of_restriction(const std::vector<CMatrix>& restricted) {
  const std::vector<CMatrix> space = real_structure_space(restricted);
  if (space.empty()) return SchurType::complex;
  const CMatrix& s = space.front();
  const CMatrix p = s * conj_entrywise(s);
  const int k = p.rows;
  const Complex c = p.trace() / static_cast<double>(k);
  CMatrix ci(k);
  for (int r = 0; r < k; ++r) ci(r, r) = c;
  if (max_abs_diff(p, ci) > 1e-6 * std::max(1.0, std::abs(c)))
    return SchurType::unknown;
  if (std::abs(c.imag()) > 1e-6 * std::abs(c)) return SchurType::unknown;
  return c.real() > 0.0 ? SchurType::real : SchurType::quaternion;
}

SchurType schur_of_restriction(const std::vector<HMatrix>& restricted) {
  // Real commutant dimension of a quaternionic-irreducible restriction:
  // 4 = contains a full quaternion structure (realizable over C, FS real),
  // 2 = complexifiable only, 1 = genuinely quaternionic.
  const size_t d = commutant(restricted).size();
  switch (d) {
    case 4: return SchurType::real;
    case 2: return SchurType::complex;
    case 1: return SchurType::quaternion;
    default: return SchurType::unknown;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Invariant subspace scan.

namespace {

struct Cluster {
  Complex value;
  std::vector<int> members;
};

std::vector<Cluster> cluster_eigenvalues(const std::vector<Complex>& values,
                                         double tol) {
  std::vector<Cluster> clusters;
  for (size_t i = 0; i < values.size(); ++i) {
    bool placed = false;
    for (auto& c : clusters)
      if (std::abs(values[i] - c.value) <= tol) {
        c.members.push_back(static_cast<int>(i));
        placed = true;
        break;
      }
    if (!placed) clusters.push_back({values[i], {static_cast<int>(i)}});
  }
  return clusters;
}

template <class S>
void record_subspace(SubspaceScan<S>& scan,
                     std::vector<std::vector<S>> basis,
                     const std::vector<Mat<S>>& gens, double tol) {
  if (basis.empty() ||
      static_cast<int>(basis.size()) == static_cast<int>(basis[0].size()))
    return;  // trivial or full
  const double res = invariance_residual(basis, gens);
  if (res > tol) return;
  for (const auto& existing : scan.subspaces)
    if (existing.dim == static_cast<int>(basis.size()) &&
        projector_distance(existing.basis, basis) < 1e-6)
      return;
  InvariantSubspace<S> sub;
  sub.dim = static_cast<int>(basis.size());
  sub.signature = restricted_signature(basis, 1e-8);
  sub.invariance_residual = res;
  sub.schur_type = schur_of_restriction(restrict_all(gens, basis));
  sub.basis = std::move(basis);
  scan.subspaces.push_back(std::move(sub));
}

}  // namespace

SubspaceScan<Complex> invariant_subspace_scan(const std::vector<CMatrix>& gens,
                                              double tol, uint64_t seed) {
  if (gens.empty()) throw ValidationError("invariant_subspace_scan: no gens");
  SubspaceScan<Complex> scan;
  const std::vector<CMatrix> comm = commutant(gens);
  scan.commutant_dim = 2.0 * static_cast<double>(comm.size());
  if (comm.size() <= 1) {
    scan.irreducible = true;
    return scan;
  }
  const double vtol = std::max(tol, 1e-8);
  for (int restart = 0; restart < 3; ++restart) {
    Rng rng(seed, 1000 + restart);
    CMatrix x(gens[0].rows);
    for (const auto& b : comm) {
      const Complex z = rng.next_normal_complex();
      for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += z * b.a[i];
    }
    if (commutation_residual(x, gens) > 1e-6 * std::max(1.0, x.max_abs()))
      continue;
    ComplexEigen eig;
    try {
      eig = eigen_complex(x);
    } catch (const NumericError&) {
      continue;
    }
    double scale = 0.0;
    for (const Complex& v : eig.values) scale = std::max(scale, std::abs(v));
    for (const Cluster& c :
         cluster_eigenvalues(eig.values, 1e-6 * std::max(scale, 1.0))) {
      std::vector<std::vector<Complex>> basis;
      for (int idx : c.members) basis.push_back(eig.vectors.col(idx));
      record_subspace(scan, orthonormalize(std::move(basis)), gens, vtol);
    }
  }
  std::sort(scan.subspaces.begin(), scan.subspaces.end(),
            [](const auto& a, const auto& b) { return a.dim < b.dim; });
  scan.irreducible = scan.subspaces.empty();
  return scan;
}

SubspaceScan<Quaternion> invariant_subspace_scan(
    const std::vector<HMatrix>& gens, double tol, uint64_t seed) {
  if (gens.empty()) throw ValidationError("invariant_subspace_scan: no gens");
  SubspaceScan<Quaternion> scan;
  const std::vector<HMatrix> comm = commutant(gens);
  scan.commutant_dim = static_cast<double>(comm.size());
  if (comm.size() <= 1) {
    scan.irreducible = true;
    return scan;
  }
  const double vtol = std::max(tol, 1e-8);
  for (int restart = 0; restart < 3; ++restart) {
    Rng rng(seed, 2000 + restart);
    HMatrix x(gens[0].rows);
    for (const auto& b : comm) {
      // Real coefficients only: the commutant is a real algebra.
      const double t = rng.next_normal();
      for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += t * b.a[i];
    }
    if (commutation_residual(x, gens) > 1e-6 * std::max(1.0, x.max_abs()))
      continue;
    ComplexEigen eig;
    try {
      eig = eigen_complex(complexify(x));
    } catch (const NumericError&) {
      continue;
    }
    double scale = 0.0;
    for (const Complex& v : eig.values) scale = std::max(scale, std::abs(v));
    std::vector<Cluster> clusters =
        cluster_eigenvalues(eig.values, 1e-6 * std::max(scale, 1.0));
    // Merge conjugate pairs; each merged class is one quaternionic
    // eigenspace, reachable from either complex half.
    std::vector<bool> used(clusters.size(), false);
    for (size_t a = 0; a < clusters.size(); ++a) {
      if (used[a]) continue;
      used[a] = true;
      for (size_t b = a + 1; b < clusters.size(); ++b) {
        if (used[b]) continue;
        if (std::abs(std::conj(clusters[a].value) - clusters[b].value) <=
            1e-5 * std::max(scale, 1.0))
          used[b] = true;  // covered by the twist of cluster a
      }
      std::vector<std::vector<Quaternion>> basis;
      for (int idx : clusters[a].members)
        basis.push_back(vec_quaternify(eig.vectors.col(idx)));
      record_subspace(scan, orthonormalize(std::move(basis)), gens, vtol);
    }
  }
  std::sort(scan.subspaces.begin(), scan.subspaces.end(),
            [](const auto& a, const auto& b) { return a.dim < b.dim; });
  scan.irreducible = scan.subspaces.empty();
  return scan;
}

// ---------------------------------------------------------------------------
// Real structure.

namespace {

// Principal inverse square root through the (generally non-Hermitian)
// eigendecomposition; valid when the spectrum avoids the closed negative
// real axis.
std::optional<CMatrix> inverse_sqrt(const CMatrix& p) {
  ComplexEigen eig;
  try {
    eig = eigen_complex(p);
  } catch (const NumericError&) {
    return std::nullopt;
  }
  const int k = p.rows;
  for (const Complex& v : eig.values) {
    if (std::abs(v) < 1e-10) return std::nullopt;
    if (std::abs(std::arg(v)) > 3.0915926 /* pi - 0.05 */) return std::nullopt;
  }
  CMatrix d(k);
  for (int r = 0; r < k; ++r)
    d(r, r) = std::pow(eig.values[r], Complex{-0.5, 0.0});
  CMatrix vinv;
  try {
    vinv = inverse(eig.vectors);
  } catch (const NumericError&) {
    return std::nullopt;
  }
  return eig.vectors * d * vinv;
}

double smallest_singular(const CMatrix& m) {
  const Svd s = svd(m);
  return s.singular_values.empty() ? 0.0 : s.singular_values.back();
}

double max_imag(const CMatrix& m) {
  double r = 0.0;
  for (const Complex& z : m.a) r = std::max(r, std::abs(z.imag()));
  return r;
}

}  // namespace

std::optional<RealStructure> real_structure_solve(
    const std::vector<CMatrix>& gens, double tol, uint64_t seed) {
  if (gens.empty()) throw ValidationError("real_structure_solve: no gens");
  const int k = gens[0].rows;
  const std::vector<CMatrix> space = real_structure_space(gens);
  if (space.empty()) return std::nullopt;
  double gen_scale = 1.0;
  for (const auto& g : gens) gen_scale = std::max(gen_scale, g.max_abs());
  const double real_tol = std::max(tol, 1e-9) * 100.0 * gen_scale;
  const CMatrix form = signature_form<Complex>(k);
  const CMatrix id = CMatrix::identity(k);

  for (int restart = 0; restart < 10; ++restart) {
    Rng rng(seed, 3000 + restart);
    CMatrix s(k);
    for (const auto& b : space) {
      const Complex z = rng.next_normal_complex();
      for (size_t i = 0; i < s.a.size(); ++i) s.a[i] += z * b.a[i];
    }
    const double sn = s.frobenius_norm();
    if (sn < 1e-12) continue;
    s = (1.0 / sn) * s;
    // Normalize to an involution: S conj(S) = I.  The product commutes with
    // the algebra, so its principal inverse square root (when the spectrum
    // allows one) slides through S.
    const std::optional<CMatrix> corr = inverse_sqrt(s * conj_entrywise(s));
    if (!corr) continue;
    s = *corr * s;
    if (max_abs_diff(s * conj_entrywise(s), id) > 1e-7 * k) continue;

    for (double alpha : {0.437, 1.103, 1.871, 2.609}) {
      const Complex phase = std::polar(1.0, alpha);
      CMatrix t = id;
      for (size_t i = 0; i < t.a.size(); ++i) t.a[i] += phase * s.a[i];
      if (smallest_singular(t) < 1e-4) continue;
      bool ok = true;
      for (const auto& g : gens) {
        if (max_imag(lu_solve(t, g * t)) > real_tol) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      // Correct to the form group: T* F T must be congruent over the reals
      // to F itself.  A degenerate real part means the conjugated group
      // preserves no real hyperbolic subspace (symplectic obstruction).
      const CMatrix g_form = t.conj_transpose() * form * t;
      RMatrix gr(k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) gr(r, c) = g_form(r, c).real();
      const SymmetricEigen se = eigen_symmetric(gr);
      double scale = 0.0;
      for (double v : se.values) scale = std::max(scale, std::abs(v));
      int negatives = 0;
      bool degenerate = false;
      for (double v : se.values) {
        if (std::abs(v) <= 1e-7 * std::max(scale, 1e-12)) degenerate = true;
        if (v < 0.0) ++negatives;
      }
      if (degenerate || negatives != 1) continue;
      // Columns ordered positives first, the negative direction last.
      RMatrix w(k);
      int col = 0;
      for (int i = 0; i < k; ++i)
        if (se.values[i] > 0.0) {
          const double inv = 1.0 / std::sqrt(se.values[i]);
          for (int r = 0; r < k; ++r) w(r, col) = se.vectors(r, i) * inv;
          ++col;
        }
      for (int i = 0; i < k; ++i)
        if (se.values[i] < 0.0) {
          const double inv = 1.0 / std::sqrt(-se.values[i]);
          for (int r = 0; r < k; ++r) w(r, col) = se.vectors(r, i) * inv;
          ++col;
        }
      CMatrix t2 = t * promote_to_complex(w);
      RealStructure out;
      out.form_residual = max_abs_diff(t2.conj_transpose() * form * t2, form);
      double realness = 0.0;
      for (const auto& g : gens)
        realness = std::max(realness, max_imag(lu_solve(t2, g * t2)));
      out.realness_residual = realness;
      if (out.form_residual > 1e-6 || realness > real_tol) continue;
      out.s = s;
      out.t = t2;
      return out;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Detection.

namespace {

// Form-orthonormal basis of the subspace (negative direction last) plus a
// form-orthonormal basis of its orthogonal complement.
template <class S>
struct SplitBasis {
  Mat<S> columns;    // [complement | subspace], Gram = diag(1,...,1,-1)
  int subspace_dim;  // k+1
  bool ok = false;
};

template <class S>
SplitBasis<S> split_basis(const std::vector<std::vector<S>>& subspace,
                          int ambient, double tol) {
  SplitBasis<S> out;
  out.subspace_dim = static_cast<int>(subspace.size());
  auto sub = hyperbolic_gram_schmidt(subspace, tol);
  if (!sub || sub->negative.size() != 1) return out;
  // Form-project the standard basis off the subspace to span the
  // complement, then orthonormalize it (all positive directions).
  std::vector<std::vector<S>> candidates;
  for (int i = 0; i < ambient; ++i) {
    std::vector<S> e(ambient);
    e[i] = ScalarTraits<S>::from_real(1.0);
    for (const auto& b : sub->positive) {
      const S c = form_eval(e, b);
      for (int r = 0; r < ambient; ++r) e[r] -= b[r] * c;
    }
    for (const auto& b : sub->negative) {
      const S c = -1.0 * form_eval(e, b);
      for (int r = 0; r < ambient; ++r) e[r] -= b[r] * c;
    }
    candidates.push_back(std::move(e));
  }
  auto comp = hyperbolic_gram_schmidt(candidates, tol);
  if (!comp || !comp->negative.empty()) return out;
  if (static_cast<int>(comp->positive.size() + subspace.size()) != ambient)
    return out;
  Mat<S> cols(ambient, ambient);
  int c = 0;
  for (const auto& v : comp->positive) cols.set_col(c++, v);
  for (const auto& v : sub->positive) cols.set_col(c++, v);
  cols.set_col(c++, sub->negative[0]);
  out.columns = cols;
  out.ok = true;
  return out;
}

template <class S>
std::vector<Mat<S>> conjugate_all(const std::vector<Mat<S>>& gens,
                                  const Mat<S>& c) {
  const Mat<S> cinv = form_inverse(c);
  std::vector<Mat<S>> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(cinv * g * c);
  return out;
}

// Off-block mass plus the kind-specific defect of the noncompact block.
template <class S>
double pattern_residual(const std::vector<Mat<S>>& conjugated, int split,
                        DetectionKind kind, ScalarField ambient_field) {
  double res = 0.0;
  for (const auto& g : conjugated) {
    const int n = g.rows;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const bool upper = r < split && c < split;
        const bool lower = r >= split && c >= split;
        if (!upper && !lower) res = std::max(res, abs_val(g(r, c)));
      }
    for (int r = split; r < n; ++r)
      for (int c = split; c < n; ++c) {
        if (kind == DetectionKind::real_form) {
          res = std::max(res, imag_norm(g(r, c)));
        } else if (kind == DetectionKind::complex_line &&
                   ambient_field == ScalarField::quaternion) {
          if constexpr (ScalarTraits<S>::field == ScalarField::quaternion) {
            const Quaternion q = g(r, c);
            res = std::max(res, std::sqrt(q.c * q.c + q.d * q.d));
          }
        }
      }
  }
  return res;
}

template <class S>
void finish_detection(DetectionResult& result, const std::vector<Mat<S>>& gens,
                      Mat<S> conjugator, int split, const GroupSpec& ambient,
                      double tol) {
  if constexpr (ScalarTraits<S>::field == ScalarField::complex) {
    // Global phase puts the conjugator back in the special unitary group.
    const Complex det = determinant(conjugator);
    const Complex fix = std::polar(1.0, -std::arg(det) / conjugator.rows);
    conjugator = scale_left(fix, conjugator);
  }
  result.conjugator_membership_residual =
      group_membership(conjugator, ambient, tol).residual;
  result.residual = pattern_residual(conjugate_all(gens, conjugator), split,
                                     result.kind, ScalarTraits<S>::field);
  result.conjugator = std::move(conjugator);
}

const double kDetectScanTol = 1e-7;

}  // namespace

DetectionResult detect(const std::vector<CMatrix>& gens, int word_len,
                       double tol, uint64_t seed) {
  if (gens.empty()) throw ValidationError("detect: no generators");
  const int dim = gens[0].rows;
  const GroupSpec ambient = GroupSpec::make(Family::su, dim - 1, 1);
  DetectionResult result;
  // Light realness precheck; the analysis pipeline runs the full-depth scan
  // separately.
  const RealnessReport pre = realness_report(
      gens, std::min(word_len, 3), tol, Exec::parallel, 5000);
  result.realness_warning = !pre.real;

  SubspaceScan<Complex> scan =
      invariant_subspace_scan(gens, kDetectScanTol, seed);
  for (const auto& s : scan.subspaces) result.subspace_dims.push_back(s.dim);

  // Minimal verified subspace carrying the negative direction; the whole
  // space when none is proper.
  std::vector<std::vector<Complex>> negative_basis;
  for (const auto& s : scan.subspaces)
    if (s.signature.negative == 1 && s.signature.null == 0) {
      negative_basis = s.basis;
      break;
    }
  if (negative_basis.empty()) {
    if (!scan.irreducible) {
      // Proper subspaces exist but none carries the negative cone cleanly.
      result.kind = DetectionKind::reducible;
      result.note = "no nondegenerate negative invariant subspace";
      return result;
    }
    negative_basis.resize(dim);
    for (int i = 0; i < dim; ++i) {
      negative_basis[i] = std::vector<Complex>(dim);
      negative_basis[i][i] = Complex{1.0, 0.0};
    }
  }
  const int sub_dim = static_cast<int>(negative_basis.size());
  if (sub_dim == 1) {
    result.kind = DetectionKind::none;
    result.note = "invariant negative line: elementary input";
    return result;
  }

  const SplitBasis<Complex> split = split_basis(negative_basis, dim, 1e-9);
  if (!split.ok) {
    result.kind = DetectionKind::none;
    result.note = "degenerate restriction of the form";
    return result;
  }
  const int split_at = dim - sub_dim;
  std::vector<CMatrix> conjugated = conjugate_all(gens, split.columns);
  std::vector<CMatrix> restricted;
  restricted.reserve(gens.size());
  for (const auto& g : conjugated)
    restricted.push_back(g.block(split_at, split_at, sub_dim, sub_dim));

  const auto structure = real_structure_solve(restricted, tol, seed);
  if (structure) {
    result.kind = DetectionKind::real_form;
    result.m = sub_dim - 1;
    result.schur_type = SchurType::real;
    const CMatrix c =
        split.columns * block_embed(structure->t, dim);
    finish_detection(result, gens, c, split_at, ambient, tol);
    return result;
  }
  if (sub_dim == 2) {
    result.kind = DetectionKind::complex_line;
    result.schur_type = SchurType::complex;
    finish_detection(result, gens, split.columns, split_at, ambient, tol);
    return result;
  }
  result.kind =
      scan.subspaces.empty() ? DetectionKind::none : DetectionKind::reducible;
  result.note = "negative subspace admits no real structure";
  return result;
}

namespace {

// Quaternion-to-complex normalization of a restricted generator set: a
// form-skew element of the commutant squaring to -I is conjugate to i times
// the identity inside the symplectic group; its +i eigenbasis realigns the
// generators with the complex subfield.
struct ComplexNormalization {
  HMatrix w;          // in Sp(k,1)
  std::vector<CMatrix> complexified;
  double defect = 0.0;  // residual j/k components after normalization
  bool ok = false;
};

HMatrix form_adjoint(const HMatrix& x) {
  const HMatrix f = signature_form<Quaternion>(x.rows);
  return f * x.conj_transpose() * f;
}

ComplexNormalization complex_normalize(const std::vector<HMatrix>& restricted,
                                       uint64_t seed) {
  ComplexNormalization out;
  const int k = restricted.at(0).rows;
  const std::vector<HMatrix> comm = commutant(restricted);
  if (comm.size() < 2) return out;
  for (int restart = 0; restart < 8; ++restart) {
    Rng rng(seed, 4000 + restart);
    HMatrix x(k);
    for (const auto& b : comm) {
      const double t = rng.next_normal();
      for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += t * b.a[i];
    }
    HMatrix a = 0.5 * (x - form_adjoint(x));
    const double an = a.frobenius_norm();
    if (an < 1e-8) continue;
    a = (1.0 / an) * a;
    // a^2 must be a negative real scalar for a to define a complex
    // structure compatible with the group.
    const HMatrix a2 = a * a;
    const double c = -a2(0, 0).a;
    if (c <= 1e-10) continue;
    HMatrix minus_c = HMatrix::identity(k);
    for (int r = 0; r < k; ++r) minus_c(r, r) = Quaternion{-c};
    if (max_abs_diff(a2, minus_c) > 1e-6 * c) continue;
    a = (1.0 / std::sqrt(c)) * a;
    // +i eigenspace of the complexified structure.
    ComplexEigen eig;
    try {
      eig = eigen_complex(complexify(a));
    } catch (const NumericError&) {
      continue;
    }
    std::vector<std::vector<Quaternion>> basis;
    for (size_t t = 0; t < eig.values.size(); ++t)
      if (eig.values[t].imag() > 0.5)
        basis.push_back(vec_quaternify(eig.vectors.col(static_cast<int>(t))));
    if (static_cast<int>(basis.size()) != k) continue;
    auto gs = hyperbolic_gram_schmidt(basis, 1e-9);
    if (!gs || gs->negative.size() != 1 ||
        static_cast<int>(gs->positive.size()) != k - 1)
      continue;
    HMatrix w(k, k);
    int col = 0;
    for (const auto& v : gs->positive) w.set_col(col++, v);
    w.set_col(col, gs->negative[0]);
    // Conjugate and measure the residual quaternionic components.
    const HMatrix winv = form_inverse(w);
    double defect = 0.0;
    std::vector<CMatrix> complexified;
    for (const auto& r : restricted) {
      const HMatrix rc = winv * r * w;
      for (const Quaternion& q : rc.a)
        defect = std::max(defect, std::sqrt(q.c * q.c + q.d * q.d));
      complexified.push_back(complex_part(rc));
    }
    if (defect > 1e-6) continue;
    out.w = w;
    out.complexified = std::move(complexified);
    out.defect = defect;
    out.ok = true;
    return out;
  }
  return out;
}

}  // namespace

DetectionResult detect(const std::vector<HMatrix>& gens, int word_len,
                       double tol, uint64_t seed) {
  if (gens.empty()) throw ValidationError("detect: no generators");
  const int dim = gens[0].rows;
  const GroupSpec ambient = GroupSpec::make(Family::sp, dim - 1, 1);
  DetectionResult result;
  const RealnessReport pre = realness_report(
      gens, std::min(word_len, 3), tol, Exec::parallel, 5000);
  result.realness_warning = !pre.real;

  SubspaceScan<Quaternion> scan =
      invariant_subspace_scan(gens, kDetectScanTol, seed);
  for (const auto& s : scan.subspaces) result.subspace_dims.push_back(s.dim);

  std::vector<std::vector<Quaternion>> negative_basis;
  for (const auto& s : scan.subspaces)
    if (s.signature.negative == 1 && s.signature.null == 0) {
      negative_basis = s.basis;
      break;
    }
  if (negative_basis.empty()) {
    if (!scan.irreducible) {
      result.kind = DetectionKind::reducible;
      result.note = "no nondegenerate negative invariant subspace";
      return result;
    }
    negative_basis.resize(dim);
    for (int i = 0; i < dim; ++i) {
      negative_basis[i] = std::vector<Quaternion>(dim);
      negative_basis[i][i] = Quaternion{1.0};
    }
  }
  const int sub_dim = static_cast<int>(negative_basis.size());
  if (sub_dim == 1) {
    result.kind = DetectionKind::none;
    result.note = "invariant negative line: elementary input";
    return result;
  }
  const SplitBasis<Quaternion> split = split_basis(negative_basis, dim, 1e-9);
  if (!split.ok) {
    result.kind = DetectionKind::none;
    result.note = "degenerate restriction of the form";
    return result;
  }
  const int split_at = dim - sub_dim;
  std::vector<HMatrix> conjugated = conjugate_all(gens, split.columns);
  std::vector<HMatrix> restricted;
  for (const auto& g : conjugated)
    restricted.push_back(g.block(split_at, split_at, sub_dim, sub_dim));

  const ComplexNormalization norm = complex_normalize(restricted, seed);
  if (!norm.ok) {
    result.kind = scan.subspaces.empty() ? DetectionKind::none
                                         : DetectionKind::reducible;
    result.schur_type = SchurType::quaternion;
    result.note = "restriction admits no complex structure";
    return result;
  }
  const auto structure = real_structure_solve(norm.complexified, tol, seed);
  if (structure) {
    result.kind = DetectionKind::real_form;
    result.m = sub_dim - 1;
    result.schur_type = SchurType::real;
    const HMatrix inner = norm.w * promote_to_quaternion(structure->t);
    const HMatrix c = split.columns * block_embed(inner, dim);
    finish_detection(result, gens, c, split_at, ambient, tol);
    return result;
  }
  if (sub_dim == 2) {
    result.kind = DetectionKind::complex_line;
    result.schur_type = SchurType::complex;
    const HMatrix c = split.columns * block_embed(norm.w, dim);
    finish_detection(result, gens, c, split_at, ambient, tol);
    return result;
  }
  result.kind =
      scan.subspaces.empty() ? DetectionKind::none : DetectionKind::reducible;
  result.note = "negative subspace admits no real structure";
  return result;
}

// ---------------------------------------------------------------------------
// Synthesis.

namespace {

void validate_recipe(const SynthesisRecipe& r) {
  if (r.ambient != Family::su && r.ambient != Family::sp)
    throw ValidationError("synthesize: ambient must be SU or Sp");
  if (r.kind == DetectionKind::real_form) {
    if (r.m < 2 || r.m > r.n)
      throw ValidationError("synthesize: real_form needs 2 <= m <= n");
  } else if (r.kind == DetectionKind::complex_line) {
    if (r.n < 1) throw ValidationError("synthesize: complex_line needs n >= 1");
  } else {
    throw ValidationError("synthesize: kind must be real_form or complex_line");
  }
  if (r.num_gens < 2 || r.num_gens > 8)
    throw ValidationError("synthesize: num_gens out of range");
}

// Compact-factor content with all word traces real: special orthogonal
// blocks always qualify; SU(2) qualifies and is used when the compact
// factor is exactly 2-dimensional over the complex field.
// use_su2 drives the complex_line recipes with a 2-dimensional compact
// factor; real-form recipes keep the compact content real throughout, since
// words mixing special-unitary factors with a determinant-compensating sign
// flip would pick up imaginary traces.
CMatrix compact_factor_su(int d, Rng& rng, bool use_su2, bool reflect) {
  if (d == 0) return CMatrix(0, 0);
  CMatrix m;
  if (use_su2 && d == 2) {
    m = random_element<Complex>(GroupSpec::make(Family::su, 2, 0),
                                rng.next_u64());
  } else {
    m = promote_to_complex(random_element<double>(
        GroupSpec::make(Family::so, d, 0), rng.next_u64()));
  }
  if (reflect && d >= 1) {
    CMatrix f = CMatrix::identity(d);
    f(0, 0) = Complex{-1.0, 0.0};
    m = m * f;
  }
  return m;
}

HMatrix compact_factor_sp(int d, Rng& rng) {
  if (d == 0) return HMatrix(0, 0);
  const RMatrix m = random_element<double>(GroupSpec::make(Family::so, d, 0),
                                           rng.next_u64());
  HMatrix out(d, d);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = Quaternion{m.a[i]};
  return out;
}

template <class S>
Mat<S> assemble(const Mat<S>& compact, const Mat<S>& noncompact, int dim) {
  Mat<S> g(dim);
  g.set_block(0, 0, compact);
  g.set_block(compact.rows, compact.rows, noncompact);
  return g;
}

}  // namespace

SynthesizedC synthesize_su(const SynthesisRecipe& recipe) {
  validate_recipe(recipe);
  const int n = recipe.n;
  const int dim = n + 1;
  const bool real_form = recipe.kind == DetectionKind::real_form;
  const int noncompact_dim = real_form ? recipe.m + 1 : 2;
  const int compact_dim = dim - noncompact_dim;
  Rng rng(recipe.seed);

  SynthesizedC out;
  out.gens.group = GroupSpec::make(Family::su, n, 1);
  const CMatrix h = random_element<Complex>(out.gens.group, rng.next_u64(),
                                            recipe.hide_lie_norm);
  const CMatrix h_inv = form_inverse(h);
  for (int i = 0; i < recipe.num_gens; ++i) {
    // The last generator of a real-form recipe exercises the determinant
    // compensation: an orthogonal reflection paired with a compact sign.
    const bool reflect = real_form && compact_dim >= 1 &&
                         i == recipe.num_gens - 1;
    CMatrix noncompact;
    if (real_form) {
      RMatrix r = random_loxodromic_biased<double>(
          GroupSpec::make(Family::so, recipe.m, 1), rng.next_u64(),
          recipe.boost);
      if (reflect) {
        RMatrix f = RMatrix::identity(noncompact_dim);
        f(0, 0) = -1.0;
        r = r * f;
      }
      noncompact = promote_to_complex(r);
    } else {
      noncompact = random_loxodromic_biased<Complex>(
          GroupSpec::make(Family::su, 1, 1), rng.next_u64(), recipe.boost);
    }
    const CMatrix compact =
        compact_factor_su(compact_dim, rng, !real_form, reflect);
    const CMatrix g = h * assemble(compact, noncompact, dim) * h_inv;
    out.gens.gens.push_back(g);
    out.gens.labels.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  out.hidden_conjugator = h;
  return out;
}

SynthesizedH synthesize_sp(const SynthesisRecipe& recipe) {
  validate_recipe(recipe);
  const int n = recipe.n;
  const int dim = n + 1;
  const bool real_form = recipe.kind == DetectionKind::real_form;
  const int noncompact_dim = real_form ? recipe.m + 1 : 2;
  const int compact_dim = dim - noncompact_dim;
  Rng rng(recipe.seed);

  SynthesizedH out;
  out.gens.group = GroupSpec::make(Family::sp, n, 1);
  // Trace realness is not conjugation-invariant over the quaternions, so
  // the hiding element is drawn from the realness-preserving subgroup: a
  // unit quaternion scalar times a complex unitary of the form.
  const CMatrix hc = random_element<Complex>(
      GroupSpec::make(Family::u, n, 1), rng.next_u64(), recipe.hide_lie_norm);
  const Quaternion q = rng.next_unit_quaternion();
  const HMatrix h = scale_left(q, promote_to_quaternion(hc));
  const HMatrix h_inv = form_inverse(h);
  for (int i = 0; i < recipe.num_gens; ++i) {
    HMatrix noncompact;
    if (real_form) {
      noncompact = promote_to_quaternion(promote_to_complex(
          random_loxodromic_biased<double>(
              GroupSpec::make(Family::so, recipe.m, 1), rng.next_u64(),
              recipe.boost)));
    } else {
      noncompact = promote_to_quaternion(random_loxodromic_biased<Complex>(
          GroupSpec::make(Family::su, 1, 1), rng.next_u64(), recipe.boost));
    }
    const HMatrix compact = compact_factor_sp(compact_dim, rng);
    const HMatrix g = h * assemble(compact, noncompact, dim) * h_inv;
    out.gens.gens.push_back(g);
    out.gens.labels.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  out.hidden_conjugator = h;
  return out;
}

}  // namespace kleinian
