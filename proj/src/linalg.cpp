#include "kleinian/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kleinian {

namespace {

constexpr double kEps = 2.220446049250313e-16;

}  // namespace

template <class S>
Mat<S> lu_solve(Mat<S> a, Mat<S> b) {
  if (!a.square() || a.rows != b.rows)
    throw ValidationError("lu_solve: size mismatch");
  const int n = a.rows;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = abs_val(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = abs_val(a(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) throw NumericError("lu_solve: singular matrix");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      for (int c = 0; c < b.cols; ++c) std::swap(b(pivot, c), b(col, c));
    }
    const S inv_p = invert(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const S factor = a(r, col) * inv_p;
      a(r, col) = S{};
      for (int c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
      for (int c = 0; c < b.cols; ++c) b(r, c) -= factor * b(col, c);
    }
  }
  // Back substitution.
  Mat<S> x(n, b.cols);
  for (int r = n - 1; r >= 0; --r) {
    const S inv_p = invert(a(r, r));
    for (int c = 0; c < b.cols; ++c) {
      S s = b(r, c);
      for (int k = r + 1; k < n; ++k) s -= a(r, k) * x(k, c);
      x(r, c) = inv_p * s;
    }
  }
  return x;
}

template <class S>
Mat<S> inverse(const Mat<S>& a) {
  return lu_solve(a, Mat<S>::identity(a.rows));
}

template Mat<double> lu_solve(Mat<double>, Mat<double>);
template Mat<Complex> lu_solve(Mat<Complex>, Mat<Complex>);
template Mat<Quaternion> lu_solve(Mat<Quaternion>, Mat<Quaternion>);
template Mat<double> inverse(const Mat<double>&);
template Mat<Complex> inverse(const Mat<Complex>&);
template Mat<Quaternion> inverse(const Mat<Quaternion>&);

namespace {

template <class S>
S determinant_impl(Mat<S> a) {
  const int n = a.rows;
  S det = ScalarTraits<S>::from_real(1.0);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = abs_val(a(col, col));
    for (int r = col + 1; r < n; ++r)
      if (abs_val(a(r, col)) > best) {
        best = abs_val(a(r, col));
        pivot = r;
      }
    if (best == 0.0) return S{};
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -1.0 * det;
    }
    det = det * a(col, col);
    const S inv_p = invert(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const S factor = a(r, col) * inv_p;
      for (int c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

}  // namespace

double determinant(const RMatrix& a) { return determinant_impl(a); }
Complex determinant(const CMatrix& a) { return determinant_impl(a); }

template <class S>
Mat<S> expm(const Mat<S>& x) {
  const int n = x.rows;
  double scale = x.frobenius_norm();
  int squarings = 0;
  Mat<S> y = x;
  while (scale > 0.25) {
    y = 0.5 * y;
    scale *= 0.5;
    ++squarings;
  }
  Mat<S> result = Mat<S>::identity(n);
  Mat<S> term = Mat<S>::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = scale_right(term * y, ScalarTraits<S>::from_real(1.0 / k));
    result += term;
    if (term.frobenius_norm() < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

template Mat<double> expm(const Mat<double>&);
template Mat<Complex> expm(const Mat<Complex>&);
template Mat<Quaternion> expm(const Mat<Quaternion>&);

// ---------------------------------------------------------------------------
// Jacobi eigensolvers.

namespace {

// 2x2 Hermitian [[alpha, beta], [conj(beta), gamma]] (alpha, gamma real):
// returns (c, s, phase) such that U = diag(1, e^{-i phi}) * [[c,-s],[s,c]]
// diagonalizes it.  For real scalars the phase is +-1.
struct JacobiRotation {
  double c;
  double s;
  Complex phase;  // e^{i phi} with beta = |beta| e^{i phi}
};

JacobiRotation make_rotation(double alpha, double gamma, const Complex& beta) {
  JacobiRotation rot{1.0, 0.0, {1.0, 0.0}};
  const double ab = std::abs(beta);
  if (ab == 0.0) return rot;
  rot.phase = beta / ab;
  // Rotation orientation [[c, -s], [s, c]]: the offdiagonal of R^T B R
  // vanishes for tan(2 theta) = 2|beta| / (alpha - gamma).
  const double tau = (alpha - gamma) / (2.0 * ab);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  rot.c = 1.0 / std::sqrt(1.0 + t * t);
  rot.s = t * rot.c;
  return rot;
}

template <class S>
S from_complex(const Complex& z);

template <>
double from_complex<double>(const Complex& z) {
  return z.real();
}
template <>
Complex from_complex<Complex>(const Complex& z) {
  return z;
}

template <class S>
Complex to_complex(const S& v);

template <>
Complex to_complex<double>(const double& v) {
  return {v, 0.0};
}
template <>
Complex to_complex<Complex>(const Complex& v) {
  return v;
}

// Cyclic Jacobi on a Hermitian matrix; eigenvectors accumulate in v.
template <class S>
std::vector<double> jacobi_eigen(Mat<S>& a, Mat<S>& v) {
  const int n = a.rows;
  v = Mat<S>::identity(n);
  const double norm = std::max(a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += abs_sq(a(p, q));
    if (std::sqrt(off) <= 1e-15 * norm) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex beta = to_complex(a(p, q));
        if (std::abs(beta) <= 1e-18 * norm) continue;
        const JacobiRotation r =
            make_rotation(real_part(a(p, p)), real_part(a(q, q)), beta);
        // Column update by U, then row update by U*.
        const S u00 = ScalarTraits<S>::from_real(r.c);
        const S u01 = ScalarTraits<S>::from_real(-r.s);
        const S u10 = from_complex<S>(std::conj(r.phase) * r.s);
        const S u11 = from_complex<S>(std::conj(r.phase) * r.c);
        for (int i = 0; i < n; ++i) {
          const S aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * u00 + aiq * u10;
          a(i, q) = aip * u01 + aiq * u11;
          const S vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * u00 + viq * u10;
          v(i, q) = vip * u01 + viq * u11;
        }
        for (int i = 0; i < n; ++i) {
          const S api = a(p, i), aqi = a(q, i);
          a(p, i) = conjugate(u00) * api + conjugate(u10) * aqi;
          a(q, i) = conjugate(u01) * api + conjugate(u11) * aqi;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[i] = real_part(a(i, i));
  // Sort ascending, permuting eigenvector columns alongside.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return values[x] < values[y]; });
  std::vector<double> sorted(n);
  Mat<S> vs(n, n);
  for (int i = 0; i < n; ++i) {
    sorted[i] = values[order[i]];
    for (int rr = 0; rr < n; ++rr) vs(rr, i) = v(rr, order[i]);
  }
  v = vs;
  return sorted;
}

}  // namespace

HermitianEigen eigen_hermitian(const CMatrix& a) {
  CMatrix work = a;
  CMatrix v;
  HermitianEigen e;
  e.values = jacobi_eigen(work, v);
  e.vectors = v;
  return e;
}

SymmetricEigen eigen_symmetric(const RMatrix& a) {
  RMatrix work = a;
  RMatrix v;
  SymmetricEigen e;
  e.values = jacobi_eigen(work, v);
  e.vectors = v;
  return e;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD.

namespace {

template <class S>
void onesided_jacobi(Mat<S>& a, Mat<S>& v, std::vector<double>& sigma) {
  const int m = a.rows, k = a.cols;
  v = Mat<S>::identity(k);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < k; ++p) {
      for (int q = p + 1; q < k; ++q) {
        double alpha = 0.0, gamma = 0.0;
        S dot{};
        for (int i = 0; i < m; ++i) {
          alpha += abs_sq(a(i, p));
          gamma += abs_sq(a(i, q));
          dot += conjugate(a(i, p)) * a(i, q);
        }
        const double ad = abs_val(dot);
        if (ad <= 1e-16 * std::sqrt(alpha * gamma) || ad == 0.0) continue;
        rotated = true;
        const JacobiRotation r = make_rotation(alpha, gamma, to_complex(dot));
        const S u00 = ScalarTraits<S>::from_real(r.c);
        const S u01 = ScalarTraits<S>::from_real(-r.s);
        const S u10 = from_complex<S>(std::conj(r.phase) * r.s);
        const S u11 = from_complex<S>(std::conj(r.phase) * r.c);
        for (int i = 0; i < m; ++i) {
          const S aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * u00 + aiq * u10;
          a(i, q) = aip * u01 + aiq * u11;
        }
        for (int i = 0; i < k; ++i) {
          const S vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * u00 + viq * u10;
          v(i, q) = vip * u01 + viq * u11;
        }
      }
    }
    if (!rotated) break;
  }
  sigma.assign(k, 0.0);
  for (int c = 0; c < k; ++c) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += abs_sq(a(i, c));
    sigma[c] = std::sqrt(s);
  }
}

template <class S, class Result>
Result svd_impl(const Mat<S>& input) {
  Mat<S> a = input;
  Mat<S> v;
  std::vector<double> sigma;
  onesided_jacobi(a, v, sigma);
  const int k = a.cols;
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return sigma[x] > sigma[y]; });
  Result out;
  out.singular_values.resize(k);
  out.u = Mat<S>(a.rows, k);
  out.v = Mat<S>(k, k);
  for (int c = 0; c < k; ++c) {
    const int src = order[c];
    out.singular_values[c] = sigma[src];
    const double inv = sigma[src] > 0.0 ? 1.0 / sigma[src] : 0.0;
    for (int r = 0; r < a.rows; ++r)
      out.u(r, c) = a(r, src) * ScalarTraits<S>::from_real(inv);
    for (int r = 0; r < k; ++r) out.v(r, c) = v(r, src);
  }
  return out;
}

}  // namespace

Svd svd(const CMatrix& a) { return svd_impl<Complex, Svd>(a); }
RealSvd svd(const RMatrix& a) { return svd_impl<double, RealSvd>(a); }

std::vector<std::vector<Complex>> null_space(const CMatrix& a,
                                             double rel_tol) {
  const Svd s = svd(a);
  const double cutoff =
      s.singular_values.empty() ? 0.0 : s.singular_values[0] * rel_tol;
  std::vector<std::vector<Complex>> basis;
  for (size_t c = 0; c < s.singular_values.size(); ++c)
    if (s.singular_values[c] <= cutoff) basis.push_back(s.v.col(static_cast<int>(c)));
  return basis;
}

std::vector<std::vector<double>> null_space(const RMatrix& a, double rel_tol) {
  const RealSvd s = svd(a);
  const double cutoff =
      s.singular_values.empty() ? 0.0 : s.singular_values[0] * rel_tol;
  std::vector<std::vector<double>> basis;
  for (size_t c = 0; c < s.singular_values.size(); ++c)
    if (s.singular_values[c] <= cutoff) basis.push_back(s.v.col(static_cast<int>(c)));
  return basis;
}

// ---------------------------------------------------------------------------
// Complex Schur decomposition and general eigensolver.

namespace {

struct Givens {
  Complex c;  // real by construction, stored complex for uniform updates
  Complex s;
};

// Unitary [[c, s], [-conj(s), c]] mapping (f, g) to (r, 0) with c real.
Givens make_givens(const Complex& f, const Complex& g) {
  Givens gv{{1.0, 0.0}, {0.0, 0.0}};
  const double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) return gv;
  if (af == 0.0) {
    gv.c = {0.0, 0.0};
    gv.s = {1.0, 0.0};
    return gv;
  }
  const double r = std::hypot(af, ag);
  gv.c = {af / r, 0.0};
  gv.s = (f / af) * std::conj(g) / r;
  return gv;
}

void hessenberg(CMatrix& h, CMatrix& z) {
  const int n = h.rows;
  z = CMatrix::identity(n);
  for (int col = 0; col < n - 2; ++col) {
    // Householder vector for entries below the subdiagonal.
    double norm = 0.0;
    for (int r = col + 1; r < n; ++r) norm += std::norm(h(r, col));
    norm = std::sqrt(norm);
    if (norm <= 1e-300) continue;
    Complex alpha = h(col + 1, col);
    const double aa = std::abs(alpha);
    const Complex phase = aa > 0.0 ? alpha / aa : Complex{1.0, 0.0};
    const Complex beta = -phase * norm;
    std::vector<Complex> v(n, Complex{0.0, 0.0});
    v[col + 1] = alpha - beta;
    for (int r = col + 2; r < n; ++r) v[r] = h(r, col);
    double vnorm2 = 0.0;
    for (int r = col + 1; r < n; ++r) vnorm2 += std::norm(v[r]);
    if (vnorm2 <= 1e-300) continue;
    const double tau = 2.0 / vnorm2;
    // h := (I - tau v v*) h (I - tau v v*)   and   z := z (I - tau v v*)
    for (int c = 0; c < n; ++c) {
      Complex s{0.0, 0.0};
      for (int r = col + 1; r < n; ++r) s += std::conj(v[r]) * h(r, c);
      s *= tau;
      for (int r = col + 1; r < n; ++r) h(r, c) -= v[r] * s;
    }
    for (int r = 0; r < n; ++r) {
      Complex s{0.0, 0.0};
      for (int c = col + 1; c < n; ++c) s += h(r, c) * v[c];
      s *= tau;
      for (int c = col + 1; c < n; ++c) h(r, c) -= s * std::conj(v[c]);
    }
    for (int r = 0; r < n; ++r) {
      Complex s{0.0, 0.0};
      for (int c = col + 1; c < n; ++c) s += z(r, c) * v[c];
      s *= tau;
      for (int c = col + 1; c < n; ++c) z(r, c) -= s * std::conj(v[c]);
    }
    for (int r = col + 2; r < n; ++r) h(r, col) = Complex{0.0, 0.0};
    h(col + 1, col) = beta;
  }
}

Complex wilkinson_shift(const CMatrix& h, int m) {
  const Complex a = h(m - 1, m - 1), b = h(m - 1, m);
  const Complex c = h(m, m - 1), d = h(m, m);
  const Complex tr = a + d;
  const Complex disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

SchurDecomposition schur(const CMatrix& a) {
  if (!a.square()) throw ValidationError("schur: matrix must be square");
  const int n = a.rows;
  SchurDecomposition out;
  out.t = a;
  if (n == 0) {
    out.z = CMatrix::identity(0);
    return out;
  }
  CMatrix& h = out.t;
  hessenberg(h, out.z);
  CMatrix& z = out.z;

  const double scale = std::max(h.frobenius_norm(), 1e-300);
  int m = n - 1;  // active block is rows/cols lo..m
  int iterations_at_m = 0;
  int total_iterations = 0;
  const int max_total = 60 * n;
  while (m > 0) {
    // Deflate negligible subdiagonals.
    int lo = m;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double local =
          std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (sub <= kEps * std::max(local, 1e-3 * scale)) {
        h(lo, lo - 1) = Complex{0.0, 0.0};
        break;
      }
      --lo;
    }
    if (lo == m) {
      --m;
      iterations_at_m = 0;
      continue;
    }
    if (++total_iterations > max_total)
      throw NumericError("eigen_complex: QR iteration failed to converge");
    Complex shift = wilkinson_shift(h, m);
    if (++iterations_at_m % 12 == 0) {
      // Exceptional shift to break stalls.
      shift = h(m, m) + Complex{1.5 * std::abs(h(m, m - 1)), 0.0};
    }
    // Explicit shifted QR sweep: H - sigma I = QR, then H := RQ + sigma I.
    for (int i = lo; i <= m; ++i) h(i, i) -= shift;
    std::vector<Givens> rotations(m - lo);
    for (int k = lo; k < m; ++k) {
      const Givens gv = make_givens(h(k, k), h(k + 1, k));
      rotations[k - lo] = gv;
      for (int c = k; c < n; ++c) {
        const Complex hk = h(k, c), hk1 = h(k + 1, c);
        h(k, c) = gv.c * hk + gv.s * hk1;
        h(k + 1, c) = -std::conj(gv.s) * hk + gv.c * hk1;
      }
      h(k + 1, k) = Complex{0.0, 0.0};
    }
    for (int k = lo; k < m; ++k) {
      const Givens gv = rotations[k - lo];
      // Right-multiply by the adjoint rotation on columns k, k+1.
      const int rend = std::min(k + 2, m);
      for (int r = 0; r <= rend; ++r) {
        const Complex hk = h(r, k), hk1 = h(r, k + 1);
        h(r, k) = hk * gv.c + hk1 * std::conj(gv.s);
        h(r, k + 1) = -hk * gv.s + hk1 * gv.c;
      }
      for (int r = 0; r < n; ++r) {
        const Complex zk = z(r, k), zk1 = z(r, k + 1);
        z(r, k) = zk * gv.c + zk1 * std::conj(gv.s);
        z(r, k + 1) = -zk * gv.s + zk1 * gv.c;
      }
    }
    for (int i = lo; i <= m; ++i) h(i, i) += shift;
  }
  // Clean the strictly lower part.
  for (int r = 1; r < n; ++r)
    for (int c = 0; c < r; ++c) h(r, c) = Complex{0.0, 0.0};
  return out;
}

ComplexEigen eigen_complex(const CMatrix& a) {
  const int n = a.rows;
  const SchurDecomposition sd = schur(a);
  ComplexEigen out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = sd.t(i, i);
  out.vectors = CMatrix(n, n);
  const double scale = std::max(sd.t.frobenius_norm(), 1e-300);
  for (int k = 0; k < n; ++k) {
    // Solve (T - lambda_k I) y = 0 by back substitution with y_k = 1.
    std::vector<Complex> y(n, Complex{0.0, 0.0});
    y[k] = Complex{1.0, 0.0};
    const Complex lambda = sd.t(k, k);
    for (int i = k - 1; i >= 0; --i) {
      Complex rhs{0.0, 0.0};
      for (int j = i + 1; j <= k; ++j) rhs += sd.t(i, j) * y[j];
      Complex denom = sd.t(i, i) - lambda;
      if (std::abs(denom) < kEps * scale)
        denom = Complex{kEps * scale, 0.0};
      y[i] = -rhs / denom;
    }
    std::vector<Complex> v(n, Complex{0.0, 0.0});
    for (int r = 0; r < n; ++r) {
      Complex s{0.0, 0.0};
      for (int j = 0; j <= k; ++j) s += sd.z(r, j) * y[j];
      v[r] = s;
    }
    const double vn = vec_norm(v);
    for (int r = 0; r < n; ++r) out.vectors(r, k) = v[r] / vn;
  }
  // Backward error of the full eigen-decomposition.
  double err = 0.0;
  for (int k = 0; k < n; ++k) {
    std::vector<Complex> v = out.vectors.col(k);
    std::vector<Complex> av = a * v;
    for (int r = 0; r < n; ++r) av[r] -= out.values[k] * v[r];
    err = std::max(err, vec_norm(av));
  }
  out.backward_error = err;
  return out;
}

}  // namespace kleinian
