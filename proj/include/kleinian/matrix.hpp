#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "kleinian/scalar.hpp"

namespace kleinian {

// Dense row-major matrix over a division ring (double, Complex or
// Quaternion).  Group elements are square, but rectangular shapes are used
// internally for basis collections and stacked linear systems.
template <class S>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  explicit Mat(int n) : Mat(n, n) {}

  S& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const S& operator()(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }

  bool square() const { return rows == cols; }
  int size() const { return rows; }

  static Mat identity(int n) {
    Mat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::from_real(1.0);
    return m;
  }

  static Mat zero(int r, int c) { return Mat(r, c); }

  Mat conj_transpose() const {
    Mat m(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(c, r) = conjugate((*this)(r, c));
    return m;
  }

  Mat transpose() const {
    Mat m(cols, rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  S trace() const {
    S t{};
    for (int i = 0; i < rows; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const S& v : a) m = std::max(m, abs_val(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const S& v : a) s += abs_sq(v);
    return std::sqrt(s);
  }

  std::vector<S> col(int c) const {
    std::vector<S> v(rows);
    for (int r = 0; r < rows; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void set_col(int c, const std::vector<S>& v) {
    for (int r = 0; r < rows; ++r) (*this)(r, c) = v[r];
  }

  Mat block(int r0, int c0, int nr, int nc) const {
    Mat m(nr, nc);
    for (int r = 0; r < nr; ++r)
      for (int c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
    return m;
  }

  void set_block(int r0, int c0, const Mat& m) {
    for (int r = 0; r < m.rows; ++r)
      for (int c = 0; c < m.cols; ++c) (*this)(r0 + r, c0 + c) = m(r, c);
  }

  Mat& operator+=(const Mat& o) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
  }
};

using RMatrix = Mat<double>;
using CMatrix = Mat<Complex>;
using HMatrix = Mat<Quaternion>;

template <class S>
Mat<S> operator+(Mat<S> x, const Mat<S>& y) {
  x += y;
  return x;
}

template <class S>
Mat<S> operator-(Mat<S> x, const Mat<S>& y) {
  x -= y;
  return x;
}

template <class S>
Mat<S> operator*(const Mat<S>& x, const Mat<S>& y) {
  if (x.cols != y.rows) throw ValidationError("matrix product: size mismatch");
  Mat<S> m(x.rows, y.cols);
  for (int r = 0; r < x.rows; ++r)
    for (int k = 0; k < x.cols; ++k) {
      const S xrk = x(r, k);
      for (int c = 0; c < y.cols; ++c) m(r, c) += xrk * y(k, c);
    }
  return m;
}

// Scalars are not central over the quaternions, so left and right scalar
// multiples are distinct operations.
template <class S>
Mat<S> scale_left(const S& s, const Mat<S>& x) {
  Mat<S> m(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) m.a[i] = s * x.a[i];
  return m;
}

template <class S>
Mat<S> scale_right(const Mat<S>& x, const S& s) {
  Mat<S> m(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] * s;
  return m;
}

template <class S>
Mat<S> operator*(double s, const Mat<S>& x) {
  return scale_left(ScalarTraits<S>::from_real(s), x);
}

template <class S>
Mat<S> direct_sum(const Mat<S>& x, const Mat<S>& y) {
  Mat<S> m(x.rows + y.rows, x.cols + y.cols);
  m.set_block(0, 0, x);
  m.set_block(x.rows, x.cols, y);
  return m;
}

// Matrices act on column vectors from the left; vector scalars multiply on
// the right (right-module convention in the quaternion case).
template <class S>
std::vector<S> operator*(const Mat<S>& x, const std::vector<S>& v) {
  if (x.cols != static_cast<int>(v.size()))
    throw ValidationError("matrix-vector product: size mismatch");
  std::vector<S> w(x.rows);
  for (int r = 0; r < x.rows; ++r) {
    S s{};
    for (int c = 0; c < x.cols; ++c) s += x(r, c) * v[c];
    w[r] = s;
  }
  return w;
}

template <class S>
std::vector<S> scale_vec(const std::vector<S>& v, const S& s) {
  std::vector<S> w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] * s;
  return w;
}

template <class S>
double vec_norm(const std::vector<S>& v) {
  double s = 0.0;
  for (const S& x : v) s += abs_sq(x);
  return std::sqrt(s);
}

template <class S>
double max_abs_diff(const Mat<S>& x, const Mat<S>& y) {
  double m = 0.0;
  for (size_t i = 0; i < x.a.size(); ++i)
    m = std::max(m, abs_val(x.a[i] - y.a[i]));
  return m;
}

template <class S>
double defect_from_identity(const Mat<S>& x) {
  double m = 0.0;
  for (int r = 0; r < x.rows; ++r)
    for (int c = 0; c < x.cols; ++c) {
      S v = x(r, c);
      if (r == c) v -= ScalarTraits<S>::from_real(1.0);
      m = std::max(m, abs_val(v));
    }
  return m;
}

}  // namespace kleinian
