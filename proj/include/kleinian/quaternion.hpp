#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace kleinian {

using Complex = std::complex<double>;

// Hamilton quaternion a + b*i + c*j + d*k.  Multiplication is
// noncommutative; everything downstream is written so that scalar order
// matters.
struct Quaternion {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double real) : a(real) {}
  constexpr Quaternion(double a_, double b_, double c_, double d_)
      : a(a_), b(b_), c(c_), d(d_) {}
  Quaternion(const Complex& z) : a(z.real()), b(z.imag()) {}

  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr Quaternion conj() const { return {a, -b, -c, -d}; }
  constexpr double re() const { return a; }
  constexpr double norm_sq() const { return a * a + b * b + c * c + d * d; }
  double norm() const { return std::sqrt(norm_sq()); }
  // Norm of the imaginary part; zero exactly when the value is real.
  double imag_norm() const { return std::sqrt(b * b + c * c + d * d); }

  Quaternion inverse() const {
    const double n2 = norm_sq();
    return {a / n2, -b / n2, -c / n2, -d / n2};
  }

  // q = z + w*j with z = a + b*i, w = c + d*i.
  constexpr Complex complex_part_z() const { return {a, b}; }
  constexpr Complex complex_part_w() const { return {c, d}; }
  static constexpr Quaternion from_parts(const Complex& z, const Complex& w) {
    return {z.real(), z.imag(), w.real(), w.imag()};
  }

  bool is_complex(double tol) const {
    return std::abs(c) <= tol && std::abs(d) <= tol;
  }

  constexpr Quaternion operator-() const { return {-a, -b, -c, -d}; }
  constexpr Quaternion& operator+=(const Quaternion& q) {
    a += q.a;
    b += q.b;
    c += q.c;
    d += q.d;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& q) {
    a -= q.a;
    b -= q.b;
    c -= q.c;
    d -= q.d;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion p, const Quaternion& q) {
  p += q;
  return p;
}

constexpr Quaternion operator-(Quaternion p, const Quaternion& q) {
  p -= q;
  return p;
}

// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
          p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
          p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
          p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

constexpr Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.a, s * q.b, s * q.c, s * q.d};
}

constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }

constexpr Quaternion operator/(const Quaternion& q, double s) {
  return {q.a / s, q.b / s, q.c / s, q.d / s};
}

inline double abs(const Quaternion& q) { return q.norm(); }

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace kleinian
