#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "kleinian/quaternion.hpp"

namespace kleinian {

// Numeric failures (eigen non-convergence, singular solves) are reported
// explicitly instead of returning garbage.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScalarField { real, complex, quaternion };

// Uniform scalar interface for the three division rings the matrices run
// over: double, std::complex<double>, Quaternion.

inline double conjugate(double x) { return x; }
inline Complex conjugate(const Complex& z) { return std::conj(z); }
inline Quaternion conjugate(const Quaternion& q) { return q.conj(); }

inline double real_part(double x) { return x; }
inline double real_part(const Complex& z) { return z.real(); }
inline double real_part(const Quaternion& q) { return q.a; }

inline double imag_norm(double) { return 0.0; }
inline double imag_norm(const Complex& z) { return std::abs(z.imag()); }
inline double imag_norm(const Quaternion& q) { return q.imag_norm(); }

inline double abs_sq(double x) { return x * x; }
inline double abs_sq(const Complex& z) { return std::norm(z); }
inline double abs_sq(const Quaternion& q) { return q.norm_sq(); }

inline double abs_val(double x) { return std::abs(x); }
inline double abs_val(const Complex& z) { return std::abs(z); }
inline double abs_val(const Quaternion& q) { return q.norm(); }

inline double invert(double x) { return 1.0 / x; }
inline Complex invert(const Complex& z) { return 1.0 / z; }
inline Quaternion invert(const Quaternion& q) { return q.inverse(); }

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr ScalarField field = ScalarField::real;
  static constexpr int real_dim = 1;
  static double from_real(double x) { return x; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr ScalarField field = ScalarField::complex;
  static constexpr int real_dim = 2;
  static Complex from_real(double x) { return {x, 0.0}; }
};

template <>
struct ScalarTraits<Quaternion> {
  static constexpr ScalarField field = ScalarField::quaternion;
  static constexpr int real_dim = 4;
  static Quaternion from_real(double x) { return {x}; }
};

}  // namespace kleinian
