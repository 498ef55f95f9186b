#include "kleinian/embeddings.hpp"

namespace kleinian {

RMatrix complex_to_real(const Complex& z) {
  RMatrix m(2);
  m(0, 0) = z.real();
  m(0, 1) = -z.imag();
  m(1, 0) = z.imag();
  m(1, 1) = z.real();
  return m;
}

RMatrix complexify_to_real(const CMatrix& g) {
  RMatrix m(2 * g.rows, 2 * g.cols);
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c)
      m.set_block(2 * r, 2 * c, complex_to_real(g(r, c)));
  return m;
}

RMatrix quat_to_real(const Quaternion& q) {
  RMatrix m(4);
  const double a = q.a, b = q.b, c = q.c, d = q.d;
  m(0, 0) = a;  m(0, 1) = b;  m(0, 2) = c;  m(0, 3) = d;
  m(1, 0) = -b; m(1, 1) = a;  m(1, 2) = -d; m(1, 3) = c;
  m(2, 0) = -c; m(2, 1) = d;  m(2, 2) = a;  m(2, 3) = -b;
  m(3, 0) = -d; m(3, 1) = -c; m(3, 2) = b;  m(3, 3) = a;
  return m;
}

RMatrix quatify_to_real(const HMatrix& g) {
  RMatrix m(4 * g.rows, 4 * g.cols);
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c)
      m.set_block(4 * r, 4 * c, quat_to_real(g(r, c)));
  return m;
}

CMatrix quat_to_complex(const Quaternion& q) {
  CMatrix m(2);
  const Complex z = q.complex_part_z();
  const Complex w = q.complex_part_w();
  m(0, 0) = z;
  m(0, 1) = w;
  m(1, 0) = -std::conj(w);
  m(1, 1) = std::conj(z);
  return m;
}

CMatrix complexify(const HMatrix& g) {
  CMatrix m(2 * g.rows, 2 * g.cols);
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c)
      m.set_block(2 * r, 2 * c, quat_to_complex(g(r, c)));
  return m;
}

std::vector<Complex> vec_complexify(const std::vector<Quaternion>& v) {
  std::vector<Complex> u(2 * v.size());
  for (size_t r = 0; r < v.size(); ++r) {
    u[2 * r] = v[r].complex_part_z();
    u[2 * r + 1] = -std::conj(v[r].complex_part_w());
  }
  return u;
}

std::vector<Quaternion> vec_quaternify(const std::vector<Complex>& u) {
  std::vector<Quaternion> v(u.size() / 2);
  for (size_t r = 0; r < v.size(); ++r)
    v[r] = Quaternion::from_parts(u[2 * r], -std::conj(u[2 * r + 1]));
  return v;
}

std::vector<Complex> j_twist(const std::vector<Complex>& u) {
  std::vector<Complex> w(u.size());
  for (size_t r = 0; r + 1 < u.size(); r += 2) {
    w[r] = std::conj(u[r + 1]);
    w[r + 1] = -std::conj(u[r]);
  }
  return w;
}

double embedded_imag_diag_sum(const RMatrix& embedded) {
  double s = 0.0;
  for (int m = 0; 2 * m + 1 < embedded.rows; ++m) s += embedded(2 * m + 1, 2 * m);
  return s;
}

HMatrix promote_to_quaternion(const CMatrix& g) {
  HMatrix out(g.rows, g.cols);
  for (size_t i = 0; i < g.a.size(); ++i) out.a[i] = Quaternion(g.a[i]);
  return out;
}

CMatrix promote_to_complex(const RMatrix& g) {
  CMatrix out(g.rows, g.cols);
  for (size_t i = 0; i < g.a.size(); ++i) out.a[i] = Complex{g.a[i], 0.0};
  return out;
}

CMatrix complex_part(const HMatrix& g) {
  CMatrix out(g.rows, g.cols);
  for (size_t i = 0; i < g.a.size(); ++i) out.a[i] = g.a[i].complex_part_z();
  return out;
}

}  // namespace kleinian
