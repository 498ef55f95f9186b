#include "kleinian/groups.hpp"

#include <cmath>

#include "kleinian/geometry.hpp"
#include "kleinian/linalg.hpp"
#include "kleinian/rng.hpp"

namespace kleinian {

std::string family_name(Family f) {
  switch (f) {
    case Family::su: return "SU";
    case Family::u: return "U";
    case Family::so: return "SO";
    case Family::o: return "O";
    case Family::sp: return "Sp";
  }
  return "?";
}

int GroupSpec::ambient_dim() const {
  if (!is_block) return p + q;
  int d = 0;
  for (const auto& s : summands) d += s.dim();
  return d;
}

ScalarField GroupSpec::scalar_field() const {
  Family f = family;
  if (is_block) {
    // The widest summand field decides the natural container.
    for (const auto& s : summands)
      if (s.family == Family::sp) return ScalarField::quaternion;
    for (const auto& s : summands)
      if (s.family == Family::su || s.family == Family::u)
        return ScalarField::complex;
    return ScalarField::real;
  }
  switch (f) {
    case Family::sp: return ScalarField::quaternion;
    case Family::su:
    case Family::u: return ScalarField::complex;
    default: return ScalarField::real;
  }
}

GroupSpec GroupSpec::make(Family f, int p, int q) {
  GroupSpec s;
  s.family = f;
  s.p = p;
  s.q = q;
  return s;
}

GroupSpec GroupSpec::block(std::vector<BlockSummand> parts, bool special) {
  GroupSpec s;
  s.is_block = true;
  s.summands = std::move(parts);
  s.special_block = special;
  return s;
}

std::string GroupSpec::name() const {
  if (!is_block) {
    std::string s = family_name(family) + "(" + std::to_string(p);
    if (q > 0) s += "," + std::to_string(q);
    return s + ")";
  }
  std::string s = special_block ? "S(" : "";
  for (size_t i = 0; i < summands.size(); ++i) {
    if (i) s += "+";
    s += family_name(summands[i].family) + "(" + std::to_string(summands[i].p);
    if (summands[i].q > 0) s += "," + std::to_string(summands[i].q);
    s += ")";
  }
  if (special_block) s += ")";
  return s;
}

namespace {

template <class S>
double family_real_defect(const Mat<S>& g) {
  double m = 0.0;
  for (const S& v : g.a) m = std::max(m, imag_norm(v));
  return m;
}

double det_defect_for(const Mat<double>& g, Family f) {
  const double det = determinant(g);
  if (f == Family::su || f == Family::so) return std::abs(det - 1.0);
  if (f == Family::o) return std::abs(std::abs(det) - 1.0);
  return 0.0;
}

double det_defect_for(const Mat<Complex>& g, Family f) {
  const Complex det = determinant(g);
  if (f == Family::su || f == Family::so) return std::abs(det - 1.0);
  if (f == Family::o) return std::abs(std::abs(det) - 1.0);
  return 0.0;
}

double det_defect_for(const Mat<Quaternion>& g, Family f) {
  // No determinant condition is imposed over the quaternions.
  if (f == Family::so || f == Family::o) {
    // Real submatrix: evaluate through the real parts.
    RMatrix r(g.rows, g.cols);
    for (int i = 0; i < g.rows; ++i)
      for (int j = 0; j < g.cols; ++j) r(i, j) = g(i, j).a;
    return det_defect_for(r, f);
  }
  if (f == Family::su || f == Family::u)
    throw ValidationError("unitary family over quaternion entries");
  return 0.0;
}

template <class S>
MembershipReport membership_plain(const Mat<S>& g, Family f, int p, int q) {
  MembershipReport rep;
  const Mat<S> form = form_diag<S>(p, q);
  rep.form_residual = max_abs_diff(g.conj_transpose() * form * g, form);
  rep.det_defect = det_defect_for(g, f);
  if (f == Family::so || f == Family::o) rep.real_defect = family_real_defect(g);
  return rep;
}

}  // namespace

template <class S>
MembershipReport group_membership(const Mat<S>& g, const GroupSpec& spec,
                                  double tol) {
  if (!g.square() || g.rows != spec.ambient_dim())
    throw ValidationError("group_membership: size mismatch");
  MembershipReport rep;
  if (!spec.is_block) {
    rep = membership_plain(g, spec.family, spec.p, spec.q);
  } else {
    int off = 0;
    for (const auto& part : spec.summands) {
      const Mat<S> blk = g.block(off, off, part.dim(), part.dim());
      MembershipReport sub = membership_plain(blk, part.family, part.p, part.q);
      rep.form_residual = std::max(rep.form_residual, sub.form_residual);
      rep.real_defect = std::max(rep.real_defect, sub.real_defect);
      if (!spec.special_block)
        rep.det_defect = std::max(rep.det_defect, sub.det_defect);
      off += part.dim();
    }
    if (spec.special_block) {
      if constexpr (ScalarTraits<S>::field == ScalarField::complex) {
        rep.det_defect = std::abs(determinant(g) - Complex{1.0, 0.0});
      } else if constexpr (ScalarTraits<S>::field == ScalarField::real) {
        rep.det_defect = std::abs(determinant(g) - 1.0);
      }
    }
    double off_mass = 0.0;
    int r0 = 0;
    for (size_t i = 0; i < spec.summands.size(); ++i) {
      int c0 = 0;
      for (size_t j = 0; j < spec.summands.size(); ++j) {
        if (i != j) {
          const Mat<S> blk = g.block(r0, c0, spec.summands[i].dim(),
                                     spec.summands[j].dim());
          off_mass = std::max(off_mass, blk.max_abs());
        }
        c0 += spec.summands[j].dim();
      }
      r0 += spec.summands[i].dim();
    }
    rep.block_defect = off_mass;
  }
  rep.residual = std::max({rep.form_residual, rep.det_defect, rep.real_defect,
                           rep.block_defect});
  rep.member = rep.residual <= tol;
  return rep;
}

template MembershipReport group_membership(const Mat<double>&,
                                           const GroupSpec&, double);
template MembershipReport group_membership(const Mat<Complex>&,
                                           const GroupSpec&, double);
template MembershipReport group_membership(const Mat<Quaternion>&,
                                           const GroupSpec&, double);

template <class S>
Mat<S> form_inverse(const Mat<S>& g) {
  const Mat<S> form = signature_form<S>(g.rows);
  return form * g.conj_transpose() * form;
}

template Mat<double> form_inverse(const Mat<double>&);
template Mat<Complex> form_inverse(const Mat<Complex>&);
template Mat<Quaternion> form_inverse(const Mat<Quaternion>&);

HMatrix sp_inverse(const HMatrix& g, double tol) {
  const GroupSpec spec = GroupSpec::make(Family::sp, g.rows - 1, 1);
  const MembershipReport rep = group_membership(g, spec, tol);
  if (!rep.member)
    throw ValidationError("sp_inverse: matrix fails Sp(n,1) membership");
  return form_inverse(g);
}

CMatrix diag_last_i(int n) {
  CMatrix m = CMatrix::identity(n + 1);
  m(n, n) = Complex{0.0, 1.0};
  return m;
}

CMatrix c_element(int which) {
  const Complex one{1.0, 0.0}, i{0.0, 1.0};
  CMatrix m(3);
  switch (which) {
    case 1:
      m(0, 0) = one;
      m(1, 1) = i;
      m(2, 2) = -i;
      break;
    case 2:
      m(0, 0) = i;
      m(1, 1) = one;
      m(2, 2) = -i;
      break;
    case 3:
      m(0, 0) = i;
      m(1, 1) = -i;
      m(2, 2) = one;
      break;
    default:
      throw ValidationError("c_element: index must be 1, 2 or 3");
  }
  return m;
}

CMatrix rotation_pair(double theta) {
  CMatrix m(2);
  m(0, 0) = std::polar(1.0, theta);
  m(1, 1) = std::polar(1.0, -theta);
  return m;
}

CMatrix torus_conjugator() {
  CMatrix m(2);
  m(0, 0) = Complex{0.0, 1.0};
  m(0, 1) = Complex{0.0, 1.0};
  m(1, 0) = Complex{1.0, 0.0};
  m(1, 1) = Complex{-1.0, 0.0};
  return m;
}

CMatrix special_element(const std::string& name, int n, double theta) {
  if (name == "d_n") return diag_last_i(n);
  if (name == "c1") return c_element(1);
  if (name == "c2") return c_element(2);
  if (name == "c3") return c_element(3);
  if (name == "R(theta)") return rotation_pair(theta);
  if (name == "K") return torus_conjugator();
  throw ValidationError("special_element: unknown name '" + name + "'");
}

CMatrix su11_element(const Complex& z, const Complex& w, double tol) {
  if (std::abs(std::norm(z) - std::norm(w) - 1.0) > tol)
    throw ValidationError("su11_element: |z|^2 - |w|^2 must equal 1");
  CMatrix m(2);
  m(0, 0) = z;
  m(0, 1) = w;
  m(1, 0) = std::conj(w);
  m(1, 1) = std::conj(z);
  return m;
}

template <class S>
Mat<S> block_embed(const Mat<S>& h, int ambient_dim) {
  if (h.rows > ambient_dim)
    throw ValidationError("block_embed: block larger than ambient");
  Mat<S> m = Mat<S>::identity(ambient_dim);
  m.set_block(ambient_dim - h.rows, ambient_dim - h.cols, h);
  return m;
}

template Mat<double> block_embed(const Mat<double>&, int);
template Mat<Complex> block_embed(const Mat<Complex>&, int);
template Mat<Quaternion> block_embed(const Mat<Quaternion>&, int);

namespace {

// Lie algebra sample for the form diag(I_p, -I_q): [[A, B], [B*, D]] with
// A, D skew-Hermitian and B arbitrary.
template <class S>
Mat<S> algebra_sample(Family f, int p, int q, Rng& rng) {
  const int n = p + q;
  Mat<S> x(n);
  auto scalar = [&]() -> S {
    if constexpr (ScalarTraits<S>::field == ScalarField::real)
      return rng.next_normal();
    else if constexpr (ScalarTraits<S>::field == ScalarField::complex)
      return rng.next_normal_complex();
    else
      return rng.next_normal_quaternion();
  };
  auto imaginary_scalar = [&]() -> S {
    if constexpr (ScalarTraits<S>::field == ScalarField::real)
      return 0.0;
    else if constexpr (ScalarTraits<S>::field == ScalarField::complex)
      return Complex{0.0, rng.next_normal()};
    else
      return Quaternion{0.0, rng.next_normal(), rng.next_normal(),
                        rng.next_normal()};
  };
  // Skew-Hermitian diagonal blocks.
  for (int blk = 0; blk < 2; ++blk) {
    const int lo = blk == 0 ? 0 : p;
    const int hi = blk == 0 ? p : n;
    for (int r = lo; r < hi; ++r) {
      x(r, r) = imaginary_scalar();
      for (int c = r + 1; c < hi; ++c) {
        const S v = scalar();
        x(r, c) = v;
        x(c, r) = -conjugate(v);
      }
    }
  }
  // Free off-diagonal block, mirrored by the form.
  for (int r = 0; r < p; ++r)
    for (int c = p; c < n; ++c) {
      const S v = scalar();
      x(r, c) = v;
      x(c, r) = conjugate(v);
    }
  if (f == Family::su) {
    if constexpr (ScalarTraits<S>::field == ScalarField::complex) {
      double im_tr = 0.0;
      for (int r = 0; r < n; ++r) im_tr += x(r, r).imag();
      const Complex shift{0.0, im_tr / n};
      for (int r = 0; r < n; ++r) x(r, r) -= shift;
    }
  }
  return x;
}

template <class S>
Mat<S> promote_real(const RMatrix& m) {
  Mat<S> out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i)
    out.a[i] = ScalarTraits<S>::from_real(m.a[i]);
  return out;
}

template <class S>
Mat<S> promote_complex(const CMatrix& m);

template <>
Mat<Complex> promote_complex(const CMatrix& m) {
  return m;
}

template <>
Mat<Quaternion> promote_complex(const CMatrix& m) {
  HMatrix out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = Quaternion(m.a[i]);
  return out;
}

template <class S>
Mat<S> algebra_sample_for(const GroupSpec& spec, Rng& rng) {
  if (!spec.is_block) {
    switch (spec.family) {
      case Family::so:
      case Family::o:
        return promote_real<S>(
            algebra_sample<double>(spec.family, spec.p, spec.q, rng));
      case Family::su:
      case Family::u:
        if constexpr (ScalarTraits<S>::field == ScalarField::real)
          throw ValidationError("random_element: complex family in real container");
        else
          return promote_complex<S>(
              algebra_sample<Complex>(spec.family, spec.p, spec.q, rng));
      case Family::sp:
        if constexpr (ScalarTraits<S>::field == ScalarField::quaternion)
          return algebra_sample<Quaternion>(spec.family, spec.p, spec.q, rng);
        else
          throw ValidationError("random_element: Sp needs quaternion container");
    }
    throw ValidationError("random_element: unknown family");
  }
  Mat<S> x(spec.ambient_dim());
  int off = 0;
  for (const auto& part : spec.summands) {
    GroupSpec sub = GroupSpec::make(part.family, part.p, part.q);
    x.set_block(off, off, algebra_sample_for<S>(sub, rng));
    off += part.dim();
  }
  if (spec.special_block) {
    if constexpr (ScalarTraits<S>::field == ScalarField::complex) {
      // Push the trace defect into the unitary summand's diagonal.
      double im_tr = 0.0;
      for (int r = 0; r < x.rows; ++r) im_tr += x(r, r).imag();
      int u_off = 0;
      for (const auto& part : spec.summands) {
        if (part.family == Family::u || part.family == Family::su) {
          const Complex shift{0.0, im_tr / part.dim()};
          for (int r = 0; r < part.dim(); ++r) x(u_off + r, u_off + r) -= shift;
          im_tr = 0.0;
          break;
        }
        u_off += part.dim();
      }
    }
  }
  return x;
}

}  // namespace

template <class S>
Mat<S> random_element(const GroupSpec& spec, uint64_t seed,
                      double lie_norm_cap) {
  Rng rng(seed);
  Mat<S> x = algebra_sample_for<S>(spec, rng);
  if (lie_norm_cap > 0.0) {
    const double norm = x.frobenius_norm();
    if (norm > lie_norm_cap) x = (lie_norm_cap / norm) * x;
  }
  return expm(x);
}

template Mat<double> random_element(const GroupSpec&, uint64_t, double);
template Mat<Complex> random_element(const GroupSpec&, uint64_t, double);
template Mat<Quaternion> random_element(const GroupSpec&, uint64_t, double);

template <class S>
Mat<S> random_loxodromic_biased(const GroupSpec& spec, uint64_t seed,
                                double boost) {
  Rng rng(seed);
  Mat<S> x = algebra_sample_for<S>(spec, rng);
  const double norm = x.frobenius_norm();
  if (norm > 1.0) x = (1.0 / norm) * x;
  // Symmetric corner entry: a boost along the last spatial direction.
  const int n = spec.ambient_dim();
  if (n >= 2) {
    x(0, n - 1) += ScalarTraits<S>::from_real(boost);
    x(n - 1, 0) += ScalarTraits<S>::from_real(boost);
  }
  return expm(x);
}

template Mat<double> random_loxodromic_biased(const GroupSpec&, uint64_t,
                                              double);
template Mat<Complex> random_loxodromic_biased(const GroupSpec&, uint64_t,
                                               double);
template Mat<Quaternion> random_loxodromic_biased(const GroupSpec&, uint64_t,
                                                  double);

}  // namespace kleinian
