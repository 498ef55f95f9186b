#include "kleinian/traces.hpp"

#include <algorithm>
#include <cmath>

#include "kleinian/embeddings.hpp"
#include "kleinian/geometry.hpp"
#include "kleinian/linalg.hpp"

namespace kleinian {

template <class S>
RealnessReport realness_report(const std::vector<Mat<S>>& gens, int max_len,
                               double tol, Exec exec, size_t max_words) {
  if (gens.empty()) throw ValidationError("realness_report: no generators");
  const WordBall ball = word_ball(static_cast<int>(gens.size()), max_len,
                                  max_words);
  const std::vector<Mat<S>> inv = invert_all(gens);
  const MaxScanResult top =
      scan_max(ball.words.size(), exec, [&](size_t i) {
        return imag_norm(evaluate_word(ball.words[i], gens, inv).trace());
      });
  RealnessReport rep;
  rep.max_im = top.value;
  rep.offender = ball.words[top.index];
  rep.words_checked = ball.words.size();
  rep.truncated = ball.truncated;
  double gen_norm = 0.0;
  for (const auto& g : gens) gen_norm = std::max(gen_norm, g.frobenius_norm());
  rep.tol_effective = tol * std::max(1.0, max_len * gen_norm);
  rep.real = rep.max_im <= rep.tol_effective;
  return rep;
}

template RealnessReport realness_report(const std::vector<CMatrix>&, int,
                                        double, Exec, size_t);
template RealnessReport realness_report(const std::vector<HMatrix>&, int,
                                        double, Exec, size_t);

std::pair<double, double> im_trace_consistency(const CMatrix& g) {
  const double im_trace = g.trace().imag();
  const double embedded = embedded_imag_diag_sum(complexify_to_real(g));
  return {im_trace, embedded};
}

Quaternion lambda_column(const HMatrix& g, int m) {
  const int dim = g.rows;
  if (m < 1 || m > dim)
    throw ValidationError("lambda_column: column index out of range");
  const Quaternion i = Quaternion::unit_i();
  Quaternion sum;
  for (int r = 0; r < dim - 1; ++r)
    sum += g(r, m - 1) * i * g(r, m - 1).conj();
  sum -= g(dim - 1, m - 1) * i * g(dim - 1, m - 1).conj();
  return sum;
}

namespace {

Quaternion imag_part(const Quaternion& q) { return {0.0, q.b, q.c, q.d}; }

HMatrix promote(const CMatrix& m) {
  HMatrix out(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) out.a[i] = Quaternion(m.a[i]);
  return out;
}

}  // namespace

Quaternion criterion_one(const HMatrix& g, double tol) {
  const HMatrix inv = sp_inverse(g, tol);
  const HMatrix d = promote(diag_last_i(g.rows - 1));
  return imag_part((g * d * inv).trace());
}

std::array<Quaternion, 3> criterion_two(const HMatrix& g, double tol) {
  const int n = g.rows - 1;
  if (n < 2) throw ValidationError("criterion_two: needs n >= 2");
  const HMatrix inv = sp_inverse(g, tol);
  auto witness = [&](const CMatrix& c) {
    const HMatrix e = block_embed(promote(c), g.rows);
    return imag_part((g * e * inv).trace());
  };
  // Ordered as (lambda_{n-1}+lambda_{n+1}, lambda_n+lambda_{n+1},
  // lambda_{n-1}+lambda_n).  The last condition comes from the product
  // element diag(i, i, -1): the conjugated trace of c3 itself tracks the
  // difference of the lambdas, not the sum.
  return {witness(c_element(2)), witness(c_element(1)),
          witness(c_element(1) * c_element(2))};
}

EqnsysResidual eqnsys_residual(const std::vector<Quaternion>& x) {
  if (x.size() < 2) throw ValidationError("eqnsys_residual: need length >= 2");
  const size_t last = x.size() - 1;
  const Quaternion i = Quaternion::unit_i();
  EqnsysResidual out;
  Quaternion lhs;
  double norm_balance = 1.0;  // +1 from the right-hand side -1
  for (size_t m = 0; m < last; ++m) {
    lhs += x[m] * i * x[m].conj();
    norm_balance += x[m].norm_sq();
  }
  lhs -= x[last] * i * x[last].conj();
  norm_balance -= x[last].norm_sq();
  out.first = lhs.norm();
  out.second = norm_balance;
  const double z2 = x[last].norm_sq();
  if (z2 == 0.0)
    throw ValidationError("eqnsys_residual: zero last coordinate");
  double cert = 0.0;
  for (size_t m = 0; m < last; ++m) {
    const Quaternion t = (x[last].conj() * x[m]) / z2;
    cert += t.c * t.c + t.d * t.d;
  }
  out.certificate = 2.0 * cert;
  return out;
}

GramResidual orthogonality_gram_residual(const Quaternion& x,
                                         const Quaternion& y,
                                         const Quaternion& z) {
  const double xs[4] = {x.a, x.b, x.c, x.d};
  const double ys[4] = {y.a, y.b, y.c, y.d};
  const double zs[4] = {z.a, z.b, z.c, z.d};
  RMatrix gram(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      gram(r, c) = xs[r] * xs[c] + ys[r] * ys[c] - zs[r] * zs[c];
  GramResidual out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double target = r == c ? 0.25 : 0.0;
      out.residual = std::max(out.residual, std::abs(gram(r, c) - target));
    }
  const SymmetricEigen eig = eigen_symmetric(gram);
  out.certificate = eig.values.front();
  return out;
}

bool odd_power_sums_by_power_sums(const std::vector<double>& a, double tol) {
  const int r = static_cast<int>(a.size());
  for (int s = 0; s < r; ++s) {
    double sum = 0.0, scale = 0.0;
    for (double v : a) {
      double p = v;
      for (int k = 0; k < s; ++k) p *= v * v;
      sum += p;
      scale += std::abs(p);
    }
    if (std::abs(sum) > tol * std::max(1.0, scale)) return false;
  }
  return true;
}

bool odd_power_sums_by_pairing(const std::vector<double>& a, double tol) {
  std::vector<double> v;
  double scale = 1.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  for (double x : a)
    if (std::abs(x) > tol * scale) v.push_back(x);
  if (v.size() % 2 != 0) return false;
  std::sort(v.begin(), v.end());
  // Sorted values must mirror: v[k] = -v[size-1-k].
  for (size_t k = 0; 2 * k < v.size(); ++k)
    if (std::abs(v[k] + v[v.size() - 1 - k]) > tol * scale) return false;
  return true;
}

bool odd_power_sums_check(const std::vector<double>& a, double tol) {
  return odd_power_sums_by_power_sums(a, tol);
}

Sp1Su11Result sp1_su11_membership(const HMatrix& g, double tol) {
  if (g.rows != 2) throw ValidationError("sp1_su11_membership: needs 2x2");
  const GroupSpec sp11 = GroupSpec::make(Family::sp, 1, 1);
  if (!group_membership(g, sp11, std::max(tol, 1e-7)).member)
    throw ValidationError("sp1_su11_membership: not in Sp(1,1)");
  Sp1Su11Result out;
  // |a|^2 = 1 + |c|^2 >= 1, so the leading entry is invertible.
  const Quaternion a = g(0, 0);
  Quaternion h = a.conj() / a.norm();
  HMatrix hg = scale_left(h, g);
  double defect = 0.0;
  for (const Quaternion& q : hg.a)
    defect = std::max(defect, std::sqrt(q.c * q.c + q.d * q.d));
  out.defect = defect;
  out.member = defect <= tol;
  if (out.member) {
    CMatrix c(2);
    for (int r = 0; r < 2; ++r)
      for (int cc = 0; cc < 2; ++cc) c(r, cc) = hg(r, cc).complex_part_z();
    const Complex det = determinant(c);
    const double phi = std::arg(det);
    h = Quaternion(std::polar(1.0, -phi / 2.0)) * h;
  }
  out.normalizer = h;
  return out;
}

template <class S>
TraceScanResult conjugated_trace_scan(const Mat<S>& g,
                                      const GroupSpec& subgroup,
                                      size_t samples, uint64_t seed,
                                      Exec exec) {
  if (subgroup.ambient_dim() > g.rows)
    throw ValidationError("conjugated_trace_scan: subgroup too large");
  const Mat<S> form = signature_form<S>(g.rows);
  const double form_res =
      max_abs_diff(g.conj_transpose() * form * g, form);
  const Mat<S> g_inv = form_res < 1e-6 ? form_inverse(g) : inverse(g);
  const MaxScanResult top = scan_max(samples, exec, [&](size_t idx) {
    const Mat<S> a = block_embed(
        random_element<S>(subgroup, seed + 0x51a7b2c9d3e5f711ULL * idx),
        g.rows);
    return imag_norm((g * a * g_inv).trace());
  });
  TraceScanResult out;
  out.max_im = top.value;
  out.witness_seed = top.index;
  return out;
}

template TraceScanResult conjugated_trace_scan(const Mat<Complex>&,
                                               const GroupSpec&, size_t,
                                               uint64_t, Exec);
template TraceScanResult conjugated_trace_scan(const Mat<Quaternion>&,
                                               const GroupSpec&, size_t,
                                               uint64_t, Exec);

}  // namespace kleinian
