#pragma once

#include <array>
#include <optional>

#include "kleinian/groups.hpp"
#include "kleinian/scan.hpp"
#include "kleinian/words.hpp"

namespace kleinian {

struct RealnessReport {
  double max_im = 0.0;  // largest imaginary-part norm of a word trace
  Word offender;
  size_t words_checked = 0;
  bool truncated = false;
  double tol_effective = 0.0;
  bool real = false;  // max_im <= tol_effective
};

// Scans all word traces in the ball of radius max_len.  The tolerance is
// scaled by max_len times the largest generator norm, absorbing the
// floating-point error a product of that many matrices can accumulate.
template <class S>
RealnessReport realness_report(const std::vector<Mat<S>>& gens, int max_len,
                               double tol, Exec exec = Exec::parallel,
                               size_t max_words = 100000);

// (Im trace(g), sum of the imaginary-part slots on the block diagonal of
// the entrywise real embedding).  The two are equal by construction; the
// second reading realizes the trace-realness condition as a polynomial in
// the embedded entries.
std::pair<double, double> im_trace_consistency(const CMatrix& g);

// lambda_m(g) = sum_{r<=n} a_{r,m} i conj(a_{r,m}) - a_{n+1,m} i conj(a_{n+1,m}),
// for column m in 1..n+1; purely imaginary for every g.
Quaternion lambda_column(const HMatrix& g, int m);

// Imaginary part of trace(g d g^{-1}) with d = diag(1,...,1,i); never zero
// on Sp(n,1), and the returned witness equals -lambda_{n+1}(g).
Quaternion criterion_one(const HMatrix& g, double tol = 1e-7);

// Imaginary parts of the traces of the three conjugated diagonal elements
// built from {1, i, -i}; equals (lambda_{n-1}+lambda_{n+1},
// lambda_n+lambda_{n+1}, lambda_{n-1}+lambda_n) and the three never vanish
// simultaneously on Sp(n,1), n >= 2.
std::array<Quaternion, 3> criterion_two(const HMatrix& g, double tol = 1e-7);

struct EqnsysResidual {
  double first = 0.0;        // norm of sum_m x_m i conj(x_m) - x_last i conj(x_last)
  double second = 0.0;       // |x_1|^2+...+|x_n|^2-|x_last|^2 + 1, signed
  double certificate = 0.0;  // 2 sum_m (t_{m,3}^2 + t_{m,4}^2), provably >= 0
};

// Residuals of the quaternion equation system whose infeasibility underlies
// criterion_one; the certificate is the sign-definite quantity from the
// substitution t_m = conj(x_last) x_m / |x_last|^2.
EqnsysResidual eqnsys_residual(const std::vector<Quaternion>& x);

struct GramResidual {
  double residual = 0.0;     // max |G - I/4| over the 4x4 Gram entries
  double certificate = 0.0;  // smallest Gram eigenvalue, provably <= 0
};

// The n = 2 variant phrased through the Minkowski Gram matrix: the
// component vectors v_e = (x_e, y_e, z_e) of a solution would be four
// pairwise-orthogonal vectors of square norm 1/4 in R^{2,1}.  Four vectors
// in a 3-dimensional space have a singular Gram, so its smallest eigenvalue
// certifies the infeasibility.
GramResidual orthogonality_gram_residual(const Quaternion& x,
                                         const Quaternion& y,
                                         const Quaternion& z);

// True when all odd power sums a_1^{2s+1}+...+a_r^{2s+1}, s = 0..r-1,
// vanish to tolerance.  Equivalent to the nonzero entries pairing off as
// (a, -a); both characterizations are exposed and must agree.
bool odd_power_sums_check(const std::vector<double>& a, double tol);
bool odd_power_sums_by_power_sums(const std::vector<double>& a, double tol);
bool odd_power_sums_by_pairing(const std::vector<double>& a, double tol);

struct Sp1Su11Result {
  bool member = false;
  Quaternion normalizer;  // unit h with h*g complex, in SU(1,1) on success
  double defect = 0.0;    // largest non-complex component after normalizing
};

// Decides membership in Sp(1)*SU(1,1) inside Sp(1,1) by normalizing the
// leading entry to a nonnegative real and testing the rest for complexity;
// on success the normalizer also absorbs the U(1) determinant phase.
Sp1Su11Result sp1_su11_membership(const HMatrix& g, double tol = 1e-9);

struct TraceScanResult {
  double max_im = 0.0;
  uint64_t witness_seed = 0;  // sample index attaining the maximum
};

// Max imaginary-part norm of trace(g A g^{-1}) over `samples` draws of A
// from the subgroup, block-embedded into the ambient size of g.
template <class S>
TraceScanResult conjugated_trace_scan(const Mat<S>& g,
                                      const GroupSpec& subgroup,
                                      size_t samples, uint64_t seed,
                                      Exec exec = Exec::parallel);

}  // namespace kleinian
