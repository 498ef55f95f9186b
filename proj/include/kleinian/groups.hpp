#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kleinian/matrix.hpp"

namespace kleinian {

enum class Family { su, u, so, o, sp };

std::string family_name(Family f);

struct BlockSummand {
  Family family;
  int p = 0;
  int q = 0;
  int dim() const { return p + q; }
};

// A matrix group cut out by the diagonal form of signature (p, q), or a
// block-diagonal product of such groups.  `special_block` asks for overall
// determinant 1 across the summands (the S(...) construction), with any
// orthogonal-block sign compensated in the unitary block.
struct GroupSpec {
  bool is_block = false;
  Family family = Family::su;
  int p = 0;
  int q = 0;
  std::vector<BlockSummand> summands;
  bool special_block = false;

  int ambient_dim() const;
  ScalarField scalar_field() const;

  static GroupSpec make(Family f, int p, int q);
  static GroupSpec block(std::vector<BlockSummand> parts, bool special);

  std::string name() const;
};

struct MembershipReport {
  double form_residual = 0.0;
  double det_defect = 0.0;
  double real_defect = 0.0;   // SO/O summands must be real matrices
  double block_defect = 0.0;  // mass outside the block pattern
  double residual = 0.0;      // max of the above
  bool member = false;
};

template <class S>
MembershipReport group_membership(const Mat<S>& g, const GroupSpec& spec,
                                  double tol);

// F g* F with F the signature form; equals g^{-1} for any form-preserving g,
// and reproduces the conjugate-transpose-with-sign-pattern inverse of
// symplectic matrices entry for entry.
template <class S>
Mat<S> form_inverse(const Mat<S>& g);

// Same map with the Sp(n,1) membership precondition enforced.
HMatrix sp_inverse(const HMatrix& g, double tol = 1e-7);

// diag(1, ..., 1, i) of size n+1.
CMatrix diag_last_i(int n);

// The three diagonal SU(2,1) elements with entries from {1, i, -i}.
CMatrix c_element(int which);

// diag(e^{i theta}, e^{-i theta}).
CMatrix rotation_pair(double theta);

// [[i, i], [1, -1]]; conjugates rotation_pair(theta) to the real 2x2
// rotation matrix.
CMatrix torus_conjugator();

// Dispatcher over the named special elements: "d_n", "c1", "c2", "c3",
// "R(theta)", "K".
CMatrix special_element(const std::string& name, int n = 1,
                        double theta = 0.0);

// [[z, w], [conj(w), conj(z)]] with |z|^2 - |w|^2 = 1.
CMatrix su11_element(const Complex& z, const Complex& w, double tol = 1e-9);

// I_{ambient-h} (+) h, the trailing-block embedding (compact factor first).
template <class S>
Mat<S> block_embed(const Mat<S>& h, int ambient_dim);

// Deterministic sampling through Lie-algebra exponentials: a form-skew
// matrix with standard-normal coefficients (trace and realness constraints
// per family), exponentiated by scaling-and-squaring.  `lie_norm_cap > 0`
// rescales the algebra element to at most that Frobenius norm.
template <class S>
Mat<S> random_element(const GroupSpec& spec, uint64_t seed,
                      double lie_norm_cap = 0.0);

// The same sample with an extra boost along the corner of the noncompact
// block, biasing toward loxodromic elements.
template <class S>
Mat<S> random_loxodromic_biased(const GroupSpec& spec, uint64_t seed,
                                double boost);

struct GeneratorSetC {
  GroupSpec group;
  std::vector<CMatrix> gens;
  std::vector<std::string> labels;
};

struct GeneratorSetH {
  GroupSpec group;
  std::vector<HMatrix> gens;
  std::vector<std::string> labels;
};

}  // namespace kleinian
