#include <cmath>

#include "doctest.h"
#include "kleinian/embeddings.hpp"
#include "kleinian/invariants.hpp"
#include "kleinian/linalg.hpp"
#include "kleinian/traces.hpp"

using namespace kleinian;

namespace {

std::vector<CMatrix> so21_block_gens(int ambient_dim) {
  std::vector<CMatrix> gens;
  for (uint64_t s : {71ULL, 72ULL, 73ULL})
    gens.push_back(block_embed(
        promote_to_complex(random_loxodromic_biased<double>(
            GroupSpec::make(Family::so, 2, 1), s, 0.8)),
        ambient_dim));
  return gens;
}

std::vector<CMatrix> rho1_rho2_gens() {
  const CMatrix a1 = su11_element(std::cosh(0.9), std::sinh(0.9));
  const CMatrix b1 =
      su11_element(std::cosh(0.7), Complex{0.0, 1.0} * std::sinh(0.7));
  const CMatrix a2 =
      random_element<Complex>(GroupSpec::make(Family::su, 2, 0), 41);
  const CMatrix b2 =
      random_element<Complex>(GroupSpec::make(Family::su, 2, 0), 42);
  auto mk = [](const CMatrix& compact, const CMatrix& noncompact) {
    CMatrix g(4);
    g.set_block(0, 0, compact);
    g.set_block(2, 2, noncompact);
    return g;
  };
  return {mk(a2, a1), mk(b2, b1)};
}

}  // namespace

TEST_CASE("scan splits a visible block structure") {
  const auto gens = so21_block_gens(4);
  const auto scan = invariant_subspace_scan(gens, 1e-7);
  REQUIRE(scan.subspaces.size() == 2);
  CHECK(scan.subspaces[0].dim == 1);
  CHECK(scan.subspaces[0].signature.positive == 1);
  CHECK(scan.subspaces[1].dim == 3);
  CHECK(scan.subspaces[1].signature.positive == 2);
  CHECK(scan.subspaces[1].signature.negative == 1);
  for (const auto& s : scan.subspaces) CHECK(s.invariance_residual < 1e-10);
}

TEST_CASE("scan reports irreducibility for a dense real form") {
  std::vector<CMatrix> gens;
  for (uint64_t s : {81ULL, 82ULL, 83ULL})
    gens.push_back(promote_to_complex(random_loxodromic_biased<double>(
        GroupSpec::make(Family::so, 3, 1), s, 0.8)));
  const auto scan = invariant_subspace_scan(gens, 1e-7);
  CHECK(scan.irreducible);
  // No proper complex invariant subspace: the real-structure path is what
  // detects these groups.
  const auto structure = real_structure_solve(gens, 1e-9);
  CHECK(structure.has_value());
}

TEST_CASE("direct sum of a Fuchsian piece and a compact piece") {
  const auto gens = rho1_rho2_gens();
  const auto rep = realness_report(gens, 6, 1e-9);
  CHECK(rep.real);
  const auto scan = invariant_subspace_scan(gens, 1e-7);
  REQUIRE(scan.subspaces.size() == 2);
  CHECK(scan.subspaces[0].dim == 2);
  CHECK(scan.subspaces[1].dim == 2);
  const auto& compact =
      scan.subspaces[0].signature.negative == 0 ? scan.subspaces[0]
                                                : scan.subspaces[1];
  const auto& line = scan.subspaces[0].signature.negative == 1
                         ? scan.subspaces[0]
                         : scan.subspaces[1];
  CHECK(compact.signature.positive == 2);
  CHECK(line.signature.negative == 1);
  CHECK(compact.schur_type == SchurType::quaternion);

  // Not realizable over the reals: the compact factor obstructs globally.
  CHECK_FALSE(real_structure_solve(gens, 1e-9).has_value());
  // The conclusion the theorems leave: an invariant complex line.
  const auto det = detect(gens, 6, 1e-9);
  CHECK(det.kind == DetectionKind::complex_line);
  CHECK_FALSE(det.realness_warning);
}

TEST_CASE("real structure round trip through a hidden conjugation") {
  const auto plain = so21_block_gens(4);
  CHECK(real_structure_solve(plain, 1e-9).has_value());

  const CMatrix h =
      random_element<Complex>(GroupSpec::make(Family::su, 3, 1), 99, 1.0);
  const CMatrix hinv = form_inverse(h);
  std::vector<CMatrix> hidden;
  for (const auto& g : plain) hidden.push_back(h * g * hinv);
  const auto structure = real_structure_solve(hidden, 1e-9);
  REQUIRE(structure.has_value());
  CHECK(structure->realness_residual < 1e-7);
  CHECK(structure->form_residual < 1e-7);
  // S is an involution intertwining the group with its conjugate.
  const CMatrix& s = structure->s;
  CMatrix ss(s.rows);
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c) {
      Complex acc{};
      for (int k = 0; k < s.cols; ++k) acc += s(r, k) * std::conj(s(k, c));
      ss(r, c) = acc;
    }
  CHECK(defect_from_identity(ss) < 1e-7);
}

TEST_CASE("fixtures that must not admit a real structure") {
  // A nonelementary group inside SU(1,1): linear intertwiners exist but the
  // form correction cannot succeed (the real points are null).
  std::vector<CMatrix> fuchsian{
      su11_element(std::cosh(0.9), std::sinh(0.9)),
      su11_element(std::cosh(0.7), Complex{0.0, 1.0} * std::sinh(0.7))};
  CHECK_FALSE(real_structure_solve(fuchsian, 1e-9).has_value());
}

TEST_CASE("synthesis validates its recipe") {
  SynthesisRecipe r;
  r.ambient = Family::su;
  r.n = 3;
  r.kind = DetectionKind::real_form;
  r.m = 1;
  CHECK_THROWS_AS(synthesize_su(r), ValidationError);
  r.m = 4;
  CHECK_THROWS_AS(synthesize_su(r), ValidationError);
  r.kind = DetectionKind::none;
  CHECK_THROWS_AS(synthesize_su(r), ValidationError);
}

TEST_CASE("synthesized fixtures pass membership and realness") {
  for (const Family fam : {Family::su, Family::sp}) {
    SynthesisRecipe r;
    r.ambient = fam;
    r.n = 3;
    r.kind = DetectionKind::real_form;
    r.m = 2;
    r.seed = 7;
    if (fam == Family::su) {
      const auto s = synthesize_su(r);
      const GroupSpec amb = GroupSpec::make(Family::su, 3, 1);
      for (const auto& g : s.gens.gens)
        CHECK(group_membership(g, amb, 1e-8).member);
      CHECK(realness_report(s.gens.gens, 4, 1e-9).real);
    } else {
      const auto s = synthesize_sp(r);
      const GroupSpec amb = GroupSpec::make(Family::sp, 3, 1);
      for (const auto& g : s.gens.gens)
        CHECK(group_membership(g, amb, 1e-8).member);
      CHECK(realness_report(s.gens.gens, 4, 1e-9).real);
    }
  }
}

TEST_CASE("detection round trips recover the planted kind") {
  for (const Family fam : {Family::su, Family::sp}) {
    for (int variant = 0; variant < 3; ++variant) {
      SynthesisRecipe r;
      r.ambient = fam;
      r.n = variant == 2 ? 3 : 2;
      r.kind = variant == 1 ? DetectionKind::complex_line
                            : DetectionKind::real_form;
      r.m = variant == 2 ? 3 : 2;
      for (uint64_t seed = 1; seed <= 3; ++seed) {
        r.seed = 100 * seed + variant;
        DetectionResult det;
        if (fam == Family::su) {
          const auto s = synthesize_su(r);
          det = detect(s.gens.gens, 3, 1e-9, seed);
        } else {
          const auto s = synthesize_sp(r);
          det = detect(s.gens.gens, 3, 1e-9, seed);
        }
        CHECK(det.kind == r.kind);
        if (r.kind == DetectionKind::real_form) CHECK(det.m == r.m);
        CHECK(det.residual < 1e-6);
        CHECK(det.conjugator_membership_residual < 1e-8);
        CHECK_FALSE(det.realness_warning);
      }
    }
  }
}

TEST_CASE("non-real input is flagged and classified as none") {
  HMatrix d(2);
  d(0, 0) = Quaternion::unit_i();
  d(1, 1) = Quaternion::unit_j();
  const std::vector<HMatrix> gens{d};
  const auto det = detect(gens, 3, 1e-9);
  CHECK(det.kind == DetectionKind::none);
  CHECK(det.realness_warning);
}

TEST_CASE("conjugated words stay real after a detected real structure") {
  SynthesisRecipe r;
  r.ambient = Family::su;
  r.n = 3;
  r.kind = DetectionKind::real_form;
  r.m = 3;
  r.seed = 31;
  const auto s = synthesize_su(r);
  const auto det = detect(s.gens.gens, 3, 1e-9);
  REQUIRE(det.kind == DetectionKind::real_form);
  const CMatrix& c = std::get<CMatrix>(det.conjugator);
  const CMatrix cinv = form_inverse(c);
  std::vector<CMatrix> conj;
  for (const auto& g : s.gens.gens) conj.push_back(cinv * g * c);
  const auto inv = invert_all(conj);
  for (const Word& w : word_ball(static_cast<int>(conj.size()), 3, 500).words) {
    const CMatrix m = evaluate_word(w, conj, inv);
    double im = 0.0;
    for (const Complex& z : m.a) im = std::max(im, std::abs(z.imag()));
    CHECK(im < 1e-7);
  }
}
