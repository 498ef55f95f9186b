#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kleinian/geometry.hpp"
#include "kleinian/groups.hpp"

namespace kleinian {

enum class SchurType { real, complex, quaternion, unknown };

const char* schur_type_name(SchurType t);

template <class S>
struct InvariantSubspace {
  std::vector<std::vector<S>> basis;  // Euclidean-orthonormal
  int dim = 0;                        // over the ambient scalar field
  Signature signature;
  SchurType schur_type = SchurType::unknown;
  double invariance_residual = 0.0;  // max_g ||(I-P) g P||
};

template <class S>
struct SubspaceScan {
  std::vector<InvariantSubspace<S>> subspaces;  // proper ones, by dimension
  bool irreducible = false;
  double commutant_dim = 0.0;  // real dimension of the commutant found
};

// Minimal invariant subspaces from eigenspaces of random commutant
// elements, verified directly against every generator.  The commutant of
// the generators equals the commutant of the whole generated algebra, so no
// word enumeration is needed here.
SubspaceScan<Complex> invariant_subspace_scan(const std::vector<CMatrix>& gens,
                                              double tol, uint64_t seed = 1);
SubspaceScan<Quaternion> invariant_subspace_scan(
    const std::vector<HMatrix>& gens, double tol, uint64_t seed = 1);

struct RealStructure {
  CMatrix s;  // gamma S = S conj(gamma) for all generators, S conj(S) = I
  CMatrix t;  // conjugator: T^{-1} gamma T real, T in the form group
  double realness_residual = 0.0;
  double form_residual = 0.0;
};

// Solves the intertwining system gamma S = S conj(gamma) over all
// generators, normalizes S to an involutive antilinear structure, builds
// T = I + e^{i alpha} S and corrects it to the form group by congruence
// against the restricted form.  Absent when the solution space is empty, no
// normalization reaches S conj(S) = I, or the corrected conjugator cannot
// respect the form (no invariant real hyperbolic subspace).
std::optional<RealStructure> real_structure_solve(
    const std::vector<CMatrix>& gens, double tol, uint64_t seed = 1);

enum class DetectionKind { real_form, complex_line, reducible, none };

const char* detection_kind_name(DetectionKind k);

struct DetectionResult {
  DetectionKind kind = DetectionKind::none;
  int m = 0;  // real_form(m)
  std::variant<std::monostate, CMatrix, HMatrix> conjugator;
  double residual = 0.0;  // off-block-pattern norm of conjugated generators
  double conjugator_membership_residual = 0.0;
  SchurType schur_type = SchurType::unknown;
  bool realness_warning = false;
  std::vector<int> subspace_dims;  // from the scan, for diagnostics
  std::string note;
};

// Full pipeline: realness precheck, invariant-subspace scan, restriction to
// the minimal negative-signature subspace, real-structure attempt, complex
// normalization fallback.  Returns an ambient-group conjugator exhibiting
// the block form on success.
DetectionResult detect(const std::vector<CMatrix>& gens, int word_len,
                       double tol, uint64_t seed = 1);
DetectionResult detect(const std::vector<HMatrix>& gens, int word_len,
                       double tol, uint64_t seed = 1);

struct SynthesisRecipe {
  Family ambient = Family::su;  // su or sp
  int n = 2;
  DetectionKind kind = DetectionKind::real_form;  // real_form or complex_line
  int m = 2;  // real_form only, 2 <= m <= n
  uint64_t seed = 1;
  int num_gens = 3;
  double boost = 0.9;          // loxodromic bias in the noncompact factor
  double hide_lie_norm = 1.0;  // Lie-algebra cap for the hiding conjugator
};

struct SynthesizedC {
  GeneratorSetC gens;
  CMatrix hidden_conjugator;
};

struct SynthesizedH {
  GeneratorSetH gens;
  HMatrix hidden_conjugator;
};

// Block-diagonal generators with a loxodromic-biased noncompact factor and
// a compact factor restricted so every word trace stays real, conjugated by
// a bounded random ambient element.
SynthesizedC synthesize_su(const SynthesisRecipe& recipe);
SynthesizedH synthesize_sp(const SynthesisRecipe& recipe);

}  // namespace kleinian
