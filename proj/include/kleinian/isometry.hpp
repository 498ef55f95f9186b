#pragma once

#include <vector>

#include "kleinian/groups.hpp"

namespace kleinian {

enum class IsometryKind { loxodromic, parabolic, elliptic };

const char* isometry_kind_name(IsometryKind k);

template <class S>
struct IsometryClassification {
  IsometryKind kind = IsometryKind::elliptic;
  // Loxodromic: the two boundary fixed points (null eigenvectors of the
  // extremal-modulus eigenvalues).  Elliptic: a negative-class witness.
  // Parabolic: the null fixed direction.
  std::vector<std::vector<S>> fixed_points;
  double margin = 0.0;  // distance of the deciding quantity from threshold
};

// Trichotomy by spectral radius and eigenvector class.  Quaternionic
// elements are analyzed through the complex picture; moduli of the
// right-eigenvalue classes are what the decision uses.
template <class S>
IsometryClassification<S> classify_isometry(const Mat<S>& g,
                                            const GroupSpec& spec,
                                            double tol = 1e-7);

enum class Elementarity { nonelementary, inconclusive };

// One-sided test: searches the word ball for two loxodromic elements with
// disjoint fixed-point pairs on the boundary.  Never claims a group is
// elementary.
template <class S>
Elementarity nonelementary_heuristic(const std::vector<Mat<S>>& gens,
                                     const GroupSpec& spec, int word_len,
                                     double separation_tol = 1e-4);

}  // namespace kleinian
