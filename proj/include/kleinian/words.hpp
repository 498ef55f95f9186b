#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kleinian/matrix.hpp"

namespace kleinian {

// Freely reduced word in the generators.  A letter 2*g encodes generator g,
// 2*g+1 its inverse; adjacent cancelling pairs never appear.
struct Word {
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  std::string to_string(const std::vector<std::string>& labels) const;
};

inline bool cancels(int a, int b) { return (a ^ 1) == b; }

struct WordBall {
  std::vector<Word> words;  // ordered by length, then lexicographically
  bool truncated = false;
};

// All nonempty freely reduced words of length <= max_len over num_gens
// generators, capped at max_words (default 1e5) with a truncation flag.
WordBall word_ball(int num_gens, int max_len, size_t max_words = 100000);

// Evaluation homomorphism: letters act by left-to-right matrix product.
template <class S>
Mat<S> evaluate_word(const Word& w, const std::vector<Mat<S>>& gens,
                     const std::vector<Mat<S>>& inv_gens);

template <class S>
std::vector<Mat<S>> invert_all(const std::vector<Mat<S>>& gens);

}  // namespace kleinian
