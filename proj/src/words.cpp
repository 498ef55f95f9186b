#include "kleinian/words.hpp"

#include "kleinian/linalg.hpp"

namespace kleinian {

std::string Word::to_string(const std::vector<std::string>& labels) const {
  std::string s;
  for (int letter : letters) {
    const int g = letter / 2;
    if (!s.empty()) s += ".";
    s += g < static_cast<int>(labels.size()) ? labels[g]
                                             : "g" + std::to_string(g);
    if (letter & 1) s += "^-1";
  }
  return s.empty() ? "1" : s;
}

WordBall word_ball(int num_gens, int max_len, size_t max_words) {
  if (max_len < 1) throw ValidationError("word_ball: max_len must be >= 1");
  WordBall ball;
  const int alphabet = 2 * num_gens;
  std::vector<Word> frontier;
  for (int a = 0; a < alphabet; ++a) frontier.push_back(Word{{a}});
  for (int len = 1; len <= max_len; ++len) {
    for (const Word& w : frontier) {
      if (ball.words.size() >= max_words) {
        ball.truncated = true;
        return ball;
      }
      ball.words.push_back(w);
    }
    if (len == max_len) break;
    std::vector<Word> next;
    next.reserve(frontier.size() * (alphabet - 1));
    for (const Word& w : frontier)
      for (int a = 0; a < alphabet; ++a) {
        if (cancels(w.letters.back(), a)) continue;
        Word nw = w;
        nw.letters.push_back(a);
        next.push_back(std::move(nw));
      }
    frontier = std::move(next);
  }
  return ball;
}

template <class S>
Mat<S> evaluate_word(const Word& w, const std::vector<Mat<S>>& gens,
                     const std::vector<Mat<S>>& inv_gens) {
  Mat<S> m = Mat<S>::identity(gens.at(0).rows);
  for (int letter : w.letters) {
    const int g = letter / 2;
    m = m * ((letter & 1) ? inv_gens.at(g) : gens.at(g));
  }
  return m;
}

template <class S>
std::vector<Mat<S>> invert_all(const std::vector<Mat<S>>& gens) {
  std::vector<Mat<S>> inv;
  inv.reserve(gens.size());
  for (const auto& g : gens) inv.push_back(inverse(g));
  return inv;
}

template Mat<double> evaluate_word(const Word&, const std::vector<Mat<double>>&,
                                   const std::vector<Mat<double>>&);
template Mat<Complex> evaluate_word(const Word&,
                                    const std::vector<Mat<Complex>>&,
                                    const std::vector<Mat<Complex>>&);
template Mat<Quaternion> evaluate_word(const Word&,
                                       const std::vector<Mat<Quaternion>>&,
                                       const std::vector<Mat<Quaternion>>&);
template std::vector<Mat<double>> invert_all(const std::vector<Mat<double>>&);
template std::vector<Mat<Complex>> invert_all(const std::vector<Mat<Complex>>&);
template std::vector<Mat<Quaternion>> invert_all(
    const std::vector<Mat<Quaternion>>&);

}  // namespace kleinian
