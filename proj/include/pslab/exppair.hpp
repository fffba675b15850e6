#pragma once

#include "pslab/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pslab {

/// Exponent pair (kappa, lambda) with exact rational entries.
struct ExponentPair {
  Rational kappa;
  Rational lambda;

  /// 0 <= kappa <= 1/2 <= lambda <= 1.
  bool in_region() const;
  std::string str() const { return "(" + kappa.str() + ", " + lambda.str() + ")"; }

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// The trivial pair (0, 1), seed of every word.
ExponentPair trivial_pair();

/// A(k, l) = (k / (2k + 2), (k + l + 1) / (2k + 2)).
ExponentPair a_transform(const ExponentPair& p);

/// B(k, l) = (l - 1/2, k + 1/2).
ExponentPair b_transform(const ExponentPair& p);

/// A word over {A, B}; "BA5BA2BA2B" abbreviates repeated symbols with counts.
class PairWord {
public:
  static PairWord parse(std::string_view text);
  explicit PairWord(std::string expanded);

  /// Expanded symbols, leftmost first.
  const std::string& symbols() const { return symbols_; }
  /// Compact form with repetition counts.
  std::string compact() const;
  std::size_t size() const { return symbols_.size(); }

private:
  std::string symbols_;
};

/// Applies the word to (0, 1), rightmost symbol first.
ExponentPair eval_word(const PairWord& word);

/// Y^kappa X^lambda + 1/Y in double precision. X >= 1, Y > 0.
double pair_bound(const ExponentPair& p, double Y, double X);

enum class PairObjective { KappaPlusLambda, Kappa, Lambda };

PairObjective parse_objective(std::string_view text);

struct PairSearchResult {
  PairWord word;
  ExponentPair pair;
  Rational objective;
  std::size_t words_examined = 0;
};

/// Enumerates words of length 1..max_len (skipping BB, which cancels, and
/// A applied directly to (0, 1), which is a fixed point) and returns the one
/// minimizing the objective; ties go to the shorter, then lexicographically
/// smaller word.
PairSearchResult search_pairs(std::size_t max_len, PairObjective objective);

}  // namespace pslab
