#include "pslab/exppair.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

namespace pslab {

bool ExponentPair::in_region() const {
  const Rational half(1, 2);
  return Rational(0) <= kappa && kappa <= half && half <= lambda && lambda <= Rational(1);
}

ExponentPair trivial_pair() { return {Rational(0), Rational(1)}; }

ExponentPair a_transform(const ExponentPair& p) {
  const Rational denom = Rational(2) * p.kappa + Rational(2);
  return {p.kappa / denom, (p.kappa + p.lambda + Rational(1)) / denom};
}

ExponentPair b_transform(const ExponentPair& p) {
  const Rational half(1, 2);
  return {p.lambda - half, p.kappa + half};
}

PairWord::PairWord(std::string expanded) : symbols_(std::move(expanded)) {
  if (symbols_.empty()) throw std::invalid_argument("exponent-pair word is empty");
  for (char ch : symbols_) {
    if (ch != 'A' && ch != 'B') throw std::invalid_argument("exponent-pair word may only contain A and B");
  }
}

PairWord PairWord::parse(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char sym = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    if (sym != 'A' && sym != 'B')
      throw std::invalid_argument("malformed word '" + std::string(text) + "': unexpected '" + text[i] + "'");
    ++i;
    std::size_t reps = 0;
    bool has_count = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      reps = reps * 10 + static_cast<std::size_t>(text[i] - '0');
      has_count = true;
      if (reps > 10000) throw std::invalid_argument("malformed word '" + std::string(text) + "': count too large");
      ++i;
    }
    if (!has_count) reps = 1;
    if (reps == 0) throw std::invalid_argument("malformed word '" + std::string(text) + "': zero repetition");
    out.append(reps, sym);
  }
  return PairWord(std::move(out));
}

std::string PairWord::compact() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size();) {
    std::size_t j = i;
    while (j < symbols_.size() && symbols_[j] == symbols_[i]) ++j;
    out += symbols_[i];
    if (j - i > 1) out += std::to_string(j - i);
    i = j;
  }
  return out;
}

ExponentPair eval_word(const PairWord& word) {
  ExponentPair p = trivial_pair();
  const auto& s = word.symbols();
  for (auto it = s.rbegin(); it != s.rend(); ++it) p = (*it == 'A') ? a_transform(p) : b_transform(p);
  return p;
}

double pair_bound(const ExponentPair& p, double Y, double X) {
  if (!(X >= 1.0) || !(Y > 0.0)) throw std::invalid_argument("pair_bound: need X >= 1 and Y > 0");
  return std::pow(Y, p.kappa.to_double()) * std::pow(X, p.lambda.to_double()) + 1.0 / Y;
}

PairObjective parse_objective(std::string_view text) {
  if (text == "kappa+lambda") return PairObjective::KappaPlusLambda;
  if (text == "kappa") return PairObjective::Kappa;
  if (text == "lambda") return PairObjective::Lambda;
  throw std::invalid_argument("unknown objective '" + std::string(text) + "' (kappa+lambda|kappa|lambda)");
}

PairSearchResult search_pairs(std::size_t max_len, PairObjective objective) {
  if (max_len == 0) throw std::invalid_argument("search_pairs: max_len must be positive");
  auto score = [objective](const ExponentPair& p) {
    switch (objective) {
      case PairObjective::Kappa:
        return p.kappa;
      case PairObjective::Lambda:
        return p.lambda;
      case PairObjective::KappaPlusLambda:
        break;
    }
    return p.kappa + p.lambda;
  };

  std::optional<PairSearchResult> best;
  std::size_t examined = 0;
  // Words grow leftwards: the suffix has already been applied to (0, 1).
  std::function<void(const std::string&, const ExponentPair&)> extend = [&](const std::string& suffix,
                                                                           const ExponentPair& p) {
    if (!suffix.empty()) {
      ++examined;
      Rational value = score(p);
      const bool better = !best || value < best->objective ||
                          (value == best->objective &&
                           (suffix.size() < best->word.size() ||
                            (suffix.size() == best->word.size() && suffix < best->word.symbols())));
      if (better) best = PairSearchResult{PairWord(suffix), p, value, 0};
    }
    if (suffix.size() == max_len) return;
    if (!suffix.empty()) extend("A" + suffix, a_transform(p));
    if (suffix.empty() || suffix.front() != 'B') extend("B" + suffix, b_transform(p));
  };
  extend("", trivial_pair());
  best->words_examined = examined;
  return *best;
}

}  // namespace pslab
