#pragma once

#include <string>
#include <vector>

#include "chyp/isometry.hpp"

namespace chyp {

struct Letter {
  int generator = 0;
  int exponent = 1;  // +1 or -1

  bool operator==(const Letter&) const = default;
  Letter inverse() const { return {generator, -exponent}; }
  /// Enumeration order: a, a^-1, b, b^-1, ...
  int rank() const { return 2 * generator + (exponent > 0 ? 0 : 1); }
};

/// A word in the generators and their inverses.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  bool reduced() const {
    for (std::size_t i = 1; i < letters_.size(); ++i)
      if (letters_[i] == letters_[i - 1].inverse()) return false;
    return true;
  }

  /// Free reduction.
  Word reduce() const {
    std::vector<Letter> out;
    for (const auto& l : letters_) {
      if (!out.empty() && out.back() == l.inverse())
        out.pop_back();
      else
        out.push_back(l);
    }
    return Word(std::move(out));
  }

  Word inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l.exponent = -l.exponent;
    return Word(std::move(out));
  }

  Word operator*(const Word& rhs) const {
    std::vector<Letter> out = letters_;
    out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
    return Word(std::move(out)).reduce();
  }

  Word pow(int k) const {
    Word base = k < 0 ? inverse() : *this;
    Word out;
    for (int i = 0; i < std::abs(k); ++i) out = out * base;
    return out;
  }

  bool operator==(const Word&) const = default;

  /// Shortlex: by length, then letter rank.
  bool shortlex_less(const Word& rhs) const {
    if (length() != rhs.length()) return length() < rhs.length();
    for (std::size_t i = 0; i < letters_.size(); ++i)
      if (letters_[i].rank() != rhs.letters_[i].rank()) return letters_[i].rank() < rhs.letters_[i].rank();
    return false;
  }

  /// "a^3 b^-1 a", or "1" for the empty word; runs of a letter become powers.
  std::string to_string(const std::vector<std::string>& names) const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size();) {
      std::size_t j = i;
      while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
      if (i) s += ' ';
      const auto g = std::size_t(letters_[i].generator);
      s += g < names.size() ? names[g] : "g" + std::to_string(g);
      const long e = long(j - i) * letters_[i].exponent;
      if (e != 1) s += "^" + std::to_string(e);
      i = j;
    }
    return s;
  }

 private:
  std::vector<Letter> letters_;
};

struct NamedIsometry {
  std::string name;
  Isometry element;
};

/// A finitely generated subgroup of U(1,n), given by explicit matrices.
struct GroupInput {
  int dim_n = 1;
  std::vector<NamedIsometry> generators;

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& g : generators) out.push_back(g.name);
    return out;
  }

  void validate() const {
    if (dim_n < 1) throw DimensionError("group dimension must be positive");
    for (const auto& g : generators)
      if (g.element.dim_n() != dim_n) throw DimensionError("generator '" + g.name + "' has the wrong dimension");
  }
};

inline Isometry evaluate(const GroupInput& group, const Word& w) {
  CMatrix acc = CMatrix::Identity(group.dim_n + 1, group.dim_n + 1);
  for (const auto& l : w.letters()) {
    if (l.generator < 0 || std::size_t(l.generator) >= group.generators.size())
      throw DimensionError("word refers to a missing generator");
    const Isometry& g = group.generators[std::size_t(l.generator)].element;
    acc = acc * (l.exponent > 0 ? g.matrix() : inverse(g).matrix());
  }
  return Isometry::trusted(std::move(acc));
}

}  // namespace chyp
