#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace obk {

using Int = std::int64_t;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

/// A letter of a word in a free group: +(i+1) is generator i, -(i+1) its inverse.
using Letter = std::int32_t;

inline int letter_index(Letter l) { return (l > 0 ? l : -l) - 1; }
inline int letter_sign(Letter l) { return l > 0 ? 1 : -1; }

/// A word in a free group, stored freely reduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce(); }

  static Word generator(int index, int power = 1) {
    std::vector<Letter> ls;
    Letter l = static_cast<Letter>(index + 1) * (power < 0 ? -1 : 1);
    for (int i = 0; i < (power < 0 ? -power : power); ++i) ls.push_back(l);
    return Word(std::move(ls));
  }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  Word inverse() const {
    std::vector<Letter> ls;
    ls.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) ls.push_back(-*it);
    Word w;
    w.letters_ = std::move(ls);  // inverse of reduced word is reduced
    return w;
  }

  Word operator*(const Word& o) const {
    std::vector<Letter> ls = letters_;
    ls.insert(ls.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(ls));
  }

  Word conjugated_by(const Word& w) const { return w * (*this) * w.inverse(); }

  /// Exponent-sum vector over n generators.
  IntVec abelianized(int n) const {
    IntVec v = IntVec::Zero(n);
    for (Letter l : letters_) {
      int i = letter_index(l);
      if (i >= n) throw std::out_of_range("letter outside generator range");
      v[i] += letter_sign(l);
    }
    return v;
  }

  /// Removes cancelling prefix/suffix pairs; the result represents the same conjugacy class.
  Word cyclically_reduced() const {
    std::size_t a = 0, b = letters_.size();
    while (b > a + 1 && letters_[a] == -letters_[b - 1]) { ++a; --b; }
    Word w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(a),
                      letters_.begin() + static_cast<std::ptrdiff_t>(b));
    return w;
  }

  /// Conjugacy test: cyclic reductions agree up to rotation.
  bool conjugate_to(const Word& o) const {
    Word u = cyclically_reduced(), v = o.cyclically_reduced();
    if (u.size() != v.size()) return false;
    if (u.empty()) return true;
    const auto& a = u.letters_;
    const auto& b = v.letters_;
    for (std::size_t r = 0; r < a.size(); ++r) {
      bool ok = true;
      for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(r + i) % a.size()] == b[i];
      if (ok) return true;
    }
    return false;
  }

 private:
  void reduce() {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (Letter l : letters_) {
      if (l == 0) throw std::invalid_argument("zero letter");
      if (!out.empty() && out.back() == -l) out.pop_back();
      else out.push_back(l);
    }
    letters_ = std::move(out);
  }

  std::vector<Letter> letters_;
};

/// A map sending each generator to a word; composition and application reduce freely.
class GeneratorMap {
 public:
  GeneratorMap() = default;
  explicit GeneratorMap(std::vector<Word> images) : images_(std::move(images)) {}

  static GeneratorMap identity(int n) {
    std::vector<Word> im;
    im.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) im.push_back(Word::generator(i));
    return GeneratorMap(std::move(im));
  }

  int rank() const { return static_cast<int>(images_.size()); }
  const Word& image(int i) const { return images_.at(static_cast<std::size_t>(i)); }
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const {
    Word out;
    for (Letter l : w.letters()) {
      const Word& im = images_.at(static_cast<std::size_t>(letter_index(l)));
      out = out * (letter_sign(l) > 0 ? im : im.inverse());
    }
    return out;
  }

  /// this ∘ other (other applied first).
  GeneratorMap compose_after(const GeneratorMap& other) const {
    std::vector<Word> im;
    im.reserve(other.images_.size());
    for (const Word& w : other.images_) im.push_back(apply(w));
    return GeneratorMap(std::move(im));
  }

  bool operator==(const GeneratorMap& o) const { return images_ == o.images_; }

  bool is_identity() const {
    for (int i = 0; i < rank(); ++i)
      if (images_[static_cast<std::size_t>(i)] != Word::generator(i)) return false;
    return true;
  }

  /// Integer matrix of the induced map on the abelianization (columns are images).
  IntMat abelianized(int n) const {
    IntMat m(n, rank());
    for (int j = 0; j < rank(); ++j) m.col(j) = images_[static_cast<std::size_t>(j)].abelianized(n);
    return m;
  }

 private:
  std::vector<Word> images_;
};

/// Artin generator on strands 1..n: x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i.
GeneratorMap artin_generator(int n, int i, bool inverse);

// --- textual form -----------------------------------------------------------
//
// Words are written as space-separated letters "a1 b1^-1 d2^3" against a
// declared list of generator names.

std::string word_to_string(const Word& w, const std::vector<std::string>& names);
Word parse_word(const std::string& text, const std::vector<std::string>& names);

}  // namespace obk
