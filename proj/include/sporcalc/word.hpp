#pragma once

// Free-group words over named, optionally level-indexed generators.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sporcalc {

/// A generator name with an optional integer level. `^i x` is written
/// `x@i`; plain generators have no level.
struct GeneratorSymbol {
  std::string name;
  std::optional<std::int64_t> level;

  GeneratorSymbol() = default;
  GeneratorSymbol(std::string n) : name(std::move(n)) {}
  GeneratorSymbol(const char* n) : name(n) {}
  GeneratorSymbol(std::string n, std::int64_t lvl) : name(std::move(n)), level(lvl) {}

  /// Same name, level moved by `delta`. Requires a level.
  GeneratorSymbol shifted(std::int64_t delta) const;

  friend bool operator==(const GeneratorSymbol&, const GeneratorSymbol&) = default;
  friend std::strong_ordering operator<=>(const GeneratorSymbol& a, const GeneratorSymbol& b);
};

std::string to_string(const GeneratorSymbol& s);

struct Letter {
  GeneratorSymbol symbol;
  int sign = 1;

  Letter inverse() const { return {symbol, -sign}; }
  bool cancels(const Letter& other) const {
    return sign == -other.sign && symbol == other.symbol;
  }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend std::strong_ordering operator<=>(const Letter& a, const Letter& b);
};

/// A freely reduced word. Every constructor reduces, so equality of
/// Word values is equality in the free group.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> raw);
  Word(std::initializer_list<Letter> raw) : Word(std::vector<Letter>(raw)) {}

  static Word generator(const GeneratorSymbol& g, std::int64_t power = 1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }

  Word inverse() const;
  Word pow(std::int64_t e) const;
  /// Letters [pos, pos+len), reduced (a subword of a reduced word is reduced).
  Word subword(std::size_t pos, std::size_t len) const;

  /// Appends letters with cancellation at the seam.
  Word& operator*=(const Word& rhs);
  Word& operator*=(const Letter& rhs);

  friend Word operator*(Word a, const Word& b) { return a *= b; }
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> raw);
Word multiply(const Word& a, const Word& b);
Word invert(const Word& a);
/// g w g^-1
Word conjugate(const Word& g, const Word& w);
/// [a,b] = a b a^-1 b^-1
Word commutator(const Word& a, const Word& b);

/// A cyclically reduced word, compared up to rotation. The stored
/// representative is kept as given; comparisons use the lexicographically
/// least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  /// Throws std::invalid_argument if `w` is not cyclically reduced.
  explicit CyclicWord(Word w);

  const Word& representative() const { return rep_; }
  std::size_t length() const { return rep_.length(); }
  bool empty() const { return rep_.empty(); }
  Word canonical() const;
  CyclicWord inverse() const { return CyclicWord(rep_.inverse()); }

  friend bool operator==(const CyclicWord& a, const CyclicWord& b);

 private:
  Word rep_;
};

bool is_cyclically_reduced(const Word& w);
Word least_rotation(const Word& w);

struct CyclicReduction {
  CyclicWord cyclic;
  /// w = conjugator * cyclic * conjugator^-1
  Word conjugator;
};

CyclicReduction cyclic_reduce(const Word& w);

std::int64_t exponent_sum(const Word& w, const GeneratorSymbol& g);
bool involves(const CyclicWord& c, const std::set<GeneratorSymbol>& symbols);
bool involves(const Word& w, const std::set<GeneratorSymbol>& symbols);
std::set<GeneratorSymbol> symbols_of(const Word& w);

/// Value in [1, inf]; infinity is used only for log of the identity.
class ExtendedNat {
 public:
  static ExtendedNat infinity() { return ExtendedNat(); }
  static ExtendedNat finite(std::uint64_t v) { return ExtendedNat(v); }

  bool is_infinite() const { return !value_; }
  /// Throws std::logic_error on infinity.
  std::uint64_t value() const;
  std::string to_string() const;

  friend bool operator==(const ExtendedNat&, const ExtendedNat&) = default;

 private:
  ExtendedNat() = default;
  explicit ExtendedNat(std::uint64_t v) : value_(v) {}
  std::optional<std::uint64_t> value_;
};

struct RootResult {
  Word root;
  ExtendedNat exponent = ExtendedNat::infinity();
};

RootResult free_root(const Word& w);

/// Some t with r conjugate to s^t, if one exists. t = 0 iff r is trivial.
std::optional<std::int64_t> conjugate_to_power_of(const Word& r, const Word& s);

/// Space separated terms `name`, `name^-1`, `name@i`, `name@i^-1`.
std::string to_string(const Word& w);
/// Inverse of to_string(Word). Throws std::invalid_argument.
Word word_from_string(const std::string& text);

}  // namespace sporcalc
