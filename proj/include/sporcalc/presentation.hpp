#pragma once

// Presentation text, surface-plus-one-relation inputs, and the change of
// basis that puts the surface relator in the form [x,y]u.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sporcalc/word.hpp"

namespace sporcalc {

struct Presentation {
  std::vector<GeneratorSymbol> generators;
  std::vector<Word> relators;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// `< gens | relators >`. Relators are stored freely reduced.
Presentation parse_presentation(const std::string& text);
/// A single `word` of the presentation grammar over `generators`.
Word parse_word(const std::string& text, const std::vector<GeneratorSymbol>& generators);
/// Prints with run-length exponents; parse_presentation inverts it exactly.
std::string print(const Presentation& p);
std::string print_word(const Word& w);

/// Thrown for inputs outside the supported k >= 3 range.
class UnsupportedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Orientability { Orientable, NonOrientable };

enum class NameStyle { Letters, Indexed };

/// a, b, c, ... (Letters, k <= 23) or x1, ..., xk (Indexed).
std::vector<GeneratorSymbol> surface_generators(int k, NameStyle style);

struct SporInput {
  int k = 0;
  Orientability orientability = Orientability::Orientable;
  std::vector<GeneratorSymbol> generators;
  Word r;

  /// The surface relator over `generators`.
  Word surface_relator() const;
  Presentation presentation() const;
};

/// `count` is the genus g for orientable surfaces (k = 2g) and k itself
/// otherwise. Throws std::invalid_argument if r uses other generators.
SporInput surface_input(Orientability o, int count, const Word& r,
                        NameStyle style = NameStyle::Letters);
SporInput surface_input(Orientability o, int count, const Word& r,
                        std::vector<GeneratorSymbol> generators);

/// Recognizes `< gens | w >` or `< gens | w, r >` with w a literal surface word.
SporInput spor_input_from(const Presentation& p);

struct BasisChange {
  /// old generator -> word in the new generators
  std::map<GeneratorSymbol, Word> forward;
  /// new generator -> word in the old generators
  std::map<GeneratorSymbol, Word> backward;
  /// word in the old generators with conjugator^-1 * w * conjugator = backward([x,y]u)
  Word conjugator;
};

Word substitute(const Word& w, const std::map<GeneratorSymbol, Word>& images);

struct CommutatorForm {
  int d = 0;
  Word u;
  Word r;
  BasisChange basis;
  std::vector<GeneratorSymbol> old_generators;

  /// [x,y]u
  Word relator() const;
  /// (x, y, z1, ..., zd)
  std::vector<GeneratorSymbol> generators() const;
};

GeneratorSymbol x_symbol();
GeneratorSymbol y_symbol();
GeneratorSymbol z_symbol(int t);

/// Throws UnsupportedInput when k <= 2.
CommutatorForm to_commutator_form(const SporInput& input);

/// Checks both composites of the basis change and the conjugator identity,
/// in the old and the new free group.
bool verify_basis_change(const CommutatorForm& cf, const Word& surface_relator);

struct BalanceMove {
  enum Kind { XTimesY, XTimesYInv, YTimesX, YTimesXInv } kind;
  std::int64_t a_after;
  std::int64_t b_after;
};

/// An automorphism of <x,y> given by the images of x and y; z letters fixed.
struct BalanceResult {
  Word alpha_x;
  Word alpha_y;
  Word r_balanced;
  std::vector<BalanceMove> moves;

  Word apply(const Word& w) const;
};

BalanceResult balance_exponents(const Word& r);

}  // namespace sporcalc
