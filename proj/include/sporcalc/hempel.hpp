#pragma once

// Normalization of the extra relator into a power of x or a Hempel
// relator over the shifted alphabet, with a certificate checkable in F.
//
// Shifted generators are leveled symbols: `x@i` is y^i x y^-i and
// `zt@i` is y^i zt y^-i. The unshifted group F has the plain symbols
// x, y, z1..zd.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sporcalc/presentation.hpp"
#include "sporcalc/word.hpp"

namespace sporcalc {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CertificateFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

GeneratorSymbol shifted_x(std::int64_t level);
GeneratorSymbol shifted_z(int t, std::int64_t level);
bool is_x_symbol(const GeneratorSymbol& s);

/// ^level u for u a word in the unleveled z generators.
Word shift_u(const Word& u, std::int64_t level);
/// Adds `delta` to every level.
Word shift_levels(const Word& w, std::int64_t delta);
/// ^i g -> y^i g y^-i, reduced in F.
Word lower_to_free(const Word& shifted);
/// Rewrites a word of y-exponent sum zero in the shifted generators.
/// Throws std::invalid_argument otherwise.
Word lift_to_shifted(const Word& r);

struct IntervalState {
  std::int64_t mu;
  std::int64_t nu;
  friend bool operator==(const IntervalState&, const IntervalState&) = default;
};

/// Min and max z-level occurring in w, if any z occurs.
std::optional<IntervalState> z_interval(const Word& w);

/// A cyclically reduced shifted word whose only x letters are x@basis.
struct NWord {
  Word word;
  std::int64_t basis = 0;
  std::optional<IntervalState> interval;
};

enum class ShiftDirection { Up, Down };

/// Rewrites a shifted word so that x occurs only at level j, then
/// cyclically reduces.
NWord express_in_basis(const Word& shifted, std::int64_t j, const Word& u);
NWord shift_basis(const NWord& nw, ShiftDirection dir, const Word& u);

struct SignedConjugate {
  Word conjugator;
  int sign = 1;
};

/// r' = v * w alpha(r) w^-1 with v a product of conjugates of [x,y]u.
struct Certificate {
  std::vector<SignedConjugate> v;
  Word w;
  Word alpha_x;
  Word alpha_y;

  Word expand_v(const Word& relator) const;
  int relator_exponent() const;
};

struct PowerOfX {
  std::int64_t m = 0;
};

struct HempelRelator {
  /// Cyclically reduced word over x@1 and z@[0, inf).
  Word r;
  std::int64_t nu = 0;
};

struct NormalizationResult {
  std::variant<PowerOfX, HempelRelator> variant;

  bool is_power() const { return std::holds_alternative<PowerOfX>(variant); }
  const PowerOfX& power() const { return std::get<PowerOfX>(variant); }
  const HempelRelator& hempel() const { return std::get<HempelRelator>(variant); }
};

struct TraceStep {
  std::string phase;
  std::int64_t basis;
  Word word;
  std::optional<IntervalState> interval;
};

struct NormalizeOptions {
  /// Bound on basis shifts; default 10 * (|r| + nu_initial + 10).
  std::optional<std::size_t> cap;
};

struct Normalization {
  NormalizationResult result;
  Certificate certificate;
  BalanceResult balance;
  /// The output relator read in F.
  Word relator_in_free;
  std::vector<TraceStep> trace;
};

/// Throws CapExceeded, or CertificateFailure if the internal check fails.
Normalization normalize(const CommutatorForm& cf, const NormalizeOptions& opts = {});

/// Re-checks the certificate identity exactly and, independently, through
/// exponent-sum vectors.
bool verify_certificate(const CommutatorForm& cf, const Normalization& n);

struct HempelFlags {
  bool r1 = false;
  bool r2 = false;
  bool r3 = false;
  bool r4 = false;
  bool all() const { return r1 && r2 && r3 && r4; }
};

HempelFlags check_hempel(const Word& r, const Word& u);

/// Throws std::invalid_argument unless check_hempel(r, u).all().
std::int64_t nu_of(const Word& r, const Word& u);

struct HNNData {
  std::int64_t nu = 0;
  /// <x@0, z@[0,nu] | r> with x@1 replaced by (u@0) x@0.
  Presentation vertex;
  /// x@0, z@[0, nu-1], as words in the vertex generators.
  std::vector<Word> lower_edge_basis;
  /// x@1, z@[1, nu], as words in the vertex generators.
  std::vector<Word> upper_edge_basis;
  /// Stable letter y: lower generator -> upper generator, as symbols.
  std::vector<std::pair<GeneratorSymbol, GeneratorSymbol>> stable_letter_map;
};

HNNData hnn_data(const Word& r, const CommutatorForm& cf);

struct TorsionData {
  std::uint64_t m = 1;
  Word root;
};

TorsionData torsion_data(const Word& r, const Word& u);

}  // namespace sporcalc
