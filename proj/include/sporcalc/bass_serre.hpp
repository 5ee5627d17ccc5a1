#pragma once

// Free products A*B of free groups, their Bass-Serre tree, and supports
// and staggered orders for relators of a free group.

#include <optional>
#include <set>
#include <vector>

#include "sporcalc/word.hpp"

namespace sporcalc {

enum class Factor { A, B };

struct FPEntry {
  Factor tag;
  Word word;
  friend bool operator==(const FPEntry&, const FPEntry&) = default;
};

/// Alternating sequence of nontrivial factor words.
struct FPElement {
  std::vector<FPEntry> entries;

  std::size_t length() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  FPElement inverse() const;
  friend FPElement operator*(const FPElement& a, const FPElement& b);
  friend bool operator==(const FPElement&, const FPElement&) = default;
};

FPElement fp_normal_form(const std::vector<FPEntry>& raw);
/// The same element in A*B read as a word in the free group on the union of
/// both generator sets.
Word flatten(const FPElement& g);
std::string to_string(const FPElement& g);
/// Parses "A:a1 a2^-1 | B:b1 | ..." into a normal form.
FPElement fp_from_string(const std::string& text);

struct VertexDescriptor {
  FPElement conjugator;
  Factor tag;
};

/// g = c h c^-1 with h in the named factor, when one exists.
std::optional<VertexDescriptor> fixes_vertex(const FPElement& g);

struct CyclicFP {
  /// Even length, starting with A.
  FPElement form;
  /// g = conjugator * form * conjugator^-1
  FPElement conjugator;
};

CyclicFP fp_cyclic_normal_form(const FPElement& g);

struct AxisDescriptor {
  FPElement cyclic_normal_form;
  std::size_t period_m = 0;
  FPElement root;
  std::size_t log = 0;
};

/// Throws std::invalid_argument if g fixes a vertex.
AxisDescriptor fp_root(const FPElement& g);

/// Generators occurring in the cyclic reduction. Throws for r = 1.
std::set<GeneratorSymbol> support(const Word& r);

struct StaggerProblem {
  std::vector<GeneratorSymbol> generators;
  std::vector<Word> relators;
  std::vector<std::set<GeneratorSymbol>> supports;
  /// class_of[i] == class_of[j] iff relators i, j are conjugate up to inversion.
  std::vector<std::size_t> class_of;

  /// Throws std::invalid_argument on a trivial relator or a symbol outside
  /// `generators`.
  StaggerProblem(std::vector<GeneratorSymbol> gens, std::vector<Word> rels);
};

struct PairConditions {
  bool same_class = false;
  bool first_below = false;
  bool second_below = false;
  int count() const { return same_class + first_below + second_below; }
};

/// order lists every generator once, smallest first.
PairConditions pair_conditions(const StaggerProblem& p, const std::vector<GeneratorSymbol>& order, std::size_t i,
                               std::size_t j);
bool staggered_check(const StaggerProblem& p, const std::vector<GeneratorSymbol>& order);

struct OrderWitness {
  bool staggerable = false;
  std::optional<std::vector<GeneratorSymbol>> order;
  std::size_t nodes = 0;
};

inline constexpr std::size_t kDefaultOrderCap = 3628800;  // 10!

/// Backtracking over total orders; the witness is the lexicographically
/// least in the order of p.generators. Throws CapExceeded past `cap` nodes.
OrderWitness staggerable_search(const StaggerProblem& p, std::size_t cap = kDefaultOrderCap);

}  // namespace sporcalc
