#pragma once

// Shared helpers for the test suites: random words and small enumerations.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sporcalc/bass_serre.hpp"
#include "sporcalc/word.hpp"

namespace sporcalc::testing {

inline std::vector<GeneratorSymbol> gens(std::initializer_list<const char*> names) {
  std::vector<GeneratorSymbol> g;
  for (auto n : names) g.emplace_back(n);
  return g;
}

inline Word w(const std::string& text) { return word_from_string(text); }

/// Unreduced letter sequence of the given length.
inline std::vector<Letter> random_raw(std::mt19937_64& rng, const std::vector<GeneratorSymbol>& g, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> raw;
  for (std::size_t i = 0; i < len; ++i) raw.push_back({g[pick(rng)], sign(rng) ? 1 : -1});
  return raw;
}

/// Reduced word of exactly `len` letters.
inline Word random_reduced(std::mt19937_64& rng, const std::vector<GeneratorSymbol>& g, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> raw;
  while (raw.size() < len) {
    Letter l{g[pick(rng)], sign(rng) ? 1 : -1};
    if (!raw.empty() && raw.back().cancels(l)) continue;
    raw.push_back(l);
  }
  return Word(raw);
}

/// Calls f on every reduced word of length exactly n over g.
template <class F>
void for_each_reduced(const std::vector<GeneratorSymbol>& g, std::size_t n, F&& f) {
  std::vector<Letter> alphabet;
  for (const auto& s : g) {
    alphabet.push_back({s, 1});
    alphabet.push_back({s, -1});
  }
  std::vector<Letter> cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == n) {
      f(Word(cur));
      return;
    }
    for (const auto& l : alphabet) {
      if (!cur.empty() && cur.back().cancels(l)) continue;
      cur.push_back(l);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

/// Root by trying every divisor of the cyclic length: strip inverse end
/// letters, then take the least period of the core that divides its length.
inline std::pair<Word, std::size_t> divisor_period_root(const Word& word) {
  std::vector<Letter> v(word.letters().begin(), word.letters().end());
  std::size_t lo = 0, hi = v.size();
  while (hi - lo >= 2 && v[lo].cancels(v[hi - 1])) {
    ++lo;
    --hi;
  }
  const std::size_t n = hi - lo;
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = lo; i + p < hi && ok; ++i) ok = v[i] == v[i + p];
    if (!ok) continue;
    std::vector<Letter> root(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo + p));
    root.insert(root.end(), v.begin() + static_cast<std::ptrdiff_t>(hi), v.end());
    return {Word(root), n / p};
  }
  return {Word(), 0};
}

/// Least m dividing n with the alternating sequence made of m-pair blocks.
inline std::pair<FPElement, std::size_t> brute_force_fp_root(const FPElement& cyclic) {
  const std::size_t n = cyclic.length() / 2;
  for (std::size_t m = 1; m <= n; ++m) {
    if (n % m != 0) continue;
    FPElement block, power;
    block.entries.assign(cyclic.entries.begin(), cyclic.entries.begin() + static_cast<std::ptrdiff_t>(2 * m));
    for (std::size_t t = 0; t < n / m; ++t) power = power * block;
    if (power == cyclic) return {block, n / m};
  }
  return {FPElement{}, 0};
}

/// Tries every order in lexicographic order of generator indices.
inline std::optional<std::vector<GeneratorSymbol>> brute_force_stagger(const StaggerProblem& p) {
  std::vector<std::size_t> idx(p.generators.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    std::vector<GeneratorSymbol> order;
    for (auto i : idx) order.push_back(p.generators[i]);
    if (staggered_check(p, order)) return order;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return std::nullopt;
}

/// Fifty relator sets over at most four generators with at most three
/// relators each; the first is {x1 x2 x3, x2}. Built from a fixed seed with
/// plain modular draws so the corpus is the same on every platform.
inline std::vector<StaggerProblem> stagger_corpus() {
  std::vector<StaggerProblem> out;
  const std::vector<GeneratorSymbol> all{GeneratorSymbol("x1"), GeneratorSymbol("x2"), GeneratorSymbol("x3"),
                                         GeneratorSymbol("x4")};
  out.emplace_back(std::vector<GeneratorSymbol>(all.begin(), all.begin() + 3),
                   std::vector<Word>{w("x1 x2 x3"), w("x2")});
  std::mt19937_64 rng(2024);
  while (out.size() < 50) {
    const std::size_t k = 2 + rng() % 3;
    const std::vector<GeneratorSymbol> g(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    const std::size_t count = 1 + rng() % 3;
    std::vector<Word> rels;
    while (rels.size() < count) {
      if (!rels.empty() && rng() % 5 == 0) {
        // a conjugate or inverse of an earlier relator
        const Word& base = rels[rng() % rels.size()];
        rels.push_back(rng() % 2 ? base.inverse() : conjugate(Word::generator(g[rng() % k]), base));
        continue;
      }
      std::vector<Letter> raw;
      const std::size_t len = 1 + rng() % 5;
      while (raw.size() < len) {
        Letter l{g[rng() % k], rng() % 2 ? 1 : -1};
        if (!raw.empty() && raw.back().cancels(l)) continue;
        raw.push_back(l);
      }
      rels.emplace_back(raw);
    }
    out.emplace_back(g, rels);
  }
  return out;
}

}  // namespace sporcalc::testing
