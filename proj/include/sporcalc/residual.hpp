#pragma once

// Truncated noncommuting power series, the Magnus map of a free group, and
// finite p-group images of <x, y, z | [x,y]u> built from a skew group ring
// over the cyclic group of order q^2, q = p^n.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sporcalc/word.hpp"

namespace sporcalc {

using Integer = boost::multiprecision::cpp_int;

/// Coefficients in Z (modulus 0) or Z/p, monomials of degree <= max_degree.
class TruncSeries {
 public:
  using Monomial = std::vector<std::uint32_t>;

  TruncSeries(std::shared_ptr<const std::vector<std::string>> vars, std::size_t max_degree, std::uint64_t modulus);

  static TruncSeries constant(const TruncSeries& like, Integer c);
  static TruncSeries variable(const TruncSeries& like, std::uint32_t v);

  const std::map<Monomial, Integer>& coeffs() const { return coeffs_; }
  const std::vector<std::string>& variables() const { return *vars_; }
  std::size_t max_degree() const { return max_degree_; }
  std::uint64_t modulus() const { return modulus_; }

  Integer constant_term() const;
  bool is_one() const;
  /// Lowest-degree, then lexicographically least, monomial of (f - 1).
  std::optional<std::pair<Monomial, Integer>> lowest_deviation() const;

  void add_term(const Monomial& m, const Integer& c);
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.coeffs_ == b.coeffs_; }

  std::string monomial_string(const Monomial& m) const;
  std::string to_string() const;

 private:
  Integer normalize(Integer c) const;
  std::shared_ptr<const std::vector<std::string>> vars_;
  std::size_t max_degree_;
  std::uint64_t modulus_;
  std::map<Monomial, Integer> coeffs_;
};

/// Throws std::domain_error if the constant term is not a unit.
TruncSeries series_inverse(const TruncSeries& f);

/// g -> 1 + b_g, g^-1 -> sum_i (-b_g)^i; one variable per generator, named b_<g>.
TruncSeries magnus_image(const Word& w, const std::vector<GeneratorSymbol>& generators, std::size_t n,
                         std::uint64_t modulus);

struct WitnessReport {
  Word element;
  /// 0 stands for Z.
  std::uint64_t prime = 0;
  std::size_t degree = 0;
  bool image_nontrivial = false;
  std::optional<std::string> witness_monomial;
  std::optional<Integer> witness_coefficient;
  /// Multiplicative order of the image, when requested.
  std::optional<Integer> order;
};

/// Raises the truncation degree from 1 until the image is not 1. Throws
/// std::invalid_argument for w = 1 and std::logic_error if no witness of
/// degree <= |w| exists.
WitnessReport nontriviality_witness(const Word& w, const std::vector<GeneratorSymbol>& generators,
                                    std::uint64_t modulus);

/// sum_t f_t y^t over C_{q^2}, with y f y^-1 = sigma(f).
struct SkewRingElt {
  std::map<std::uint64_t, TruncSeries> components;
};

class SkewRing {
 public:
  /// Throws std::invalid_argument for d = 0, a non-prime p, n = 0, or when
  /// the relator [x,y]u is not sent to 1. Throws UnsupportedInput when
  /// sigma^(q^2) is not the identity at the chosen degree, and CapExceeded if
  /// a series grows past `monomial_cap` terms.
  SkewRing(int d, const Word& u, std::uint64_t p, std::uint32_t n, std::optional<std::size_t> degree = std::nullopt,
           std::size_t monomial_cap = 200000);

  std::uint64_t q() const { return q_; }
  std::uint64_t group_order() const { return q_ * q_; }
  std::size_t degree() const { return degree_; }
  const TruncSeries& zero() const { return zero_; }

  SkewRingElt one() const;
  SkewRingElt series(const TruncSeries& f, std::uint64_t t = 0) const;
  SkewRingElt multiply(const SkewRingElt& a, const SkewRingElt& b) const;
  SkewRingElt inverse_unit(const SkewRingElt& a) const;
  bool is_one(const SkewRingElt& a) const;
  bool equal(const SkewRingElt& a, const SkewRingElt& b) const;

  /// sigma^s applied to f.
  TruncSeries act(std::uint64_t s, const TruncSeries& f) const;
  /// Image of a word in x, y, z1..zd.
  SkewRingElt image(const Word& s) const;
  /// Order of a unit whose image lies in a p-group, found by repeated p-th powers.
  Integer order(const SkewRingElt& a, std::size_t max_steps = 64) const;

 private:
  void check_cap(const TruncSeries& f) const;
  SkewRingElt trim(SkewRingElt a) const;

  int d_;
  std::uint64_t p_;
  std::uint64_t q_;
  std::size_t degree_;
  std::size_t cap_;
  TruncSeries zero_;
  std::uint32_t x_var_ = 0;
  std::vector<std::vector<std::uint32_t>> z_var_;  // [t-1][i]
  /// sigma_images_[s][v] = sigma^s(b_v)
  std::vector<std::vector<TruncSeries>> sigma_images_;
};

/// Image of s in the skew ring, with d >= 1.
WitnessReport potency_s_witness(const Word& s, int d, const Word& u, std::uint64_t p, std::uint32_t n,
                                std::optional<std::size_t> degree = std::nullopt, bool compute_order = false,
                                std::size_t monomial_cap = 200000);

}  // namespace sporcalc
