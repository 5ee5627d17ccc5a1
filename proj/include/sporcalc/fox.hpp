#pragma once

// Integer group rings over free groups, Fox derivatives, the boundary
// maps of the two-relator complex, and evaluation under quotient maps.

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sporcalc/hempel.hpp"
#include "sporcalc/presentation.hpp"
#include "sporcalc/word.hpp"

namespace sporcalc {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Finite formal sum of free-group words with nonzero integer coefficients.
class GroupRingElt {
 public:
  GroupRingElt() = default;
  static GroupRingElt one() { return of(Word()); }
  static GroupRingElt of(const Word& w, Integer c = 1);

  const std::map<Word, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer augmentation() const;

  GroupRingElt& operator+=(const GroupRingElt& o);
  GroupRingElt& operator-=(const GroupRingElt& o);
  friend GroupRingElt operator+(GroupRingElt a, const GroupRingElt& b) { return a += b; }
  friend GroupRingElt operator-(GroupRingElt a, const GroupRingElt& b) { return a -= b; }
  friend GroupRingElt operator-(const GroupRingElt& a);
  friend GroupRingElt operator*(const GroupRingElt& a, const GroupRingElt& b);
  friend GroupRingElt operator*(const Word& w, const GroupRingElt& a);
  friend bool operator==(const GroupRingElt&, const GroupRingElt&) = default;

 private:
  void add(const Word& w, const Integer& c);
  std::map<Word, Integer> terms_;
};

std::string to_string(const GroupRingElt& e);

struct FoxJet {
  std::vector<GeneratorSymbol> generators;
  std::vector<GroupRingElt> components;

  const GroupRingElt& operator[](const GeneratorSymbol& g) const;
};

/// Left convention: d(uv) = du + u dv. Throws std::invalid_argument if r
/// uses a generator outside `gens`.
FoxJet fox_derivative(const Word& r, const std::vector<GeneratorSymbol>& gens);

/// sum_g (dr/dg)(g - 1) == r - 1 in ZF
bool fundamental_identity_check(const Word& r, const std::vector<GeneratorSymbol>& gens);

struct BoundaryMatrices {
  std::vector<GeneratorSymbol> generators;
  /// row 0: jet of [x,y]u, row 1: jet of the Hempel relator read in F
  std::vector<std::vector<GroupRingElt>> d2;
  std::vector<GroupRingElt> d1;
  std::vector<Word> relators;
  /// Row 1 spans the summand averaged over C_m = <root>.
  bool row2_averaged = true;
  std::uint64_t m = 1;
  Word root;
};

BoundaryMatrices chain_complex(const CommutatorForm& cf, const HempelRelator& h, const TorsionData& torsion);

template <class T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool is_zero() const {
    for (const auto& v : data)
      if (v != 0) return false;
    return true;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  for (std::size_t i = 0; i < a.data.size(); ++i) a.data[i] += b.data[i];
  return a;
}

/// Permutation of {0..N-1} acting on the right: i^p = p[i].
using Permutation = std::vector<std::uint32_t>;

/// Laurent polynomial in the free abelianization, rational coefficients.
using LaurentPoly = std::map<std::vector<std::int64_t>, Rational>;

class QuotientMap {
 public:
  struct Abelian {
    std::vector<GeneratorSymbol> generators;
    /// generator -> image in Z^rank (rank = free rank of H1)
    std::map<GeneratorSymbol, std::vector<std::int64_t>> image;
    std::size_t rank = 0;
  };
  struct Finite {
    std::size_t degree = 0;
    std::map<GeneratorSymbol, Permutation> image;
  };

  /// G -> H1(G)/torsion, computed from the Smith form of the relation matrix.
  static QuotientMap abelianization(const Presentation& p);
  /// Throws std::invalid_argument if some relator is not sent to the identity.
  static QuotientMap finite(const Presentation& p, std::map<GeneratorSymbol, Permutation> images);

  const std::variant<Abelian, Finite>& kind() const { return kind_; }
  bool is_finite() const { return std::holds_alternative<Finite>(kind_); }

  Permutation permutation(const Word& w) const;
  std::vector<std::int64_t> exponent(const Word& w) const;

 private:
  explicit QuotientMap(std::variant<Abelian, Finite> k) : kind_(std::move(k)) {}
  std::variant<Abelian, Finite> kind_;
};

/// Nontrivial maps to Z/n (n = 2..4) and to S3 found by bounded search,
/// as permutation quotients. May be empty.
std::vector<QuotientMap> registered_quotients(const Presentation& p);

struct LaurentComplex {
  std::vector<std::vector<LaurentPoly>> d2;
  std::vector<LaurentPoly> d1;
};

struct BlockComplex {
  std::size_t degree = 0;
  std::vector<std::vector<Matrix<Rational>>> d2;
  std::vector<Matrix<Rational>> d1;
};

using EvaluatedComplex = std::variant<LaurentComplex, BlockComplex>;

/// The averaged row is multiplied on the left by the image of
/// e = (1/m) sum_{c in C_m} c.
EvaluatedComplex evaluate(const BoundaryMatrices& m, const QuotientMap& q);
/// All generators sent to 1.
Matrix<Rational> specialize_at_augmentation(const std::vector<std::vector<LaurentPoly>>& m);
/// d2 * d1 is the zero column.
bool composite_is_zero(const EvaluatedComplex& c);

struct SmithForm {
  std::vector<Integer> diagonal;
  std::size_t rank = 0;
  std::vector<Integer> elementary_divisors;
  Matrix<Integer> u;
  Matrix<Integer> v;
};

/// U A V = D with U, V unimodular and d1 | d2 | ... on the diagonal.
SmithForm smith_normal_form(const Matrix<Integer>& a);
Integer determinant(Matrix<Integer> a);

struct Homology {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
};

/// Rows of the relation matrix are the exponent vectors of the relators.
Matrix<Integer> relation_matrix(const Presentation& p);
Homology abelianized_homology(const Presentation& p);

}  // namespace sporcalc
