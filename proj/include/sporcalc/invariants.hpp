#pragma once

// Classification of surface-plus-one-relation groups and their Euler
// characteristics and L2-Betti numbers, computed from closed forms.

#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sporcalc/hempel.hpp"
#include "sporcalc/presentation.hpp"
#include "sporcalc/word.hpp"

namespace sporcalc {

using Rational = boost::multiprecision::cpp_rational;

class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) {}
  ExtRational(long long v) : value_(v) {}
  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  /// Throws std::domain_error when infinite.
  const Rational& value() const;
  /// "p/q", "n", "inf" or "-inf".
  std::string to_string() const;

  friend ExtRational operator-(const ExtRational& a);
  friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
  friend ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }
  friend bool operator==(const ExtRational&, const ExtRational&) = default;

 private:
  enum class Kind { Finite, PosInf, NegInf };
  explicit ExtRational(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Rational value_ = 0;
};

/// 1/n with 1/inf = 0.
Rational reciprocal(const ExtendedNat& n);

enum class PowerSubcase { I, II, III };

struct PowerCase {
  ExtendedNat m = ExtendedNat::finite(0);
  ExtendedNat m_F = ExtendedNat::infinity();
  ExtendedNat m_prime = ExtendedNat::finite(1);
  ExtendedNat m_double_prime = ExtendedNat::infinity();
  PowerSubcase subcase = PowerSubcase::I;
};

/// m' = m'' = m.
struct HempelCase {
  ExtendedNat m = ExtendedNat::finite(1);
  std::int64_t nu = 0;
};

struct Classification {
  std::variant<PowerCase, HempelCase> kind;

  bool is_power() const { return std::holds_alternative<PowerCase>(kind); }
  ExtendedNat m() const;
  ExtendedNat m_F() const;
  ExtendedNat m_prime() const;
  ExtendedNat m_double_prime() const;
  /// "power-i", "power-ii", "power-iii" or "hempel".
  std::string case_name() const;
};

struct L2Report {
  ExtRational b0;
  ExtRational b1;
  ExtRational b2;
  /// b0 - b1 + b2
  ExtRational euler() const { return b0 - b1 + b2; }
};

/// A quoted structural result; not computed.
struct Annotation {
  std::string claim;
  std::string ref;
};

struct Report {
  int k = 0;
  CommutatorForm form;
  Normalization normalization;
  Classification classification;
  ExtRational chi;
  L2Report l2;
  std::vector<Annotation> annotations;
  /// Set when the result takes r mod w to be nontrivial in the surface group
  /// without proving it.
  bool assumes_nontrivial_r = false;
};

/// Throws UnsupportedInput for k <= 2 or for a power of x with u = 1.
Classification classify(const SporInput& input);
Classification classify(const CommutatorForm& cf, const NormalizationResult& n);

ExtRational euler_characteristic(const Classification& c, int k);
ExtRational vor_chi(std::int64_t index, std::int64_t n_gens, const ExtendedNat& relator_log);
L2Report l2_betti(const Classification& c, int k, const ExtRational& chi);

std::vector<Annotation> annotations(const Classification& c);

Report build_report(const SporInput& input, const NormalizeOptions& opts = {});

}  // namespace sporcalc
