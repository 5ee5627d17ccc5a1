#include "sporcalc/invariants.hpp"

#include <sstream>

namespace sporcalc {

const Rational& ExtRational::value() const {
  if (kind_ != Kind::Finite) throw std::domain_error("ExtRational: infinite value");
  return value_;
}

std::string ExtRational::to_string() const {
  switch (kind_) {
    case Kind::PosInf:
      return "inf";
    case Kind::NegInf:
      return "-inf";
    case Kind::Finite:
      break;
  }
  std::ostringstream os;
  os << numerator(value_);
  if (denominator(value_) != 1) os << "/" << denominator(value_);
  return os.str();
}

ExtRational operator-(const ExtRational& a) {
  switch (a.kind_) {
    case ExtRational::Kind::PosInf:
      return ExtRational::neg_inf();
    case ExtRational::Kind::NegInf:
      return ExtRational::pos_inf();
    case ExtRational::Kind::Finite:
      break;
  }
  return ExtRational(Rational(-a.value_));
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.is_finite() && b.is_finite()) return ExtRational(Rational(a.value_ + b.value_));
  if (!a.is_finite() && !b.is_finite() && a.kind_ != b.kind_)
    throw std::domain_error("ExtRational: inf - inf");
  return a.is_finite() ? b : a;
}

Rational reciprocal(const ExtendedNat& n) {
  if (n.is_infinite()) return 0;
  if (n.value() == 0) throw std::domain_error("reciprocal of 0");
  return Rational(1, n.value());
}

ExtendedNat Classification::m() const {
  return std::visit([](const auto& c) { return c.m; }, kind);
}

ExtendedNat Classification::m_F() const {
  if (const auto* p = std::get_if<PowerCase>(&kind)) return p->m_F;
  return std::get<HempelCase>(kind).m;
}

ExtendedNat Classification::m_prime() const {
  if (const auto* p = std::get_if<PowerCase>(&kind)) return p->m_prime;
  return std::get<HempelCase>(kind).m;
}

ExtendedNat Classification::m_double_prime() const {
  if (const auto* p = std::get_if<PowerCase>(&kind)) return p->m_double_prime;
  return std::get<HempelCase>(kind).m;
}

std::string Classification::case_name() const {
  const auto* p = std::get_if<PowerCase>(&kind);
  if (!p) return "hempel";
  switch (p->subcase) {
    case PowerSubcase::I:
      return "power-i";
    case PowerSubcase::II:
      return "power-ii";
    case PowerSubcase::III:
      return "power-iii";
  }
  return "power";
}

Classification classify(const CommutatorForm& cf, const NormalizationResult& n) {
  if (!n.is_power()) {
    const auto& h = n.hempel();
    const TorsionData t = torsion_data(h.r, cf.u);
    return {HempelCase{ExtendedNat::finite(t.m), h.nu}};
  }
  if (cf.u.empty())
    throw UnsupportedInput("extra relator is a power of x while u = 1; this is a one-relator group, not covered here");
  const auto m = static_cast<std::uint64_t>(n.power().m);
  PowerCase pc;
  pc.m = ExtendedNat::finite(m);
  if (m == 0) {
    pc.subcase = PowerSubcase::I;
    pc.m_F = ExtendedNat::infinity();
    pc.m_prime = ExtendedNat::finite(1);
    pc.m_double_prime = ExtendedNat::infinity();
  } else if (m == 1) {
    pc.subcase = PowerSubcase::II;
    pc.m_F = ExtendedNat::finite(1);
    pc.m_prime = free_root(cf.u).exponent;
    pc.m_double_prime = pc.m_prime;
  } else {
    pc.subcase = PowerSubcase::III;
    pc.m_F = pc.m_prime = pc.m_double_prime = ExtendedNat::finite(m);
  }
  return {pc};
}

Classification classify(const SporInput& input) {
  const CommutatorForm cf = to_commutator_form(input);
  return classify(cf, normalize(cf).result);
}

ExtRational euler_characteristic(const Classification& c, int k) {
  if (k < 3) throw UnsupportedInput("euler characteristic needs k >= 3");
  return ExtRational(Rational(2 - k) + reciprocal(c.m_double_prime()));
}

ExtRational vor_chi(std::int64_t index, std::int64_t n_gens, const ExtendedNat& relator_log) {
  if (index < 1) throw std::invalid_argument("vor_chi: index must be positive");
  const Rational neg = (Rational(n_gens - 1) - reciprocal(relator_log)) / index;
  return ExtRational(Rational(-neg));
}

L2Report l2_betti(const Classification&, int k, const ExtRational& chi) {
  if (k < 3) throw UnsupportedInput("L2-Betti numbers need k >= 3");
  const Rational neg = -chi.value();
  return {ExtRational(0), ExtRational(neg > 0 ? neg : Rational(0)), ExtRational(0)};
}

std::vector<Annotation> annotations(const Classification& c) {
  std::vector<Annotation> out = {
      {"vcd G <= 2", "virtual cohomological dimension bound for surface-plus-one-relation groups"},
      {"G is of type VFL", "finiteness type of surface-plus-one-relation groups"},
      {"G is virtually torsion-free", "existence of a torsion-free finite-index subgroup"},
  };
  if (const auto* h = std::get_if<HempelCase>(&c.kind)) {
    if (h->m.value() == 1)
      out.push_back({"G is locally indicable (the relator is its own root)", "local indicability for Hempel relators"});
    else
      out.push_back({"every finite subgroup lies in a conjugate of the cyclic subgroup of order m generated by the root",
                     "location of torsion for Hempel relators"});
  }
  return out;
}

Report build_report(const SporInput& input, const NormalizeOptions& opts) {
  Report rep;
  rep.k = input.k;
  rep.form = to_commutator_form(input);
  rep.normalization = normalize(rep.form, opts);
  rep.classification = classify(rep.form, rep.normalization.result);
  rep.chi = euler_characteristic(rep.classification, input.k);
  rep.l2 = l2_betti(rep.classification, input.k, rep.chi);
  rep.annotations = annotations(rep.classification);
  // m = 0 is proved trivial by the reduction itself; otherwise nontriviality
  // in the surface group is taken for granted.
  rep.assumes_nontrivial_r = !(rep.classification.is_power() && rep.classification.m().value() == 0);
  return rep;
}

}  // namespace sporcalc
