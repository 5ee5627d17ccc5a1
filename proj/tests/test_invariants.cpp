#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sporcalc/fox.hpp"
#include "sporcalc/invariants.hpp"
#include "support.hpp"

using namespace sporcalc;
using sporcalc::testing::w;

namespace {

ExtRational q(long long p, long long d = 1) { return ExtRational(Rational(p, d)); }

// chi(A * B) = chi(A) + chi(B) - 1, chi(Z) = 0, chi(C_n) = 1/n
Rational free_product_chi(const std::vector<Rational>& factors) {
  Rational s = 1 - static_cast<long>(factors.size());
  for (const auto& f : factors) s += f;
  return s;
}

std::vector<SporInput> corpus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<SporInput> out;
  for (int i = 0; i < count; ++i) {
    const int k = 3 + i % 4;
    const bool orientable = k % 2 == 0 && (i / 4) % 2 == 0;
    const auto o = orientable ? Orientability::Orientable : Orientability::NonOrientable;
    const auto g = surface_generators(k, NameStyle::Letters);
    out.push_back(surface_input(o, orientable ? k / 2 : k, testing::random_reduced(rng, g, 1 + (i * 7) % 12), g));
  }
  return out;
}

}  // namespace

TEST_CASE("extended rationals") {
  CHECK(q(1, 2).to_string() == "1/2");
  CHECK(q(-3).to_string() == "-3");
  CHECK(ExtRational::pos_inf().to_string() == "inf");
  CHECK((-ExtRational::pos_inf()).to_string() == "-inf");
  CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  CHECK(q(1) + ExtRational::pos_inf() == ExtRational::pos_inf());
  CHECK_THROWS_AS(ExtRational::pos_inf() + ExtRational::neg_inf(), std::domain_error);
  CHECK_THROWS_AS(ExtRational::pos_inf().value(), std::domain_error);
  CHECK(reciprocal(ExtendedNat::infinity()) == 0);
  CHECK(reciprocal(ExtendedNat::finite(4)) == Rational(1, 4));
}

TEST_CASE("non-orientable k = 3, r = ab") {
  const auto in = surface_input(Orientability::NonOrientable, 3, w("a b"));
  const Classification c = classify(in);
  REQUIRE(c.is_power());
  CHECK(c.case_name() == "power-ii");
  CHECK(c.m() == ExtendedNat::finite(1));
  CHECK(c.m_F() == ExtendedNat::finite(1));
  CHECK(c.m_double_prime() == ExtendedNat::finite(2));
  const auto chi = euler_characteristic(c, 3);
  CHECK(chi == q(-1, 2));
  // the group is C_inf * C_2
  CHECK(chi.value() == free_product_chi({0, Rational(1, 2)}));
  const auto l2 = l2_betti(c, 3, chi);
  CHECK(l2.b0 == q(0));
  CHECK(l2.b1 == q(1, 2));
  CHECK(l2.b2 == q(0));
  CHECK(build_report(in).assumes_nontrivial_r);
}

TEST_CASE("non-orientable k = 3, r = abc") {
  const auto in = surface_input(Orientability::NonOrientable, 3, w("a b c"));
  const Classification c = classify(in);
  REQUIRE_FALSE(c.is_power());
  CHECK(c.case_name() == "hempel");
  CHECK(c.m() == ExtendedNat::finite(1));
  const auto chi = euler_characteristic(c, 3);
  CHECK(chi == q(0));
  const auto l2 = l2_betti(c, 3, chi);
  CHECK(l2.b1 == q(0));
  CHECK(l2.euler() == q(0));
  // the group is Z^2, whose Euler characteristic is 0
  const auto h = abelianized_homology(parse_presentation("< a,b,c | a^2 b^2 c^2, a b c >"));
  CHECK(h.free_rank == 2);
  CHECK(h.torsion.empty());
  const auto report = build_report(in);
  bool has_li = false;
  for (const auto& a : report.annotations) has_li |= a.claim.find("locally indicable") != std::string::npos;
  CHECK(has_li);
}

TEST_CASE("surface groups") {
  for (int g = 2; g <= 5; ++g) {
    const Classification c = classify(surface_input(Orientability::Orientable, g, Word()));
    CHECK(c.case_name() == "power-i");
    CHECK(c.m_prime() == ExtendedNat::finite(1));
    CHECK(c.m_double_prime().is_infinite());
    const auto chi = euler_characteristic(c, 2 * g);
    CHECK(chi == q(2 - 2 * g));
    CHECK(l2_betti(c, 2 * g, chi).b1 == q(2 * g - 2));
    CHECK_FALSE(build_report(surface_input(Orientability::Orientable, g, Word())).assumes_nontrivial_r);
  }
  for (int k = 3; k <= 8; ++k) {
    const Classification c = classify(surface_input(Orientability::NonOrientable, k, Word()));
    CHECK(c.case_name() == "power-i");
    CHECK(euler_characteristic(c, k) == q(2 - k));
  }
  CHECK_THROWS_AS(classify(surface_input(Orientability::NonOrientable, 2, Word())), UnsupportedInput);
  CHECK_THROWS_AS(euler_characteristic(Classification{PowerCase{}}, 2), UnsupportedInput);
}

TEST_CASE("finite-index one-relator formula") {
  CHECK(vor_chi(1, 2, ExtendedNat::infinity()) == q(-1));
  CHECK(vor_chi(2, 3, ExtendedNat::finite(1)) == q(-1, 2));
  CHECK(vor_chi(3, 1, ExtendedNat::infinity()) == q(0));
  CHECK_THROWS_AS(vor_chi(0, 2, ExtendedNat::finite(1)), std::invalid_argument);
  // with n_gens = d + 1 it reproduces the power-case formula
  for (int d = 1; d <= 6; ++d)
    for (std::uint64_t l = 1; l <= 5; ++l) {
      PowerCase pc;
      pc.m = pc.m_F = ExtendedNat::finite(1);
      pc.m_prime = pc.m_double_prime = ExtendedNat::finite(l);
      pc.subcase = PowerSubcase::II;
      CHECK(vor_chi(1, d + 1, ExtendedNat::finite(l)) == euler_characteristic(Classification{pc}, d + 2));
    }
}

TEST_CASE("a power of x with u = 1 is rejected") {
  CommutatorForm cf;
  cf.d = 1;
  cf.u = Word();
  CHECK_THROWS_AS(classify(cf, NormalizationResult{PowerOfX{2}}), UnsupportedInput);
  cf.u = w("z1 z1 z1");
  const auto c = classify(cf, NormalizationResult{PowerOfX{1}});
  CHECK(c.m_double_prime() == ExtendedNat::finite(3));
  CHECK(classify(cf, NormalizationResult{PowerOfX{4}}).case_name() == "power-iii");
}

TEST_CASE("classification properties on a random corpus") {
  int checked = 0;
  for (const auto& in : corpus(51, 150)) {
    CAPTURE(to_string(in.r));
    Report rep;
    try {
      rep = build_report(in);
    } catch (const UnsupportedInput&) {
      continue;
    }
    ++checked;
    const auto& c = rep.classification;
    CHECK(rep.chi.is_finite());
    CHECK(rep.chi.value() <= 0);
    CHECK(rep.l2.euler() == rep.chi);
    CHECK(rep.l2.b0.value() >= 0);
    CHECK(rep.l2.b1.value() >= 0);
    CHECK(rep.l2.b2.value() >= 0);
    if (const auto* pc = std::get_if<PowerCase>(&c.kind)) {
      const auto m = pc->m.value();
      CHECK((pc->subcase == PowerSubcase::I) == (m == 0));
      CHECK((pc->subcase == PowerSubcase::II) == (m == 1));
      CHECK((pc->subcase == PowerSubcase::III) == (m >= 2));
      CHECK(pc->m_double_prime.is_infinite() == (m == 0));
    } else {
      CHECK(c.m().value() >= 1);
      CHECK(c.m_prime() == c.m());
      CHECK(c.m_double_prime() == c.m());
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("classification is unchanged by rerunning on the transformed relator") {
  for (const auto& in : corpus(52, 60)) {
    const auto cf = to_commutator_form(in);
    const auto n = normalize(cf);
    CAPTURE(to_string(in.r));
    // the same group presented directly in the new basis
    CommutatorForm again = cf;
    for (const auto& g : again.generators()) {
      again.basis.forward[g] = Word::generator(g);
      again.basis.backward[g] = Word::generator(g);
    }
    again.basis.conjugator = Word();
    again.old_generators = again.generators();
    const auto n2 = normalize(again);
    Classification c1, c2;
    try {
      c1 = classify(cf, n.result);
    } catch (const UnsupportedInput&) {
      CHECK_THROWS_AS(classify(again, n2.result), UnsupportedInput);
      continue;
    }
    c2 = classify(again, n2.result);
    CHECK(c1.case_name() == c2.case_name());
    CHECK(c1.m() == c2.m());
    CHECK(c1.m_double_prime() == c2.m_double_prime());
    CHECK(euler_characteristic(c1, in.k) == euler_characteristic(c2, in.k));
  }
}

TEST_CASE("Euler characteristic is unchanged by conjugating or inverting r") {
  std::mt19937_64 rng(53);
  for (const auto& in : corpus(54, 60)) {
    Classification base;
    try {
      base = classify(in);
    } catch (const UnsupportedInput&) {
      continue;
    }
    const auto g = in.generators;
    for (int t = 0; t < 3; ++t) {
      SporInput other = in;
      const Word c = testing::random_reduced(rng, g, 1 + t);
      other.r = t == 0 ? in.r.inverse() : conjugate(c, in.r);
      CAPTURE(to_string(in.r));
      CAPTURE(to_string(other.r));
      const auto cl = classify(other);
      CHECK(euler_characteristic(cl, in.k) == euler_characteristic(base, in.k));
      CHECK(cl.m_double_prime() == base.m_double_prime());
    }
  }
}

TEST_CASE("annotations") {
  HempelCase h;
  h.m = ExtendedNat::finite(3);
  const auto a = annotations(Classification{h});
  CHECK(a.size() == 4);
  for (const auto& x : a) {
    CHECK_FALSE(x.claim.empty());
    CHECK_FALSE(x.ref.empty());
  }
  CHECK(annotations(Classification{PowerCase{}}).size() == 3);
}
