#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sporcalc/hempel.hpp"
#include "support.hpp"

using namespace sporcalc;
using sporcalc::testing::w;

namespace {

CommutatorForm bare_form(int d, const Word& u, const Word& r) {
  CommutatorForm cf;
  cf.d = d;
  cf.u = u;
  cf.r = r;
  for (const auto& g : cf.generators()) {
    cf.basis.forward[g] = Word::generator(g);
    cf.basis.backward[g] = Word::generator(g);
  }
  cf.old_generators = cf.generators();
  return cf;
}

std::vector<SporInput> random_inputs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<SporInput> out;
  for (int i = 0; i < count; ++i) {
    const int k = 3 + i % 4;
    const bool orientable = k % 2 == 0 && (i / 4) % 2 == 0;
    const auto o = orientable ? Orientability::Orientable : Orientability::NonOrientable;
    const int c = orientable ? k / 2 : k;
    const auto g = surface_generators(k, NameStyle::Letters);
    out.push_back(surface_input(o, c, testing::random_reduced(rng, g, 1 + (i * 5) % 12), g));
  }
  return out;
}

}  // namespace

TEST_CASE("lift to the shifted alphabet") {
  CHECK(lift_to_shifted(w("x")) == w("x@0"));
  CHECK(lift_to_shifted(w("y z1 y^-1")) == w("z1@1"));
  const Word r = w("y x y^-1 z1 x^-1");
  CHECK(lift_to_shifted(r) == w("x@1 z1@0 x@0^-1"));
  CHECK(lower_to_free(lift_to_shifted(r)) == r);
  CHECK_THROWS_AS(lift_to_shifted(w("y")), std::invalid_argument);

  std::mt19937_64 rng(31);
  const auto g = testing::gens({"x", "y", "z1", "z2"});
  for (int i = 0; i < 300; ++i) {
    Word r2 = testing::random_reduced(rng, g, i % 15);
    r2 *= Word::generator("y", -exponent_sum(r2, "y"));
    CHECK(lower_to_free(lift_to_shifted(r2)) == r2);
  }
}

TEST_CASE("basis shifts") {
  const Word u = w("z1 z1");
  const NWord start = express_in_basis(w("x@1"), 1, u);
  CHECK(start.word == w("x@1"));
  const NWord down = shift_basis(start, ShiftDirection::Down, u);
  CHECK(down.basis == 0);
  CHECK(down.word == w("z1@0 z1@0 x@0"));
  CHECK(down.interval == IntervalState{0, 0});

  std::mt19937_64 rng(32);
  const std::vector<GeneratorSymbol> g{shifted_x(2), shifted_z(1, 1), shifted_z(1, 2), shifted_z(1, 4), shifted_z(2, 3)};
  const Word u2 = w("z1 z2 z1^-1 z2^-1");
  for (int i = 0; i < 200; ++i) {
    const Word raw = testing::random_reduced(rng, g, 1 + i % 10);
    const NWord nw = express_in_basis(raw, 2, u2);
    CHECK(nw.interval == z_interval(nw.word));
    const NWord there = shift_basis(shift_basis(nw, ShiftDirection::Down, u2), ShiftDirection::Up, u2);
    CHECK(there.basis == nw.basis);
    CHECK(CyclicWord(there.word) == CyclicWord(nw.word));
    const NWord up = shift_basis(nw, ShiftDirection::Up, u2);
    CHECK(up.interval == z_interval(up.word));
    if (nw.interval && up.interval && nw.basis <= nw.interval->mu) {
      CHECK(up.interval->mu >= nw.basis);
      CHECK(up.interval->nu <= nw.interval->nu);
    }
  }
}

TEST_CASE("normalize: worked examples") {
  auto cf = to_commutator_form(surface_input(Orientability::NonOrientable, 3, w("a b")));
  auto n = normalize(cf);
  REQUIRE(n.result.is_power());
  CHECK(n.result.power().m == 1);
  CHECK(verify_certificate(cf, n));

  cf = to_commutator_form(surface_input(Orientability::NonOrientable, 3, w("a b c")));
  n = normalize(cf);
  REQUIRE_FALSE(n.result.is_power());
  CHECK(n.result.hempel().r == w("z1@0"));
  CHECK(n.result.hempel().nu == 0);
  CHECK(check_hempel(n.result.hempel().r, cf.u).all());
  CHECK(nu_of(n.result.hempel().r, cf.u) == n.result.hempel().nu);
  CHECK(verify_certificate(cf, n));

  // already a Hempel relator in basis 1
  cf = bare_form(1, w("z1 z1"), lower_to_free(w("z1@0 x@1")));
  n = normalize(cf);
  REQUIRE_FALSE(n.result.is_power());
  CHECK(CyclicWord(n.result.hempel().r) == CyclicWord(w("z1@0 x@1")));
  CHECK(n.result.hempel().nu == 0);
  CHECK(verify_certificate(cf, n));

  // empty extra relator
  cf = to_commutator_form(surface_input(Orientability::Orientable, 2, Word()));
  n = normalize(cf);
  REQUIRE(n.result.is_power());
  CHECK(n.result.power().m == 0);
}

TEST_CASE("normalize: power of x found away from basis 0") {
  // y^2 x^3 y^-2 lifts to x@2^3
  const auto cf = bare_form(1, w("z1 z1"), w("y y x x x y^-1 y^-1"));
  const auto n = normalize(cf);
  REQUIRE(n.result.is_power());
  CHECK(n.result.power().m == 3);
  CHECK(verify_certificate(cf, n));
}

TEST_CASE("normalize: certificates on random inputs") {
  int hempel = 0, power = 0;
  for (const auto& in : random_inputs(33, 120)) {
    const auto cf = to_commutator_form(in);
    const auto n = normalize(cf);
    CAPTURE(to_string(in.r));
    CHECK(verify_certificate(cf, n));
    // r' = v * (w alpha(r) w^-1), recomputed here
    const Word alpha_r = substitute(cf.r, {{x_symbol(), n.certificate.alpha_x}, {y_symbol(), n.certificate.alpha_y}});
    CHECK(n.certificate.expand_v(cf.relator()) * conjugate(n.certificate.w, alpha_r) == n.relator_in_free);
    if (n.result.is_power()) {
      ++power;
      CHECK(n.result.power().m >= 0);
      CHECK(n.relator_in_free == w("x").pow(n.result.power().m));
    } else {
      ++hempel;
      const auto& h = n.result.hempel();
      CHECK(check_hempel(h.r, cf.u).all());
      CHECK(nu_of(h.r, cf.u) == h.nu);
      CHECK(lower_to_free(h.r) == n.relator_in_free);
    }
    for (const auto& step : n.trace) CHECK(step.interval == z_interval(step.word));
    // deterministic
    const auto again = normalize(cf);
    CHECK(again.relator_in_free == n.relator_in_free);
    CHECK(again.certificate.w == n.certificate.w);
    CHECK(again.certificate.v.size() == n.certificate.v.size());
  }
  CHECK(hempel > 0);
  CHECK(power > 0);
}

TEST_CASE("normalize honours the cap") {
  const auto cf = to_commutator_form(surface_input(Orientability::NonOrientable, 4, w("a b^-1 c d c")));
  CHECK_THROWS_AS(normalize(cf, NormalizeOptions{0}), CapExceeded);
  CHECK_NOTHROW(normalize(cf));
}

TEST_CASE("Hempel conditions") {
  const Word u = w("z1 z1");
  CHECK(check_hempel(w("z1@0 x@1"), u).all());

  auto f = check_hempel(w("x@1"), u);
  CHECK(f.r1);
  CHECK(f.r3);
  CHECK_FALSE(f.r4);

  f = check_hempel(Word(), u);
  CHECK_FALSE(f.r2);
  CHECK_FALSE(f.r4);

  f = check_hempel(w("z1@0 x@2"), u);
  CHECK_FALSE(f.r1);
  f = check_hempel(w("z1@-1 x@1"), u);
  CHECK_FALSE(f.r1);
  f = check_hempel(w("x@1 z1@0 x@1^-1"), u);
  CHECK_FALSE(f.r3);
  // conjugate of u@0^-1 x@1
  f = check_hempel(w("z1@0^-1 z1@0^-1 x@1"), u);
  CHECK_FALSE(f.r2);
  f = check_hempel(w("x@1 z1@0^-1 z1@0^-1"), u);
  CHECK_FALSE(f.r2);

  CHECK(nu_of(w("z1@0 x@1"), u) == 0);
  CHECK(nu_of(w("z1@0 z1@1 x@1"), u) == 1);
  CHECK_THROWS_AS(nu_of(w("x@1"), u), std::invalid_argument);
}

TEST_CASE("HNN data") {
  const Word u = w("z1 z1");
  const auto cf = bare_form(1, u, lower_to_free(w("z1@0 x@1")));
  const HNNData h = hnn_data(w("z1@0 x@1"), cf);
  CHECK(h.nu == 0);
  REQUIRE(h.vertex.relators.size() == 1);
  CHECK(h.vertex.relators[0] == w("z1@0 z1@0 z1@0 x@0"));
  CHECK(h.vertex.generators == std::vector<GeneratorSymbol>{shifted_x(0), shifted_z(1, 0)});
  CHECK(h.lower_edge_basis == std::vector<Word>{w("x@0")});
  CHECK(h.upper_edge_basis == std::vector<Word>{w("z1@0 z1@0 x@0")});

  const auto cf2 = bare_form(2, w("z1 z2 z1^-1 z2^-1"), Word());
  const Word r = w("z1@0 z2@2 x@1 z1@1^-1");
  REQUIRE(check_hempel(r, cf2.u).all());
  const HNNData h2 = hnn_data(r, cf2);
  CHECK(h2.nu == 2);
  CHECK(h2.lower_edge_basis.size() == 1 + 2 * 2);
  CHECK(h2.upper_edge_basis.size() == 1 + 2 * 2);
  std::set<GeneratorSymbol> lower, upper;
  for (const auto& [a, b] : h2.stable_letter_map) {
    CHECK(b == a.shifted(1));
    lower.insert(a);
    upper.insert(b);
  }
  CHECK(lower.size() == h2.stable_letter_map.size());
  CHECK(upper.size() == h2.stable_letter_map.size());
}

TEST_CASE("torsion data") {
  const Word u = w("z1 z1");
  auto t = torsion_data(w("z1@0 x@1"), u);
  CHECK(t.m == 1);
  CHECK(t.root == w("z1@0 x@1"));
  t = torsion_data(w("z1@0 x@1").pow(3), u);
  CHECK(t.m == 3);
  CHECK(t.root == w("z1@0 x@1"));

  // against the divisor-period oracle on powers of normalized outputs
  for (const auto& in : random_inputs(34, 40)) {
    const auto cf = to_commutator_form(in);
    const auto n = normalize(cf);
    if (n.result.is_power()) continue;
    for (std::int64_t e = 1; e <= 3; ++e) {
      const Word r = n.result.hempel().r.pow(e);
      const auto td = torsion_data(r, cf.u);
      const auto [root, exp] = testing::divisor_period_root(r);
      CHECK(td.m == exp);
      CHECK(td.root == root);
    }
  }
}
