#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sporcalc/fox.hpp"
#include "support.hpp"

using namespace sporcalc;
using sporcalc::testing::w;

namespace {

GroupRingElt e(const std::string& word, long c = 1) { return GroupRingElt::of(w(word), c); }

// Closed form: an occurrence g at position i contributes +prefix(i);
// an occurrence g^-1 contributes -prefix(i) g^-1.
GroupRingElt prefix_sum_oracle(const Word& r, const GeneratorSymbol& g) {
  GroupRingElt out;
  std::vector<Letter> prefix;
  for (const auto& l : r.letters()) {
    if (l.symbol == g && l.sign > 0) out += GroupRingElt::of(Word(prefix));
    prefix.push_back(l);
    if (l.symbol == g && l.sign < 0) out -= GroupRingElt::of(Word(prefix));
  }
  return out;
}

Integer cofactor_det(const Matrix<Integer>& a) {
  if (a.rows == 1) return a(0, 0);
  Integer sum = 0;
  for (std::size_t j = 0; j < a.cols; ++j) {
    Matrix<Integer> minor(a.rows - 1, a.cols - 1);
    for (std::size_t i = 1; i < a.rows; ++i)
      for (std::size_t k = 0, c = 0; k < a.cols; ++k)
        if (k != j) minor(i - 1, c++) = a(i, k);
    sum += (j % 2 ? -1 : 1) * a(0, j) * cofactor_det(minor);
  }
  return sum;
}

Matrix<Integer> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  Matrix<Integer> m(r, c);
  for (auto& v : m.data) v = d(rng);
  return m;
}

}  // namespace

TEST_CASE("group ring arithmetic") {
  CHECK((e("a") - e("a")).is_zero());
  CHECK(GroupRingElt::one() == e(""));
  CHECK((e("a") * e("a^-1")) == GroupRingElt::one());
  CHECK((e("a") + e("b", 2)).augmentation() == 3);
  CHECK(GroupRingElt::of(w("a"), 0).is_zero());
  CHECK(to_string(e("a") - e("", 2)) == "-2 + (a)");
}

TEST_CASE("Fox derivative examples") {
  const auto g = testing::gens({"x", "y"});
  auto jet = fox_derivative(w("x y"), g);
  CHECK(jet["x"] == GroupRingElt::one());
  CHECK(jet["y"] == e("x"));

  jet = fox_derivative(w("x^-1"), g);
  CHECK(jet["x"] == -e("x^-1"));
  CHECK(jet["y"].is_zero());

  jet = fox_derivative(commutator(w("x"), w("y")), g);
  CHECK(jet["x"] == GroupRingElt::one() - e("x y x^-1"));
  CHECK(jet["y"] == e("x") - e("x y x^-1 y^-1"));

  CHECK(fox_derivative(Word(), g)["x"].is_zero());
  CHECK_THROWS_AS(fox_derivative(w("z"), g), std::invalid_argument);
}

TEST_CASE("Fox derivative matches the prefix-sum oracle and the product rule") {
  std::mt19937_64 rng(41);
  const auto g = testing::gens({"a", "b", "c"});
  for (int i = 0; i < 300; ++i) {
    const Word u = testing::random_reduced(rng, g, i % 13);
    const Word v = testing::random_reduced(rng, g, (i * 3) % 11);
    const auto ju = fox_derivative(u, g), jv = fox_derivative(v, g), juv = fox_derivative(u * v, g);
    for (const auto& s : g) {
      CHECK(ju[s] == prefix_sum_oracle(u, s));
      CHECK(juv[s] == ju[s] + u * jv[s]);
    }
  }
}

TEST_CASE("fundamental identity") {
  CHECK(fundamental_identity_check(Word(), testing::gens({"a"})));
  CHECK(fundamental_identity_check(w("a a b b c c"), testing::gens({"a", "b", "c"})));
  std::mt19937_64 rng(42);
  const auto g = testing::gens({"a", "b", "c", "d"});
  for (int i = 0; i < 200; ++i) CHECK(fundamental_identity_check(testing::random_reduced(rng, g, i % 31), g));
}

TEST_CASE("Smith normal form examples") {
  Matrix<Integer> a(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 3;
  auto s = smith_normal_form(a);
  CHECK(s.rank == 2);
  CHECK(s.elementary_divisors == std::vector<Integer>{1, 6});

  s = smith_normal_form(Matrix<Integer>(3, 2));
  CHECK(s.rank == 0);
  CHECK(s.elementary_divisors.empty());

  s = smith_normal_form(Matrix<Integer>::identity(4));
  CHECK(s.elementary_divisors == std::vector<Integer>(4, 1));
}

TEST_CASE("Smith normal form: unimodular transforms and divisibility") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = 1 + i % 4, c = 1 + (i / 4) % 5;
    const Matrix<Integer> a = random_matrix(rng, r, c, 1 + i % 9);
    const SmithForm s = smith_normal_form(a);
    const Matrix<Integer> d = s.u * a * s.v;
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = 0; q < c; ++q) {
        if (p != q) CHECK(d(p, q) == 0);
        else CHECK(d(p, q) == s.diagonal[p]);
      }
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    for (std::size_t k = 0; k < s.rank; ++k) CHECK(s.elementary_divisors[k] > 0);
    for (std::size_t k = 0; k + 1 < s.rank; ++k) CHECK(s.elementary_divisors[k + 1] % s.elementary_divisors[k] == 0);
    for (std::size_t k = s.rank; k < s.diagonal.size(); ++k) CHECK(s.diagonal[k] == 0);
  }
}

TEST_CASE("determinant against cofactor expansion") {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 5;
    const auto a = random_matrix(rng, n, n, 5);
    CHECK(determinant(a) == cofactor_det(a));
  }
}

TEST_CASE("abelianized homology") {
  auto h = abelianized_homology(parse_presentation("< a,b,c | a^2 b^2 c^2, a b c >"));
  CHECK(h.free_rank == 2);
  CHECK(h.torsion.empty());
  h = abelianized_homology(parse_presentation("< a,b | [a,b] >"));
  CHECK(h.free_rank == 2);
  h = abelianized_homology(parse_presentation("< a | a >"));
  CHECK(h.free_rank == 0);
  CHECK(h.torsion.empty());
  h = abelianized_homology(parse_presentation("< a,b | a^2, b^3 >"));
  CHECK(h.free_rank == 0);
  CHECK(h.torsion == std::vector<Integer>{6});
  h = abelianized_homology(parse_presentation("< a,b,c | a^2 b^2 c^2 >"));
  CHECK(h.free_rank == 2);
  CHECK(h.torsion == std::vector<Integer>{2});
}

TEST_CASE("quotient maps") {
  const auto p = parse_presentation("< x,y | [x,y] >");
  const auto ab = QuotientMap::abelianization(p);
  CHECK_FALSE(ab.is_finite());
  CHECK(ab.exponent(w("x y x^-1")) == ab.exponent(w("y")));
  CHECK(ab.exponent(w("x y")) != ab.exponent(w("y")));

  CHECK_THROWS_AS(QuotientMap::finite(p, {{"x", {1, 2, 0}}, {"y", {1, 0, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(QuotientMap::finite(p, {{"x", {1, 1, 0}}, {"y", {0, 1, 2}}}), std::invalid_argument);
  const auto z3 = QuotientMap::finite(p, {{"x", {1, 2, 0}}, {"y", {2, 0, 1}}});
  CHECK(z3.permutation(w("x y")) == Permutation{0, 1, 2});
  CHECK(z3.permutation(w("x^-1")) == Permutation{2, 0, 1});

  // right action: i^(gh) = (i^g)^h
  const auto free2 = parse_presentation("< x,y | >");
  const auto s3 = QuotientMap::finite(free2, {{"x", {1, 0, 2}}, {"y", {0, 2, 1}}});
  const Permutation gx = s3.permutation(w("x")), gy = s3.permutation(w("y")), gxy = s3.permutation(w("x y"));
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(gxy[i] == gy[gx[i]]);

  const auto qs = registered_quotients(p);
  CHECK(qs.size() >= 3);
  for (const auto& q : qs) CHECK(q.is_finite());
}

TEST_CASE("evaluated complexes") {
  // d/dx [x,y] = 1 - x y x^-1 becomes 1 - t_y
  const auto p = parse_presentation("< x,y | [x,y] >");
  const auto ab = QuotientMap::abelianization(p);
  BoundaryMatrices bm;
  bm.generators = p.generators;
  bm.relators = {p.relators[0]};
  bm.d2.push_back(fox_derivative(p.relators[0], p.generators).components);
  for (const auto& g : p.generators) bm.d1.push_back(GroupRingElt::of(Word::generator(g)) - GroupRingElt::one());
  bm.m = 1;
  bm.root = Word();
  const auto lc = std::get<LaurentComplex>(evaluate(bm, ab));
  const LaurentPoly expected{{ab.exponent(Word()), Rational(1)}, {ab.exponent(w("y")), Rational(-1)}};
  CHECK(lc.d2[0][0] == expected);
  CHECK(specialize_at_augmentation(lc.d2).is_zero());
  CHECK(composite_is_zero(lc));

  // root sent to the identity with m = 1: e is the identity matrix
  const auto z2 = QuotientMap::finite(p, {{"x", {1, 0}}, {"y", {0, 1}}});
  const auto bc = std::get<BlockComplex>(evaluate(bm, z2));
  CHECK(bc.degree == 2);
  CHECK(composite_is_zero(bc));
}

TEST_CASE("chain complexes of Hempel presentations") {
  std::mt19937_64 rng(45);
  int built = 0;
  for (int i = 0; i < 60 && built < 15; ++i) {
    const int k = 3 + i % 3;
    const auto g = surface_generators(k, NameStyle::Letters);
    const auto in = surface_input(Orientability::NonOrientable, k, testing::random_reduced(rng, g, 2 + i % 9), g);
    const auto cf = to_commutator_form(in);
    const auto n = normalize(cf);
    if (n.result.is_power()) continue;
    ++built;
    const auto td = torsion_data(n.result.hempel().r, cf.u);
    const auto bm = chain_complex(cf, n.result.hempel(), td);
    CHECK(bm.d2.size() == 2);
    CHECK(bm.d2[0].size() == static_cast<std::size_t>(cf.d + 2));
    CHECK(bm.d1.size() == static_cast<std::size_t>(cf.d + 2));
    for (const auto& entry : bm.d1) CHECK(entry.augmentation() == 0);
    for (std::size_t r = 0; r < 2; ++r) {
      GroupRingElt lhs;
      for (std::size_t j = 0; j < bm.d1.size(); ++j) lhs += bm.d2[r][j] * bm.d1[j];
      CHECK(lhs == GroupRingElt::of(bm.relators[r]) - GroupRingElt::one());
    }
    const Presentation pres{bm.generators, bm.relators};
    CHECK(composite_is_zero(evaluate(bm, QuotientMap::abelianization(pres))));
    for (const auto& q : registered_quotients(pres)) CHECK(composite_is_zero(evaluate(bm, q)));
  }
  CHECK(built >= 10);
}

TEST_CASE("the averaging idempotent is needed when m > 1") {
  // r = (z1@0 x@1)^2 with u = z1^2; the unaveraged row need not vanish
  CommutatorForm cf;
  cf.d = 1;
  cf.u = w("z1 z1");
  const HempelRelator h{w("z1@0 x@1").pow(2), 0};
  const auto td = torsion_data(h.r, cf.u);
  CHECK(td.m == 2);
  BoundaryMatrices bm = chain_complex(cf, h, td);
  const Presentation pres{bm.generators, bm.relators};
  const auto quotients = registered_quotients(pres);
  REQUIRE_FALSE(quotients.empty());
  for (const auto& q : quotients) CHECK(composite_is_zero(evaluate(bm, q)));
  CHECK(composite_is_zero(evaluate(bm, QuotientMap::abelianization(pres))));
}
