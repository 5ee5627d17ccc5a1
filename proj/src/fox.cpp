#include "sporcalc/fox.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sporcalc {

GroupRingElt GroupRingElt::of(const Word& w, Integer c) {
  GroupRingElt e;
  e.add(w, c);
  return e;
}

void GroupRingElt::add(const Word& w, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Integer GroupRingElt::augmentation() const {
  Integer s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

GroupRingElt& GroupRingElt::operator+=(const GroupRingElt& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

GroupRingElt& GroupRingElt::operator-=(const GroupRingElt& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

GroupRingElt operator-(const GroupRingElt& a) {
  GroupRingElt out;
  for (const auto& [w, c] : a.terms_) out.terms_.emplace(w, -c);
  return out;
}

GroupRingElt operator*(const GroupRingElt& a, const GroupRingElt& b) {
  GroupRingElt out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.add(wa * wb, ca * cb);
  return out;
}

GroupRingElt operator*(const Word& w, const GroupRingElt& a) {
  GroupRingElt out;
  for (const auto& [wa, ca] : a.terms_) out.add(w * wa, ca);
  return out;
}

std::string to_string(const GroupRingElt& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Integer a = abs(c);
    if (w.empty()) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "(" << to_string(w) << ")";
    }
  }
  return os.str();
}

const GroupRingElt& FoxJet::operator[](const GeneratorSymbol& g) const {
  auto it = std::find(generators.begin(), generators.end(), g);
  if (it == generators.end()) throw std::invalid_argument("FoxJet: no component for " + to_string(g));
  return components[static_cast<std::size_t>(it - generators.begin())];
}

FoxJet fox_derivative(const Word& r, const std::vector<GeneratorSymbol>& gens) {
  FoxJet jet{gens, std::vector<GroupRingElt>(gens.size())};
  Word prefix;
  for (const auto& l : r.letters()) {
    auto it = std::find(gens.begin(), gens.end(), l.symbol);
    if (it == gens.end()) throw std::invalid_argument("fox_derivative: unknown generator " + to_string(l.symbol));
    auto& comp = jet.components[static_cast<std::size_t>(it - gens.begin())];
    // d(p g)/dg = dp/dg + p;  d(p g^-1)/dg = dp/dg - p g^-1
    if (l.sign > 0) {
      comp += GroupRingElt::of(prefix);
      prefix *= l;
    } else {
      prefix *= l;
      comp -= GroupRingElt::of(prefix);
    }
  }
  return jet;
}

bool fundamental_identity_check(const Word& r, const std::vector<GeneratorSymbol>& gens) {
  const FoxJet jet = fox_derivative(r, gens);
  GroupRingElt lhs;
  for (std::size_t i = 0; i < gens.size(); ++i)
    lhs += jet.components[i] * (GroupRingElt::of(Word::generator(gens[i])) - GroupRingElt::one());
  return lhs == GroupRingElt::of(r) - GroupRingElt::one();
}

BoundaryMatrices chain_complex(const CommutatorForm& cf, const HempelRelator& h, const TorsionData& torsion) {
  BoundaryMatrices b;
  b.generators = cf.generators();
  b.relators = {cf.relator(), lower_to_free(h.r)};
  for (const auto& rel : b.relators) {
    if (!fundamental_identity_check(rel, b.generators))
      throw std::logic_error("chain_complex: fundamental identity fails");
    b.d2.push_back(fox_derivative(rel, b.generators).components);
  }
  for (const auto& g : b.generators) b.d1.push_back(GroupRingElt::of(Word::generator(g)) - GroupRingElt::one());
  b.m = torsion.m;
  b.root = lower_to_free(torsion.root);
  return b;
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}
template <class T>
void swap_cols(Matrix<T>& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += q * row[src]
template <class T>
void add_row(Matrix<T>& m, std::size_t dst, std::size_t src, const T& q) {
  for (std::size_t j = 0; j < m.cols; ++j) m(dst, j) += q * m(src, j);
}
template <class T>
void add_col(Matrix<T>& m, std::size_t dst, std::size_t src, const T& q) {
  for (std::size_t i = 0; i < m.rows; ++i) m(i, dst) += q * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const Matrix<Integer>& a) {
  Matrix<Integer> d = a;
  Matrix<Integer> u = Matrix<Integer>::identity(a.rows);
  Matrix<Integer> v = Matrix<Integer>::identity(a.cols);
  const std::size_t n = std::min(a.rows, a.cols);
  std::size_t t = 0;
  for (; t < n; ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    auto bring_min_to_pivot = [&](bool row_and_col_only) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < d.rows; ++i)
        for (std::size_t j = t; j < d.cols; ++j) {
          if (row_and_col_only && i != t && j != t) continue;
          if (d(i, j) == 0) continue;
          if (!best || abs(d(i, j)) < abs(d(best->first, best->second))) best = {i, j};
        }
      if (!best) return false;
      if (best->first != t) {
        swap_rows(d, t, best->first);
        swap_rows(u, t, best->first);
      }
      if (best->second != t) {
        swap_cols(d, t, best->second);
        swap_cols(v, t, best->second);
      }
      return true;
    };
    if (!bring_min_to_pivot(false)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        if (d(i, t) == 0) continue;
        const Integer q = d(i, t) / d(t, t);
        add_row(d, i, t, Integer(-q));
        add_row(u, i, t, Integer(-q));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        if (d(t, j) == 0) continue;
        const Integer q = d(t, j) / d(t, t);
        add_col(d, j, t, Integer(-q));
        add_col(v, j, t, Integer(-q));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        bring_min_to_pivot(true);
        continue;
      }
      // pivot must divide the trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < d.rows && divides; ++i)
        for (std::size_t j = t + 1; j < d.cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, Integer(1));
            add_row(u, t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < d.cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < u.cols; ++j) u(t, j) = -u(t, j);
    }
  }
  SmithForm s;
  s.rank = t;
  for (std::size_t i = 0; i < n; ++i) s.diagonal.push_back(d(i, i));
  for (std::size_t i = 0; i < t; ++i) s.elementary_divisors.push_back(d(i, i));
  s.u = std::move(u);
  s.v = std::move(v);
  return s;
}

Integer determinant(Matrix<Integer> a) {
  if (a.rows != a.cols) throw std::invalid_argument("determinant: non-square matrix");
  const std::size_t n = a.rows;
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  // Bareiss fraction-free elimination
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Matrix<Integer> relation_matrix(const Presentation& p) {
  Matrix<Integer> a(p.relators.size(), p.generators.size());
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (std::size_t j = 0; j < p.generators.size(); ++j) a(i, j) = exponent_sum(p.relators[i], p.generators[j]);
  return a;
}

Homology abelianized_homology(const Presentation& p) {
  const SmithForm s = smith_normal_form(relation_matrix(p));
  Homology h;
  h.free_rank = p.generators.size() - s.rank;
  for (const auto& e : s.elementary_divisors)
    if (e > 1) h.torsion.push_back(e);
  return h;
}

// ---------------------------------------------------------------------------

QuotientMap QuotientMap::abelianization(const Presentation& p) {
  const SmithForm s = smith_normal_form(relation_matrix(p));
  Abelian ab;
  ab.generators = p.generators;
  ab.rank = p.generators.size() - s.rank;
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    std::vector<std::int64_t> img;
    for (std::size_t j = s.rank; j < p.generators.size(); ++j) img.push_back(static_cast<std::int64_t>(s.v(i, j)));
    ab.image[p.generators[i]] = std::move(img);
  }
  return QuotientMap(std::move(ab));
}

QuotientMap QuotientMap::finite(const Presentation& p, std::map<GeneratorSymbol, Permutation> images) {
  Finite f;
  for (const auto& g : p.generators) {
    auto it = images.find(g);
    if (it == images.end()) throw std::invalid_argument("finite quotient: no image for " + to_string(g));
    if (f.degree == 0) f.degree = it->second.size();
    Permutation sorted = it->second;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i || it->second.size() != f.degree)
        throw std::invalid_argument("finite quotient: image of " + to_string(g) + " is not a permutation");
  }
  f.image = std::move(images);
  QuotientMap q(std::move(f));
  for (const auto& rel : p.relators) {
    const Permutation pr = q.permutation(rel);
    for (std::size_t i = 0; i < pr.size(); ++i)
      if (pr[i] != i) throw std::invalid_argument("finite quotient: relator " + to_string(rel) + " not sent to 1");
  }
  return q;
}

Permutation QuotientMap::permutation(const Word& w) const {
  const auto& f = std::get<Finite>(kind_);
  Permutation p(f.degree);
  std::iota(p.begin(), p.end(), 0u);
  for (const auto& l : w.letters()) {
    auto it = f.image.find(l.symbol);
    if (it == f.image.end()) throw std::invalid_argument("quotient: no image for " + to_string(l.symbol));
    const Permutation& g = it->second;
    if (l.sign > 0) {
      for (auto& i : p) i = g[i];
    } else {
      Permutation inv(g.size());
      for (std::uint32_t i = 0; i < g.size(); ++i) inv[g[i]] = i;
      for (auto& i : p) i = inv[i];
    }
  }
  return p;
}

std::vector<std::int64_t> QuotientMap::exponent(const Word& w) const {
  const auto& ab = std::get<Abelian>(kind_);
  std::vector<std::int64_t> e(ab.rank, 0);
  for (const auto& l : w.letters()) {
    auto it = ab.image.find(l.symbol);
    if (it == ab.image.end()) throw std::invalid_argument("quotient: no image for " + to_string(l.symbol));
    for (std::size_t i = 0; i < ab.rank; ++i) e[i] += l.sign * it->second[i];
  }
  return e;
}

std::vector<QuotientMap> registered_quotients(const Presentation& p) {
  std::vector<QuotientMap> out;
  const std::size_t k = p.generators.size();
  const Matrix<Integer> a = relation_matrix(p);

  for (std::uint32_t n = 2; n <= 4; ++n) {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k && combos <= 1'000'000; ++i) combos *= n;
    if (combos > 1'000'000) continue;
    for (std::size_t code = 1; code < combos; ++code) {
      std::vector<std::uint32_t> assign(k);
      for (std::size_t i = 0, c = code; i < k; ++i, c /= n) assign[i] = static_cast<std::uint32_t>(c % n);
      bool ok = true;
      for (std::size_t r = 0; r < a.rows && ok; ++r) {
        Integer s = 0;
        for (std::size_t i = 0; i < k; ++i) s += a(r, i) * assign[i];
        ok = s % n == 0;
      }
      if (!ok) continue;
      std::map<GeneratorSymbol, Permutation> images;
      for (std::size_t i = 0; i < k; ++i) {
        Permutation rot(n);
        for (std::uint32_t j = 0; j < n; ++j) rot[j] = (j + assign[i]) % n;
        images[p.generators[i]] = rot;
      }
      out.push_back(QuotientMap::finite(p, std::move(images)));
      break;
    }
  }

  // S3, nonabelian images only
  std::vector<Permutation> s3;
  Permutation base{0, 1, 2};
  do s3.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  std::size_t combos = 1;
  for (std::size_t i = 0; i < k && combos <= 100'000; ++i) combos *= 6;
  if (combos <= 100'000) {
    for (std::size_t code = 0; code < combos; ++code) {
      std::map<GeneratorSymbol, Permutation> images;
      std::vector<const Permutation*> chosen;
      for (std::size_t i = 0, c = code; i < k; ++i, c /= 6) {
        images[p.generators[i]] = s3[c % 6];
        chosen.push_back(&s3[c % 6]);
      }
      bool nonabelian = false;
      for (std::size_t i = 0; i < k && !nonabelian; ++i)
        for (std::size_t j = i + 1; j < k && !nonabelian; ++j) {
          const auto& g = *chosen[i];
          const auto& h = *chosen[j];
          for (std::uint32_t t = 0; t < 3; ++t)
            if (h[g[t]] != g[h[t]]) nonabelian = true;
        }
      if (!nonabelian) continue;
      try {
        out.push_back(QuotientMap::finite(p, std::move(images)));
        break;
      } catch (const std::invalid_argument&) {
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void add_term(LaurentPoly& p, const std::vector<std::int64_t>& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<std::int64_t> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_term(out, e, ca * cb);
    }
  return out;
}

Matrix<Rational> perm_matrix(const Permutation& p) {
  Matrix<Rational> m(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(i, p[i]) = 1;
  return m;
}

}  // namespace

EvaluatedComplex evaluate(const BoundaryMatrices& m, const QuotientMap& q) {
  if (m.m == 0) throw std::invalid_argument("evaluate: m must be positive");
  const Rational inv_m(Integer(1), Integer(m.m));
  if (!q.is_finite()) {
    const auto rank = std::get<QuotientMap::Abelian>(q.kind()).rank;
    auto image = [&](const GroupRingElt& e) {
      LaurentPoly p;
      for (const auto& [w, c] : e.terms()) add_term(p, q.exponent(w), Rational(c));
      return p;
    };
    LaurentPoly avg;
    const auto root_e = q.exponent(m.root);
    for (std::uint64_t i = 0; i < m.m; ++i) {
      std::vector<std::int64_t> e(rank);
      for (std::size_t t = 0; t < rank; ++t) e[t] = root_e[t] * static_cast<std::int64_t>(i);
      add_term(avg, e, inv_m);
    }
    LaurentComplex lc;
    for (std::size_t r = 0; r < m.d2.size(); ++r) {
      std::vector<LaurentPoly> row;
      for (const auto& entry : m.d2[r]) {
        LaurentPoly p = image(entry);
        if (r == 1 && m.row2_averaged) p = mul(avg, p);
        row.push_back(std::move(p));
      }
      lc.d2.push_back(std::move(row));
    }
    for (const auto& entry : m.d1) lc.d1.push_back(image(entry));
    return lc;
  }

  const auto n = std::get<QuotientMap::Finite>(q.kind()).degree;
  auto image = [&](const GroupRingElt& e) {
    Matrix<Rational> out(n, n);
    for (const auto& [w, c] : e.terms()) {
      const Permutation p = q.permutation(w);
      for (std::size_t i = 0; i < n; ++i) out(i, p[i]) += Rational(c);
    }
    return out;
  };
  const Matrix<Rational> root = perm_matrix(q.permutation(m.root));
  Matrix<Rational> e(n, n);
  Matrix<Rational> power = Matrix<Rational>::identity(n);
  for (std::uint64_t i = 0; i < m.m; ++i) {
    e = e + power;
    power = power * root;
  }
  for (auto& v : e.data) v *= inv_m;
  BlockComplex bc;
  bc.degree = n;
  for (std::size_t r = 0; r < m.d2.size(); ++r) {
    std::vector<Matrix<Rational>> row;
    for (const auto& entry : m.d2[r]) {
      Matrix<Rational> x = image(entry);
      if (r == 1 && m.row2_averaged) x = e * x;
      row.push_back(std::move(x));
    }
    bc.d2.push_back(std::move(row));
  }
  for (const auto& entry : m.d1) bc.d1.push_back(image(entry));
  return bc;
}

Matrix<Rational> specialize_at_augmentation(const std::vector<std::vector<LaurentPoly>>& m) {
  Matrix<Rational> out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      for (const auto& [e, c] : m[i][j]) out(i, j) += c;
  return out;
}

bool composite_is_zero(const EvaluatedComplex& c) {
  if (const auto* lc = std::get_if<LaurentComplex>(&c)) {
    for (const auto& row : lc->d2) {
      LaurentPoly sum;
      for (std::size_t j = 0; j < row.size(); ++j)
        for (const auto& [e, coef] : mul(row[j], lc->d1[j])) add_term(sum, e, coef);
      if (!sum.empty()) return false;
    }
    return true;
  }
  const auto& bc = std::get<BlockComplex>(c);
  for (const auto& row : bc.d2) {
    Matrix<Rational> sum(bc.degree, bc.degree);
    for (std::size_t j = 0; j < row.size(); ++j) sum = sum + row[j] * bc.d1[j];
    if (!sum.is_zero()) return false;
  }
  return true;
}

}  // namespace sporcalc
