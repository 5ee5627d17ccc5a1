#include "sporcalc/residual.hpp"

#include <sstream>

#include "sporcalc/hempel.hpp"
#include "sporcalc/presentation.hpp"

namespace sporcalc {

TruncSeries::TruncSeries(std::shared_ptr<const std::vector<std::string>> vars, std::size_t max_degree,
                         std::uint64_t modulus)
    : vars_(std::move(vars)), max_degree_(max_degree), modulus_(modulus) {}

TruncSeries TruncSeries::constant(const TruncSeries& like, Integer c) {
  TruncSeries f(like.vars_, like.max_degree_, like.modulus_);
  f.add_term({}, c);
  return f;
}

TruncSeries TruncSeries::variable(const TruncSeries& like, std::uint32_t v) {
  TruncSeries f(like.vars_, like.max_degree_, like.modulus_);
  if (like.max_degree_ >= 1) f.add_term({v}, 1);
  return f;
}

Integer TruncSeries::normalize(Integer c) const {
  if (modulus_ == 0) return c;
  c %= modulus_;
  if (c < 0) c += modulus_;
  return c;
}

void TruncSeries::add_term(const Monomial& m, const Integer& c) {
  if (m.size() > max_degree_) return;
  auto it = coeffs_.find(m);
  Integer v = normalize(it == coeffs_.end() ? c : Integer(it->second + c));
  if (v == 0) {
    if (it != coeffs_.end()) coeffs_.erase(it);
  } else if (it == coeffs_.end()) {
    coeffs_.emplace(m, std::move(v));
  } else {
    it->second = std::move(v);
  }
}

Integer TruncSeries::constant_term() const {
  auto it = coeffs_.find({});
  return it == coeffs_.end() ? Integer(0) : it->second;
}

bool TruncSeries::is_one() const { return coeffs_.size() == 1 && constant_term() == 1; }

std::optional<std::pair<TruncSeries::Monomial, Integer>> TruncSeries::lowest_deviation() const {
  std::optional<std::pair<Monomial, Integer>> best;
  if (constant_term() != 1) best = {Monomial{}, normalize(constant_term() - 1)};
  if (best) return best;
  for (const auto& [m, c] : coeffs_) {
    if (m.empty()) continue;
    if (!best || m.size() < best->first.size()) best = {m, c};
  }
  return best;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  for (const auto& [m, c] : o.coeffs_) add_term(m, c);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  for (const auto& [m, c] : o.coeffs_) add_term(m, Integer(-c));
  return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries out(a.vars_, a.max_degree_, a.modulus_);
  for (const auto& [ma, ca] : a.coeffs_)
    for (const auto& [mb, cb] : b.coeffs_) {
      if (ma.size() + mb.size() > a.max_degree_) continue;
      TruncSeries::Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add_term(m, ca * cb);
    }
  return out;
}

std::string TruncSeries::monomial_string(const Monomial& m) const {
  if (m.empty()) return "1";
  std::string s;
  for (auto v : m) {
    if (!s.empty()) s += " ";
    s += (*vars_)[v];
  }
  return s;
}

std::string TruncSeries::to_string() const {
  if (coeffs_.empty()) return "0";
  // graded order: by degree, then lexicographically
  std::vector<std::pair<Monomial, Integer>> terms(coeffs_.begin(), coeffs_.end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& l, const auto& r) { return l.first.size() < r.first.size(); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Integer a = abs(c);
    if (m.empty()) os << a;
    else if (a == 1) os << monomial_string(m);
    else os << a << " " << monomial_string(m);
  }
  return os.str();
}

TruncSeries series_inverse(const TruncSeries& f) {
  const Integer c = f.constant_term();
  Integer cinv;
  if (f.modulus() == 0) {
    if (c != 1 && c != -1) throw std::domain_error("series_inverse: constant term is not a unit");
    cinv = c;
  } else {
    // Fermat inverse; modulus is prime
    if (c == 0) throw std::domain_error("series_inverse: constant term is not a unit");
    cinv = powm(c, Integer(f.modulus() - 2), Integer(f.modulus()));
  }
  // f = c (1 + h), f^-1 = (sum (-h)^i) c^-1
  TruncSeries h = f * TruncSeries::constant(f, cinv) - TruncSeries::constant(f, 1);
  TruncSeries neg_h = TruncSeries::constant(f, 0) - h;
  TruncSeries sum = TruncSeries::constant(f, 1);
  TruncSeries power = sum;
  for (std::size_t i = 1; i <= f.max_degree(); ++i) {
    power = power * neg_h;
    sum += power;
  }
  return sum * TruncSeries::constant(f, cinv);
}

TruncSeries magnus_image(const Word& w, const std::vector<GeneratorSymbol>& generators, std::size_t n,
                         std::uint64_t modulus) {
  auto vars = std::make_shared<std::vector<std::string>>();
  std::map<GeneratorSymbol, std::uint32_t> index;
  for (const auto& g : generators) {
    index.emplace(g, static_cast<std::uint32_t>(vars->size()));
    vars->push_back("b_" + to_string(g));
  }
  TruncSeries result(vars, n, modulus);
  result.add_term({}, 1);
  const TruncSeries one = result;
  for (const auto& l : w.letters()) {
    auto it = index.find(l.symbol);
    if (it == index.end()) throw std::invalid_argument("magnus_image: unknown generator " + to_string(l.symbol));
    TruncSeries img(vars, n, modulus);
    if (l.sign > 0) {
      img = one + TruncSeries::variable(one, it->second);
    } else {
      TruncSeries::Monomial m;
      for (std::size_t i = 0; i <= n; ++i) {
        img.add_term(m, i % 2 == 0 ? 1 : -1);
        m.push_back(it->second);
      }
    }
    result = result * img;
  }
  return result;
}

WitnessReport nontriviality_witness(const Word& w, const std::vector<GeneratorSymbol>& generators,
                                    std::uint64_t modulus) {
  if (w.empty()) throw std::invalid_argument("nontriviality_witness: trivial word");
  WitnessReport rep;
  rep.element = w;
  rep.prime = modulus;
  for (std::size_t n = 1; n <= w.length(); ++n) {
    const TruncSeries img = magnus_image(w, generators, n, modulus);
    if (const auto dev = img.lowest_deviation()) {
      rep.degree = n;
      rep.image_nontrivial = true;
      rep.witness_monomial = img.monomial_string(dev->first);
      rep.witness_coefficient = dev->second;
      return rep;
    }
  }
  throw std::logic_error("nontriviality_witness: no witness of degree <= |w| for " + to_string(w));
}

// ---------------------------------------------------------------------------

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t i = 2; i * i <= p; ++i)
    if (p % i == 0) return false;
  return true;
}

}  // namespace

SkewRing::SkewRing(int d, const Word& u, std::uint64_t p, std::uint32_t n, std::optional<std::size_t> degree,
                   std::size_t monomial_cap)
    : d_(d), p_(p), q_(1), degree_(degree.value_or(n)), cap_(monomial_cap), zero_(nullptr, 0, 0) {
  if (d < 1) throw std::invalid_argument("skew ring needs d >= 1");
  if (!is_prime(p)) throw std::invalid_argument("skew ring needs a prime p");
  if (n < 1) throw std::invalid_argument("skew ring needs n >= 1");
  for (std::uint32_t i = 0; i < n; ++i) {
    if (q_ > (1u << 15)) throw CapExceeded("skew ring: q = p^n too large");
    q_ *= p;
  }

  auto vars = std::make_shared<std::vector<std::string>>();
  vars->push_back("b_x");
  x_var_ = 0;
  for (int t = 1; t <= d; ++t) {
    z_var_.emplace_back();
    for (std::uint64_t i = 0; i < q_; ++i) {
      z_var_.back().push_back(static_cast<std::uint32_t>(vars->size()));
      vars->push_back("b_z" + std::to_string(t) + "," + std::to_string(i));
    }
  }
  zero_ = TruncSeries(vars, degree_, p);
  const TruncSeries one = TruncSeries::constant(zero_, 1);

  // U = image of u@0
  TruncSeries U = one;
  for (const auto& l : u.letters()) {
    int t = 0;
    for (int s = 1; s <= d; ++s)
      if (l.symbol == z_symbol(s)) t = s;
    if (t == 0) throw std::invalid_argument("u must be a word in z1..zd");
    TruncSeries z = one + TruncSeries::variable(zero_, z_var_[t - 1][0]);
    U = U * (l.sign > 0 ? z : series_inverse(z));
  }

  const std::size_t nvars = vars->size();
  std::vector<TruncSeries> id, sigma;
  for (std::uint32_t v = 0; v < nvars; ++v) id.push_back(TruncSeries::variable(zero_, v));
  sigma = id;
  sigma[x_var_] = U * (one + id[x_var_]) - one;
  for (int t = 1; t <= d; ++t)
    for (std::uint64_t i = 0; i < q_; ++i) sigma[z_var_[t - 1][i]] = id[z_var_[t - 1][(i + 1) % q_]];

  sigma_images_.push_back(id);
  sigma_images_.push_back(sigma);
  for (std::uint64_t s = 2; s <= q_ * q_; ++s) {
    std::vector<TruncSeries> next;
    for (const auto& f : sigma_images_.back()) next.push_back(act(1, f));
    sigma_images_.push_back(std::move(next));
  }
  if (sigma_images_.back() != id)
    throw UnsupportedInput("sigma^(q^2) is not the identity at truncation degree " + std::to_string(degree_));
  sigma_images_.pop_back();

  Word rel = commutator(Word::generator(x_symbol()), Word::generator(y_symbol())) * u;
  if (!is_one(image(rel))) throw std::invalid_argument("relator [x,y]u is not sent to 1");
}

void SkewRing::check_cap(const TruncSeries& f) const {
  if (f.coeffs().size() > cap_) throw CapExceeded("skew ring: monomial cap exceeded");
}

TruncSeries SkewRing::act(std::uint64_t s, const TruncSeries& f) const {
  s %= q_ * q_;
  if (s == 0) return f;
  const auto& images = sigma_images_.at(s);
  TruncSeries out = zero_;
  for (const auto& [m, c] : f.coeffs()) {
    TruncSeries term = TruncSeries::constant(zero_, c);
    for (auto v : m) term = term * images[v];
    out += term;
  }
  check_cap(out);
  return out;
}

SkewRingElt SkewRing::trim(SkewRingElt a) const {
  std::erase_if(a.components, [](const auto& kv) { return kv.second.coeffs().empty(); });
  return a;
}

SkewRingElt SkewRing::one() const { return series(TruncSeries::constant(zero_, 1), 0); }

SkewRingElt SkewRing::series(const TruncSeries& f, std::uint64_t t) const {
  SkewRingElt e;
  e.components.emplace(t % (q_ * q_), f);
  return trim(std::move(e));
}

SkewRingElt SkewRing::multiply(const SkewRingElt& a, const SkewRingElt& b) const {
  SkewRingElt out;
  for (const auto& [s, f] : a.components)
    for (const auto& [t, g] : b.components) {
      const std::uint64_t st = (s + t) % (q_ * q_);
      auto it = out.components.try_emplace(st, zero_).first;
      it->second += f * act(s, g);
      check_cap(it->second);
    }
  return trim(std::move(out));
}

SkewRingElt SkewRing::inverse_unit(const SkewRingElt& a) const {
  if (a.components.size() != 1) throw std::invalid_argument("inverse_unit: expected f y^s");
  const auto& [s, f] = *a.components.begin();
  // (f y^s)^-1 = y^-s f^-1 = sigma^-s(f^-1) y^-s
  const std::uint64_t back = (q_ * q_ - s) % (q_ * q_);
  return series(act(back, series_inverse(f)), back);
}

bool SkewRing::equal(const SkewRingElt& a, const SkewRingElt& b) const {
  return trim(a).components == trim(b).components;
}

bool SkewRing::is_one(const SkewRingElt& a) const { return equal(a, one()); }

SkewRingElt SkewRing::image(const Word& s) const {
  const TruncSeries one_series = TruncSeries::constant(zero_, 1);
  SkewRingElt out = one();
  for (const auto& l : s.letters()) {
    SkewRingElt g;
    if (l.symbol == x_symbol()) {
      g = series(one_series + TruncSeries::variable(zero_, x_var_));
    } else if (l.symbol == y_symbol()) {
      g = series(one_series, 1);
    } else {
      int t = 0;
      for (int k = 1; k <= d_; ++k)
        if (l.symbol == z_symbol(k)) t = k;
      if (t == 0) throw std::invalid_argument("skew ring image: unknown generator " + to_string(l.symbol));
      g = series(one_series + TruncSeries::variable(zero_, z_var_[t - 1][0]));
    }
    out = multiply(out, l.sign > 0 ? g : inverse_unit(g));
  }
  return out;
}

Integer SkewRing::order(const SkewRingElt& a, std::size_t max_steps) const {
  SkewRingElt cur = a;
  Integer ord = 1;
  for (std::size_t k = 0; k <= max_steps; ++k) {
    if (is_one(cur)) return ord;
    SkewRingElt pow = cur;
    for (std::uint64_t i = 1; i < p_; ++i) pow = multiply(pow, cur);
    cur = std::move(pow);
    ord *= p_;
  }
  throw CapExceeded("order: no p-power order within the step bound");
}

WitnessReport potency_s_witness(const Word& s, int d, const Word& u, std::uint64_t p, std::uint32_t n,
                                std::optional<std::size_t> degree, bool compute_order, std::size_t monomial_cap) {
  const SkewRing ring(d, u, p, n, degree, monomial_cap);
  const SkewRingElt img = ring.image(s);
  WitnessReport rep;
  rep.element = s;
  rep.prime = p;
  rep.degree = ring.degree();
  rep.image_nontrivial = !ring.is_one(img);
  if (rep.image_nontrivial) {
    auto it = img.components.find(0);
    if (img.components.size() > 1 || it == img.components.end()) {
      // the C_{q^2} coordinate already differs from 1
      for (const auto& [t, f] : img.components)
        if (t != 0) {
          rep.witness_monomial = "y^" + std::to_string(t);
          rep.witness_coefficient = f.constant_term();
          break;
        }
    } else {
      const auto dev = it->second.lowest_deviation();
      rep.witness_monomial = it->second.monomial_string(dev->first);
      rep.witness_coefficient = dev->second;
    }
  }
  if (compute_order) rep.order = ring.order(img);
  return rep;
}

}  // namespace sporcalc
