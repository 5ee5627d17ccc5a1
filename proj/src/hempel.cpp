#include "sporcalc/hempel.hpp"

#include <algorithm>
#include <map>

namespace sporcalc {

GeneratorSymbol shifted_x(std::int64_t level) { return {"x", level}; }
GeneratorSymbol shifted_z(int t, std::int64_t level) { return {"z" + std::to_string(t), level}; }
bool is_x_symbol(const GeneratorSymbol& s) { return s.name == "x"; }

namespace {

bool is_z_name(const std::string& name) {
  return name.size() >= 2 && name[0] == 'z' &&
         std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Word y_power(std::int64_t e) { return Word::generator(y_symbol(), e); }

Word lower_letter(const Letter& l) {
  if (!l.symbol.level) throw std::invalid_argument("lower_to_free: unleveled symbol " + to_string(l.symbol));
  const std::int64_t i = *l.symbol.level;
  return y_power(i) * Word{Letter{GeneratorSymbol(l.symbol.name), l.sign}} * y_power(-i);
}

}  // namespace

Word shift_u(const Word& u, std::int64_t level) {
  std::vector<Letter> out;
  for (const auto& l : u.letters()) {
    if (!is_z_name(l.symbol.name) || l.symbol.level)
      throw std::invalid_argument("u must be a word in unleveled z generators");
    out.push_back({GeneratorSymbol(l.symbol.name, level), l.sign});
  }
  return Word(std::move(out));
}

Word shift_levels(const Word& w, std::int64_t delta) {
  std::vector<Letter> out;
  for (const auto& l : w.letters()) out.push_back({l.symbol.shifted(delta), l.sign});
  return Word(std::move(out));
}

Word lower_to_free(const Word& shifted) {
  Word out;
  for (const auto& l : shifted.letters()) out *= lower_letter(l);
  return out;
}

Word lift_to_shifted(const Word& r) {
  if (exponent_sum(r, y_symbol()) != 0) throw std::invalid_argument("lift_to_shifted: nonzero y-exponent sum");
  std::int64_t level = 0;
  std::vector<Letter> out;
  for (const auto& l : r.letters()) {
    if (l.symbol.level) throw std::invalid_argument("lift_to_shifted: leveled symbol in F word");
    if (l.symbol == y_symbol()) {
      level += l.sign;
    } else if (is_x_symbol(l.symbol) || is_z_name(l.symbol.name)) {
      out.push_back({GeneratorSymbol(l.symbol.name, level), l.sign});
    } else {
      throw std::invalid_argument("lift_to_shifted: unexpected generator " + to_string(l.symbol));
    }
  }
  return Word(std::move(out));
}

std::optional<IntervalState> z_interval(const Word& w) {
  std::optional<IntervalState> iv;
  for (const auto& l : w.letters()) {
    if (!is_z_name(l.symbol.name) || !l.symbol.level) continue;
    const auto lv = *l.symbol.level;
    if (!iv) {
      iv = IntervalState{lv, lv};
    } else {
      iv->mu = std::min(iv->mu, lv);
      iv->nu = std::max(iv->nu, lv);
    }
  }
  return iv;
}

// ---------------------------------------------------------------------------

Word Certificate::expand_v(const Word& relator) const {
  Word out;
  for (const auto& t : v) out *= conjugate(t.conjugator, relator.pow(t.sign));
  return out;
}

int Certificate::relator_exponent() const {
  int s = 0;
  for (const auto& t : v) s += t.sign;
  return s;
}

namespace {

// Current shifted word together with the certificate that relates it to
// alpha(r) in F.
class Tracker {
 public:
  Tracker(Word shifted, Word u) : word_(std::move(shifted)), u_(std::move(u)) {}

  const Word& word() const { return word_; }
  const std::vector<SignedConjugate>& v() const { return v_; }
  const Word& w() const { return w_; }

  // Down at `level`: x@level -> u@(level-1) x@(level-1), which in F is
  // R x@level with R = c rel c^-1, c = y^(level-1) u.
  // Up at `level`: x@level -> u@level^-1 x@(level+1) = R x@level with
  // R = c rel^-1 c^-1, c = y^level.
  void substitute_x(std::int64_t level, ShiftDirection dir) {
    const GeneratorSymbol target = shifted_x(level);
    Word replacement;
    Word c;
    int sigma;
    if (dir == ShiftDirection::Down) {
      replacement = shift_u(u_, level - 1) * Word::generator(shifted_x(level - 1));
      c = y_power(level - 1) * u_;
      sigma = 1;
    } else {
      replacement = shift_u(u_, level).inverse() * Word::generator(shifted_x(level + 1));
      c = y_power(level);
      sigma = -1;
    }
    const Word replacement_inv = replacement.inverse();
    Word out;
    Word out_free;
    std::vector<SignedConjugate> pass;
    for (const auto& l : word_.letters()) {
      if (l.symbol != target) {
        out *= l;
        out_free *= lower_letter(l);
        continue;
      }
      if (l.sign > 0) {
        pass.push_back({out_free * c, sigma});
        out *= replacement;
        out_free *= lower_to_free(replacement);
      } else {
        pass.push_back({out_free * lower_letter(l) * c, -sigma});
        out *= replacement_inv;
        out_free *= lower_to_free(replacement_inv);
      }
    }
    // each term multiplies on the left, so the latest comes first
    std::vector<SignedConjugate> v;
    v.reserve(pass.size() + v_.size());
    v.insert(v.end(), pass.rbegin(), pass.rend());
    v.insert(v.end(), v_.begin(), v_.end());
    v_ = std::move(v);
    word_ = std::move(out);
  }

  // word -> s^-1 word s; in F this is conjugation by lower(s)^-1.
  void cyclic_reduce() {
    auto red = sporcalc::cyclic_reduce(word_);
    if (red.conjugator.empty()) return;
    conjugate_free(lower_to_free(red.conjugator).inverse());
    word_ = red.cyclic.representative();
  }

  // Conjugation by y^delta raises every level by delta.
  void translate(std::int64_t delta) {
    if (delta == 0) return;
    conjugate_free(y_power(delta));
    word_ = shift_levels(word_, delta);
  }

 private:
  void conjugate_free(const Word& c) {
    for (auto& t : v_) t.conjugator = c * t.conjugator;
    w_ = c * w_;
  }

  Word word_;
  Word u_;
  std::vector<SignedConjugate> v_;
  Word w_;
};

bool only_x_at(const Word& w, std::int64_t j) {
  return std::all_of(w.letters().begin(), w.letters().end(),
                     [&](const Letter& l) { return l.symbol == shifted_x(j); });
}

void to_basis(Tracker& t, std::int64_t j) {
  for (;;) {
    std::optional<std::int64_t> lo, hi;
    for (const auto& l : t.word().letters()) {
      if (!is_x_symbol(l.symbol)) continue;
      const auto lv = *l.symbol.level;
      lo = lo ? std::min(*lo, lv) : lv;
      hi = hi ? std::max(*hi, lv) : lv;
    }
    if (hi && *hi > j) {
      t.substitute_x(*hi, ShiftDirection::Down);
    } else if (lo && *lo < j) {
      t.substitute_x(*lo, ShiftDirection::Up);
    } else {
      break;
    }
  }
  t.cyclic_reduce();
}

}  // namespace

NWord express_in_basis(const Word& shifted, std::int64_t j, const Word& u) {
  Tracker t(shifted, u);
  to_basis(t, j);
  return {t.word(), j, z_interval(t.word())};
}

NWord shift_basis(const NWord& nw, ShiftDirection dir, const Word& u) {
  Tracker t(nw.word, u);
  t.substitute_x(nw.basis, dir);
  t.cyclic_reduce();
  const std::int64_t j = dir == ShiftDirection::Down ? nw.basis - 1 : nw.basis + 1;
  return {t.word(), j, z_interval(t.word())};
}

// ---------------------------------------------------------------------------

Normalization normalize(const CommutatorForm& cf, const NormalizeOptions& opts) {
  Normalization out;
  out.balance = balance_exponents(cf.r);
  out.certificate.alpha_x = out.balance.alpha_x;
  out.certificate.alpha_y = out.balance.alpha_y;

  Tracker t(lift_to_shifted(out.balance.r_balanced), cf.u);
  std::int64_t j = 0;
  to_basis(t, j);

  const auto initial = z_interval(t.word());
  const std::size_t cap =
      opts.cap.value_or(10 * (cf.r.length() + static_cast<std::size_t>(initial ? std::abs(initial->nu) : 0) + 10));
  std::size_t steps = 0;
  auto record = [&](const char* phase) {
    out.trace.push_back({phase, j, t.word(), z_interval(t.word())});
  };
  auto tick = [&] {
    if (++steps > cap) throw CapExceeded("normalize: basis-shift cap of " + std::to_string(cap) + " exceeded");
  };

  record("initial");
  bool power = only_x_at(t.word(), j);

  // Shift down until j <= mu_j.
  struct Snapshot {
    Tracker tracker;
    std::int64_t j;
    IntervalState iv;
  };
  std::vector<Snapshot> valid;
  while (!power) {
    const auto iv = *z_interval(t.word());
    if (j <= iv.mu) {
      valid.push_back({t, j, iv});
      break;
    }
    tick();
    t.substitute_x(j, ShiftDirection::Down);
    t.cyclic_reduce();
    --j;
    record("down");
    power = only_x_at(t.word(), j);
  }

  if (!power) {
    // Minimize nu_j - mu_j over visited valid bases; ties go to the largest j.
    auto best = std::min_element(valid.begin(), valid.end(), [](const Snapshot& a, const Snapshot& b) {
      const auto wa = a.iv.nu - a.iv.mu, wb = b.iv.nu - b.iv.mu;
      return wa != wb ? wa < wb : a.j > b.j;
    });
    t = best->tracker;
    j = best->j;
    record("select");

    // Shift up until mu_{j+1} = j.
    for (;;) {
      tick();
      t.substitute_x(j, ShiftDirection::Up);
      t.cyclic_reduce();
      ++j;
      record("up");
      if (only_x_at(t.word(), j)) {
        power = true;
        break;
      }
      if (z_interval(t.word())->mu == j - 1) break;
    }
  }

  if (power) {
    const auto m = static_cast<std::int64_t>(t.word().length());
    if (m > 0 && t.word()[0].sign < 0) throw CertificateFailure("normalize: negative power of x");
    t.translate(-j);
    out.result.variant = PowerOfX{m};
  } else {
    // basis j = k+1 with mu = k; move to basis 1, mu = 0
    t.translate(1 - j);
    j = 1;
    record("translate");
    HempelRelator h{t.word(), z_interval(t.word())->nu};
    if (!check_hempel(h.r, cf.u).all()) throw CertificateFailure("normalize: output fails R1-R4");
    out.result.variant = std::move(h);
  }

  out.certificate.v = t.v();
  out.certificate.w = t.w();
  out.relator_in_free = lower_to_free(t.word());
  if (!verify_certificate(cf, out)) throw CertificateFailure("normalize: certificate does not verify");
  return out;
}

namespace {

std::map<GeneratorSymbol, std::int64_t> abelianize(const Word& w) {
  std::map<GeneratorSymbol, std::int64_t> v;
  for (const auto& l : w.letters()) v[l.symbol] += l.sign;
  std::erase_if(v, [](const auto& kv) { return kv.second == 0; });
  return v;
}

}  // namespace

bool verify_certificate(const CommutatorForm& cf, const Normalization& n) {
  const Certificate& c = n.certificate;
  const Word alpha_r = substitute(cf.r, {{x_symbol(), c.alpha_x}, {y_symbol(), c.alpha_y}});
  const Word rel = cf.relator();
  const Word lhs = c.expand_v(rel) * conjugate(c.w, alpha_r);
  if (lhs != n.relator_in_free) return false;

  // independent route: exponent sums only
  auto expected = abelianize(alpha_r);
  for (const auto& [sym, e] : abelianize(rel)) expected[sym] += e * c.relator_exponent();
  std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
  if (expected != abelianize(n.relator_in_free)) return false;

  if (n.result.is_power()) return n.relator_in_free == Word::generator(x_symbol(), n.result.power().m);
  return lower_to_free(n.result.hempel().r) == n.relator_in_free;
}

// ---------------------------------------------------------------------------

HempelFlags check_hempel(const Word& r, const Word& u) {
  HempelFlags f;
  f.r1 = std::all_of(r.letters().begin(), r.letters().end(), [](const Letter& l) {
    if (!l.symbol.level) return false;
    if (is_x_symbol(l.symbol)) return *l.symbol.level == 1;
    return is_z_name(l.symbol.name) && *l.symbol.level >= 0;
  });
  const Word s = shift_u(u, 0).inverse() * Word::generator(shifted_x(1));
  f.r2 = !conjugate_to_power_of(r, s).has_value();
  f.r3 = is_cyclically_reduced(r);
  f.r4 = std::any_of(r.letters().begin(), r.letters().end(), [](const Letter& l) {
    return is_z_name(l.symbol.name) && l.symbol.level && *l.symbol.level == 0;
  });
  return f;
}

std::int64_t nu_of(const Word& r, const Word& u) {
  if (!check_hempel(r, u).all()) throw std::invalid_argument("nu_of: not a Hempel relator");
  return z_interval(r)->nu;
}

HNNData hnn_data(const Word& r, const CommutatorForm& cf) {
  HNNData h;
  h.nu = nu_of(r, cf.u);
  const Word x0 = Word::generator(shifted_x(0));
  const Word x1_in_vertex = shift_u(cf.u, 0) * x0;

  h.vertex.generators.push_back(shifted_x(0));
  for (std::int64_t i = 0; i <= h.nu; ++i)
    for (int t = 1; t <= cf.d; ++t) h.vertex.generators.push_back(shifted_z(t, i));
  h.vertex.relators.push_back(substitute(r, {{shifted_x(1), x1_in_vertex}}));

  h.lower_edge_basis.push_back(x0);
  h.upper_edge_basis.push_back(x1_in_vertex);
  h.stable_letter_map.emplace_back(shifted_x(0), shifted_x(1));
  for (std::int64_t i = 0; i < h.nu; ++i)
    for (int t = 1; t <= cf.d; ++t) {
      h.lower_edge_basis.push_back(Word::generator(shifted_z(t, i)));
      h.upper_edge_basis.push_back(Word::generator(shifted_z(t, i + 1)));
      h.stable_letter_map.emplace_back(shifted_z(t, i), shifted_z(t, i + 1));
    }
  return h;
}

TorsionData torsion_data(const Word& r, const Word& u) {
  const auto nu = nu_of(r, u);
  const RootResult root = free_root(r);
  TorsionData td{root.exponent.value(), root.root};
  if (!check_hempel(td.root, u).all() || nu_of(td.root, u) != nu)
    throw std::logic_error("torsion_data: root is not a Hempel relator with the same nu");
  return td;
}

}  // namespace sporcalc
