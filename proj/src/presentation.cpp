#include "sporcalc/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace sporcalc {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Presentation presentation() {
    Presentation p;
    expect('<');
    skip_ws();
    if (peek() == '|') error("empty generator list");
    do {
      skip_ws();
      const std::size_t start = pos_;
      GeneratorSymbol g = symbol();
      if (std::find(p.generators.begin(), p.generators.end(), g) != p.generators.end()) {
        pos_ = start;
        error("duplicate generator " + to_string(g));
      }
      p.generators.push_back(std::move(g));
    } while (accept(','));
    gens_ = &p.generators;
    expect('|');
    skip_ws();
    if (peek() != '>') {
      p.relators.push_back(word());
      while (accept(',')) p.relators.push_back(word());
    }
    expect('>');
    skip_ws();
    if (pos_ != text_.size()) error("trailing input");
    return p;
  }

  Word lone_word(const std::vector<GeneratorSymbol>& gens) {
    gens_ = &gens;
    skip_ws();
    if (pos_ == text_.size()) return Word();
    Word w = word();
    skip_ws();
    if (pos_ != text_.size()) error("trailing input");
    return w;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) error("expected integer");
    return std::strtoll(text_.c_str() + start, nullptr, 10);
  }

  GeneratorSymbol symbol() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      error("expected generator name");
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    GeneratorSymbol s(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      s.level = integer();
    }
    return s;
  }

  bool at_term_start() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '[' || c == '(';
  }

  Word word() {
    if (!at_term_start()) error("expected word");
    Word w;
    while (at_term_start()) w *= term();
    return w;
  }

  Word term() {
    if (accept('[')) {
      Word a = word();
      expect(',');
      Word b = word();
      expect(']');
      return commutator(a, b);
    }
    if (accept('(')) {
      Word w = word();
      expect(')');
      if (accept('^')) w = w.pow(integer());
      return w;
    }
    std::size_t at = pos_;
    GeneratorSymbol s = symbol();
    if (std::find(gens_->begin(), gens_->end(), s) == gens_->end()) {
      pos_ = at;
      error("unknown generator " + to_string(s));
    }
    std::int64_t e = 1;
    if (accept('^')) e = integer();
    return Word::generator(s, e);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  const std::vector<GeneratorSymbol>* gens_ = nullptr;
};

}  // namespace

Presentation parse_presentation(const std::string& text) { return Parser(text).presentation(); }

Word parse_word(const std::string& text, const std::vector<GeneratorSymbol>& generators) {
  return Parser(text).lone_word(generators);
}

std::string print_word(const Word& w) {
  std::string out;
  std::size_t i = 0;
  while (i < w.length()) {
    std::size_t j = i;
    while (j < w.length() && w[j] == w[i]) ++j;
    if (!out.empty()) out += ' ';
    out += to_string(w[i].symbol);
    const auto e = static_cast<std::int64_t>(j - i) * w[i].sign;
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

std::string print(const Presentation& p) {
  std::string out = "< ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p.generators[i]);
  }
  out += " |";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += i ? ", " : " ";
    // the empty relator has no textual form in the grammar; write it as a trivial commutator
    out += p.relators[i].empty() ? "[" + to_string(p.generators[0]) + "," + to_string(p.generators[0]) + "]"
                                 : print_word(p.relators[i]);
  }
  out += " >";
  return out;
}

// ---------------------------------------------------------------------------

std::vector<GeneratorSymbol> surface_generators(int k, NameStyle style) {
  std::vector<GeneratorSymbol> gens;
  if (style == NameStyle::Letters && k <= 23) {
    for (int i = 0; i < k; ++i) gens.emplace_back(std::string(1, static_cast<char>('a' + i)));
  } else {
    for (int i = 1; i <= k; ++i) gens.emplace_back("x" + std::to_string(i));
  }
  return gens;
}

Word SporInput::surface_relator() const {
  Word w;
  if (orientability == Orientability::Orientable) {
    for (int i = 0; i + 1 < k; i += 2)
      w *= commutator(Word::generator(generators[i]), Word::generator(generators[i + 1]));
  } else {
    for (int i = 0; i < k; ++i) w *= Word::generator(generators[i], 2);
  }
  return w;
}

Presentation SporInput::presentation() const { return {generators, {surface_relator(), r}}; }

SporInput surface_input(Orientability o, int count, const Word& r, std::vector<GeneratorSymbol> generators) {
  SporInput in;
  in.orientability = o;
  if (o == Orientability::Orientable) {
    if (count < 1) throw std::invalid_argument("orientable genus must be >= 1");
    in.k = 2 * count;
  } else {
    if (count < 1) throw std::invalid_argument("non-orientable k must be >= 1");
    in.k = count;
  }
  if (static_cast<int>(generators.size()) != in.k) throw std::invalid_argument("generator count does not match k");
  in.generators = std::move(generators);
  for (const auto& l : r.letters())
    if (std::find(in.generators.begin(), in.generators.end(), l.symbol) == in.generators.end())
      throw std::invalid_argument("relator uses generator " + to_string(l.symbol) + " outside x1..xk");
  in.r = r;
  return in;
}

SporInput surface_input(Orientability o, int count, const Word& r, NameStyle style) {
  const int k = o == Orientability::Orientable ? 2 * count : count;
  return surface_input(o, count, r, surface_generators(std::max(k, 0), style));
}

SporInput spor_input_from(const Presentation& p) {
  if (p.relators.empty() || p.relators.size() > 2)
    throw std::invalid_argument("expected a surface relator and at most one further relator");
  const int k = static_cast<int>(p.generators.size());
  const Word r = p.relators.size() == 2 ? p.relators[1] : Word();
  if (k % 2 == 0) {
    auto in = surface_input(Orientability::Orientable, k / 2, r, p.generators);
    if (in.surface_relator() == p.relators[0]) return in;
  }
  auto in = surface_input(Orientability::NonOrientable, k, r, p.generators);
  if (in.surface_relator() == p.relators[0]) return in;
  throw std::invalid_argument("first relator is not a literal surface word over the listed generators");
}

// ---------------------------------------------------------------------------

Word substitute(const Word& w, const std::map<GeneratorSymbol, Word>& images) {
  Word out;
  for (const auto& l : w.letters()) {
    auto it = images.find(l.symbol);
    if (it == images.end()) {
      out *= l;
    } else {
      out *= l.sign > 0 ? it->second : it->second.inverse();
    }
  }
  return out;
}

GeneratorSymbol x_symbol() { return {"x"}; }
GeneratorSymbol y_symbol() { return {"y"}; }
GeneratorSymbol z_symbol(int t) { return {"z" + std::to_string(t)}; }

Word CommutatorForm::relator() const {
  return commutator(Word::generator(x_symbol()), Word::generator(y_symbol())) * u;
}

std::vector<GeneratorSymbol> CommutatorForm::generators() const {
  std::vector<GeneratorSymbol> g{x_symbol(), y_symbol()};
  for (int t = 1; t <= d; ++t) g.push_back(z_symbol(t));
  return g;
}

CommutatorForm to_commutator_form(const SporInput& input) {
  if (input.k <= 2) throw UnsupportedInput("unsupported: k <= 2");
  CommutatorForm cf;
  cf.d = input.k - 2;
  cf.old_generators = input.generators;
  const auto& old = input.generators;
  auto X = Word::generator(x_symbol());
  auto Y = Word::generator(y_symbol());
  auto Z = [](int t) { return Word::generator(z_symbol(t)); };
  auto O = [&](int i) { return Word::generator(old[static_cast<std::size_t>(i)]); };
  auto& fwd = cf.basis.forward;
  auto& bwd = cf.basis.backward;

  if (input.orientability == Orientability::Orientable) {
    fwd[old[0]] = X;
    fwd[old[1]] = Y;
    bwd[x_symbol()] = O(0);
    bwd[y_symbol()] = O(1);
    for (int t = 1; t <= cf.d; ++t) {
      fwd[old[static_cast<std::size_t>(t + 1)]] = Z(t);
      bwd[z_symbol(t)] = O(t + 1);
    }
    for (int t = 1; t + 1 <= cf.d; t += 2) cf.u *= commutator(Z(t), Z(t + 1));
  } else {
    const Word a = O(0), b = O(1), c = O(2);
    const Word g = a * b * c * a * b;
    bwd[x_symbol()] = b.inverse() * a.inverse() * c.inverse() * b.inverse();
    bwd[y_symbol()] = a * b;
    bwd[z_symbol(1)] = c * a * b;
    fwd[old[0]] = Y * Z(1) * X;
    fwd[old[1]] = X.inverse() * Z(1).inverse();
    fwd[old[2]] = Z(1) * Y.inverse();
    const Word g_new = substitute(g, fwd);
    for (int t = 2; t <= cf.d; ++t) {
      bwd[z_symbol(t)] = conjugate(g.inverse(), O(t + 1));
      fwd[old[static_cast<std::size_t>(t + 1)]] = conjugate(g_new, Z(t));
    }
    for (int t = 1; t <= cf.d; ++t) cf.u *= Z(t).pow(2);
    cf.basis.conjugator = g;
  }
  cf.r = substitute(input.r, fwd);
  return cf;
}

bool verify_basis_change(const CommutatorForm& cf, const Word& surface_relator) {
  for (const auto& [sym, img] : cf.basis.backward)
    if (substitute(img, cf.basis.forward) != Word::generator(sym)) return false;
  for (const auto& [sym, img] : cf.basis.forward)
    if (substitute(img, cf.basis.backward) != Word::generator(sym)) return false;
  const Word& g = cf.basis.conjugator;
  if (g.inverse() * surface_relator * g != substitute(cf.relator(), cf.basis.backward)) return false;
  const Word g_new = substitute(g, cf.basis.forward);
  return g_new.inverse() * substitute(surface_relator, cf.basis.forward) * g_new == cf.relator();
}

// ---------------------------------------------------------------------------

Word BalanceResult::apply(const Word& w) const {
  return substitute(w, {{x_symbol(), alpha_x}, {y_symbol(), alpha_y}});
}

BalanceResult balance_exponents(const Word& r) {
  BalanceResult res;
  res.alpha_x = Word::generator(x_symbol());
  res.alpha_y = Word::generator(y_symbol());
  std::int64_t a = exponent_sum(r, x_symbol());
  std::int64_t b = exponent_sum(r, y_symbol());
  const Word X = Word::generator(x_symbol()), Y = Word::generator(y_symbol());

  auto apply_move = [&](BalanceMove::Kind kind) {
    std::map<GeneratorSymbol, Word> beta;
    switch (kind) {
      case BalanceMove::XTimesY: beta[x_symbol()] = X * Y; b += a; break;
      case BalanceMove::XTimesYInv: beta[x_symbol()] = X * Y.inverse(); b -= a; break;
      case BalanceMove::YTimesX: beta[y_symbol()] = Y * X; a += b; break;
      case BalanceMove::YTimesXInv: beta[y_symbol()] = Y * X.inverse(); a -= b; break;
    }
    // new alpha = beta o alpha
    res.alpha_x = substitute(res.alpha_x, beta);
    res.alpha_y = substitute(res.alpha_y, beta);
    res.moves.push_back({kind, a, b});
  };

  while (a != 0 && b != 0) {
    const std::int64_t cur = std::abs(a) + std::abs(b);
    // candidates in tie-break order: x-replacements first
    const std::pair<BalanceMove::Kind, std::int64_t> cands[] = {
        {BalanceMove::XTimesY, std::abs(a) + std::abs(b + a)},
        {BalanceMove::XTimesYInv, std::abs(a) + std::abs(b - a)},
        {BalanceMove::YTimesX, std::abs(a + b) + std::abs(b)},
        {BalanceMove::YTimesXInv, std::abs(a - b) + std::abs(b)},
    };
    auto best = std::min_element(std::begin(cands), std::end(cands),
                                 [](const auto& p, const auto& q) { return p.second < q.second; });
    if (best->second >= cur) throw std::logic_error("balance_exponents: no reducing move");
    apply_move(best->first);
  }
  if (a == 0 && b != 0) {
    apply_move(BalanceMove::YTimesX);     // (0,b) -> (b,b)
    apply_move(BalanceMove::XTimesYInv);  // (b,b) -> (b,0)
  }
  if (a < 0) {
    apply_move(BalanceMove::XTimesY);     // (a,0) -> (a,a)
    apply_move(BalanceMove::YTimesXInv);  // -> (0,a)
    apply_move(BalanceMove::YTimesXInv);  // -> (-a,a)
    apply_move(BalanceMove::XTimesY);     // -> (-a,0)
  }
  res.r_balanced = res.apply(r);
  return res;
}

}  // namespace sporcalc
