#include "sporcalc/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sporcalc {

GeneratorSymbol GeneratorSymbol::shifted(std::int64_t delta) const {
  if (!level) throw std::logic_error("shifted: symbol " + name + " has no level");
  return {name, *level + delta};
}

std::strong_ordering operator<=>(const GeneratorSymbol& a, const GeneratorSymbol& b) {
  if (auto c = a.name <=> b.name; c != 0) return c;
  // unleveled sorts before leveled
  if (a.level.has_value() != b.level.has_value())
    return a.level.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (!a.level) return std::strong_ordering::equal;
  return *a.level <=> *b.level;
}

std::strong_ordering operator<=>(const Letter& a, const Letter& b) {
  if (auto c = a.symbol <=> b.symbol; c != 0) return c;
  // positive letter before its inverse
  return b.sign <=> a.sign;
}

std::string to_string(const GeneratorSymbol& s) {
  if (!s.level) return s.name;
  return s.name + "@" + std::to_string(*s.level);
}

// ---------------------------------------------------------------------------

Word::Word(std::vector<Letter> raw) {
  letters_.reserve(raw.size());
  for (auto& l : raw) {
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
    if (!letters_.empty() && letters_.back().cancels(l))
      letters_.pop_back();
    else
      letters_.push_back(std::move(l));
  }
}

Word Word::generator(const GeneratorSymbol& g, std::int64_t power) {
  Word w;
  const int sign = power < 0 ? -1 : 1;
  for (std::int64_t i = 0; i < (power < 0 ? -power : power); ++i) w.letters_.push_back({g, sign});
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

Word Word::pow(std::int64_t e) const {
  const Word base = e < 0 ? inverse() : *this;
  Word out;
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) out *= base;
  return out;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  Word w;
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                    letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return w;
}

Word& Word::operator*=(const Word& rhs) {
  std::size_t i = 0;
  while (i < rhs.letters_.size() && !letters_.empty() && letters_.back().cancels(rhs.letters_[i])) {
    letters_.pop_back();
    ++i;
  }
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(i),
                  rhs.letters_.end());
  return *this;
}

Word& Word::operator*=(const Letter& rhs) {
  if (!letters_.empty() && letters_.back().cancels(rhs))
    letters_.pop_back();
  else
    letters_.push_back(rhs);
  return *this;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  // shortlex
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

Word reduce(std::span<const Letter> raw) { return Word(std::vector<Letter>(raw.begin(), raw.end())); }
Word multiply(const Word& a, const Word& b) { return a * b; }
Word invert(const Word& a) { return a.inverse(); }
Word conjugate(const Word& g, const Word& w) { return g * w * g.inverse(); }
Word commutator(const Word& a, const Word& b) { return a * b * a.inverse() * b.inverse(); }

// ---------------------------------------------------------------------------

bool is_cyclically_reduced(const Word& w) {
  return w.length() < 2 || !w.front().cancels(w.back());
}

Word least_rotation(const Word& w) {
  const std::size_t n = w.length();
  if (n == 0) return w;
  auto letters = w.letters();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = letters[(r + i) % n];
      const auto& b = letters[(best + i) % n];
      if (a == b) continue;
      if (a < b) best = r;
      break;
    }
  }
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(letters[(best + i) % n]);
  return Word(std::move(out));
}

CyclicWord::CyclicWord(Word w) : rep_(std::move(w)) {
  if (!is_cyclically_reduced(rep_)) throw std::invalid_argument("CyclicWord: word is not cyclically reduced");
}

Word CyclicWord::canonical() const { return least_rotation(rep_); }

bool operator==(const CyclicWord& a, const CyclicWord& b) {
  if (a.length() != b.length()) return false;
  return a.canonical() == b.canonical();
}

CyclicReduction cyclic_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.length();
  while (hi - lo >= 2 && w[lo].cancels(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return {CyclicWord(w.subword(lo, hi - lo)), w.subword(0, lo)};
}

std::int64_t exponent_sum(const Word& w, const GeneratorSymbol& g) {
  std::int64_t s = 0;
  for (const auto& l : w.letters())
    if (l.symbol == g) s += l.sign;
  return s;
}

bool involves(const Word& w, const std::set<GeneratorSymbol>& symbols) {
  return std::any_of(w.letters().begin(), w.letters().end(),
                     [&](const Letter& l) { return symbols.contains(l.symbol); });
}

bool involves(const CyclicWord& c, const std::set<GeneratorSymbol>& symbols) {
  return involves(c.representative(), symbols);
}

std::set<GeneratorSymbol> symbols_of(const Word& w) {
  std::set<GeneratorSymbol> out;
  for (const auto& l : w.letters()) out.insert(l.symbol);
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t ExtendedNat::value() const {
  if (!value_) throw std::logic_error("ExtendedNat: value of infinity");
  return *value_;
}

std::string ExtendedNat::to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

namespace {

// Smallest p with s[i] = s[i+p] for all valid i (KMP border).
std::size_t smallest_period(std::span<const Letter> s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = border[i - 1];
    while (k > 0 && !(s[i] == s[k])) k = border[k - 1];
    if (s[i] == s[k]) ++k;
    border[i] = k;
  }
  return n - border[n - 1];
}

}  // namespace

RootResult free_root(const Word& w) {
  if (w.empty()) return {Word(), ExtendedNat::infinity()};
  auto [cyc, conj] = cyclic_reduce(w);
  const Word& core = cyc.representative();
  const std::size_t n = core.length();
  std::size_t p = smallest_period(core.letters());
  if (n % p != 0) p = n;
  return {conjugate(conj, core.subword(0, p)), ExtendedNat::finite(n / p)};
}

std::optional<std::int64_t> conjugate_to_power_of(const Word& r, const Word& s) {
  if (s.empty()) throw std::invalid_argument("conjugate_to_power_of: s must be nontrivial");
  if (r.empty()) return 0;
  const CyclicWord rc = cyclic_reduce(r).cyclic;
  const Word score = cyclic_reduce(s).cyclic.representative();
  const auto bound = static_cast<std::int64_t>((r.length() + score.length() - 1) / score.length()) + 1;
  for (std::int64_t t = 1; t <= bound; ++t) {
    if (static_cast<std::int64_t>(score.length()) * t != static_cast<std::int64_t>(rc.length())) continue;
    if (rc == CyclicWord(score.pow(t))) return t;
    if (rc == CyclicWord(score.pow(-t))) return -t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::string to_string(const Word& w) {
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += to_string(l.symbol);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

Word word_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string term;
  std::vector<Letter> raw;
  while (in >> term) {
    std::size_t i = 0;
    if (!is_name_start(term[0])) throw std::invalid_argument("bad word term: " + term);
    while (i < term.size() && is_name_char(term[i])) ++i;
    GeneratorSymbol sym(term.substr(0, i));
    auto parse_int = [&](std::size_t& pos) {
      std::size_t start = pos;
      if (pos < term.size() && term[pos] == '-') ++pos;
      while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) ++pos;
      if (pos == start || (pos == start + 1 && term[start] == '-'))
        throw std::invalid_argument("bad integer in term: " + term);
      return std::stoll(term.substr(start, pos - start));
    };
    if (i < term.size() && term[i] == '@') {
      ++i;
      sym.level = parse_int(i);
    }
    int sign = 1;
    if (i < term.size()) {
      if (term.compare(i, std::string::npos, "^-1") != 0) throw std::invalid_argument("bad word term: " + term);
      sign = -1;
      i = term.size();
    }
    raw.push_back({std::move(sym), sign});
  }
  return Word(std::move(raw));
}

}  // namespace sporcalc
