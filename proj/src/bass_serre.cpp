#include "sporcalc/bass_serre.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sporcalc/hempel.hpp"

namespace sporcalc {

FPElement fp_normal_form(const std::vector<FPEntry>& raw) {
  FPElement out;
  auto& st = out.entries;
  for (const auto& e : raw) {
    if (e.word.empty()) continue;
    if (!st.empty() && st.back().tag == e.tag) {
      st.back().word *= e.word;
      if (st.back().word.empty()) st.pop_back();
    } else {
      st.push_back(e);
    }
  }
  return out;
}

FPElement FPElement::inverse() const {
  FPElement out;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) out.entries.push_back({it->tag, it->word.inverse()});
  return out;
}

FPElement operator*(const FPElement& a, const FPElement& b) {
  std::vector<FPEntry> raw = a.entries;
  raw.insert(raw.end(), b.entries.begin(), b.entries.end());
  return fp_normal_form(raw);
}

Word flatten(const FPElement& g) {
  Word w;
  for (const auto& e : g.entries) w *= e.word;
  return w;
}

std::string to_string(const FPElement& g) {
  std::string s;
  for (const auto& e : g.entries) {
    if (!s.empty()) s += " | ";
    s += e.tag == Factor::A ? "A:" : "B:";
    s += to_string(e.word);
  }
  return s;
}

FPElement fp_from_string(const std::string& text) {
  std::vector<FPEntry> raw;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '|')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("tagged word needs A: or B: prefix: " + part);
    std::string tag = part.substr(0, colon);
    tag.erase(std::remove_if(tag.begin(), tag.end(), ::isspace), tag.end());
    if (tag != "A" && tag != "B") throw std::invalid_argument("unknown factor tag: " + tag);
    raw.push_back({tag == "A" ? Factor::A : Factor::B, word_from_string(part.substr(colon + 1))});
  }
  return fp_normal_form(raw);
}

CyclicFP fp_cyclic_normal_form(const FPElement& g) {
  CyclicFP c{g, {}};
  // g = e1 M en with e1, en in the same factor: g = e1 (M en e1) e1^-1
  while (c.form.length() >= 2 && c.form.entries.front().tag == c.form.entries.back().tag) {
    const FPEntry first = c.form.entries.front();
    std::vector<FPEntry> raw(c.form.entries.begin() + 1, c.form.entries.end());
    raw.push_back(first);
    c.form = fp_normal_form(raw);
    c.conjugator = c.conjugator * FPElement{{first}};
  }
  if (c.form.length() >= 2 && c.form.entries.front().tag == Factor::B) {
    // rotate the leading B to the end
    const FPEntry first = c.form.entries.front();
    c.form.entries.erase(c.form.entries.begin());
    c.form.entries.push_back(first);
    c.conjugator = c.conjugator * FPElement{{first}};
  }
  return c;
}

std::optional<VertexDescriptor> fixes_vertex(const FPElement& g) {
  const CyclicFP c = fp_cyclic_normal_form(g);
  if (c.form.length() >= 2) return std::nullopt;
  return VertexDescriptor{c.conjugator, c.form.empty() ? Factor::A : c.form.entries.front().tag};
}

AxisDescriptor fp_root(const FPElement& g) {
  const CyclicFP c = fp_cyclic_normal_form(g);
  if (c.form.length() < 2) throw std::invalid_argument("fp_root: element fixes a vertex");
  const auto& e = c.form.entries;
  const std::size_t n = e.size() / 2;
  std::size_t m = n;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + 2 * p < e.size() && periodic; ++i) periodic = e[i] == e[i + 2 * p];
    if (periodic) {
      m = p;
      break;
    }
  }
  AxisDescriptor ax;
  ax.cyclic_normal_form = c.form;
  ax.period_m = m;
  ax.root.entries.assign(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(2 * m));
  ax.log = n / m;
  return ax;
}

std::set<GeneratorSymbol> support(const Word& r) {
  const auto cr = cyclic_reduce(r);
  if (cr.cyclic.empty()) throw std::invalid_argument("support: trivial word");
  return symbols_of(cr.cyclic.representative());
}

StaggerProblem::StaggerProblem(std::vector<GeneratorSymbol> gens, std::vector<Word> rels)
    : generators(std::move(gens)), relators(std::move(rels)) {
  const std::set<GeneratorSymbol> known(generators.begin(), generators.end());
  std::vector<CyclicWord> cyclic;
  for (const auto& r : relators) {
    supports.push_back(support(r));
    for (const auto& s : supports.back())
      if (!known.count(s)) throw std::invalid_argument("relator uses unknown generator " + to_string(s));
    cyclic.push_back(cyclic_reduce(r).cyclic);
  }
  for (std::size_t i = 0; i < relators.size(); ++i) {
    class_of.push_back(i);
    for (std::size_t j = 0; j < i; ++j)
      if (cyclic[i] == cyclic[j] || cyclic[i] == cyclic[j].inverse()) {
        class_of[i] = class_of[j];
        break;
      }
  }
}

namespace {

std::map<GeneratorSymbol, std::size_t> positions(const StaggerProblem& p, const std::vector<GeneratorSymbol>& order) {
  std::map<GeneratorSymbol, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  if (pos.size() != p.generators.size() || order.size() != p.generators.size())
    throw std::invalid_argument("order must list every generator once");
  for (const auto& g : p.generators)
    if (!pos.count(g)) throw std::invalid_argument("order misses generator " + to_string(g));
  return pos;
}

std::pair<std::size_t, std::size_t> min_max(const std::set<GeneratorSymbol>& s,
                                            const std::map<GeneratorSymbol, std::size_t>& pos) {
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& g : s) {
    lo = std::min(lo, pos.at(g));
    hi = std::max(hi, pos.at(g));
  }
  return {lo, hi};
}

PairConditions conditions(const StaggerProblem& p, const std::map<GeneratorSymbol, std::size_t>& pos, std::size_t i,
                          std::size_t j) {
  const auto [lo1, hi1] = min_max(p.supports[i], pos);
  const auto [lo2, hi2] = min_max(p.supports[j], pos);
  return {p.class_of[i] == p.class_of[j], lo1 < lo2 && hi1 < hi2, lo2 < lo1 && hi2 < hi1};
}

}  // namespace

PairConditions pair_conditions(const StaggerProblem& p, const std::vector<GeneratorSymbol>& order, std::size_t i,
                               std::size_t j) {
  return conditions(p, positions(p, order), i, j);
}

bool staggered_check(const StaggerProblem& p, const std::vector<GeneratorSymbol>& order) {
  const auto pos = positions(p, order);
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (std::size_t j = i + 1; j < p.relators.size(); ++j)
      if (conditions(p, pos, i, j).count() != 1) return false;
  return true;
}

namespace {

struct Search {
  const StaggerProblem& p;
  std::size_t cap;
  std::size_t nodes = 0;
  std::vector<std::size_t> order;  // indices into p.generators
  std::vector<std::size_t> pos;    // generator index -> position, or SIZE_MAX
  std::vector<std::vector<std::size_t>> support_idx;

  // A pair is settled once both supports are placed; it also fails early
  // when both minima are placed and coincide.
  bool prefix_ok() const {
    for (std::size_t i = 0; i < p.relators.size(); ++i)
      for (std::size_t j = i + 1; j < p.relators.size(); ++j) {
        if (p.class_of[i] == p.class_of[j]) continue;
        auto scan = [&](std::size_t r) {
          std::size_t lo = SIZE_MAX, hi = 0;
          bool complete = true;
          for (auto g : support_idx[r]) {
            if (pos[g] == SIZE_MAX) {
              complete = false;
              continue;
            }
            lo = std::min(lo, pos[g]);
            hi = std::max(hi, pos[g]);
          }
          return std::tuple{lo, hi, complete};
        };
        const auto [lo1, hi1, c1] = scan(i);
        const auto [lo2, hi2, c2] = scan(j);
        if (lo1 != SIZE_MAX && lo1 == lo2) return false;
        if (c1 && c2 && !((lo1 < lo2 && hi1 < hi2) || (lo2 < lo1 && hi2 < hi1))) return false;
      }
    return true;
  }

  bool run() {
    if (++nodes > cap) throw CapExceeded("staggerable_search: node cap exceeded");
    if (!prefix_ok()) return false;
    if (order.size() == p.generators.size()) return true;
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      if (pos[g] != SIZE_MAX) continue;
      pos[g] = order.size();
      order.push_back(g);
      if (run()) return true;
      order.pop_back();
      pos[g] = SIZE_MAX;
    }
    return false;
  }
};

}  // namespace

OrderWitness staggerable_search(const StaggerProblem& p, std::size_t cap) {
  Search s{p, cap, 0, {}, std::vector<std::size_t>(p.generators.size(), SIZE_MAX), {}};
  std::map<GeneratorSymbol, std::size_t> index;
  for (std::size_t i = 0; i < p.generators.size(); ++i) index[p.generators[i]] = i;
  for (const auto& sup : p.supports) {
    s.support_idx.emplace_back();
    for (const auto& g : sup) s.support_idx.back().push_back(index.at(g));
  }
  OrderWitness w;
  w.staggerable = s.run();
  w.nodes = s.nodes;
  if (w.staggerable) {
    std::vector<GeneratorSymbol> order;
    for (auto g : s.order) order.push_back(p.generators[g]);
    w.order = std::move(order);
  }
  return w;
}

}  // namespace sporcalc
