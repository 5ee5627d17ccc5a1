#include "sporcalc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sporcalc/bass_serre.hpp"
#include "sporcalc/fox.hpp"
#include "sporcalc/hempel.hpp"
#include "sporcalc/invariants.hpp"
#include "sporcalc/presentation.hpp"
#include "sporcalc/residual.hpp"

namespace sporcalc::cli {

namespace {

using json = nlohmann::json;

struct InputFlags {
  std::string file;
  std::string presentation;
  int orientable = 0;
  int non_orientable = 0;
  std::string relator;
};

struct Common {
  bool json_out = false;
  bool trace = false;
  std::optional<std::size_t> cap;
};

void add_input(CLI::App* sub, InputFlags& in) {
  sub->add_option("file", in.file, "presentation file");
  sub->add_option("--presentation", in.presentation, "inline presentation <gens | relators>");
  sub->add_option("--orientable", in.orientable, "orientable surface of genus g");
  sub->add_option("--non-orientable", in.non_orientable, "non-orientable surface with k cross-caps");
  sub->add_option("--relator", in.relator, "extra relator, with surface flags");
}

void add_common(CLI::App* sub, Common& c, std::optional<std::size_t>& cap_raw) {
  sub->add_flag("--json", c.json_out, "emit one JSON document");
  sub->add_flag("--trace", c.trace, "append the normalization trace");
  sub->add_option("--cap", cap_raw, "search cap");
  sub->add_option_function<std::string>(
      "--emit",
      [&c](const std::string& fmt) {
        if (fmt != "json") throw CLI::ValidationError("--emit", "only json is supported");
        c.json_out = true;
      },
      "output format (json)");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UnsupportedInput("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Presentation presentation_of(const InputFlags& in) {
  const int sources = !in.file.empty() + !in.presentation.empty();
  if (sources != 1 || in.orientable || in.non_orientable)
    throw CLI::ValidationError("input", "give exactly one input source");
  return parse_presentation(in.file.empty() ? in.presentation : read_file(in.file));
}

SporInput spor_input_of(const InputFlags& in) {
  const int sources = !in.file.empty() + !in.presentation.empty() + (in.orientable > 0) + (in.non_orientable > 0);
  if (sources != 1) throw CLI::ValidationError("input", "give exactly one input source");
  if (in.orientable > 0 || in.non_orientable > 0) {
    const auto o = in.orientable > 0 ? Orientability::Orientable : Orientability::NonOrientable;
    const int count = in.orientable > 0 ? in.orientable : in.non_orientable;
    const int k = o == Orientability::Orientable ? 2 * count : count;
    if (k <= 2) throw UnsupportedInput("unsupported: k <= 2");
    // letter names first, indexed names as fallback
    std::optional<ParseError> first_error;
    for (auto style : {NameStyle::Letters, NameStyle::Indexed}) {
      if (style == NameStyle::Letters && k > 23) continue;
      try {
        const auto gens = surface_generators(k, style);
        return surface_input(o, count, parse_word(in.relator, gens), gens);
      } catch (const ParseError& e) {
        if (!first_error) first_error = e;
      }
    }
    throw *first_error;
  }
  if (!in.relator.empty()) throw CLI::ValidationError("--relator", "only valid with surface flags");
  const Presentation p = parse_presentation(in.file.empty() ? in.presentation : read_file(in.file));
  if (p.generators.size() <= 2) throw UnsupportedInput("unsupported: k <= 2");
  try {
    return spor_input_from(p);
  } catch (const std::invalid_argument& e) {
    throw UnsupportedInput(e.what());
  }
}

json ext_nat(const ExtendedNat& n) {
  if (n.is_infinite()) return "inf";
  return n.value();
}

json interval_json(const std::optional<IntervalState>& iv) {
  if (!iv) return nullptr;
  return json{{"mu", iv->mu}, {"nu", iv->nu}};
}

json trace_json(const std::vector<TraceStep>& trace) {
  json arr = json::array();
  for (const auto& s : trace)
    arr.push_back({{"phase", s.phase}, {"basis", s.basis}, {"word", to_string(s.word)}, {"interval", interval_json(s.interval)}});
  return arr;
}

json certificate_json(const Normalization& n) {
  json v = json::array();
  for (const auto& t : n.certificate.v) v.push_back({{"conjugator", to_string(t.conjugator)}, {"sign", t.sign}});
  return {{"v", v},
          {"w", to_string(n.certificate.w)},
          {"alpha_x", to_string(n.certificate.alpha_x)},
          {"alpha_y", to_string(n.certificate.alpha_y)},
          {"relator", to_string(n.relator_in_free)}};
}

json result_json(const NormalizationResult& r) {
  if (r.is_power()) return {{"kind", "power"}, {"m", r.power().m}};
  return {{"kind", "hempel"}, {"relator", to_string(r.hempel().r)}, {"nu", r.hempel().nu}};
}

json form_json(const CommutatorForm& cf) {
  return {{"d", cf.d}, {"u", to_string(cf.u)}, {"r", to_string(cf.r)}, {"relator", to_string(cf.relator())}};
}

json ring_elt_json(const GroupRingElt& e) {
  json arr = json::array();
  for (const auto& [w, c] : e.terms()) arr.push_back(json::array({to_string(w), c.str()}));
  return arr;
}

json classify_json(const Report& rep, bool trace) {
  const auto& c = rep.classification;
  json j{{"case", c.case_name()},
         {"m", ext_nat(c.m())},
         {"m_F", ext_nat(c.m_F())},
         {"m_prime", ext_nat(c.m_prime())},
         {"m_double_prime", ext_nat(c.m_double_prime())},
         {"chi", rep.chi.to_string()},
         {"l2", json::array({rep.l2.b0.to_string(), rep.l2.b1.to_string(), rep.l2.b2.to_string()})},
         {"assumes_nontrivial_r", rep.assumes_nontrivial_r}};
  if (const auto* h = std::get_if<HempelCase>(&c.kind)) j["nu"] = h->nu;
  json ann = json::array();
  for (const auto& a : rep.annotations) ann.push_back({{"claim", a.claim}, {"ref", a.ref}});
  j["annotations"] = ann;
  if (trace) {
    j["certificate"] = certificate_json(rep.normalization);
    j["trace"] = trace_json(rep.normalization.trace);
  }
  return j;
}

void emit(std::ostream& out, const json& j, bool as_json) {
  if (as_json) {
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

NormalizeOptions normalize_options(const Common& c) { return NormalizeOptions{c.cap}; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact calculator for surface-plus-one-relation groups", "sporcalc"};
  app.require_subcommand(1);
  InputFlags in;
  Common common;
  std::optional<std::size_t> cap_raw;

  auto make = [&](const char* name, const char* desc, bool with_input) {
    CLI::App* sub = app.add_subcommand(name, desc);
    if (with_input) add_input(sub, in);
    add_common(sub, common, cap_raw);
    return sub;
  };
  auto* classify_cmd = make("classify", "classify the group and report invariants", true);
  auto* normalize_cmd = make("normalize", "normalize the extra relator with a certificate", true);
  auto* euler_cmd = make("euler", "Euler characteristic", true);
  auto* l2_cmd = make("l2", "L2-Betti numbers", true);
  auto* complex_cmd = make("complex", "Fox-calculus chain complex of a Hempel presentation", true);
  auto* hnn_cmd = make("hnn", "HNN splitting data of a Hempel presentation", true);
  auto* stagger_cmd = make("stagger", "search for a staggered generator order", true);

  std::string word_text, gens_text;
  auto* fox_cmd = make("fox", "Fox derivatives of a word", false);
  fox_cmd->add_option("--word", word_text, "word")->required();
  fox_cmd->add_option("--generators", gens_text, "comma-separated generators (default: those of the word)");

  auto* root_cmd = make("root", "root and log of a free-group word", false);
  root_cmd->add_option("--word", word_text, "word")->required();

  std::size_t rank_a = 0, rank_b = 0;
  auto* fproot_cmd = make("fproot", "root of an element of A*B via its axis", false);
  fproot_cmd->add_option("--a", rank_a, "rank of A (generators a1..)")->required();
  fproot_cmd->add_option("--b", rank_b, "rank of B (generators b1..)")->required();
  fproot_cmd->add_option("--word", word_text, "tagged word, e.g. \"A:a1 | B:b1^-1\"")->required();

  int d = 0;
  std::string u_text, element_text;
  std::uint64_t prime = 2;
  std::uint32_t n = 1;
  std::optional<std::size_t> degree;
  bool want_order = false;
  auto* potency_cmd = make("potency", "finite p-group witness for an element of <x,y,z | [x,y]u>", false);
  potency_cmd->add_option("--d", d, "number of z generators")->required();
  potency_cmd->add_option("--u", u_text, "u as a word in z1..zd")->required();
  potency_cmd->add_option("--element", element_text, "element as a word in x, y, z1..zd")->required();
  potency_cmd->add_option("--prime", prime, "prime p");
  potency_cmd->add_option("--n", n, "exponent n, q = p^n");
  potency_cmd->add_option("--degree", degree, "truncation degree (default n)");
  potency_cmd->add_flag("--order", want_order, "compute the multiplicative order of the image");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sporcalc: " << e.what() << "\n";
    return kParseError;
  }

  if (cap_raw) {
    common.cap = cap_raw;
  } else if (const char* env = std::getenv("SPORCALC_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      err << "sporcalc: SPORCALC_CAP is not an integer\n";
      return kParseError;
    }
    common.cap = static_cast<std::size_t>(v);
  }

  try {
    json j;
    if (classify_cmd->parsed() || euler_cmd->parsed() || l2_cmd->parsed()) {
      const Report rep = build_report(spor_input_of(in), normalize_options(common));
      if (classify_cmd->parsed()) {
        j = classify_json(rep, common.trace);
      } else if (euler_cmd->parsed()) {
        j = {{"chi", rep.chi.to_string()}, {"case", rep.classification.case_name()}};
      } else {
        j = {{"l2", json::array({rep.l2.b0.to_string(), rep.l2.b1.to_string(), rep.l2.b2.to_string()})},
             {"chi", rep.chi.to_string()}};
      }
    } else if (normalize_cmd->parsed()) {
      const SporInput input = spor_input_of(in);
      const CommutatorForm cf = to_commutator_form(input);
      const Normalization norm = normalize(cf, normalize_options(common));
      j = {{"form", form_json(cf)},
           {"result", result_json(norm.result)},
           {"certificate", certificate_json(norm)},
           {"verified", verify_certificate(cf, norm)}};
      if (common.trace) j["trace"] = trace_json(norm.trace);
    } else if (complex_cmd->parsed() || hnn_cmd->parsed()) {
      const SporInput input = spor_input_of(in);
      const CommutatorForm cf = to_commutator_form(input);
      const Normalization norm = normalize(cf, normalize_options(common));
      if (norm.result.is_power()) throw UnsupportedInput("extra relator normalizes to a power of x; no Hempel relator");
      const auto& h = norm.result.hempel();
      if (hnn_cmd->parsed()) {
        const HNNData data = hnn_data(h.r, cf);
        json lower = json::array(), upper = json::array(), stable = json::array();
        for (const auto& w : data.lower_edge_basis) lower.push_back(to_string(w));
        for (const auto& w : data.upper_edge_basis) upper.push_back(to_string(w));
        for (const auto& [a, b] : data.stable_letter_map) stable.push_back(json::array({to_string(a), to_string(b)}));
        j = {{"nu", data.nu},
             {"vertex", print(data.vertex)},
             {"lower_edge_basis", lower},
             {"upper_edge_basis", upper},
             {"stable_letter_map", stable}};
      } else {
        const TorsionData td = torsion_data(h.r, cf.u);
        const BoundaryMatrices bm = chain_complex(cf, h, td);
        json d2 = json::array(), d1 = json::array(), gens = json::array();
        for (const auto& g : bm.generators) gens.push_back(to_string(g));
        for (const auto& row : bm.d2) {
          json jr = json::array();
          for (const auto& e : row) jr.push_back(ring_elt_json(e));
          d2.push_back(jr);
        }
        for (const auto& e : bm.d1) d1.push_back(ring_elt_json(e));
        Presentation pres{bm.generators, bm.relators};
        json checks = json::array();
        checks.push_back({{"quotient", "abelianization"},
                          {"d1_d2_zero", composite_is_zero(evaluate(bm, QuotientMap::abelianization(pres)))}});
        for (const auto& q : registered_quotients(pres))
          checks.push_back({{"quotient", "permutation degree " + std::to_string(std::get<QuotientMap::Finite>(q.kind()).degree)},
                            {"d1_d2_zero", composite_is_zero(evaluate(bm, q))}});
        j = {{"generators", gens},
             {"relators", json::array({to_string(bm.relators[0]), to_string(bm.relators[1])})},
             {"d2", d2},
             {"d1", d1},
             {"averaged_over", bm.row2_averaged},
             {"m", bm.m},
             {"root", to_string(bm.root)},
             {"checks", checks}};
      }
    } else if (stagger_cmd->parsed()) {
      const Presentation p = presentation_of(in);
      const StaggerProblem prob(p.generators, p.relators);
      const OrderWitness w = staggerable_search(prob, common.cap.value_or(kDefaultOrderCap));
      j = {{"staggerable", w.staggerable}, {"nodes", w.nodes}};
      if (w.order) {
        json order = json::array();
        for (const auto& g : *w.order) order.push_back(to_string(g));
        j["order"] = order;
      } else {
        j["order"] = nullptr;
      }
    } else if (fox_cmd->parsed()) {
      const Word w = word_from_string(word_text);
      std::vector<GeneratorSymbol> gens;
      if (gens_text.empty()) {
        const auto syms = symbols_of(w);
        gens.assign(syms.begin(), syms.end());
      } else {
        std::stringstream ss(gens_text);
        std::string g;
        while (std::getline(ss, g, ',')) {
          g.erase(std::remove_if(g.begin(), g.end(), ::isspace), g.end());
          gens.push_back(word_from_string(g).front().symbol);
        }
      }
      const FoxJet jet = fox_derivative(w, gens);
      json comps = json::object();
      for (std::size_t i = 0; i < gens.size(); ++i) comps[to_string(gens[i])] = ring_elt_json(jet.components[i]);
      j = {{"word", to_string(w)}, {"derivatives", comps}, {"identity_holds", fundamental_identity_check(w, gens)}};
    } else if (root_cmd->parsed()) {
      const RootResult r = free_root(word_from_string(word_text));
      j = {{"root", to_string(r.root)}, {"log", ext_nat(r.exponent)}};
    } else if (fproot_cmd->parsed()) {
      const FPElement g = fp_from_string(word_text);
      for (const auto& e : g.entries)
        for (const auto& l : e.word.letters()) {
          const std::string prefix = e.tag == Factor::A ? "a" : "b";
          const std::size_t rank = e.tag == Factor::A ? rank_a : rank_b;
          bool ok = false;
          for (std::size_t i = 1; i <= rank; ++i) ok = ok || l.symbol == GeneratorSymbol(prefix + std::to_string(i));
          if (!ok) throw ParseError("generator " + to_string(l.symbol) + " is not in factor " + (prefix == "a" ? "A" : "B"), 1, 1);
        }
      if (const auto v = fixes_vertex(g))
        throw UnsupportedInput("element fixes a vertex of the Bass-Serre tree (conjugate into factor " +
                               std::string(v->tag == Factor::A ? "A" : "B") + ")");
      const AxisDescriptor ax = fp_root(g);
      j = {{"cyclic_normal_form", to_string(ax.cyclic_normal_form)},
           {"root", to_string(ax.root)},
           {"period", ax.period_m},
           {"log", ax.log}};
    } else if (potency_cmd->parsed()) {
      const Word u = word_from_string(u_text);
      const Word s = word_from_string(element_text);
      const WitnessReport rep =
          potency_s_witness(s, d, u, prime, n, degree, want_order, common.cap.value_or(200000));
      j = {{"element", to_string(rep.element)},
           {"prime", rep.prime},
           {"n", n},
           {"degree", rep.degree},
           {"image_nontrivial", rep.image_nontrivial},
           {"witness_monomial", rep.witness_monomial ? json(*rep.witness_monomial) : json(nullptr)},
           {"witness_coefficient", rep.witness_coefficient ? json(rep.witness_coefficient->str()) : json(nullptr)}};
      if (rep.order) j["order"] = rep.order->str();
    }
    emit(out, j, common.json_out);
    return kOk;
  } catch (const ParseError& e) {
    err << "sporcalc: " << e.what() << "\n";
    return kParseError;
  } catch (const CLI::ValidationError& e) {
    err << "sporcalc: " << e.what() << "\n";
    return kParseError;
  } catch (const UnsupportedInput& e) {
    err << "sporcalc: " << e.what() << "\n";
    return kUnsupported;
  } catch (const CapExceeded& e) {
    err << "sporcalc: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    // malformed words and tagged words surface as invalid_argument
    err << "sporcalc: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "sporcalc: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace sporcalc::cli
