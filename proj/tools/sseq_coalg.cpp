#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sseq/chart.hpp"
#include "sseq/coalgebra_tools.hpp"
#include "sseq/errors.hpp"
#include "sseq/json_io.hpp"
#include "sseq/serre.hpp"

using nlohmann::json;
using namespace sseq;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Raised for requests that cannot apply to the given input.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::string field = "Q";
  std::optional<int> truncate;
  int max_page = 64;
  std::uint64_t seed = 1;
  std::string chart = "text";
  std::string output;
};

std::string read_input(const std::string& arg, std::uint64_t seed) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  if (arg == "random") return "random(" + std::to_string(seed) + ")";
  return arg;
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + c.output);
  out << text;
}

Field parse_field(const std::string& name) {
  try {
    return Field::parse(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Loaded {
  Field field;
  std::string text;
  Model model;
};

Loaded load(const Common& c) {
  Field f = parse_field(c.field);
  std::string text = read_input(c.input, c.seed);
  Model m = load_model(text, f, c.truncate);
  // Filtered inputs may carry their own field.
  if (m.filtered) f = m.filtered->field();
  if (m.coalgebra) f = m.coalgebra->field();
  return {f, std::move(text), std::move(m)};
}

// Any set X is read as the fibration X -> point.
std::optional<Fibration> as_fibration(const Loaded& l, std::optional<int> trunc) {
  if (l.model.fibration) return l.model.fibration;
  if (l.model.set) return product_fibration(*l.model.set, point_set(), trunc);
  return std::nullopt;
}

struct SeqInput {
  std::optional<SerreFiltration> serre;
  std::unique_ptr<CoalgebraSpectralSequence> css;
  std::unique_ptr<SpectralSequence> plain;  // filtered complex without ∇

  const SpectralSequence& ss() const { return css ? css->sseq() : *plain; }
};

SeqInput sequence_of(const Loaded& l, std::optional<int> trunc) {
  SeqInput s;
  if (auto fib = as_fibration(l, trunc)) {
    s.serre = serre_filtration(*fib, l.field);
    s.css = std::make_unique<CoalgebraSpectralSequence>(s.serre->coalgebra);
  } else if (l.model.filtered_coalgebra) {
    s.css = std::make_unique<CoalgebraSpectralSequence>(*l.model.filtered_coalgebra);
  } else if (l.model.filtered) {
    s.plain = std::make_unique<SpectralSequence>(*l.model.filtered);
  } else {
    throw UsageError("a " + kind_name(l.model.kind) + " has no spectral sequence; give a fibration, a simplicial set "
                     "or a filtered complex");
  }
  if (!s.ss().filtered().first_quadrant()) throw UsageError("the filtration is not first-quadrant; refusing to chart it");
  return s;
}

void warn_truncation(const SimplicialSet& x) {
  if (!x.finite())
    std::cerr << "warning: " << x.name() << " is truncated at dimension " << x.truncation() << "; H_"
              << x.truncation() << " and its comultiplication may be wrong\n";
}

json coalgebra_object(const GradedCoalgebra& c) { return json::parse(coalgebra_json(c)); }

// ∇ of each basis element as {"a⊗b": coefficient}.
json comult_terms(const GradedCoalgebra& c, const std::vector<Vector>& comult) {
  json out = json::object();
  std::size_t d = c.dim();
  for (std::size_t i = 0; i < d; ++i) {
    json terms = json::object();
    for (const auto& [idx, s] : comult[i].entries()) terms[c.label(idx / d) + "⊗" + c.label(idx % d)] = s.to_string();
    out[c.label(i)] = terms;
  }
  return out;
}

int cmd_homology(const Common& c) {
  Loaded l = load(c);
  GradedCoalgebra h;
  std::size_t top = 0;
  if (l.model.coalgebra) {
    h = *l.model.coalgebra;
  } else if (l.model.set || l.model.fibration) {
    const SimplicialSet& x = l.model.set ? *l.model.set : *l.model.fibration->total;
    warn_truncation(x);
    h = x.connected() ? homology_coalgebra(x, l.field) : homology_coalgebra_unchecked(x, l.field);
    top = static_cast<std::size_t>(std::max(0, x.top_dimension()));
  } else if (l.model.filtered) {
    Homology hom = compute_homology(l.model.filtered->complex());
    emit(c, dump({{"field", l.field.name()}, {"dims", hom.dims()}}));
    return kPass;
  } else {
    throw UsageError("homology needs a simplicial set, a fibration, a filtered complex or a coalgebra");
  }
  json gens = json::array();
  auto dims = h.degree_dims();
  if (dims.size() < top + 1) dims.resize(top + 1, 0);
  for (std::size_t n = 0; n < dims.size(); ++n) {
    json g = json::array();
    for (auto i : h.indices_of_degree(static_cast<int>(n))) g.push_back(h.label(i));
    gens.push_back(g);
  }
  emit(c, dump({{"field", l.field.name()}, {"dims", dims}, {"generators", gens}, {"coalgebra", coalgebra_object(h)}}));
  return kPass;
}

void annotate(ChartDocument& doc, const SerreFiltration& sf, const CoalgebraSpectralSequence& css) {
  if (!sf.fibration.is_product()) return;
  E2Report e2 = e2_identify(sf, css);
  if (!e2.passes()) throw InternalConsistency("E2 identification failed: " + (e2.messages.empty() ? "" : e2.messages[0]));
  for (const auto& g : e2.target.basis())
    doc.annotations[std::to_string(g.filtration) + "," + std::to_string(g.degree - g.filtration)].push_back(g.label);
}

int cmd_sseq(const Common& c) {
  Loaded l = load(c);
  SeqInput s = sequence_of(l, c.truncate);
  if (s.serre) warn_truncation(*s.serre->fibration.total);
  Provenance prov{fnv1a_hex(l.text), l.field.name(), c.truncate};
  ChartDocument doc = s.css ? build_chart(*s.css, c.max_page, prov) : build_chart(*s.plain, c.max_page, prov);
  if (s.serre) annotate(doc, *s.serre, *s.css);
  if (s.css)
    for (const auto& pg : doc.pages)
      if (!s.css->check_co_leibniz(pg.r).passes())
        throw InternalConsistency("co-Leibniz fails on page " + std::to_string(pg.r));
  emit(c, c.chart == "json" ? chart_json(doc) : chart_text(doc));
  return kPass;
}

int last_page(const SpectralSequence& ss, int max_page) { return std::min(max_page, ss.stable_page()); }

json bideg(Bidegree b) { return json::array({b.p, b.q}); }

int cmd_verify(const Common& c, const std::string& suite) {
  Loaded l = load(c);
  json report = {{"suite", suite}, {"field", l.field.name()}, {"input_hash", fnv1a_hex(l.text)}};
  bool ok = true;

  if (suite == "coassoc") {
    GradedCoalgebra g;
    if (l.model.coalgebra) {
      g = *l.model.coalgebra;
    } else if (l.model.generators) {
      g = cofree(*l.model.generators, l.field).coalgebra;
    } else if (auto fib = as_fibration(l, c.truncate)) {
      g = homology_coalgebra_unchecked(*fib->total, l.field);
    } else {
      throw UsageError("coassoc needs a coalgebra, a generator list or a simplicial set");
    }
    CoalgebraReport r = check_coalgebra(g);
    ok = r.passes();
    report["coassociative"] = r.coassociative;
    report["counital"] = r.counital;
    report["cocommutative"] = r.cocommutative;
    report["degrees_ok"] = r.degrees_ok;
    report["violations"] = r.violations;
  } else if (suite == "coleibniz" || suite == "primitives") {
    SeqInput s = sequence_of(l, c.truncate);
    if (!s.css) throw UsageError(suite + " needs a comultiplication; give a fibration or a filtered coalgebra");
    json pages = json::array();
    for (int r = 0; r <= last_page(s.ss(), c.max_page); ++r) {
      if (suite == "coleibniz") {
        CoLeibnizReport rep = s.css->check_co_leibniz(r);
        json v = json::array();
        for (auto b : rep.violations) v.push_back(bideg(b));
        pages.push_back({{"r", r}, {"checked", rep.checked}, {"violations", v}, {"pass", rep.passes()}});
        ok = ok && rep.passes();
      } else {
        PrimitiveDifferentialReport rep = primitive_differential_check(*s.css, r);
        pages.push_back({{"r", r},
                         {"coaugmented", rep.coaugmented},
                         {"primitives", rep.primitives},
                         {"violations", rep.violations},
                         {"pass", rep.passes()}});
        ok = ok && rep.passes();
      }
    }
    report["pages"] = pages;
  } else if (suite == "tensor-iso") {
    SeqInput s = sequence_of(l, c.truncate);
    const FilteredComplex& fc = s.ss().filtered();
    TensorPageIdentification ident(s.ss());
    SpectralSequence tensor_ss(tensor_filtered(fc).filtered);
    json pages = json::array();
    for (int r = 0; r <= last_page(s.ss(), c.max_page); ++r) {
      TensorIsoReport rep = tensor_page_iso(ident, tensor_ss, r);
      json bad = json::array();
      for (const auto& e : rep.entries)
        if (!e.invertible || !e.intertwines) bad.push_back(bideg(e.at));
      pages.push_back({{"r", r}, {"bidegrees", rep.entries.size()}, {"failures", bad}, {"pass", rep.passes()}});
      ok = ok && rep.passes();
    }
    report["pages"] = pages;
  } else if (suite == "e2") {
    auto fib = as_fibration(l, c.truncate);
    if (!fib || !fib->is_product()) throw UsageError("e2 needs a product fibration or a simplicial set");
    SerreFiltration sf = serre_filtration(*fib, l.field);
    E2Report e2 = e2_identify(sf);
    ok = e2.passes();
    report["dims_match"] = e2.dims_match;
    report["iso"] = e2.iso;
    report["comult_match"] = e2.comult_match;
    report["messages"] = e2.messages;
    report["comultiplication"] = comult_terms(e2.target, e2.transported.empty() ? std::vector<Vector>{} : e2.transported);
  } else {
    throw UsageError("unknown suite " + suite);
  }
  report["pass"] = ok;
  emit(c, dump(report));
  return ok ? kPass : kFail;
}

int cmd_cofree(const Common& c) {
  Field f = parse_field(c.field);
  std::string text = read_input(c.input, c.seed);
  GeneratorSpec v;
  try {
    v = parse_generator_spec(text);
  } catch (const ParseError&) {
    v = parse_generator_spec("[" + text + "]");  // "1,3,5"
  }
  CoaugmentedCoalgebra co = cofree(v, f);
  GradedSubspace prim = primitives(co);
  json plist = json::array();
  for (const auto& x : prim.basis()) plist.push_back(co.coalgebra.format(x));
  emit(c, dump({{"field", f.name()},
                {"generators", v.degrees},
                {"dims", co.coalgebra.degree_dims()},
                {"total_dim", co.coalgebra.dim()},
                {"primitives", plist},
                {"coalgebra", coalgebra_object(co.coalgebra)}}));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral sequences of coalgebras over finite fields and Q"};
  app.require_subcommand(1);
  Common c;
  std::string suite;

  auto common = [&](CLI::App* sub, bool pages) {
    sub->add_option("input", c.input, "file path or shorthand such as product(sphere(1),sphere(3))")->required();
    sub->add_option("--field", c.field, "F2, F3, F5, ... or Q")->capture_default_str();
    sub->add_option("-o,--output", c.output, "write to a file instead of stdout");
    sub->add_option("--seed", c.seed, "seed for the 'random' input")->capture_default_str();
    if (pages) sub->add_option("--max-page", c.max_page, "last page to compute")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--truncate", c.truncate, "simplicial truncation")->check(CLI::NonNegativeNumber);
  };

  auto* homology = app.add_subcommand("homology", "homology with its coalgebra structure");
  common(homology, false);
  auto* sseq_cmd = app.add_subcommand("sseq", "chart of a fibration or filtered complex");
  common(sseq_cmd, true);
  sseq_cmd->add_option("--chart", c.chart, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  common(verify, true);
  verify->add_option("--suite", suite, "suite to run")
      ->required()
      ->check(CLI::IsMember({"coleibniz", "coassoc", "tensor-iso", "e2", "primitives"}));
  auto* cofree_cmd = app.add_subcommand("cofree", "cofree coalgebra on odd generators");
  cofree_cmd->add_option("degrees", c.input, "degree list such as [1,3,5]")->required();
  cofree_cmd->add_option("--field", c.field, "F3, F5, ... or Q")->capture_default_str();
  cofree_cmd->add_option("-o,--output", c.output, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (homology->parsed()) return cmd_homology(c);
    if (sseq_cmd->parsed()) return cmd_sseq(c);
    if (verify->parsed()) return cmd_verify(c, suite);
    if (cofree_cmd->parsed()) return cmd_cofree(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalConsistency& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
