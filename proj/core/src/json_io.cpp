#include "sseq/json_io.hpp"

#include <cctype>
#include <cstdio>
#include <json.hpp>

#include "sseq/errors.hpp"
#include "json_detail.hpp"
#include "sseq/corpus.hpp"

namespace sseq {

using nlohmann::json;

namespace detail {

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    auto cut = msg.find("syntax error");
    throw ParseError("malformed JSON: " + (cut == std::string::npos ? msg : msg.substr(cut)), line, col);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  std::string p = !path.empty() && path[0] == '.' ? path.substr(1) : path;
  throw ParseError((p.empty() ? std::string("document") : p) + ": " + what);
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing \"" + key + "\"");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Scalar as_scalar(Field f, const json& j, const std::string& path) {
  try {
    if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    if (j.is_number_integer()) return Scalar(f, j.get<long long>());
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path, "expected a field element");
}

Field field_of(const json& j, std::optional<Field> given, const std::string& path) {
  if (j.is_object() && j.contains("field")) {
    try {
      Field f = Field::parse(as_string(j["field"], path + ".field"));
      if (given && *given != f) fail(path + ".field", "document is over " + f.name() + ", requested " + given->name());
      return f;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(path + ".field", e.what());
    }
  }
  if (!given) fail(path, "missing \"field\"");
  return *given;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const auto& [i, s] : v.entries()) out.push_back({i, s.to_string()});
  return out;
}

Vector vector_from_json(Field f, std::size_t dim, const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a sparse vector [[index, value], ...]");
  std::vector<Vector::Entry> e;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string p = path + "[" + std::to_string(k) + "]";
    const json& x = j[k];
    if (!x.is_array() || x.size() != 2) fail(p, "expected [index, value]");
    int i = as_int(x[0], p);
    if (i < 0 || static_cast<std::size_t>(i) >= dim) fail(p, "index out of range");
    e.emplace_back(static_cast<std::size_t>(i), as_scalar(f, x[1], p));
  }
  return Vector::from_entries(f, dim, std::move(e));
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, s] : m.column(c).entries()) entries.push_back({r, c, s.to_string()});
  return {{"field", m.field().name()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j, std::optional<Field> field, const std::string& path) {
  Field f = field_of(j, field, path);
  int rows = as_int(member(j, "rows", path), path + ".rows");
  int cols = as_int(member(j, "cols", path), path + ".cols");
  if (rows < 0 || cols < 0) fail(path, "negative shape");
  const json& es = member(j, "entries", path);
  if (!es.is_array()) fail(path + ".entries", "expected an array");
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> trip;
  for (std::size_t k = 0; k < es.size(); ++k) {
    std::string p = path + ".entries[" + std::to_string(k) + "]";
    const json& e = es[k];
    if (!e.is_array() || e.size() != 3) fail(p, "expected [row, col, value]");
    int r = as_int(e[0], p), c = as_int(e[1], p);
    if (r < 0 || r >= rows || c < 0 || c >= cols) fail(p, "entry outside the matrix");
    trip.emplace_back(r, c, as_scalar(f, e[2], p));
  }
  return Matrix::from_triplets(f, rows, cols, trip);
}

}  // namespace detail

using namespace detail;

std::string matrix_json(const Matrix& m) { return dump(matrix_to_json(m)); }
Matrix parse_matrix(std::string_view text) { return matrix_from_json(parse_text(text), std::nullopt, ""); }

// ---------------------------------------------------------------- simplicial sets

namespace {

struct LabelResolver {
  const SimplicialSet& x;
  std::map<std::string, Simplex> aliases;

  Simplex resolve(const std::string& label, int dim, const std::string& path) const {
    if (auto it = aliases.find(label); it != aliases.end()) {
      if (dim >= 0 && it->second.dim() != dim) fail(path, "alias '" + label + "' has the wrong dimension");
      return it->second;
    }
    std::string name = label;
    std::optional<DeltaMorphism> s;
    if (!label.empty() && label.back() == ']') {
      auto open = label.rfind('[');
      if (open != std::string::npos && open > 0) {
        try {
          s = DeltaMorphism::parse(label.substr(open));
          name = label.substr(0, open);
        } catch (const ParseError&) {
          s.reset();
        }
      }
    }
    if (s) {
      if (!s->surjective()) fail(path, "degeneracy in '" + label + "' is not a surjection");
      int nd = s->target();
      auto idx = x.find(nd, name);
      if (!idx) {
        s.reset();
        name = label;
      } else {
        if (dim >= 0 && s->source() != dim) fail(path, "'" + label + "' has the wrong dimension");
        return Simplex{nd, *idx, *s};
      }
    }
    if (dim >= 0) {
      auto idx = x.find(dim, name);
      if (!idx) fail(path, "unknown " + std::to_string(dim) + "-simplex '" + label + "'");
      return Simplex::nondegenerate(dim, *idx);
    }
    for (int n = 0; n <= x.truncation(); ++n)
      if (auto idx = x.find(n, name)) return Simplex::nondegenerate(n, *idx);
    fail(path, "unknown simplex '" + label + "'");
  }
};

json set_to_json(const SimplicialSet& x) {
  json simplices = json::object(), faces = json::object();
  for (int n = 0; n <= x.truncation(); ++n) {
    if (x.count(n) == 0) continue;
    json names = json::array();
    json fs = json::object();
    for (std::size_t k = 0; k < x.count(n); ++k) {
      names.push_back(x.simplex_name(n, k));
      if (n == 0) continue;
      json list = json::array();
      for (const auto& f : x.faces(n, k)) list.push_back(x.label(f));
      fs[x.simplex_name(n, k)] = list;
    }
    simplices[std::to_string(n)] = names;
    if (n > 0) faces[std::to_string(n)] = fs;
  }
  return {{"name", x.name()},
          {"truncation", x.truncation()},
          {"finite", x.finite()},
          {"simplices", simplices},
          {"faces", faces},
          {"degeneracies", json::object()}};
}

SimplicialSet set_from_json(const json& j, std::optional<int> truncation, const std::string& path);

SimplicialSet set_from_any(const json& j, std::optional<int> truncation, const std::string& path) {
  if (j.is_string()) {
    try {
      return builtin_set(j.get<std::string>(), truncation);
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }
  return set_from_json(j, truncation, path);
}

SimplicialSet set_from_json(const json& j, std::optional<int> truncation, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a simplicial set object or a built-in name");
  int trunc = as_int(member(j, "truncation", path), path + ".truncation");
  if (trunc < 0) fail(path + ".truncation", "must be non-negative");
  bool finite = j.contains("finite") ? j["finite"].get<bool>() : false;
  std::string name = j.contains("name") ? as_string(j["name"], path + ".name") : "X";
  const json& simplices = member(j, "simplices", path);
  if (!simplices.is_object()) fail(path + ".simplices", "expected {degree: [names]}");
  json faces = j.contains("faces") ? j["faces"] : json::object();
  json degens = j.contains("degeneracies") ? j["degeneracies"] : json::object();
  for (const auto& [k, v] : simplices.items()) {
    std::size_t pos = 0;
    int n = -1;
    try {
      n = std::stoi(k, &pos);
    } catch (const std::exception&) {
    }
    if (pos != k.size() || n < 0) fail(path + ".simplices", "degree key '" + k + "' is not a non-negative integer");
    if (n > trunc) fail(path + ".simplices." + k, "degree above the truncation");
    if (!v.is_array()) fail(path + ".simplices." + k, "expected a list of names");
  }
  SimplicialSet x(name, trunc, finite);
  LabelResolver res{x, {}};
  try {
    for (int n = 0; n <= trunc; ++n) {
      std::string key = std::to_string(n);
      if (!simplices.contains(key)) continue;
      const json& names = simplices[key];
      for (std::size_t k = 0; k < names.size(); ++k) {
        std::string sp = path + ".simplices." + key + "[" + std::to_string(k) + "]";
        std::string sname = as_string(names[k], sp);
        std::vector<Simplex> fs;
        if (n > 0) {
          std::string fp = path + ".faces." + key + "." + sname;
          if (!faces.contains(key) || !faces[key].contains(sname)) fail(fp, "missing faces");
          const json& list = faces[key][sname];
          if (!list.is_array() || list.size() != static_cast<std::size_t>(n + 1))
            fail(fp, "expected " + std::to_string(n + 1) + " faces");
          for (std::size_t i = 0; i < list.size(); ++i)
            fs.push_back(res.resolve(as_string(list[i], fp + "[" + std::to_string(i) + "]"), n - 1,
                                     fp + "[" + std::to_string(i) + "]"));
        }
        x.add_simplex(n, sname, std::move(fs));
      }
      // Aliases become usable as soon as their simplex exists.
      for (const auto& [alias, lab] : degens.items()) {
        if (res.aliases.count(alias)) continue;
        std::string ap = path + ".degeneracies." + alias;
        std::string l = as_string(lab, ap);
        try {
          res.aliases[alias] = res.resolve(l, -1, ap);
        } catch (const ParseError&) {
        }
      }
    }
    for (const auto& [alias, lab] : degens.items())
      if (!res.aliases.count(alias)) res.resolve(as_string(lab, path + ".degeneracies." + alias), -1, path + ".degeneracies." + alias);
    x.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  if (truncation && *truncation < x.truncation()) return x.truncated(*truncation);
  return x;
}

// Recursive-descent reader for built-in expressions.
struct ExprParser {
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void error(const std::string& what) const {
    throw ParseError("in '" + std::string(s) + "': " + what, 1, i + 1);
  }
  std::string ident() {
    skip();
    std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '-' || s[i] == '_')) ++i;
    if (start == i) error("expected a name");
    return std::string(s.substr(start, i - start));
  }
  void expect(char c) {
    skip();
    if (i >= s.size() || s[i] != c) error(std::string("expected '") + c + "'");
    ++i;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  int number() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) error("expected a number");
    return std::stoi(std::string(s.substr(start, i - start)));
  }

  struct Node {
    std::string name;
    std::vector<int> numbers;
    std::vector<Node> sets;
  };

  Node node() {
    Node n{ident(), {}, {}};
    if (n.name == "point") {
      if (peek('(')) {
        expect('(');
        expect(')');
      }
      return n;
    }
    expect('(');
    if (n.name == "product") {
      n.sets.push_back(node());
      expect(',');
      n.sets.push_back(node());
    } else if (!peek(')')) {
      n.numbers.push_back(number());
      while (peek(',')) {
        expect(',');
        n.numbers.push_back(number());
      }
    }
    expect(')');
    return n;
  }

  Node parse() {
    Node n = node();
    skip();
    if (i != s.size()) error("trailing characters");
    return n;
  }
};

SimplicialSet build_node(const ExprParser::Node& n, std::optional<int> truncation, const ExprParser& p) {
  auto one = [&]() {
    if (n.numbers.size() != 1) p.error(n.name + " takes one argument");
    return n.numbers[0];
  };
  SimplicialSet x;
  if (n.name == "point") {
    x = point_set();
  } else if (n.name == "delta") {
    x = delta_set(one());
  } else if (n.name == "boundary-delta") {
    x = boundary_delta_set(one());
  } else if (n.name == "sphere") {
    x = sphere_set(one());
  } else if (n.name == "wedge") {
    if (n.numbers.empty()) p.error("wedge needs sphere dimensions");
    x = wedge_of_spheres(n.numbers);
  } else if (n.name == "random") {
    x = random_simplicial_set(static_cast<std::uint64_t>(one()));
  } else if (n.name == "product") {
    return *product(build_node(n.sets[0], truncation, p), build_node(n.sets[1], truncation, p), truncation).set;
  } else {
    p.error("unknown built-in '" + n.name + "'");
  }
  if (truncation && *truncation < x.truncation()) return x.truncated(*truncation);
  return x;
}

}  // namespace

std::string simplicial_set_json(const SimplicialSet& x) { return dump(set_to_json(x)); }

SimplicialSet parse_simplicial_set(std::string_view text) { return set_from_any(parse_text(text), std::nullopt, ""); }

SimplicialSet builtin_set(std::string_view expr, std::optional<int> truncation) {
  ExprParser p{expr};
  auto n = p.parse();
  try {
    return build_node(n, truncation, p);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("in '" + std::string(expr) + "': " + e.what());
  }
}

// ---------------------------------------------------------------- fibrations

namespace {

json fibration_to_json(const Fibration& fib) {
  json map = json::object();
  const SimplicialSet& e = *fib.total;
  const SimplicialSet& b = *fib.base;
  for (int n = 0; n <= e.truncation(); ++n) {
    if (e.count(n) == 0) continue;
    json m = json::object();
    for (std::size_t k = 0; k < e.count(n); ++k) m[e.simplex_name(n, k)] = b.label(fib.map.image(n, k));
    map[std::to_string(n)] = m;
  }
  return {{"total", set_to_json(e)},
          {"base", set_to_json(b)},
          {"map", map},
          {"fiber_basepoint", b.simplex_name(0, fib.fiber_basepoint)}};
}

std::optional<std::pair<std::string, std::string>> split_product(std::string_view expr) {
  ExprParser p{expr};
  ExprParser::Node n;
  try {
    n = p.parse();
  } catch (const ParseError&) {
    return std::nullopt;
  }
  if (n.name != "product") return std::nullopt;
  // Re-split the source text at the top-level comma.
  std::size_t open = expr.find('(');
  int depth = 0;
  for (std::size_t i = open + 1; i < expr.size(); ++i) {
    if (expr[i] == '(') ++depth;
    if (expr[i] == ')') --depth;
    if (expr[i] == ',' && depth == 0) {
      std::size_t close = expr.rfind(')');
      return std::pair(std::string(expr.substr(open + 1, i - open - 1)), std::string(expr.substr(i + 1, close - i - 1)));
    }
  }
  return std::nullopt;
}

Fibration fibration_from_json(const json& j, std::optional<int> truncation, const std::string& path) {
  if (j.is_string()) {
    std::string expr = j.get<std::string>();
    auto parts = split_product(expr);
    if (!parts) fail(path, "a fibration shorthand must be product(F,B)");
    try {
      return product_fibration(builtin_set(parts->first), builtin_set(parts->second), truncation);
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }
  auto total = std::make_shared<const SimplicialSet>(set_from_any(member(j, "total", path), truncation, path + ".total"));
  auto base = std::make_shared<const SimplicialSet>(set_from_any(member(j, "base", path), std::nullopt, path + ".base"));
  const json& map = member(j, "map", path);
  LabelResolver res{*base, {}};
  std::vector<std::vector<Simplex>> images(total->truncation() + 1);
  for (int n = 0; n <= total->truncation(); ++n)
    for (std::size_t k = 0; k < total->count(n); ++k) {
      const std::string& name = total->simplex_name(n, k);
      std::string p = path + ".map." + std::to_string(n) + "." + name;
      std::string key = std::to_string(n);
      if (!map.contains(key) || !map[key].contains(name)) fail(p, "missing image");
      images[n].push_back(res.resolve(as_string(map[key][name], p), n, p));
    }
  Fibration fib;
  fib.total = total;
  fib.base = base;
  try {
    fib.map = SimplicialMap(total, base, std::move(images));
  } catch (const Error& e) {
    fail(path + ".map", e.what());
  }
  if (j.contains("fiber_basepoint")) {
    const json& bp = j["fiber_basepoint"];
    if (bp.is_number_integer()) {
      int v = bp.get<int>();
      if (v < 0 || static_cast<std::size_t>(v) >= base->count(0)) fail(path + ".fiber_basepoint", "not a vertex");
      fib.fiber_basepoint = static_cast<std::size_t>(v);
    } else {
      auto idx = base->find(0, as_string(bp, path + ".fiber_basepoint"));
      if (!idx) fail(path + ".fiber_basepoint", "not a vertex of the base");
      fib.fiber_basepoint = *idx;
    }
  }
  try {
    validate_fibration(fib);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return fib;
}

}  // namespace

std::string fibration_json(const Fibration& fib) { return dump(fibration_to_json(fib)); }

Fibration parse_fibration(std::string_view text, std::optional<int> truncation) {
  json j;
  try {
    j = parse_text(text);
  } catch (const ParseError&) {
    j = std::string(text);  // bare shorthand
  }
  return fibration_from_json(j, truncation, "");
}

// ---------------------------------------------------------------- filtered complexes

namespace {

json complex_members(const ChainComplex& c) {
  json boundaries = json::array();
  for (int n = 1; n <= c.top_degree(); ++n) boundaries.push_back(matrix_to_json(c.boundary(n)));
  json labels = json::array();
  for (int n = 0; n <= c.top_degree(); ++n) {
    json l = json::array();
    for (std::size_t k = 0; k < c.dim(n); ++k) l.push_back(c.label(n, k));
    labels.push_back(l);
  }
  return {{"field", c.field().name()}, {"dims", c.dims()}, {"labels", labels}, {"boundaries", boundaries}};
}

json filtered_to_json(const FilteredComplex& fc) {
  json j = complex_members(fc.complex());
  json filt = json::object();
  for (int m = 0; m <= fc.top_degree(); ++m)
    for (int p = fc.low(m); p <= fc.high(m); ++p) {
      json vs = json::array();
      for (const auto& v : fc.level(p, m).basis()) vs.push_back(vector_to_json(v));
      filt[std::to_string(p)][std::to_string(m)] = vs;
    }
  j["filtration"] = filt;
  return j;
}

ChainComplex complex_from_json(const json& j, Field f, const std::string& path) {
  const json& dims = member(j, "dims", path);
  if (!dims.is_array() || dims.empty()) fail(path + ".dims", "expected a non-empty list of dimensions");
  std::vector<std::size_t> d;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    int v = as_int(dims[k], path + ".dims[" + std::to_string(k) + "]");
    if (v < 0) fail(path + ".dims", "negative dimension");
    d.push_back(static_cast<std::size_t>(v));
  }
  std::vector<Matrix> bd;
  bd.emplace_back(f, 0, d[0]);
  if (j.contains("boundaries")) {
    const json& bs = j["boundaries"];
    if (!bs.is_array() || bs.size() + 1 != d.size()) fail(path + ".boundaries", "expected one matrix per degree 1..top");
    for (std::size_t k = 0; k < bs.size(); ++k) {
      std::string p = path + ".boundaries[" + std::to_string(k) + "]";
      Matrix m = matrix_from_json(bs[k], f, p);
      if (m.rows() != d[k] || m.cols() != d[k + 1]) fail(p, "shape does not match dims");
      bd.push_back(std::move(m));
    }
  } else {
    for (std::size_t k = 1; k < d.size(); ++k) bd.emplace_back(f, d[k - 1], d[k]);
  }
  ChainComplex c;
  try {
    c = ChainComplex(f, d, std::move(bd));
    c.validate();
  } catch (const Error& e) {
    fail(path + ".boundaries", e.what());
  }
  if (j.contains("labels")) {
    const json& ls = j["labels"];
    std::vector<std::vector<std::string>> labels;
    if (!ls.is_array() || ls.size() != d.size()) fail(path + ".labels", "expected one label list per degree");
    for (std::size_t n = 0; n < ls.size(); ++n) {
      std::vector<std::string> l;
      if (!ls[n].is_array() || ls[n].size() != d[n]) fail(path + ".labels", "label count does not match dims");
      for (const auto& s : ls[n]) l.push_back(as_string(s, path + ".labels"));
      labels.push_back(std::move(l));
    }
    c.set_labels(std::move(labels));
  }
  return c;
}

FilteredComplex filtered_from_json(const json& j, std::optional<Field> field, const std::string& path) {
  Field f = field_of(j, field, path);
  ChainComplex c = complex_from_json(j, f, path);
  int top = c.top_degree();
  const json& filt = member(j, "filtration", path);
  if (!filt.is_object()) fail(path + ".filtration", "expected {p: {degree: [vectors]}}");
  // listed[m][p] = vectors listed at level p in degree m
  std::vector<std::map<int, std::vector<Vector>>> listed(top + 1);
  for (const auto& [pk, per] : filt.items()) {
    std::string pp = path + ".filtration." + pk;
    int p = 0;
    try {
      std::size_t pos = 0;
      p = std::stoi(pk, &pos);
      if (pos != pk.size()) throw std::invalid_argument(pk);
    } catch (const std::exception&) {
      fail(pp, "filtration index is not an integer");
    }
    if (!per.is_object()) fail(pp, "expected {degree: [vectors]}");
    for (const auto& [mk, vs] : per.items()) {
      std::string mp = pp + "." + mk;
      int m = -1;
      try {
        m = std::stoi(mk);
      } catch (const std::exception&) {
      }
      if (m < 0 || m > top) fail(mp, "degree out of range");
      if (!vs.is_array()) fail(mp, "expected a list of vectors");
      auto& slot = listed[m][p];
      for (std::size_t k = 0; k < vs.size(); ++k)
        slot.push_back(vector_from_json(f, c.dim(m), vs[k], mp + "[" + std::to_string(k) + "]"));
    }
  }
  std::vector<int> low(top + 1, 0);
  std::vector<std::vector<Subspace>> levels(top + 1);
  for (int m = 0; m <= top; ++m) {
    if (listed[m].empty()) continue;  // all of C_m in level 0
    low[m] = listed[m].begin()->first;
    std::vector<Vector> acc;
    for (int p = low[m]; p <= listed[m].rbegin()->first; ++p) {
      if (auto it = listed[m].find(p); it != listed[m].end()) acc.insert(acc.end(), it->second.begin(), it->second.end());
      levels[m].push_back(Subspace::span(f, c.dim(m), acc));
    }
  }
  FilteredComplex fc;
  try {
    fc = FilteredComplex(std::move(c), std::move(low), std::move(levels));
    fc.validate();
  } catch (const FiltrationViolation& e) {
    fail(path + ".filtration", e.what());
  }
  return fc;
}

json coalgebra_members(const FilteredCoalgebra& fc) {
  json comult = json::array();
  for (const auto& m : fc.comult.components) comult.push_back(matrix_to_json(m));
  json j = {{"comult", comult}, {"counit", vector_to_json(fc.counit)}};
  if (fc.unit) j["unit"] = vector_to_json(*fc.unit);
  return j;
}

}  // namespace

std::string filtered_complex_json(const FilteredComplex& fc) { return dump(filtered_to_json(fc)); }

std::string filtered_coalgebra_json(const FilteredCoalgebra& fc) {
  json j = filtered_to_json(fc.filtered);
  j["coalgebra"] = coalgebra_members(fc);
  return dump(j);
}

FilteredComplex parse_filtered_complex(std::string_view text, std::optional<Field> field) {
  return filtered_from_json(parse_text(text), field, "");
}

namespace {

FilteredCoalgebra filtered_coalgebra_from_json(const json& j, std::optional<Field> field, const std::string& path) {
  FilteredCoalgebra out;
  out.filtered = filtered_from_json(j, field, path);
  Field f = out.filtered.field();
  const ChainComplex& c = out.filtered.complex();
  int top = c.top_degree();
  TensorLayout layout(c.dims(), c.dims(), top);
  const json& co = member(j, "coalgebra", path);
  const json& cm = member(co, "comult", path + ".coalgebra");
  if (!cm.is_array() || cm.size() != static_cast<std::size_t>(top + 1))
    fail(path + ".coalgebra.comult", "expected one matrix per degree");
  out.comult.field = f;
  for (int m = 0; m <= top; ++m) {
    std::string p = path + ".coalgebra.comult[" + std::to_string(m) + "]";
    Matrix mat = matrix_from_json(cm[m], f, p);
    if (mat.rows() != layout.dim(m) || mat.cols() != c.dim(m)) fail(p, "shape does not match the tensor layout");
    out.comult.components.push_back(std::move(mat));
  }
  out.counit = vector_from_json(f, c.dim(0), member(co, "counit", path + ".coalgebra"), path + ".coalgebra.counit");
  if (co.contains("unit")) out.unit = vector_from_json(f, c.dim(0), co["unit"], path + ".coalgebra.unit");
  try {
    out.validate();
  } catch (const Error& e) {
    fail(path + ".coalgebra", e.what());
  }
  return out;
}

json graded_coalgebra_to_json(const GradedCoalgebra& c) {
  json basis = json::array();
  for (const auto& g : c.basis()) basis.push_back({{"degree", g.degree}, {"label", g.label}, {"filtration", g.filtration}});
  json comult = json::array();
  for (std::size_t i = 0; i < c.dim(); ++i) comult.push_back(vector_to_json(c.comult(i)));
  return {{"field", c.field().name()}, {"basis", basis}, {"counit", vector_to_json(c.counit())}, {"comult", comult}};
}

GradedCoalgebra graded_coalgebra_from_json(const json& j, std::optional<Field> field, const std::string& path) {
  Field f = field_of(j, field, path);
  const json& basis = member(j, "basis", path);
  if (!basis.is_array()) fail(path + ".basis", "expected a list");
  std::vector<CoalgebraGenerator> gens;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::string p = path + ".basis[" + std::to_string(k) + "]";
    CoalgebraGenerator g;
    g.degree = as_int(member(basis[k], "degree", p), p + ".degree");
    g.label = basis[k].contains("label") ? as_string(basis[k]["label"], p + ".label") : "e" + std::to_string(k);
    g.filtration = basis[k].contains("filtration") ? as_int(basis[k]["filtration"], p + ".filtration") : 0;
    gens.push_back(std::move(g));
  }
  std::size_t d = gens.size();
  const json& cm = member(j, "comult", path);
  if (!cm.is_array() || cm.size() != d) fail(path + ".comult", "expected one vector per basis element");
  std::vector<Vector> comult;
  for (std::size_t k = 0; k < d; ++k)
    comult.push_back(vector_from_json(f, d * d, cm[k], path + ".comult[" + std::to_string(k) + "]"));
  Vector counit = vector_from_json(f, d, member(j, "counit", path), path + ".counit");
  return GradedCoalgebra(f, std::move(gens), std::move(comult), std::move(counit));
}

}  // namespace

FilteredCoalgebra parse_filtered_coalgebra(std::string_view text, std::optional<Field> field) {
  return filtered_coalgebra_from_json(parse_text(text), field, "");
}

std::string coalgebra_json(const GradedCoalgebra& c) { return dump(graded_coalgebra_to_json(c)); }

GradedCoalgebra parse_coalgebra(std::string_view text, std::optional<Field> field) {
  return graded_coalgebra_from_json(parse_text(text), field, "");
}

namespace {

GeneratorSpec generators_from_json(const json& j, const std::string& path) {
  const json& list = j.is_object() ? member(j, "degrees", path) : j;
  if (!list.is_array()) fail(path, "expected a list of degrees");
  GeneratorSpec v;
  for (std::size_t k = 0; k < list.size(); ++k) v.degrees.push_back(as_int(list[k], path + "[" + std::to_string(k) + "]"));
  return v;
}

}  // namespace

GeneratorSpec parse_generator_spec(std::string_view text) { return generators_from_json(parse_text(text), ""); }

std::string kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::simplicial_set:
      return "simplicial-set";
    case ModelKind::fibration:
      return "fibration";
    case ModelKind::filtered_complex:
      return "filtered-complex";
    case ModelKind::filtered_coalgebra:
      return "filtered-coalgebra";
    case ModelKind::coalgebra:
      return "coalgebra";
    case ModelKind::generators:
      return "generators";
  }
  return "unknown";
}

Model load_model(std::string_view text, Field f, std::optional<int> truncation) {
  Model m;
  m.source = std::string(text);
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  json j;
  if (!trimmed.empty() && (trimmed.front() == '{' || trimmed.front() == '[' || trimmed.front() == '"'))
    j = parse_text(text);
  else
    j = std::string(trimmed);

  if (j.is_string()) {
    std::string expr = j.get<std::string>();
    if (split_product(expr)) {
      m.kind = ModelKind::fibration;
      m.fibration = fibration_from_json(j, truncation, "");
    } else {
      m.kind = ModelKind::simplicial_set;
      m.set = set_from_any(j, truncation, "");
    }
  } else if (j.is_array()) {
    m.kind = ModelKind::generators;
    m.generators = generators_from_json(j, "");
  } else if (!j.is_object()) {
    fail("", "expected an object, a degree list or a built-in expression");
  } else if (j.contains("total")) {
    m.kind = ModelKind::fibration;
    m.fibration = fibration_from_json(j, truncation, "");
  } else if (j.contains("filtration")) {
    if (j.contains("coalgebra")) {
      m.kind = ModelKind::filtered_coalgebra;
      m.filtered_coalgebra = filtered_coalgebra_from_json(j, j.contains("field") ? std::nullopt : std::optional(f), "");
      m.filtered = m.filtered_coalgebra->filtered;
    } else {
      m.kind = ModelKind::filtered_complex;
      m.filtered = filtered_from_json(j, j.contains("field") ? std::nullopt : std::optional(f), "");
    }
  } else if (j.contains("simplices")) {
    m.kind = ModelKind::simplicial_set;
    m.set = set_from_json(j, truncation, "");
  } else if (j.contains("basis")) {
    m.kind = ModelKind::coalgebra;
    m.coalgebra = graded_coalgebra_from_json(j, j.contains("field") ? std::nullopt : std::optional(f), "");
  } else if (j.contains("degrees")) {
    m.kind = ModelKind::generators;
    m.generators = generators_from_json(j, "");
  } else {
    fail("", "cannot tell what kind of model this is");
  }
  return m;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sseq
