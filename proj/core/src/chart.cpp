#include "sseq/chart.hpp"

#include <algorithm>
#include <sstream>

#include "json_detail.hpp"
#include "sseq/errors.hpp"

namespace sseq {

using nlohmann::json;
using namespace detail;

std::size_t PageExport::dim(Bidegree b) const {
  for (const auto& c : classes)
    if (c.at == b) return c.dim;
  return 0;
}

PageExport export_page(const Page& page) {
  PageExport out;
  out.r = page.r;
  for (const auto& b : page.bidegrees()) {
    std::size_t d = page.dim(b);
    if (d == 0) continue;
    out.classes.push_back({b, d});
    if (auto it = page.differentials.find(b); it != page.differentials.end() && !it->second.is_zero())
      out.differentials.push_back({b, page.target(b), it->second});
    if (auto it = page.comultiplications.find(b); it != page.comultiplications.end())
      out.comultiplications.push_back({b, page.comult_blocks.at(b), it->second});
  }
  return out;
}

void ChartDocument::validate() const {
  for (const auto& pg : pages)
    for (const auto& d : pg.differentials) {
      if (pg.dim(d.from) == 0 || pg.dim(d.to) == 0)
        throw InternalConsistency("chart: d^" + std::to_string(pg.r) + " at (" + std::to_string(d.from.p) + "," +
                                  std::to_string(d.from.q) + ") has an endpoint with no classes");
      if (d.matrix.cols() != pg.dim(d.from) || d.matrix.rows() != pg.dim(d.to))
        throw InternalConsistency("chart: differential shape does not match the class dimensions");
    }
}

namespace {

template <class SS>
int last_page(const SS& ss, int max_page) {
  if (max_page < 0) throw RangeError("max page must be non-negative");
  if (!ss.filtered().first_quadrant())
    throw UnsupportedInput("only first-quadrant filtrations can be charted up to stabilization");
  return std::min(max_page, ss.stable_page());
}

}  // namespace

ChartDocument build_chart(const CoalgebraSpectralSequence& css, int max_page, const Provenance& provenance) {
  ChartDocument doc;
  doc.provenance = provenance;
  for (int r = 0; r <= last_page(css.sseq(), max_page); ++r) doc.pages.push_back(export_page(*css.page_with_comult(r)));
  doc.validate();
  return doc;
}

ChartDocument build_chart(const SpectralSequence& ss, int max_page, const Provenance& provenance) {
  ChartDocument doc;
  doc.provenance = provenance;
  for (int r = 0; r <= last_page(ss, max_page); ++r) doc.pages.push_back(export_page(*ss.page(r)));
  doc.validate();
  return doc;
}

namespace {

json bideg(Bidegree b) { return json::array({b.p, b.q}); }

Bidegree bideg_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [p, q]");
  return {as_int(j[0], path), as_int(j[1], path)};
}

json page_to_json(const PageExport& pg) {
  json classes = json::array(), diffs = json::array(), comults = json::array();
  for (const auto& c : pg.classes) classes.push_back({{"p", c.at.p}, {"q", c.at.q}, {"dim", c.dim}});
  for (const auto& d : pg.differentials)
    diffs.push_back({{"from", bideg(d.from)}, {"to", bideg(d.to)}, {"matrix", matrix_to_json(d.matrix)}});
  for (const auto& c : pg.comultiplications) {
    json blocks = json::array();
    for (const auto& b : c.blocks)
      blocks.push_back({{"left", bideg(b.left)},
                        {"right", bideg(b.right)},
                        {"offset", b.offset},
                        {"left_dim", b.left_dim},
                        {"right_dim", b.right_dim}});
    comults.push_back({{"at", bideg(c.at)}, {"blocks", blocks}, {"matrix", matrix_to_json(c.matrix)}});
  }
  return {{"r", pg.r}, {"classes", classes}, {"differentials", diffs}, {"comultiplications", comults}};
}

std::size_t as_size(const json& j, const std::string& path) {
  int v = as_int(j, path);
  if (v < 0) fail(path, "must be non-negative");
  return static_cast<std::size_t>(v);
}

PageExport page_from_json(const json& j, const std::string& path) {
  PageExport pg;
  pg.r = as_int(member(j, "r", path), path + ".r");
  const json& classes = member(j, "classes", path);
  for (std::size_t k = 0; k < classes.size(); ++k) {
    std::string p = path + ".classes[" + std::to_string(k) + "]";
    pg.classes.push_back({{as_int(member(classes[k], "p", p), p), as_int(member(classes[k], "q", p), p)},
                          as_size(member(classes[k], "dim", p), p)});
  }
  const json& diffs = member(j, "differentials", path);
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    std::string p = path + ".differentials[" + std::to_string(k) + "]";
    pg.differentials.push_back({bideg_from(member(diffs[k], "from", p), p + ".from"),
                                bideg_from(member(diffs[k], "to", p), p + ".to"),
                                matrix_from_json(member(diffs[k], "matrix", p), std::nullopt, p + ".matrix")});
  }
  const json& comults = member(j, "comultiplications", path);
  for (std::size_t k = 0; k < comults.size(); ++k) {
    std::string p = path + ".comultiplications[" + std::to_string(k) + "]";
    ComultEntry c;
    c.at = bideg_from(member(comults[k], "at", p), p + ".at");
    const json& blocks = member(comults[k], "blocks", p);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      std::string bp = p + ".blocks[" + std::to_string(i) + "]";
      TensorBlock b;
      b.left = bideg_from(member(blocks[i], "left", bp), bp + ".left");
      b.right = bideg_from(member(blocks[i], "right", bp), bp + ".right");
      b.offset = as_size(member(blocks[i], "offset", bp), bp + ".offset");
      b.left_dim = as_size(member(blocks[i], "left_dim", bp), bp + ".left_dim");
      b.right_dim = as_size(member(blocks[i], "right_dim", bp), bp + ".right_dim");
      c.blocks.push_back(b);
    }
    c.matrix = matrix_from_json(member(comults[k], "matrix", p), std::nullopt, p + ".matrix");
    pg.comultiplications.push_back(std::move(c));
  }
  return pg;
}

}  // namespace

std::string chart_json(const ChartDocument& doc) {
  json pages = json::array();
  for (const auto& pg : doc.pages) pages.push_back(page_to_json(pg));
  json prov = {{"input_hash", doc.provenance.input_hash}, {"field", doc.provenance.field}};
  prov["truncation"] = doc.provenance.truncation ? json(*doc.provenance.truncation) : json(nullptr);
  json ann = json::object();
  for (const auto& [k, v] : doc.annotations) ann[k] = v;
  return dump({{"pages", pages}, {"annotations", ann}, {"provenance", prov}});
}

ChartDocument parse_chart(std::string_view text) {
  json j = parse_text(text);
  ChartDocument doc;
  const json& pages = member(j, "pages", "");
  if (!pages.is_array()) fail("pages", "expected a list");
  for (std::size_t k = 0; k < pages.size(); ++k) doc.pages.push_back(page_from_json(pages[k], "pages[" + std::to_string(k) + "]"));
  if (j.contains("annotations")) {
    for (const auto& [key, v] : j["annotations"].items()) {
      std::vector<std::string> labels;
      for (const auto& s : v) labels.push_back(as_string(s, "annotations." + key));
      doc.annotations[key] = std::move(labels);
    }
  }
  const json& prov = member(j, "provenance", "");
  doc.provenance.input_hash = as_string(member(prov, "input_hash", "provenance"), "provenance.input_hash");
  doc.provenance.field = as_string(member(prov, "field", "provenance"), "provenance.field");
  if (prov.contains("truncation") && !prov["truncation"].is_null())
    doc.provenance.truncation = as_int(prov["truncation"], "provenance.truncation");
  try {
    doc.validate();
  } catch (const InternalConsistency& e) {
    throw ParseError(e.what());
  }
  return doc;
}

std::string chart_text(const ChartDocument& doc) {
  std::ostringstream out;
  int pmin = 0, pmax = 0, qmax = 0;
  for (const auto& pg : doc.pages)
    for (const auto& c : pg.classes) {
      pmin = std::min(pmin, c.at.p);
      pmax = std::max(pmax, c.at.p);
      qmax = std::max(qmax, c.at.q);
    }
  const int w = 4;
  auto pad = [&](const std::string& s) { return std::string(w > static_cast<int>(s.size()) ? w - s.size() : 0, ' ') + s; };
  for (const auto& pg : doc.pages) {
    out << "E^" << pg.r << "\n";
    for (int q = qmax; q >= 0; --q) {
      out << pad(std::to_string(q)) << " |";
      for (int p = pmin; p <= pmax; ++p) {
        std::size_t d = pg.dim({p, q});
        out << pad(d == 0 ? "." : std::to_string(d));
      }
      out << "\n";
    }
    out << pad("") << " +" << std::string(w * (pmax - pmin + 1), '-') << "\n" << pad("") << "  ";
    for (int p = pmin; p <= pmax; ++p) out << pad(std::to_string(p));
    out << "\n";
    for (const auto& d : pg.differentials)
      out << "  (" << d.from.p << "," << d.from.q << ") -d^" << pg.r << "-> (" << d.to.p << "," << d.to.q
          << ")  rank " << rank(d.matrix) << "\n";
    out << "\n";
  }
  if (!doc.annotations.empty()) {
    out << "E^2 classes\n";
    for (const auto& [k, labels] : doc.annotations) {
      out << "  (" << k << ")";
      for (const auto& l : labels) out << " " << l;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace sseq
