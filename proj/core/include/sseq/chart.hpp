#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sseq/sseq.hpp"

namespace sseq {

struct ClassEntry {
  Bidegree at;
  std::size_t dim = 0;
};

struct DifferentialEntry {
  Bidegree from;
  Bidegree to;
  Matrix matrix;
};

struct ComultEntry {
  Bidegree at;
  std::vector<TensorBlock> blocks;
  Matrix matrix;
};

// Nonzero part of a page: classes with positive dimension, nonzero d^r and
// (when the page carries them) ∇^r on every listed class.
struct PageExport {
  int r = 0;
  std::vector<ClassEntry> classes;
  std::vector<DifferentialEntry> differentials;
  std::vector<ComultEntry> comultiplications;

  std::size_t dim(Bidegree b) const;
};

PageExport export_page(const Page& page);

struct Provenance {
  std::string input_hash;  // fnv1a_hex of the input text
  std::string field;
  std::optional<int> truncation;
};

struct ChartDocument {
  std::vector<PageExport> pages;
  // "p,q" -> labels of a basis of E²_{p,q}, when known.
  std::map<std::string, std::vector<std::string>> annotations;
  Provenance provenance;

  // Every differential starts and ends at a listed class.
  void validate() const;
};

// Pages 0..min(max_page, stable page) with comultiplications.
ChartDocument build_chart(const CoalgebraSpectralSequence& css, int max_page, const Provenance& provenance);
// Same without ∇, for bare filtered complexes.
ChartDocument build_chart(const SpectralSequence& ss, int max_page, const Provenance& provenance);

std::string chart_json(const ChartDocument& doc);
ChartDocument parse_chart(std::string_view text);
// p to the right, q upwards; each page is followed by its arrows.
std::string chart_text(const ChartDocument& doc);

}  // namespace sseq
