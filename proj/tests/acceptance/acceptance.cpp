// One line per acceptance criterion; exit status 0 iff all pass.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>

#include "frozen.hpp"
#include "sseq/coalgebra_tools.hpp"
#include "sseq/corpus.hpp"
#include "sseq/json_io.hpp"
#include "sseq/parallel.hpp"
#include "sseq/serre.hpp"

using namespace sseq;

namespace {

constexpr std::uint64_t kSeed = 20261016;
const std::vector<Field> kFields{Field::prime(2), Field::prime(3), Field::rationals()};

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

// Collects failures from parallel workers.
struct Shared {
  std::mutex mutex;
  Outcome& out;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    std::lock_guard lock(mutex);
    out.expect(false, what);
  }
};

struct Corpus {
  std::vector<CorpusMember> skeletal, relative, serre;
  std::vector<const CorpusMember*> all() const {
    std::vector<const CorpusMember*> v;
    for (const auto* set : {&skeletal, &relative, &serre})
      for (const auto& m : *set) v.push_back(&m);
    return v;
  }
};

const Corpus& corpus() {
  static const Corpus c{skeletal_corpus(120, kSeed, kFields), relative_corpus(60, kSeed, kFields),
                        serre_corpus(12, kSeed, kFields)};
  return c;
}

std::string bd(Bidegree b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

std::map<Bidegree, std::size_t> nonzero(const std::map<Bidegree, std::size_t>& m) {
  std::map<Bidegree, std::size_t> out;
  for (auto [b, d] : m)
    if (d) out[b] = d;
  return out;
}

// dim H(E^r, d^r) at every bidegree, from ranks of the page differentials.
std::map<Bidegree, std::size_t> page_homology(const Page& pg) {
  std::map<Bidegree, std::size_t> out;
  for (const auto& b : pg.bidegrees()) {
    std::size_t d = pg.dim(b);
    std::size_t out_rank = pg.differentials.count(b) ? rank(pg.differential(b)) : 0;
    Bidegree src{b.p + pg.r, b.q - pg.r + 1};
    std::size_t in_rank = pg.differentials.count(src) ? rank(pg.differential(src)) : 0;
    if (d - out_rank - in_rank) out[b] = d - out_rank - in_rank;
  }
  return out;
}

// ---------------------------------------------------------------- criteria

Outcome c1_product_chart() {
  Outcome o;
  const std::map<Bidegree, std::size_t> cells{{{0, 0}, 1}, {{0, 1}, 1}, {{3, 0}, 1}, {{3, 1}, 1}};
  for (Field f : {Field::prime(2), Field::rationals()}) {
    SerreFiltration sf = serre_filtration(product_fibration(sphere_set(1), sphere_set(3)), f);
    SpectralSequence ss(sf.filtered());
    o.expect(nonzero(ss.page(2)->dims()) == cells, f.name() + ": E2 classes");
    for (int r = 2; r <= ss.stable_page() + 1; ++r) {
      auto pg = ss.page(r);
      o.expect(nonzero(pg->dims()) == cells, f.name() + ": E" + std::to_string(r) + " differs from E2");
      for (const auto& [b, m] : pg->differentials) o.expect(m.is_zero(), f.name() + ": nonzero d at " + bd(b));
    }
    auto h = compute_homology(sf.filtered().complex()).dims();
    o.expect(h == std::vector<std::size_t>{1, 1, 0, 1, 1}, f.name() + ": homology dims");
  }
  o.detail = "E2 = E_inf at (0,0),(0,1),(3,0),(3,1); H = 1,1,0,1,1 over F2 and Q";
  return o;
}

Outcome c2_e2_comult() {
  Outcome o;
  Field q = Field::rationals();
  SerreFiltration sf = serre_filtration(product_fibration(sphere_set(1), sphere_set(3)), q);
  E2Report e2 = e2_identify(sf);
  o.expect(e2.dims_match && e2.iso, "E2 is not identified with H(B)⊗H(F)");
  o.expect(e2.comult_match, "transported ∇2 differs from Δ_B ⊗̃ Δ_F");
  // exact equality, column by column
  for (std::size_t i = 0; i < e2.target.dim() && i < e2.transported.size(); ++i)
    o.expect(e2.transported[i] == e2.target.comult(i), "column " + e2.target.label(i));
  const auto& t = e2.target;
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < t.dim(); ++i) idx[t.label(i)] = i;
  for (auto l : {"1□1", "1□x1", "x3□1", "x3□x1"}) o.expect(idx.count(l), std::string("missing class ") + l);
  if (!o.ok) return o;
  std::size_t one = idx["1□1"], x1 = idx["1□x1"], x3 = idx["x3□1"], top = idx["x3□x1"];
  Vector expect = Vector::from_entries(q, t.dim() * t.dim(),
                                       {{t.pair_index(top, one), Scalar(q, 1)},
                                        {t.pair_index(x1, x3), Scalar(q, -1)},
                                        {t.pair_index(x3, x1), Scalar(q, 1)},
                                        {t.pair_index(one, top), Scalar(q, 1)}});
  o.expect(e2.transported.size() == t.dim() && e2.transported[top] == expect, "four-term formula");
  Scalar e1 = e2.transported[top][t.pair_index(x1, x3)], e2s = e2.transported[top][t.pair_index(x3, x1)];
  o.detail = "∇(x3□x1) has ε₁=" + e1.to_string() + ", ε₂=" + e2s.to_string();
  return o;
}

Outcome c3_co_leibniz() {
  Outcome o;
  Shared sh{{}, o};
  const auto& sk = corpus().skeletal;
  std::size_t small = 0;
  for (const auto& m : sk) small += m.small;
  o.expect(sk.size() >= 100 && small == sk.size(), "skeletal corpus has fewer than 100 small members");
  auto members = corpus().all();
  std::atomic<std::size_t> checked{0};
  parallel_for(members.size(), [&](std::size_t i) {
    const auto& m = *members[i];
    CoalgebraSpectralSequence css(m.coalgebra);
    for (int r = 0; r <= 6; ++r) {
      auto rep = css.check_co_leibniz(r);
      checked += rep.checked;
      sh.expect(rep.passes(), m.name + " r=" + std::to_string(r) + " at " +
                                  (rep.violations.empty() ? std::string("?") : bd(rep.violations[0])));
    }
  });
  o.detail = std::to_string(sk.size()) + " skeletal + " + std::to_string(members.size() - sk.size()) +
             " augmented members, r ≤ 6, " + std::to_string(checked.load()) + " bidegree checks";
  return o;
}

Outcome c4_page_recursion() {
  Outcome o;
  Shared sh{{}, o};
  auto members = corpus().all();
  std::atomic<std::size_t> higher{0};
  parallel_for(members.size(), [&](std::size_t i) {
    const auto& m = *members[i];
    SpectralSequence ss(m.coalgebra.filtered);
    for (int r = 0; r <= 6; ++r) {
      if (r >= 2)
        for (const auto& [b, d] : ss.page(r)->differentials) higher += !d.is_zero();
      sh.expect(nonzero(ss.page(r + 1)->dims()) == page_homology(*ss.page(r)), m.name + " r=" + std::to_string(r));
    }
  });
  // frozen brute-force oracle pages
  auto cases = frozen("pages.json")["cases"];
  for (const auto& cs : cases) {
    SpectralSequence ss(parse_filtered_complex(cs["complex"].dump()));
    for (std::size_t r = 0; r < cs["pages"].size(); ++r) {
      std::map<Bidegree, std::size_t> want;
      for (const auto& c : cs["pages"][r]) want[{c[0].get<int>(), c[1].get<int>()}] = c[2].get<std::size_t>();
      o.expect(nonzero(ss.page(static_cast<int>(r))->dims()) == want,
               cs["complex"]["name"].get<std::string>() + " r=" + std::to_string(r) + " vs oracle");
      if (r + 1 < cs["pages"].size()) o.expect(page_homology(*ss.page(static_cast<int>(r))) == nonzero(ss.page(static_cast<int>(r) + 1)->dims()), "recursion on oracle case");
    }
  }
  o.detail = std::to_string(members.size()) + " corpus members and " + std::to_string(cases.size()) +
             " oracle complexes, r ≤ 6; " +
             std::to_string(higher.load()) + " nonzero d^r with r ≥ 2 in the corpus";
  return o;
}

Outcome c5_tensor_iso() {
  Outcome o;
  Shared sh{{}, o};
  std::vector<FilteredComplex> inputs;
  for (const auto* m : corpus().all()) inputs.push_back(m->coalgebra.filtered);
  std::atomic<std::size_t> entries{0};
  parallel_for(inputs.size(), [&](std::size_t i) {
    SpectralSequence ss(inputs[i]);
    TensorPageIdentification ident(ss);
    SpectralSequence tensor_ss(tensor_filtered(inputs[i]).filtered);
    for (int r = 0; r <= 6; ++r) {
      auto rep = tensor_page_iso(ident, tensor_ss, r);
      entries += rep.entries.size();
      for (const auto& e : rep.entries)
        sh.expect(e.tensor_dim == e.convolution_dim && e.invertible && e.intertwines,
                  "input " + std::to_string(i) + " r=" + std::to_string(r) + " at " + bd(e.at));
    }
  });
  o.expect(inputs.size() >= 50, "fewer than 50 inputs");
  o.detail = std::to_string(inputs.size()) + " inputs, r ≤ 6, " + std::to_string(entries.load()) + " bidegrees";
  return o;
}

Outcome c6_shuffles() {
  Outcome o;
  auto oracle = frozen("shuffles.json");
  for (int p = 1; p <= 6; ++p)
    for (int q = 1; q <= 6; ++q) {
      auto sh = enumerate_shuffles(q, p);
      o.expect(static_cast<long long>(sh.size()) == binomial(p + q, p), "count");
      int simple = 0;
      for (const auto& s : sh) {
        // brute force over every (a, b, c)
        bool any = false;
        for (int a = 0; a <= p + q && !any; ++a)
          for (int b = a; b <= p + q && !any; ++b)
            for (int c = b; c <= p + q && !any; ++c) any = witness_holds(s.sigma, {a, b, c});
        simple += any;
        o.expect(any == is_simple(s).has_value(), "is_simple disagrees with the definition");
      }
      o.expect(simple == p * q + 1 && count_simple(q, p) == p * q + 1, "simple count");
      for (const auto& e : oracle["table"])
        if (e["p"] == p && e["q"] == q) o.expect(e["simple"].get<int>() == simple, "oracle simple count");
    }
  Shuffle s53{DeltaMorphism::parse("[0,0,1,2,3,3,3,4,5]"), DeltaMorphism::parse("[0,1,1,1,1,2,3,3,3]")};
  s53.sign = shuffle_sign(s53.sigma);
  Shuffle s45{DeltaMorphism::parse("[0,1,1,1,1,2,3,4,4,4]"), DeltaMorphism::parse("[0,0,1,2,3,3,3,3,4,5]")};
  s45.sign = shuffle_sign(s45.sigma);
  o.expect(is_valid_shuffle(s53) && !is_simple(s53), "(5,3) example should be non-simple");
  auto w = is_simple(s45);
  o.expect(is_valid_shuffle(s45) && w && *w == SimpleWitness{1, 4, 7}, "(4,5) example witness");
  o.detail = "1 ≤ p,q ≤ 6: C(p+q,p) shuffles, pq+1 simple; (5,3) non-simple; (4,5) witness (1,4,7)";
  return o;
}

Outcome c7_nabla0() {
  Outcome o;
  std::size_t terms = 0;
  for (Field f : kFields)
    for (auto [q, p] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {1, 3}}) {
      SerreFiltration sf = serre_filtration(product_fibration(delta_set(q), delta_set(p)), f);
      Nabla0Result r = nabla0(sf, p, q, 0, 0);
      std::string tag = f.name() + " (q,p)=(" + std::to_string(q) + "," + std::to_string(p) + ")";
      o.expect(r.nonsimple_zero, tag + ": non-simple shuffle contributes");
      o.expect(r.off_b_zero, tag + ": simple term with j ≠ b contributes");
      o.expect(r.total == r.expected, tag + ": total differs from Δ_F(U) ⊗̃ Δ_B(V)");
      for (const auto& e : r.ledger)
        if (!e.simple) o.expect(e.value.is_zero(), tag + ": non-simple ledger entry");
      terms += r.ledger.size();
    }
  o.detail = std::to_string(terms) + " ledger terms over F2, F3, Q";
  return o;
}

Outcome c8_phi_psi() {
  Outcome o;
  std::size_t blocks = 0;
  std::vector<std::pair<SimplicialSet, SimplicialSet>> fibs{{sphere_set(1), sphere_set(3)},
                                                            {delta_set(1), boundary_delta_set(2)},
                                                            {sphere_set(2), sphere_set(2)},
                                                            {delta_set(2), delta_set(1)},
                                                            {boundary_delta_set(2), sphere_set(2)}};
  for (const auto& [fiber, base] : fibs)
    for (Field f : kFields) {
      SerreFiltration sf = serre_filtration(product_fibration(fiber, base), f);
      for (int p = 0; p <= base.top_dimension(); ++p)
        for (int q = 0; q <= fiber.top_dimension(); ++q) {
          if (p + q > sf.fibration.total->truncation()) continue;
          Matrix ps = psi_matrix(sf, p, q);
          if (ps.cols() == 0) continue;
          o.expect(phi(sf, p, q) * ps == Matrix::identity(f, ps.cols()),
                   fiber.name() + "×" + base.name() + " " + f.name() + " " + bd({p, q}));
          ++blocks;
        }
    }
  o.detail = std::to_string(blocks) + " (p,q) blocks on " + std::to_string(fibs.size()) + " products × 3 fields";
  return o;
}

Outcome c9_cofree_primitives() {
  Outcome o;
  Shared sh{{}, o};
  auto ext = frozen("exterior.json")["odd"];
  for (Field f : {Field::prime(3), Field::rationals()})
    for (int n = 0; n <= 4; ++n) {
      auto co = cofree(GeneratorSpec::odd_up_to(n), f);
      auto want = ext[std::to_string(n)]["dims"].get<std::vector<std::size_t>>();
      auto got = co.coalgebra.degree_dims();
      got.resize(want.size(), 0);
      std::string tag = "n=" + std::to_string(n) + " " + f.name();
      o.expect(got == want, tag + ": dims");
      auto rep = check_coalgebra(co.coalgebra);
      o.expect(rep.coassociative && rep.counital && rep.cocommutative, tag + ": coalgebra axioms");
      auto prim = primitives(co);
      o.expect(prim.support() == GeneratorSpec::odd_up_to(n).degrees, tag + ": primitive degrees");
      o.expect(prim.dim() == static_cast<std::size_t>(n), tag + ": primitive count");
    }
  auto members = corpus().all();
  std::atomic<std::size_t> skipped{0};
  parallel_for(members.size(), [&](std::size_t i) {
    CoalgebraSpectralSequence css(members[i]->coalgebra);
    for (int r = 0; r <= 6; ++r) {
      auto rep = primitive_differential_check(css, r);
      if (!rep.coaugmented) ++skipped;
      sh.expect(rep.passes(), members[i]->name + " r=" + std::to_string(r) +
                                  (rep.violations.empty() ? "" : ": " + rep.violations[0]));
    }
  });
  o.detail = "Λ dims for n ≤ 4; d^r(primitive) primitive on " + std::to_string(members.size()) + " sequences × 7 pages (" +
             std::to_string(skipped.load()) + " pages without a unit class)";
  return o;
}

Outcome c10_convergence() {
  Outcome o;
  Shared sh{{}, o};
  auto members = corpus().all();
  std::atomic<std::size_t> tested{0};
  parallel_for(members.size(), [&](std::size_t i) {
    if (!members[i]->coalgebra.filtered.first_quadrant()) return;
    ++tested;
    auto rep = gr_compare(members[i]->coalgebra);
    sh.expect(rep.passes(), members[i]->name + (rep.messages.empty() ? "" : ": " + rep.messages[0]));
  });
  // filtration of H(S1×S3) over Q
  SerreFiltration sf = serre_filtration(product_fibration(sphere_set(1), sphere_set(3)), Field::rationals());
  auto rep = gr_compare(sf.coalgebra);
  o.expect(rep.passes(), "S1×S3 gr_compare");
  std::vector<std::size_t> total(5, 0);
  for (std::size_t m = 0; m < rep.filtration_dims.size(); ++m) {
    int low = rep.filtration_low[m];
    const auto& dims = rep.filtration_dims[m];
    for (int p = 0; p <= 4; ++p) {
      if (dims.empty() || p < low) continue;
      std::size_t idx = std::min<std::size_t>(p - low, dims.size() - 1);
      total[p] += dims[idx];
    }
  }
  o.expect(total[0] == 2 && total[1] == 2 && total[2] == 2 && total[3] == 4, "S1×S3 filtration jump pattern");
  std::ostringstream s;
  s << tested.load() << " first-quadrant members; S1×S3 dim F^0..F^3 = " << total[0] << "," << total[1] << ","
    << total[2] << "," << total[3];
  o.detail = s.str();
  return o;
}

Outcome c11_stabilization() {
  Outcome o;
  Shared sh{{}, o};
  auto members = corpus().all();
  parallel_for(members.size(), [&](std::size_t i) {
    SpectralSequence ss(members[i]->coalgebra.filtered);
    int top = ss.stable_page() + 3;
    std::vector<std::shared_ptr<const Page>> pages;
    for (int s = 0; s <= top; ++s) pages.push_back(ss.page(s));
    for (const auto& b : ss.filtered().bidegrees()) {
      int s0 = std::max(b.p + 1, b.q + 2);
      for (int s = s0; s < top; ++s)
        sh.expect(pages[s]->dim(b) == pages[s + 1]->dim(b), members[i]->name + " at " + bd(b));
    }
  });
  o.detail = std::to_string(members.size()) + " members, pages up to the stable page + 3";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "S1xS3 chart", 5, c1_product_chart},
      {2, "E2 comultiplication", 10, c2_e2_comult},
      {3, "co-Leibniz", 60, c3_co_leibniz},
      {4, "page recursion", 60, c4_page_recursion},
      {5, "tensor identification", 60, c5_tensor_iso},
      {6, "shuffle combinatorics", 5, c6_shuffles},
      {7, "simple-shuffle ledger", 30, c7_nabla0},
      {8, "phi/psi inverse", 10, c8_phi_psi},
      {9, "cofree and primitives", 10, c9_cofree_primitives},
      {10, "convergence as coalgebras", 30, c10_convergence},
      {11, "stabilization bound", 30, c11_stabilization},
  };
  auto t0 = std::chrono::steady_clock::now();
  corpus();
  double corpus_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("corpus: %zu skeletal, %zu relative, %zu serre members built in %.2f s (%zu threads)\n",
              corpus().skeletal.size(), corpus().relative.size(), corpus().serre.size(), corpus_time, thread_count());
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.limit;
    bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("[%s] %2d %-27s %7.2f s (limit %g s)  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                o.detail.c_str());
    if (!in_time) std::printf("       over the time limit\n");
    for (const auto& f : o.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
