#include "zd/clique.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace zd {

namespace {

// Branch-and-bound maximum clique over an induced subgraph with bitset
// adjacency rows, Tomita-style: candidates are greedily colored and a
// vertex whose color cannot lift the incumbent prunes its whole level.
class CliqueSearch {
 public:
  CliqueSearch(std::size_t n, std::vector<uint64_t> adj,
               std::optional<uint64_t> budget)
      : n_(n), words_((n + 63) / 64), adj_(std::move(adj)), budget_(budget) {
    levels_.resize(n_ + 2);
    for (auto& lv : levels_) {
      lv.cand.assign(words_, 0);
      lv.scratch.assign(words_, 0);
      lv.avail.assign(words_, 0);
      lv.verts.reserve(n_);
      lv.cols.reserve(n_);
    }
    current_.reserve(n_);
  }

  uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }
  uint64_t best_size() const { return best_size_; }
  const std::vector<uint32_t>& best_clique() const { return best_clique_; }

  void maximize() {
    auto& root = levels_[0];
    for (std::size_t i = 0; i < n_; ++i) root.cand[i / 64] |= 1ULL << (i % 64);
    expand(0);
  }

  // True iff the vertices of `cand` contain a clique of size `target`.
  bool decide(const std::vector<uint64_t>& cand, uint64_t target) {
    if (target == 0) return true;
    decide_target_ = target;
    auto& root = levels_[0];
    root.cand = cand;
    return decide_expand(0, 0);
  }

  const uint64_t* row(std::size_t v) const { return adj_.data() + v * words_; }

 private:
  struct Level {
    std::vector<uint64_t> cand;
    std::vector<uint64_t> scratch;
    std::vector<uint64_t> avail;
    std::vector<uint32_t> verts;
    std::vector<uint32_t> cols;
  };

  bool tick() {
    ++nodes_;
    if (budget_ && nodes_ > *budget_) aborted_ = true;
    return !aborted_;
  }

  bool empty(const std::vector<uint64_t>& s) const {
    for (uint64_t w : s)
      if (w) return false;
    return true;
  }

  // Greedy coloring of lv.cand; fills lv.verts/lv.cols in ascending color
  // order (ascending vertex index within each color class).
  void color(Level& lv) {
    lv.verts.clear();
    lv.cols.clear();
    auto& uncolored = lv.scratch;
    auto& avail = lv.avail;
    uncolored = lv.cand;
    uint32_t c = 0;
    while (!empty(uncolored)) {
      ++c;
      avail = uncolored;
      for (std::size_t w = 0; w < words_; ++w) {
        while (avail[w]) {
          uint32_t v =
              static_cast<uint32_t>(w * 64 + std::countr_zero(avail[w]));
          lv.verts.push_back(v);
          lv.cols.push_back(c);
          uncolored[v / 64] &= ~(1ULL << (v % 64));
          avail[v / 64] &= ~(1ULL << (v % 64));
          const uint64_t* nv = row(v);
          for (std::size_t u = w; u < words_; ++u) avail[u] &= ~nv[u];
        }
      }
    }
  }

  void expand(std::size_t depth) {
    if (!tick()) return;
    Level& lv = levels_[depth];
    if (empty(lv.cand)) {
      if (current_.size() > best_size_) {
        best_size_ = current_.size();
        best_clique_ = current_;
      }
      return;
    }
    color(lv);
    Level& next = levels_[depth + 1];
    for (std::size_t i = lv.verts.size(); i-- > 0;) {
      if (aborted_) return;
      if (current_.size() + lv.cols[i] <= best_size_) return;
      uint32_t v = lv.verts[i];
      lv.cand[v / 64] &= ~(1ULL << (v % 64));
      const uint64_t* nv = row(v);
      for (std::size_t w = 0; w < words_; ++w) next.cand[w] = lv.cand[w] & nv[w];
      current_.push_back(v);
      if (current_.size() > best_size_) {
        best_size_ = current_.size();
        best_clique_ = current_;
      }
      expand(depth + 1);
      current_.pop_back();
    }
  }

  bool decide_expand(std::size_t depth, uint64_t have) {
    if (have == decide_target_) return true;
    if (!tick()) return false;
    Level& lv = levels_[depth];
    color(lv);
    Level& next = levels_[depth + 1];
    for (std::size_t i = lv.verts.size(); i-- > 0;) {
      if (aborted_) return false;
      if (have + lv.cols[i] < decide_target_) return false;
      uint32_t v = lv.verts[i];
      lv.cand[v / 64] &= ~(1ULL << (v % 64));
      if (have + 1 == decide_target_) return true;
      const uint64_t* nv = row(v);
      for (std::size_t w = 0; w < words_; ++w) next.cand[w] = lv.cand[w] & nv[w];
      if (decide_expand(depth + 1, have + 1)) return true;
    }
    return false;
  }

  std::size_t n_;
  std::size_t words_;
  std::vector<uint64_t> adj_;
  std::optional<uint64_t> budget_;
  std::vector<Level> levels_;
  std::vector<uint32_t> current_;
  std::vector<uint32_t> best_clique_;
  uint64_t best_size_ = 0;
  uint64_t nodes_ = 0;
  uint64_t decide_target_ = 0;
  bool aborted_ = false;
};

}  // namespace

CayleyGraph::CayleyGraph(const PrimeField& field, uint64_t d)
    : field_(field), d_(d) {
  if (d % 2 != 0)
    fail(Errc::OddSubgroupOrder,
         "connection set of odd order " + std::to_string(d) +
             " is not symmetric");
  if (d == 0 || (field.p() - 1) % d != 0)
    fail(Errc::NotDivisor, std::to_string(d) + " does not divide " +
                               std::to_string(field.p() - 1));
  if (d == field.p() - 1)
    fail(Errc::NotProperDivisor, "d = p-1 yields the complete graph");
  connection_ = field.subgroup_elements(d);
  connection_mask_.assign(field.p(), 0);
  for (uint64_t z : connection_) connection_mask_[z] = 1;
}

CliqueResult clique_number(const CayleyGraph& graph,
                           std::optional<uint64_t> budget) {
  auto t0 = std::chrono::steady_clock::now();

  // Every edge can be mapped onto {0, 1} by a translation and a dilation
  // from Z_d, both of which preserve adjacency. So omega = 2 + omega of the
  // subgraph induced on the common neighborhood of 0 and 1, and the
  // lexicographically smallest maximum clique extends {0, 1} inside it.
  std::vector<uint64_t> reduced;
  for (uint64_t z : graph.connection())
    if (graph.adjacent(z, 1)) reduced.push_back(z);

  CliqueResult result;
  result.explored_nodes = 1;
  if (reduced.empty()) {
    result.omega = 2;
    result.witness = {0, 1};
  } else {
    std::size_t n = reduced.size();
    std::size_t words = (n + 63) / 64;
    std::vector<uint64_t> adj(n * words, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && graph.adjacent(reduced[i], reduced[j]))
          adj[i * words + j / 64] |= 1ULL << (j % 64);

    CliqueSearch search(n, std::move(adj), budget);
    search.maximize();
    result.omega = 2 + search.best_size();
    if (search.aborted()) {
      result.exact = false;
      result.witness = {0, 1};
      for (uint32_t v : search.best_clique())
        result.witness.push_back(reduced[v]);
    } else {
      // Lexicographically smallest extension, one decided vertex at a time.
      std::vector<uint64_t> cand((n + 63) / 64, 0);
      for (std::size_t i = 0; i < n; ++i) cand[i / 64] |= 1ULL << (i % 64);
      std::vector<uint32_t> prefix;
      uint64_t need = search.best_size();
      while (need > 0 && !search.aborted()) {
        bool found = false;
        for (std::size_t v = 0; v < n && !found; ++v) {
          if (!(cand[v / 64] >> (v % 64) & 1)) continue;
          std::vector<uint64_t> rest(cand.size());
          const uint64_t* nv = search.row(v);
          for (std::size_t w = 0; w < rest.size(); ++w)
            rest[w] = cand[w] & nv[w];
          // only vertices above v may follow in a sorted clique
          for (std::size_t u = 0; u <= v; ++u)
            rest[u / 64] &= ~(1ULL << (u % 64));
          if (search.decide(rest, need - 1)) {
            prefix.push_back(static_cast<uint32_t>(v));
            cand = std::move(rest);
            --need;
            found = true;
          }
        }
        if (!found && !search.aborted())
          throw std::logic_error("lexmin extraction lost the maximum clique");
      }
      result.exact = !search.aborted();
      result.witness = {0, 1};
      if (result.exact) {
        for (uint32_t v : prefix) result.witness.push_back(reduced[v]);
      } else {
        // budget ran out mid-extraction: report the phase-1 clique
        for (uint32_t v : search.best_clique())
          result.witness.push_back(reduced[v]);
      }
    }
    result.explored_nodes += search.nodes();
  }

  std::sort(result.witness.begin(), result.witness.end());
  if (result.witness.size() != result.omega)
    throw std::logic_error("clique witness size mismatch");
  for (std::size_t i = 0; i < result.witness.size(); ++i)
    for (std::size_t j = i + 1; j < result.witness.size(); ++j)
      if (!graph.adjacent(result.witness[i], result.witness[j]))
        throw std::logic_error("clique witness fails adjacency");

  auto t1 = std::chrono::steady_clock::now();
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return result;
}

CliqueBoundReport check_clique_bounds(uint64_t p, uint64_t d,
                                      const CliqueResult& result) {
  if (!result.exact)
    fail(Errc::BadInput, "bound checks need an exact clique number");
  CliqueBoundReport report;
  report.p = p;
  report.d = d;
  report.omega = result.omega;
  report.subgroup_bound_ok = result.omega * (result.omega - 1) <= d;
  report.paley = (p % 4 == 1) && d == (p - 1) / 2;
  uint64_t lhs = 2 * result.omega - 1;
  report.refined_bound_ok = lhs * lhs <= 2 * p - 1;
  report.refined_bound =
      (std::sqrt(static_cast<double>(2 * p - 1)) + 1.0) / 2.0;
  report.legacy_bound = p > 4 ? std::sqrt(static_cast<double>(p - 4)) : 0.0;
  report.legacy_slack = report.legacy_bound - static_cast<double>(result.omega);
  if (!report.subgroup_bound_ok)
    fail(Errc::BoundViolated,
         "omega(omega-1) > d at p = " + std::to_string(p) +
             ", d = " + std::to_string(d));
  if (report.paley && !report.refined_bound_ok)
    fail(Errc::BoundViolated,
         "Paley clique bound fails at p = " + std::to_string(p));
  return report;
}

}  // namespace zd
