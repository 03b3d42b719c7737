#include "sgembed/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "sgembed/errors.hpp"

namespace sgembed {

bool is_embedding(const CayleyTable& source,
                  const CayleyTable& target,
                  std::span<const uint32_t> map) {
  uint32_t m = source.order();
  uint32_t n = target.order();
  if (map.size() != m) {
    return false;
  }
  std::vector<uint8_t> used(n, 0);
  for (uint32_t v : map) {
    if (v >= n || used[v]) {
      return false;
    }
    used[v] = 1;
  }
  for (uint32_t i = 0; i < m; ++i) {
    for (uint32_t j = 0; j < m; ++j) {
      if (target.product(map[i], map[j]) != map[source.product(i, j)]) {
        return false;
      }
    }
  }
  return true;
}

namespace {

  constexpr uint32_t no_element = static_cast<uint32_t>(-1);

  // Immutable data for one search; shared read-only across branches.
  struct SearchProblem {
    const CayleyTable& source;
    const CayleyTable& target;
    std::vector<std::vector<uint32_t>> candidate_pool;
    std::vector<uint32_t> candidates_of;  // per source element, index into pool
    std::vector<uint32_t> order;          // assignment order (fail-first)
    std::size_t limit = all_solutions;

    const std::vector<uint32_t>& candidates(uint32_t u) const {
      return candidate_pool[candidates_of[u]];
    }
  };

  // Mutable state of one depth-first branch.
  //
  // Beyond the PartialMap itself, the branch tracks the "undefined product"
  // constraints as forced assignments: when a product of two assigned
  // elements is an unassigned w, its target value p is already determined,
  // so p is reserved for w (forced_target[p] = w, forced_source[w] = p).
  // A later assignment may then consult both directions in constant time;
  // the trail undoes the reservations on backtrack.
  struct Branch {
    explicit Branch(const SearchProblem& p) : problem(p) {
      uint32_t m = p.source.order();
      uint32_t n = p.target.order();
      map.assignment.assign(m, PartialMap::npos);
      map.used.assign(n, 0);
      map.assigned.reserve(m);
      forced_target.assign(n, no_element);
      forced_source.assign(m, no_element);
    }

    const SearchProblem& problem;
    PartialMap map;
    std::vector<uint32_t> forced_target;
    std::vector<uint32_t> forced_source;
    std::vector<std::pair<uint32_t, uint32_t>> trail;  // committed (target, source)
    std::vector<std::size_t> trail_mark;
    std::vector<std::pair<uint32_t, uint32_t>> pending;
    std::vector<std::vector<uint32_t>> solutions;
    uint64_t nodes = 0;
    uint64_t leaves = 0;
    bool done = false;

    // Full consistency check of the tentative assignment u -> t; fills
    // `pending` with the (target, source) reservations it would create.
    bool consistent(uint32_t u, uint32_t t) {
      if (map.used[t]) {
        return false;
      }
      if (forced_target[t] != no_element && forced_target[t] != u) {
        return false;
      }
      if (forced_source[u] != no_element && forced_source[u] != t) {
        return false;
      }
      pending.clear();
      auto check_pair = [&](uint32_t a, uint32_t b, uint32_t ta, uint32_t tb) {
        uint32_t w = problem.source.product(a, b);
        uint32_t p = problem.target.product(ta, tb);
        if (w == u) {
          return p == t;
        }
        if (uint32_t fw = map.assignment[w]; fw != PartialMap::npos) {
          return p == fw;
        }
        // w stays unassigned, so its image p must stay available for it.
        if (map.used[p] || p == t) {
          return false;
        }
        if (forced_target[p] != no_element) {
          return forced_target[p] == w;  // reservation already recorded
        }
        if (forced_source[w] != no_element) {
          return false;  // w is reserved for a different target
        }
        pending.emplace_back(p, w);
        return true;
      };
      if (!check_pair(u, u, t, t)) {
        return false;
      }
      for (uint32_t v : map.assigned) {
        uint32_t tv = map.assignment[v];
        if (!check_pair(u, v, t, tv) || !check_pair(v, u, tv, t)) {
          return false;
        }
      }
      if (pending.size() > 1) {
        std::sort(pending.begin(), pending.end());
        pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
        for (std::size_t i = 0; i + 1 < pending.size(); ++i) {
          if (pending[i].first == pending[i + 1].first) {
            return false;  // one target reserved for two sources
          }
        }
        for (std::size_t i = 0; i < pending.size(); ++i) {
          for (std::size_t j = i + 1; j < pending.size(); ++j) {
            if (pending[i].second == pending[j].second) {
              return false;  // one source forced to two targets
            }
          }
        }
      }
      return true;
    }

    // Must directly follow a successful consistent(u, t).
    void commit(uint32_t u, uint32_t t) {
      map.assignment[u] = t;
      map.used[t] = 1;
      map.assigned.push_back(u);
      trail_mark.push_back(trail.size());
      for (auto [p, w] : pending) {
        forced_target[p] = w;
        forced_source[w] = p;
        trail.emplace_back(p, w);
      }
    }

    void undo(uint32_t u, uint32_t t) {
      std::size_t mark = trail_mark.back();
      trail_mark.pop_back();
      while (trail.size() > mark) {
        auto [p, w] = trail.back();
        trail.pop_back();
        forced_target[p] = no_element;
        forced_source[w] = no_element;
      }
      map.assigned.pop_back();
      map.used[t] = 0;
      map.assignment[u] = PartialMap::npos;
    }

    void attempt(uint32_t u, uint32_t t, std::size_t depth, bool last) {
      ++nodes;
      if (last) {
        ++leaves;
      }
      if (consistent(u, t)) {
        commit(u, t);
        search(depth + 1);
        undo(u, t);
      }
    }

    void search(std::size_t depth) {
      if (done) {
        return;
      }
      if (depth == problem.order.size()) {
        if (!is_embedding(problem.source, problem.target, map.assignment)) {
          throw std::logic_error("search engine produced an invalid map");
        }
        solutions.push_back(map.assignment);
        if (solutions.size() >= problem.limit) {
          done = true;
        }
        return;
      }
      uint32_t u = problem.order[depth];
      bool last = depth + 1 == problem.order.size();
      if (uint32_t t = forced_source[u]; t != no_element) {
        const auto& cand = problem.candidates(u);
        if (std::binary_search(cand.begin(), cand.end(), t)) {
          attempt(u, t, depth, last);
        }
        return;
      }
      for (uint32_t t : problem.candidates(u)) {
        if (map.used[t] || forced_target[t] != no_element) {
          continue;
        }
        attempt(u, t, depth, last);
        if (done) {
          return;
        }
      }
    }
  };

  struct RunResult {
    std::vector<std::vector<uint32_t>> solutions;
    uint64_t nodes = 0;
    uint64_t leaves = 0;
  };

  RunResult run_branches(const SearchProblem& problem, int threads) {
    bool parallel = threads > 1 && problem.limit == all_solutions && !problem.order.empty();
    if (!parallel) {
      Branch branch(problem);
      branch.search(0);
      return {std::move(branch.solutions), branch.nodes, branch.leaves};
    }
    // Deterministic split on the root candidates: each branch explores one
    // root assignment; merging in candidate order reproduces the
    // sequential result exactly.
    uint32_t u0 = problem.order[0];
    const auto& roots = problem.candidates(u0);
    bool last = problem.order.size() == 1;
    std::vector<RunResult> parts(roots.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
    for (std::size_t r = 0; r < roots.size(); ++r) {
      Branch branch(problem);
      branch.attempt(u0, roots[r], 0, last);
      parts[r] = {std::move(branch.solutions), branch.nodes, branch.leaves};
    }
    RunResult out;
    for (auto& part : parts) {
      out.nodes += part.nodes;
      out.leaves += part.leaves;
      for (auto& s : part.solutions) {
        out.solutions.push_back(std::move(s));
      }
    }
    return out;
  }

  // Shared driver for embeddings, isomorphisms and automorphisms.
  SolutionSet run_problem(const CayleyTable& source,
                          const CayleyTable& target,
                          PartitionMode mode,
                          const SearchOptions& options,
                          SearchStats* stats) {
    uint32_t m = source.order();
    uint32_t n = target.order();
    SearchStats local_stats;
    SearchStats& st = stats != nullptr ? *stats : local_stats;
    st = SearchStats{};
    SolutionSet out;
    if (options.limit == 0) {
      return out;
    }
    if (mode == PartitionMode::isomorphism && m != n) {
      st.feasible = false;
      st.infeasible_reason = "orders differ: " + std::to_string(m) + " vs " + std::to_string(n);
      return out;
    }
    auto outcome = build_partition(source, target, mode, options.threads);
    std::vector<uint32_t> class_size(m, n);
    SearchProblem problem{source, target, {}, {}, {}, options.limit};
    problem.candidates_of.assign(m, 0);
    if (outcome.partition.has_value()) {
      const auto& partition = *outcome.partition;
      st.class_count = partition.classes.size();
      st.search_space = search_space_size(partition);
      if (options.use_partition) {
        problem.candidate_pool.reserve(partition.classes.size());
        for (const auto& cls : partition.classes) {
          for (uint32_t s : cls.source_elements) {
            class_size[s] = static_cast<uint32_t>(cls.target_elements.size());
            problem.candidates_of[s] = static_cast<uint32_t>(problem.candidate_pool.size());
          }
          problem.candidate_pool.push_back(cls.target_elements);
        }
      } else {
        for (const auto& cls : partition.classes) {
          for (uint32_t s : cls.source_elements) {
            class_size[s] = static_cast<uint32_t>(cls.target_elements.size());
          }
        }
      }
    } else {
      st.feasible = false;
      st.infeasible_reason = outcome.infeasible_reason;
      st.search_space = 0;
      if (options.use_partition) {
        return out;  // invariants alone rule the search out
      }
    }
    if (!options.use_partition) {
      // Single class holding every target: no pruning, but the fail-first
      // order is kept so node counts compare like for like.
      std::vector<uint32_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      problem.candidate_pool.assign(1, std::move(all));
      problem.candidates_of.assign(m, 0);
      st.class_count = 1;
      st.search_space = falling_factorial(n, m);
    }
    if (m > n) {
      return out;  // injectivity is impossible; partition is infeasible too
    }
    problem.order.resize(m);
    std::iota(problem.order.begin(), problem.order.end(), 0);
    std::sort(problem.order.begin(), problem.order.end(), [&](uint32_t a, uint32_t b) {
      return class_size[a] != class_size[b] ? class_size[a] < class_size[b] : a < b;
    });
    RunResult result = run_branches(problem, options.threads);
    st.nodes = result.nodes;
    st.leaves = result.leaves;
    st.raw_solutions = result.solutions.size();
    std::sort(result.solutions.begin(), result.solutions.end());
    out.maps = std::move(result.solutions);
    out.images.reserve(out.maps.size());
    for (const auto& mp : out.maps) {
      std::vector<uint32_t> image(mp);
      std::sort(image.begin(), image.end());
      out.images.push_back(std::move(image));
    }
    return out;
  }

}  // namespace

SolutionSet find_embeddings(const CayleyTable& source,
                            const CayleyTable& target,
                            const SearchOptions& options,
                            SearchStats* stats) {
  return run_problem(source, target, PartitionMode::embedding, options, stats);
}

std::optional<std::vector<uint32_t>> find_isomorphism(const CayleyTable& a,
                                                      const CayleyTable& b,
                                                      const SearchOptions& options,
                                                      SearchStats* stats) {
  SearchOptions opts = options;
  opts.limit = 1;
  SolutionSet found = run_problem(a, b, PartitionMode::isomorphism, opts, stats);
  if (found.empty()) {
    return std::nullopt;
  }
  return std::move(found.maps.front());
}

namespace {

  void verify_group(const SolutionSet& group, uint32_t n) {
    std::map<std::vector<uint32_t>, std::size_t> index;
    for (std::size_t i = 0; i < group.maps.size(); ++i) {
      index.emplace(group.maps[i], i);
    }
    std::vector<uint32_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    if (index.find(identity) == index.end()) {
      throw std::logic_error("automorphisms do not contain the identity");
    }
    for (const auto& f : group.maps) {
      std::vector<uint32_t> inverse(n);
      for (uint32_t i = 0; i < n; ++i) {
        inverse[f[i]] = i;
      }
      if (index.find(inverse) == index.end()) {
        throw std::logic_error("automorphisms are not closed under inverse");
      }
      for (const auto& g : group.maps) {
        std::vector<uint32_t> fg(n);
        for (uint32_t i = 0; i < n; ++i) {
          fg[i] = g[f[i]];
        }
        if (index.find(fg) == index.end()) {
          throw std::logic_error("automorphisms are not closed under composition");
        }
      }
    }
  }

}  // namespace

SolutionSet automorphism_group(const CayleyTable& table,
                               const SearchOptions& options,
                               SearchStats* stats) {
  SearchOptions opts = options;
  opts.limit = all_solutions;
  SolutionSet out = run_problem(table, table, PartitionMode::isomorphism, opts, stats);
  verify_group(out, table.order());
  return out;
}

namespace {

  // One representative map per orbit of images under the index
  // permutations. rank translates indices into canonical-encoding order
  // (identity when index order is already canonical).
  SolutionSet dedup_by_perms(const SolutionSet& in,
                             const std::vector<std::vector<uint32_t>>& perms,
                             const std::vector<uint32_t>& rank,
                             DedupMode mode) {
    SolutionSet out;
    out.dedup_mode = mode;
    auto ranked_image = [&rank](const std::vector<uint32_t>& image) {
      std::vector<uint32_t> r;
      r.reserve(image.size());
      for (uint32_t v : image) {
        r.push_back(rank[v]);
      }
      std::sort(r.begin(), r.end());
      return r;
    };
    std::map<std::vector<uint32_t>, std::size_t> best;  // canonical image -> index in `in`
    std::vector<uint32_t> moved;
    for (std::size_t s = 0; s < in.maps.size(); ++s) {
      std::vector<uint32_t> canonical;
      for (const auto& pi : perms) {
        moved.clear();
        for (uint32_t v : in.images[s]) {
          moved.push_back(pi[v]);
        }
        std::vector<uint32_t> r = ranked_image(moved);
        if (canonical.empty() || r < canonical) {
          canonical = std::move(r);
        }
      }
      if (canonical.empty()) {  // no permutations given: trivial action
        canonical = ranked_image(in.images[s]);
      }
      auto [it, inserted] = best.emplace(std::move(canonical), s);
      if (!inserted) {
        std::size_t cur = it->second;
        auto key = [&](std::size_t i) {
          return std::make_pair(ranked_image(in.images[i]), in.maps[i]);
        };
        if (key(s) < key(cur)) {
          it->second = s;
        }
      }
    }
    std::vector<std::size_t> keep;
    keep.reserve(best.size());
    for (const auto& [canonical, idx] : best) {
      keep.push_back(idx);
    }
    std::sort(keep.begin(), keep.end(),
              [&in](std::size_t a, std::size_t b) { return in.maps[a] < in.maps[b]; });
    for (std::size_t idx : keep) {
      out.maps.push_back(in.maps[idx]);
      out.images.push_back(in.images[idx]);
    }
    return out;
  }

  std::vector<uint32_t> encoding_rank(const GeneratedTable& table) {
    uint32_t n = table.table.order();
    std::vector<uint32_t> by_encoding(n);
    std::iota(by_encoding.begin(), by_encoding.end(), 0);
    std::vector<std::string> enc(n);
    for (uint32_t i = 0; i < n; ++i) {
      enc[i] = encode(table.elements[i]);
    }
    std::sort(by_encoding.begin(), by_encoding.end(),
              [&enc](uint32_t a, uint32_t b) { return enc[a] < enc[b]; });
    std::vector<uint32_t> rank(n);
    for (uint32_t i = 0; i < n; ++i) {
      rank[by_encoding[i]] = i;
    }
    return rank;
  }

  std::vector<uint32_t> identity_rank(uint32_t n) {
    std::vector<uint32_t> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    return rank;
  }

}  // namespace

SolutionSet dedup_images_conjugation(const SolutionSet& solutions, const GeneratedTable& target) {
  auto perms = conjugation_action(target);
  return dedup_by_perms(solutions, perms, encoding_rank(target), DedupMode::conjugation);
}

SolutionSet dedup_images_automorphism(const SolutionSet& solutions, const CayleyTable& target) {
  SolutionSet automorphisms = automorphism_group(target);
  return dedup_by_perms(solutions, automorphisms.maps, identity_rank(target.order()),
                        DedupMode::automorphism);
}

MinimalDegreeResult minimal_degree(const CayleyTable& source,
                                   Family family,
                                   uint32_t max_degree,
                                   std::size_t cap,
                                   int threads,
                                   void (*progress)(uint32_t, bool, void*),
                                   void* progress_arg) {
  MinimalDegreeResult out;
  for (uint32_t d = 1; d <= max_degree; ++d) {
    GeneratedTable family_table = build_family(family, d, cap, threads);
    SearchOptions options;
    options.limit = 1;
    options.threads = threads;
    bool embeds = !find_embeddings(source, family_table.table, options).empty();
    ++out.degrees_scanned;
    if (progress != nullptr) {
      progress(d, embeds, progress_arg);
    }
    if (embeds) {
      out.degree = d;
      return out;
    }
  }
  return out;
}

namespace {

  std::vector<TwoGenWay> twogen_impl(const CayleyTable& source,
                                     const CayleyTable& target,
                                     const GeneratedTable* payloads,
                                     int threads,
                                     TwoGenStats* stats) {
    uint32_t m = source.order();
    uint32_t n = target.order();
    TwoGenStats local_stats;
    TwoGenStats& st = stats != nullptr ? *stats : local_stats;
    st = TwoGenStats{};
    // 1. Close every unordered pair; keep closures strictly larger than the
    // source, merged as sets under the lexicographically least pair.
    std::map<std::vector<uint32_t>, std::pair<uint32_t, uint32_t>> closures;
    for (uint32_t x = 0; x < n; ++x) {
      for (uint32_t y = x; y < n; ++y) {
        ++st.pairs;
        uint32_t seed[2] = {x, y};
        std::vector<uint32_t> closed = close_indices(target, seed);
        if (closed.size() <= m) {
          continue;
        }
        auto [it, inserted] = closures.emplace(std::move(closed), std::make_pair(x, y));
        if (!inserted && std::make_pair(x, y) < it->second) {
          it->second = std::make_pair(x, y);
        }
      }
    }
    st.distinct_closures = closures.size();
    // 2. Dedup the closures up to conjugation, extended by the duality flip
    // when the elements carry one.
    std::vector<std::vector<uint32_t>> perms;
    std::vector<uint32_t> rank = identity_rank(n);
    if (payloads != nullptr) {
      try {
        perms = conjugation_action(*payloads);
        rank = encoding_rank(*payloads);
        st.conjugation_available = true;
      } catch (const UnsupportedActionError&) {
      }
      if (st.conjugation_available) {
        if (auto dual = duality_action(*payloads); dual.has_value()) {
          st.duality_available = true;
          std::size_t conj_count = perms.size();
          for (std::size_t p = 0; p < conj_count; ++p) {
            std::vector<uint32_t> composite(n);
            for (uint32_t v = 0; v < n; ++v) {
              composite[v] = (*dual)[perms[p][v]];
            }
            perms.push_back(std::move(composite));
          }
          std::sort(perms.begin(), perms.end());
          perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
        }
      }
    }
    auto canonical_of = [&](const std::vector<uint32_t>& set) {
      std::vector<uint32_t> canonical;
      std::vector<uint32_t> moved;
      moved.reserve(set.size());
      auto ranked = [&rank](std::vector<uint32_t> v) {
        for (uint32_t& x : v) {
          x = rank[x];
        }
        std::sort(v.begin(), v.end());
        return v;
      };
      for (const auto& pi : perms) {
        moved.clear();
        for (uint32_t v : set) {
          moved.push_back(pi[v]);
        }
        std::vector<uint32_t> r = ranked(moved);
        if (canonical.empty() || r < canonical) {
          canonical = std::move(r);
        }
      }
      if (canonical.empty()) {
        canonical = ranked(set);
      }
      return canonical;
    };
    struct Rep {
      std::vector<uint32_t> closure;
      std::pair<uint32_t, uint32_t> pair;
    };
    std::map<std::vector<uint32_t>, Rep> representatives;
    for (const auto& [closed, pair] : closures) {
      auto canonical = canonical_of(closed);
      auto [it, inserted] = representatives.emplace(std::move(canonical), Rep{closed, pair});
      if (!inserted && std::tie(closed, pair) < std::tie(it->second.closure, it->second.pair)) {
        it->second = Rep{closed, pair};
      }
    }
    st.closure_classes = representatives.size();
    // 3. Search each surviving closure; report ways that admit embeddings,
    // images deduped under the same action.
    std::vector<TwoGenWay> ways;
    for (const auto& [canonical, rep] : representatives) {
      CayleyTable sub = subtable(target, rep.closure);
      SearchOptions options;
      options.threads = threads;
      SolutionSet found = find_embeddings(source, sub, options);
      if (found.empty()) {
        continue;
      }
      SolutionSet global;
      global.maps.reserve(found.size());
      for (const auto& mp : found.maps) {
        std::vector<uint32_t> lifted(mp.size());
        for (std::size_t i = 0; i < mp.size(); ++i) {
          lifted[i] = rep.closure[mp[i]];
        }
        std::vector<uint32_t> image(lifted);
        std::sort(image.begin(), image.end());
        global.maps.push_back(std::move(lifted));
        global.images.push_back(std::move(image));
      }
      TwoGenWay way;
      way.generators = rep.pair;
      way.closure = rep.closure;
      way.embeddings = dedup_by_perms(global, perms, rank,
                                      st.conjugation_available ? DedupMode::conjugation
                                                               : DedupMode::none);
      ways.push_back(std::move(way));
    }
    return ways;
  }

}  // namespace

std::vector<TwoGenWay> two_generated_embeddings(const CayleyTable& source,
                                                const GeneratedTable& target,
                                                int threads,
                                                TwoGenStats* stats) {
  return twogen_impl(source, target.table, &target, threads, stats);
}

std::vector<TwoGenWay> two_generated_embeddings(const CayleyTable& source,
                                                const CayleyTable& target,
                                                int threads,
                                                TwoGenStats* stats) {
  return twogen_impl(source, target, nullptr, threads, stats);
}

}  // namespace sgembed
