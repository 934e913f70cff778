#include "prlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "prlab/errors.hpp"

namespace prlab {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Walks all k-tuples over [0, count) that include `forced` (count itself
// means "no forced slot"). Visitor returns false to stop early.
template <typename Visit>
bool for_each_index_tuple(int k, std::size_t count, std::size_t forced, Visit&& visit) {
  if (count == 0) return true;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    bool uses_forced = forced >= count;
    for (std::size_t v : idx) uses_forced = uses_forced || v == forced;
    if (uses_forced && !visit(idx)) return false;
    int pos = k - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == count) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return true;
  }
}

struct Searcher {
  const PropertySpec& spec;
  const Field& fld;
  std::vector<Vec> points;

  std::vector<Vec> tuple;  // scratch for forbidden-tuple assembly

  explicit Searcher(const PropertySpec& s, const Field& f, std::vector<Vec> pts)
      : spec(s), fld(f), points(std::move(pts)), tuple(static_cast<std::size_t>(s.k)) {}

  // True when chosen + candidate stays avoiding; only tuples through the
  // candidate are scanned, so callers must keep `chosen` avoiding throughout.
  bool extends(const std::vector<std::size_t>& chosen, std::size_t candidate) {
    std::size_t total = chosen.size() + 1;
    auto point_at = [&](std::size_t i) -> const Vec& {
      return i < chosen.size() ? points[chosen[i]] : points[candidate];
    };
    return for_each_index_tuple(
        spec.k, total, chosen.size(), [&](const std::vector<std::size_t>& idx) {
          for (std::size_t s = 0; s < idx.size(); ++s) tuple[s] = point_at(idx[s]);
          return !forbidden_tuple(spec, fld, tuple);
        });
  }
};

struct Candidate {
  std::size_t size = 0;
  std::vector<std::size_t> set;  // sorted enumeration indices

  bool better_than(const Candidate& other) const {
    if (size != other.size) return size > other.size;
    return set < other.set;  // lexicographically smallest witness wins ties
  }
};

Candidate to_candidate(std::vector<std::size_t> chosen) {
  std::sort(chosen.begin(), chosen.end());
  return Candidate{chosen.size(), std::move(chosen)};
}

struct DfsLimits {
  std::uint64_t node_cap = 0;
  double time_cap = 0;
  Clock::time_point start;
};

// Include-first depth-first search over order[pos..). Keeps the first
// maximum found, which is the lexicographically smallest in order-space.
struct DfsWorker {
  Searcher& searcher;
  const std::vector<std::size_t>& order;
  DfsLimits limits;
  std::uint64_t nodes = 0;
  bool truncated = false;
  Candidate best;

  void run(std::vector<std::size_t>& chosen, std::size_t pos) {
    ++nodes;
    if (limits.node_cap != 0 && nodes > limits.node_cap) {
      truncated = true;
      return;
    }
    if (limits.time_cap > 0 && (nodes & 4095) == 0 &&
        seconds_since(limits.start) > limits.time_cap) {
      truncated = true;
      return;
    }
    if (chosen.size() + (order.size() - pos) <= best.size) return;
    if (pos == order.size()) {
      best = to_candidate(chosen);
      return;
    }
    if (searcher.extends(chosen, order[pos])) {
      chosen.push_back(order[pos]);
      run(chosen, pos + 1);
      chosen.pop_back();
      if (truncated) return;
    }
    run(chosen, pos + 1);
  }
};

struct Task {
  std::vector<std::size_t> chosen;  // avoiding prefix, enumeration indices
  std::size_t pos = 0;              // next position in the visit order
};

std::vector<Vec> collect_points(const Field& fld, const SearchConfig& config) {
  if (config.n < 1 || config.n > 16) throw invalid_config("n must be in [1, 16]");
  if (config.max_points < 1 || config.max_points > 1'000'000)
    throw invalid_config("max_points must be in [1, 10^6]");
  std::uint64_t total = 1;
  for (int i = 0; i < config.n; ++i) {
    total *= fld.q();  // stays below 2^64: total <= 10^6 before each step
    if (total > config.max_points)
      throw invalid_config("q^n exceeds the configured point ceiling " +
                           std::to_string(config.max_points));
  }
  return enumerate_vectors(fld, config.n, config.max_points + 1);
}

std::vector<std::size_t> make_order(Searcher& searcher, const SearchConfig& config) {
  std::size_t count = searcher.points.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (config.ordering == PointOrdering::lex) return order;

  // Conflict degree: forbidden tuples through each point over the full space.
  double tuples = std::pow(static_cast<double>(count), searcher.spec.k);
  if (tuples > 1e7)
    throw invalid_config("degree ordering needs q^(nk) <= 10^7 tuples; use lex");
  std::vector<std::uint64_t> degree(count, 0);
  std::vector<Vec> tuple(static_cast<std::size_t>(searcher.spec.k));
  for_each_index_tuple(searcher.spec.k, count, count, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t s = 0; s < idx.size(); ++s) tuple[s] = searcher.points[idx[s]];
    if (forbidden_tuple(searcher.spec, searcher.fld, tuple))
      for (std::size_t v : idx) ++degree[v];
    return true;
  });
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  return order;
}

Candidate greedy_pass(Searcher& searcher, const std::vector<std::size_t>& order,
                      const std::vector<std::size_t>& forced) {
  std::vector<std::size_t> chosen = forced;
  for (std::size_t p : order)
    if (searcher.extends(chosen, p)) chosen.push_back(p);
  return to_candidate(std::move(chosen));
}

SearchResult finish_result(Searcher& searcher, const SearchConfig& config, Candidate best,
                           std::uint64_t nodes, bool exact, bool symmetry,
                           std::vector<std::size_t> order, Clock::time_point start) {
  SearchResult res;
  res.size = best.size;
  for (std::size_t i : best.set) res.best_set.push_back(searcher.points[i]);
  res.exact_optimal = exact;
  res.nodes_explored = nodes;
  res.symmetry_applied = symmetry;
  res.point_order = std::move(order);
  res.witness_check = check_avoids(config.property, searcher.fld, res.best_set).pass;
  res.elapsed_seconds = seconds_since(start);
  if (!res.witness_check)
    throw check_failure("search returned a set that fails the from-scratch avoidance check");
  return res;
}

}  // namespace

SearchMode search_mode_from_name(const std::string& name) {
  if (name == "exact") return SearchMode::exact;
  if (name == "greedy") return SearchMode::greedy;
  if (name == "random_restart") return SearchMode::random_restart;
  throw invalid_config("unknown search mode: " + name);
}

std::string search_mode_name(SearchMode mode) {
  switch (mode) {
    case SearchMode::exact: return "exact";
    case SearchMode::greedy: return "greedy";
    case SearchMode::random_restart: return "random_restart";
  }
  throw invalid_config("unknown search mode");
}

PointOrdering ordering_from_name(const std::string& name) {
  if (name == "lex") return PointOrdering::lex;
  if (name == "degree") return PointOrdering::degree;
  throw invalid_config("unknown point ordering: " + name);
}

std::string ordering_name(PointOrdering ordering) {
  return ordering == PointOrdering::lex ? "lex" : "degree";
}

AvoidanceCheck check_avoids(const PropertySpec& spec, const Field& fld,
                            std::span<const Vec> points, std::uint64_t budget) {
  validate_property(spec, fld);
  AvoidanceCheck res;
  if (points.empty()) return res;
  double tuples = std::pow(static_cast<double>(points.size()), spec.k);
  if (tuples > static_cast<double>(budget))
    throw budget_exceeded("avoidance scan needs " + std::to_string(tuples) +
                          " tuples, budget " + std::to_string(budget));
  std::vector<Vec> tuple(static_cast<std::size_t>(spec.k));
  for_each_index_tuple(spec.k, points.size(), points.size(),
                       [&](const std::vector<std::size_t>& idx) {
                         for (std::size_t s = 0; s < idx.size(); ++s) tuple[s] = points[idx[s]];
                         if (forbidden_tuple(spec, fld, tuple)) {
                           res.pass = false;
                           res.witness = tuple;
                           return false;
                         }
                         return true;
                       });
  return res;
}

AvoidanceCheck check_avoids_incremental(const PropertySpec& spec, const Field& fld,
                                        std::span<const Vec> points) {
  AvoidanceCheck res;
  if (points.empty()) return res;
  std::vector<Vec> tuple(static_cast<std::size_t>(spec.k));
  for_each_index_tuple(spec.k, points.size(), points.size() - 1,
                       [&](const std::vector<std::size_t>& idx) {
                         for (std::size_t s = 0; s < idx.size(); ++s) tuple[s] = points[idx[s]];
                         if (forbidden_tuple(spec, fld, tuple)) {
                           res.pass = false;
                           res.witness = tuple;
                           return false;
                         }
                         return true;
                       });
  return res;
}

bool sampled_translation_invariance(const PropertySpec& spec, const Field& fld, int n,
                                    std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::uint64_t> pick(0, fld.q() - 1);
  auto random_vec = [&] {
    Vec v(static_cast<std::size_t>(n));
    for (auto& c : v) c = fld.from_int(static_cast<std::int64_t>(pick(rng)));
    return v;
  };
  std::vector<Vec> tuple(static_cast<std::size_t>(spec.k));
  std::vector<Vec> shifted(static_cast<std::size_t>(spec.k));
  for (int s = 0; s < samples; ++s) {
    for (auto& t : tuple) t = random_vec();
    Vec shift = random_vec();
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      shifted[i] = tuple[i];
      for (int c = 0; c < n; ++c)
        shifted[i][static_cast<std::size_t>(c)] =
            fld.add(shifted[i][static_cast<std::size_t>(c)], shift[static_cast<std::size_t>(c)]);
    }
    if (property_holds(spec, fld, tuple) != property_holds(spec, fld, shifted)) return false;
  }
  return true;
}

SearchResult max_avoiding_set(const SearchConfig& config) {
  auto start = Clock::now();
  Field fld(config.field);
  validate_property(config.property, fld);
  Searcher searcher(config.property, fld, collect_points(fld, config));
  std::vector<std::size_t> order = make_order(searcher, config);

  if (config.mode == SearchMode::greedy || config.mode == SearchMode::random_restart) {
    std::uint64_t nodes = 0;
    Candidate best = greedy_pass(searcher, order, {});
    nodes += order.size();
    if (config.mode == SearchMode::random_restart) {
      if (config.restarts < 1 || config.restarts > 100000)
        throw invalid_config("restarts must be in [1, 10^5]");
      for (int r = 0; r < config.restarts; ++r) {
        std::vector<std::size_t> shuffled = order;
        std::mt19937_64 rng(config.seed + static_cast<std::uint64_t>(r) * 0x100000001b3ULL);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        Candidate c = greedy_pass(searcher, shuffled, {});
        nodes += shuffled.size();
        if (c.better_than(best)) best = std::move(c);
      }
    }
    return finish_result(searcher, config, std::move(best), nodes, false, false,
                         std::move(order), start);
  }

  // Exact mode. Fixing the zero vector is sound only when translating a set
  // never changes avoidance, so the kind flag is re-checked by sampling.
  bool symmetry = config.symmetry_reduction &&
                  translation_invariant_kind(config.property.kind) &&
                  sampled_translation_invariance(config.property, fld, config.n, config.seed);
  std::vector<std::size_t> forced;
  std::vector<std::size_t> free_order = order;
  std::uint64_t nodes = 0;
  if (symmetry) {
    if (!searcher.extends({}, 0)) {
      // Every singleton is forbidden (all are equivalent under translation).
      return finish_result(searcher, config, Candidate{}, 1, true, true, std::move(order),
                           start);
    }
    forced.push_back(0);
    free_order.erase(std::find(free_order.begin(), free_order.end(), std::size_t{0}));
    ++nodes;
  }

  Candidate seed_best = greedy_pass(searcher, free_order, forced);
  nodes += free_order.size();

  // Split the search tree at a fixed depth into tasks; each task explores its
  // subtree independently so results do not depend on scheduling.
  std::size_t threads = config.threads > 0
                            ? static_cast<std::size_t>(config.threads)
                            : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  // The split must not depend on the thread count, or node totals would.
  // A tight node budget also caps the split itself: probing a subtree root
  // during task generation is search work the budget has to pay for.
  std::size_t want_tasks = 64;
  if (config.node_budget != 0)
    want_tasks = static_cast<std::size_t>(std::min<std::uint64_t>(
        want_tasks, std::max<std::uint64_t>(1, config.node_budget / 2)));
  std::vector<Task> tasks{Task{forced, 0}};
  std::size_t depth = 0;
  while (tasks.size() < want_tasks && depth < free_order.size() && depth < 12) {
    std::vector<Task> next;
    for (Task& t : tasks) {
      if (t.pos != depth) {  // already a leaf beyond this depth
        next.push_back(std::move(t));
        continue;
      }
      ++nodes;
      if (searcher.extends(t.chosen, free_order[depth])) {
        Task inc = t;
        inc.chosen.push_back(free_order[depth]);
        inc.pos = depth + 1;
        next.push_back(std::move(inc));
      }
      t.pos = depth + 1;
      next.push_back(std::move(t));
    }
    tasks.swap(next);
    ++depth;
  }

  std::uint64_t slice = config.node_budget == 0
                            ? 0
                            : std::max<std::uint64_t>(1, config.node_budget / tasks.size());
  std::vector<Candidate> results(tasks.size());
  std::vector<std::uint64_t> task_nodes(tasks.size(), 0);
  std::vector<char> task_truncated(tasks.size(), 0);
  std::atomic<std::size_t> cursor{0};

  auto worker = [&] {
    // Each task needs its own Searcher scratch; points are shared read-only.
    Searcher local(config.property, fld, searcher.points);
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      DfsWorker dfs{local, free_order,
                    DfsLimits{slice, config.time_budget_seconds, start}};
      dfs.best = seed_best;  // prune against the seed; it stays a candidate
      std::vector<std::size_t> chosen = tasks[i].chosen;
      dfs.run(chosen, tasks[i].pos);
      results[i] = std::move(dfs.best);
      task_nodes[i] = dfs.nodes;
      task_truncated[i] = dfs.truncated ? 1 : 0;
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, tasks.size()); ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Candidate best = seed_best;
  bool truncated = false;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (results[i].better_than(best)) best = std::move(results[i]);
    nodes += task_nodes[i];
    truncated = truncated || task_truncated[i] != 0;
  }
  return finish_result(searcher, config, std::move(best), nodes, !truncated, symmetry,
                       std::move(order), start);
}

SearchResult max_avoiding_set_naive(const SearchConfig& config) {
  auto start = Clock::now();
  Field fld(config.field);
  validate_property(config.property, fld);
  Searcher searcher(config.property, fld, collect_points(fld, config));
  if (searcher.points.size() > 30)
    throw invalid_config("naive oracle is capped at 30 points");

  // Plain include/exclude over enumeration order; a branch dies the moment a
  // forbidden tuple appears. No bounding, no seed, no symmetry.
  std::uint64_t nodes = 0;
  Candidate best;
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    ++nodes;
    if (pos == searcher.points.size()) {
      Candidate c = to_candidate(chosen);
      if (c.better_than(best)) best = std::move(c);
      return;
    }
    if (searcher.extends(chosen, pos)) {
      chosen.push_back(pos);
      self(self, pos + 1);
      chosen.pop_back();
    }
    self(self, pos + 1);
  };
  rec(rec, 0);

  std::vector<std::size_t> order(searcher.points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return finish_result(searcher, config, std::move(best), nodes, true, false, std::move(order),
                       start);
}

SandwichReport sandwich_report(const SearchConfig& config, const BoundReport& bound) {
  SandwichReport rep;
  rep.search = max_avoiding_set(config);
  rep.bound_name = bound.name;
  rep.bound_value = bound.value;
  rep.consistent = Rat(static_cast<std::uint64_t>(rep.search.size)) <= bound.value;
  if (!rep.consistent)
    throw check_failure("search found an avoiding set of size " +
                        std::to_string(rep.search.size) + " exceeding bound " + bound.name +
                        " = " + to_string(bound.value) + "; refutation witness recorded");
  return rep;
}

}  // namespace prlab
