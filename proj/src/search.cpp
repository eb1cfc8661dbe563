#include "setfam/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

namespace setfam {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Feasible: return "feasible";
    case SearchStatus::Infeasible: return "infeasible";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

namespace {

using Col = std::uint32_t;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMaxCandidates = std::uint64_t{1} << 22;
constexpr std::uint64_t kNoTask = std::numeric_limits<std::uint64_t>::max();

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Every one of the 2^m sign patterns of cols[0..m) occurs in some row of `cell`.
bool all_cells(const Col* cols, int m, Col cell, Col rows) {
  if (cell == 0) return false;
  if (m == 0) return true;
  return all_cells(cols + 1, m - 1, cell & cols[0], rows) &&
         all_cells(cols + 1, m - 1, cell & ~cols[0] & rows, rows);
}

struct Task {
  std::uint64_t seq = 0;
  Col first = 0;
  std::shared_ptr<const std::vector<Col>> level1;  // empty when n == 1
  std::size_t second = 0;
};

class DualSearch {
 public:
  DualSearch(int d, int n, int k, const SearchOptions& opt)
      : d_(d), n_(n), k_(k), rows_(static_cast<Col>(low_bits(k))),
        sym_(opt.use_symmetry), strict_(opt.use_symmetry && d >= 2),
        budget_(opt.node_budget), threads_(std::max(1, opt.threads)) {
    build_candidates();
  }

  std::uint64_t candidate_count() const { return candidates_.size(); }
  std::uint64_t nodes() const { return nodes_.load(); }
  bool budget_hit() const { return budget_hit_.load(); }

  std::optional<std::vector<Col>> run() {
    if (threads_ == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (int i = 0; i < threads_; ++i) pool.emplace_back([this] { worker(); });
    }
    if (best_seq_.load() == kNoTask) return std::nullopt;
    return best_;
  }

 private:
  void build_candidates() {
    const int lo = sym_ ? (1 << (d_ - 1)) : 1;
    const int hi = sym_ ? k_ - (1 << (d_ - 1)) : k_ - 1;
    std::uint64_t total = 0;
    for (int w = lo; w <= hi; ++w) total += binom(k_, w);
    if (total > kMaxCandidates)
      fail(ErrorKind::Capacity, "too many admissible columns for k = " + std::to_string(k_));
    for (int w = lo; w <= hi; ++w) {
      for (std::uint64_t m : masks_of_weight(k_, w)) candidates_.push_back(static_cast<Col>(m));
    }
    std::sort(candidates_.begin(), candidates_.end());
  }

  bool count_node() {
    const std::uint64_t v = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (budget_ && v > budget_) {
      budget_hit_.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }

  bool should_stop(std::uint64_t seq) const {
    return budget_hit_.load(std::memory_order_relaxed) ||
           best_seq_.load(std::memory_order_relaxed) < seq;
  }

  // y may follow `chosen` (whose last entry is the newest column) iff every
  // j-tuple, 2 <= j <= d, made of y, the newest column and j-2 older columns
  // shows all sign patterns.
  bool compatible(const std::vector<Col>& chosen, Col y) const {
    const int older = static_cast<int>(chosen.size()) - 1;
    Col tuple[64];
    for (int j = 2; j <= d_; ++j) {
      const int pick = j - 2;
      if (pick > older) break;
      tuple[pick] = chosen.back();
      tuple[pick + 1] = y;
      if (!tuples_ok(chosen, older, pick, 0, 0, tuple, j)) return false;
    }
    return true;
  }

  bool tuples_ok(const std::vector<Col>& chosen, int older, int pick, int from, int filled,
                 Col* tuple, int j) const {
    if (filled == pick) return all_cells(tuple, j, rows_, rows_);
    for (int i = from; i <= older - (pick - filled); ++i) {
      tuple[filled] = chosen[i];
      if (!tuples_ok(chosen, older, pick, i + 1, filled + 1, tuple, j)) return false;
    }
    return true;
  }

  std::vector<Col> filter(const std::vector<Col>& allowed, std::size_t from,
                          const std::vector<Col>& chosen) const {
    std::vector<Col> next;
    next.reserve(allowed.size() - std::min(from, allowed.size()));
    for (std::size_t i = from; i < allowed.size(); ++i) {
      if (compatible(chosen, allowed[i])) next.push_back(allowed[i]);
    }
    return next;
  }

  std::size_t successor_start(std::size_t i) const {
    if (!sym_) return 0;
    return strict_ ? i + 1 : i;
  }

  bool dfs(std::vector<Col>& chosen, const std::vector<Col>& allowed, std::uint64_t seq) {
    const std::size_t need = n_ - chosen.size();
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      if (strict_ && allowed.size() - i < need) return false;
      if (should_stop(seq) || !count_node()) return false;
      chosen.push_back(allowed[i]);
      if (need == 1) return true;
      const auto next = filter(allowed, successor_start(i), chosen);
      if (dfs(chosen, next, seq)) return true;
      chosen.pop_back();
    }
    return false;
  }

  // First columns: with symmetry, the prefix-of-ones mask of each admissible
  // weight, followed only by columns of at least that weight.
  std::vector<Col> first_columns() const {
    if (!sym_) return candidates_;
    std::vector<Col> out;
    const int lo = 1 << (d_ - 1);
    for (int w = lo; w <= k_ - lo; ++w) out.push_back(static_cast<Col>(low_bits(w)));
    return out;
  }

  std::shared_ptr<const std::vector<Col>> level1_for(Col first) const {
    std::vector<Col> pool;
    if (sym_) {
      const int w = popcount(first);
      for (Col c : candidates_) {
        if (popcount(c) >= w && (strict_ ? c > first : c >= first)) pool.push_back(c);
      }
    } else {
      pool = candidates_;
    }
    const std::vector<Col> chosen = {first};
    return std::make_shared<const std::vector<Col>>(filter(pool, 0, chosen));
  }

  // Tasks in depth-first order: (first column, index into its level-1 list).
  bool next_task(Task& out) {
    std::lock_guard lock(gen_mu_);
    if (firsts_.empty() && !gen_started_) {
      firsts_ = first_columns();
      gen_started_ = true;
    }
    while (true) {
      if (level1_ && gen_second_ < level1_->size()) {
        if (strict_ && level1_->size() - gen_second_ < static_cast<std::size_t>(n_ - 1)) {
          level1_.reset();
          continue;
        }
        out = {next_seq_++, gen_first_value_, level1_, gen_second_++};
        return true;
      }
      level1_.reset();
      if (gen_first_ >= firsts_.size()) return false;
      if (budget_hit_.load() || best_seq_.load() != kNoTask) return false;
      const Col first = firsts_[gen_first_++];
      if (!count_node()) return false;
      if (n_ == 1) {
        out = {next_seq_++, first, nullptr, 0};
        return true;
      }
      gen_first_value_ = first;
      level1_ = level1_for(first);
      gen_second_ = 0;
    }
  }

  void worker() {
    Task task;
    while (next_task(task)) {
      if (should_stop(task.seq)) continue;
      std::vector<Col> chosen = {task.first};
      bool found = false;
      if (!task.level1) {
        found = true;
      } else if (count_node()) {
        chosen.push_back((*task.level1)[task.second]);
        if (n_ == 2) {
          found = true;
        } else {
          const auto next = filter(*task.level1, successor_start(task.second), chosen);
          found = dfs(chosen, next, task.seq);
        }
      }
      if (found) {
        std::lock_guard lock(best_mu_);
        if (task.seq < best_seq_.load()) {
          best_seq_.store(task.seq);
          best_ = chosen;
        }
      }
    }
  }

  int d_, n_, k_;
  Col rows_;
  bool sym_, strict_;
  std::uint64_t budget_;
  int threads_;
  std::vector<Col> candidates_;

  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> budget_hit_{false};
  std::atomic<std::uint64_t> best_seq_{kNoTask};
  std::mutex best_mu_;
  std::vector<Col> best_;

  std::mutex gen_mu_;
  bool gen_started_ = false;
  std::vector<Col> firsts_;
  std::size_t gen_first_ = 0;
  Col gen_first_value_ = 0;
  std::shared_ptr<const std::vector<Col>> level1_;
  std::size_t gen_second_ = 0;
  std::uint64_t next_seq_ = 0;
};

void check_search_guards(int d, int n, int k) {
  if (d < 1 || n < d) fail(ErrorKind::InvalidInput, "search requires 1 <= d <= n");
  if (n > kMaxGround) fail(ErrorKind::Capacity, "n exceeds 64");
  if (k < 1) fail(ErrorKind::InvalidInput, "k must be at least 1");
  if (k > kMaxSearchRows) fail(ErrorKind::Capacity, "k exceeds 30");
}

// Rows of the dual witness, padded with the smallest absent sets up to k
// distinct members (adding sets never destroys shattering).
SetFamily witness_from_columns(int n, int k, const std::vector<Subset>& columns) {
  SetFamily f = transpose_columns(k, columns);
  for (std::uint64_t m = 0; f.size() < static_cast<std::size_t>(k); ++m) {
    if (!f.contains(Subset(m))) f = f.with(Subset(m));
  }
  (void)n;
  return f;
}

bool more_sets_than_subsets(int n, int k) {
  return n < 6 && static_cast<std::uint64_t>(k) > (std::uint64_t{1} << n);
}

}  // namespace

SearchOutcome feasible(int d, int n, int k, const SearchOptions& options) {
  check_search_guards(d, n, k);
  const auto start = Clock::now();
  SearchOutcome out{.d = d, .n = n, .k = k};
  out.certificate.symmetry_config =
      options.use_symmetry ? (d >= 2 ? "sym-v1:increasing-columns,min-weight-prefix-first,"
                                       "weight-window,pairwise-cells"
                                     : "sym-v1:nondecreasing-columns,min-weight-prefix-first,"
                                       "weight-window")
                           : "none:ordered-columns";

  // A d-set needs 2^d distinct traces; a family of k distinct sets needs k <= 2^n.
  if (d >= 31 || (1 << d) > k || more_sets_than_subsets(n, k)) {
    out.status = SearchStatus::Infeasible;
    out.certificate.wall_seconds = seconds_since(start);
    return out;
  }
  if (!options.use_symmetry && k > 16)
    fail(ErrorKind::Capacity, "unpruned search limited to k <= 16");

  DualSearch search(d, n, k, options);
  const auto found = search.run();
  out.certificate.nodes = search.nodes();
  out.certificate.candidates = search.candidate_count();
  if (found) {
    out.status = SearchStatus::Feasible;
    for (Col c : *found) out.columns.emplace_back(c);
    out.witness = witness_from_columns(n, k, out.columns);
    if (out.witness->size() != static_cast<std::size_t>(k) ||
        !shatters_all_of_size(*out.witness, d))
      fail(ErrorKind::Internal, "search witness failed re-verification");
    out.witness_index = index_of(*out.witness);
  } else {
    out.status = search.budget_hit() ? SearchStatus::BudgetExhausted : SearchStatus::Infeasible;
  }
  out.certificate.wall_seconds = seconds_since(start);
  return out;
}

SearchOutcome feasible(int d, int n, int k, bool use_symmetry) {
  SearchOptions opt;
  opt.use_symmetry = use_symmetry;
  return feasible(d, n, k, opt);
}

SearchOutcome brute_feasible(int d, int n, int k) {
  if (d < 1 || n < d) fail(ErrorKind::InvalidInput, "search requires 1 <= d <= n");
  if (k < 1) fail(ErrorKind::InvalidInput, "k must be at least 1");
  if (n > 20) fail(ErrorKind::Capacity, "enumeration oracle limited to n <= 20");
  const int universe = 1 << n;
  if (binom(universe, k) > 10'000'000)
    fail(ErrorKind::Capacity, "enumeration oracle limited to 10^7 candidate families");

  const auto start = Clock::now();
  SearchOutcome out{.d = d, .n = n, .k = k, .status = SearchStatus::Infeasible};
  out.certificate.symmetry_config = "none:primal-enumeration";
  out.certificate.candidates = binom(universe, k);
  if (k > universe) return out;

  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  std::vector<std::uint64_t> masks(k);
  while (true) {
    ++out.certificate.nodes;
    for (int i = 0; i < k; ++i) masks[i] = static_cast<std::uint64_t>(pick[i]);
    SetFamily f = SetFamily::from_masks(n, masks);
    if (shatters_all_of_size(f, d)) {
      out.status = SearchStatus::Feasible;
      out.witness_index = index_of(f);
      out.witness = std::move(f);
      break;
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == universe - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  out.certificate.wall_seconds = seconds_since(start);
  return out;
}

CdnResult exact_cdn(int d, int n, const CdnOptions& options) {
  check_search_guards(d, n, 1);
  CdnResult res{.d = d, .n = n};
  res.bounds = cdn_bounds(d, n);
  int kmax = 0;
  if (options.kmax) {
    kmax = *options.kmax;
  } else {
    if (res.bounds.upper > static_cast<std::uint64_t>(kMaxSearchRows))
      fail(ErrorKind::Capacity, "upper bound " + std::to_string(res.bounds.upper) +
                                    " exceeds the 30-row search limit; pass kmax");
    kmax = static_cast<int>(res.bounds.upper);
  }
  if (kmax > kMaxSearchRows) fail(ErrorKind::Capacity, "kmax exceeds 30");

  const int start = static_cast<int>(res.bounds.lower);
  std::string closed_source;
  for (const auto& t : res.bounds.lower_terms) {
    if (t.value == res.bounds.lower) {
      closed_source = t.source;
      break;
    }
  }

  auto record = [&](const SearchOutcome& o) {
    res.steps.push_back({o.k, o.status, o.certificate.nodes, o.certificate.wall_seconds});
  };

  bool below_refuted = false;
  if (options.confirm_lower && start - 1 >= 1) {
    const auto o = feasible(d, n, start - 1, options.search);
    record(o);
    if (o.status == SearchStatus::Feasible)
      fail(ErrorKind::Internal, "closed-form lower bound contradicted by a witness");
    if (o.status == SearchStatus::BudgetExhausted) return res;
    below_refuted = true;
  }

  for (int k = start; k <= kmax; ++k) {
    const auto o = feasible(d, n, k, options.search);
    record(o);
    if (o.status == SearchStatus::BudgetExhausted) return res;
    if (o.status == SearchStatus::Feasible) {
      res.resolved = true;
      res.value = k;
      res.witness = o.witness;
      res.witness_index = o.witness_index;
      res.lower_certified = k > start || below_refuted;
      res.lower_source = res.lower_certified ? "search" : closed_source;
      return res;
    }
  }
  return res;
}

std::vector<Q3Row> verify_q3(int n_max, const SearchOptions& options) {
  if (n_max < 2) fail(ErrorKind::InvalidInput, "n_max must be at least 2");
  if (n_max > 12) fail(ErrorKind::Capacity, "threshold verification limited to n_max <= 12");
  std::vector<Q3Row> rows;
  CdnOptions opt;
  opt.search = options;
  for (int n = 2; n <= n_max; ++n) {
    Q3Row row{.n = n, .predicted = q3_predicted(n), .exact = exact_cdn(2, n, opt)};
    row.agree = row.exact.resolved && row.exact.value == row.predicted;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace setfam
