#include "setfam/explore.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace setfam {

namespace {

// Per-(d+1)-subset trace multiplicities; answers "would adding m shatter
// some (d+1)-subset" in O(binom(n, d+1)).
class ShatterTracker {
 public:
  ShatterTracker(int n, int d) : arity_(d + 1) {
    if (arity_ > n) return;
    for (std::uint64_t a : masks_of_weight(n, arity_)) targets_.push_back(a);
    const std::size_t width = std::size_t{1} << arity_;
    counts_.assign(targets_.size() * width, 0);
    distinct_.assign(targets_.size(), 0);
  }

  bool can_add(std::uint64_t m) const {
    const std::size_t width = std::size_t{1} << arity_;
    for (std::size_t t = 0; t < targets_.size(); ++t) {
      const std::size_t p = extract_bits(m, targets_[t]);
      if (counts_[t * width + p] == 0 && distinct_[t] + 1 == width) return false;
    }
    return true;
  }

  void add(std::uint64_t m) { update(m, +1); }
  void remove(std::uint64_t m) { update(m, -1); }

 private:
  void update(std::uint64_t m, int delta) {
    const std::size_t width = std::size_t{1} << arity_;
    for (std::size_t t = 0; t < targets_.size(); ++t) {
      auto& c = counts_[t * width + extract_bits(m, targets_[t])];
      if (delta > 0 && c++ == 0) ++distinct_[t];
      if (delta < 0 && --c == 0) --distinct_[t];
    }
  }

  int arity_;
  std::vector<std::uint64_t> targets_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::size_t> distinct_;
};

class MaximalExplorer {
 public:
  MaximalExplorer(int d, int n, const MaximalOptions& opt, MaximalCensus& out)
      : d_(d), n_(n), universe_(std::uint64_t{1} << n), opt_(opt), out_(out), tracker_(n, d),
        present_(universe_, false) {}

  void exhaustive() {
    out_.complete = descend(0);
  }

  void random() {
    std::mt19937_64 rng(opt_.seed);
    std::vector<std::uint64_t> order(universe_);
    std::iota(order.begin(), order.end(), 0);
    std::set<std::vector<std::uint64_t>> seen;
    while (out_.nodes + universe_ <= opt_.node_budget) {
      std::shuffle(order.begin(), order.end(), rng);
      ShatterTracker tracker(n_, d_);
      std::vector<std::uint64_t> members;
      for (std::uint64_t m : order) {
        ++out_.nodes;
        if (tracker.can_add(m)) {
          tracker.add(m);
          members.push_back(m);
        }
      }
      std::sort(members.begin(), members.end());
      if (seen.insert(members).second) emit(members);
    }
    out_.complete = false;
  }

 private:
  // Visits every family of VC-dimension <= d exactly once (members added in
  // ascending order). Returns false when the budget ran out.
  bool descend(std::uint64_t next) {
    if (++out_.nodes > opt_.node_budget) return false;
    bool maximal = true;
    for (std::uint64_t m = 0; m < universe_ && maximal; ++m) {
      if (!present_[m] && tracker_.can_add(m)) maximal = false;
    }
    if (maximal) {
      std::vector<std::uint64_t> members;
      for (std::uint64_t m = 0; m < universe_; ++m) {
        if (present_[m]) members.push_back(m);
      }
      emit(members);
    }
    for (std::uint64_t m = next; m < universe_; ++m) {
      if (!tracker_.can_add(m)) continue;
      tracker_.add(m);
      present_[m] = true;
      const bool ok = descend(m + 1);
      present_[m] = false;
      tracker_.remove(m);
      if (!ok) return false;
    }
    return true;
  }

  void emit(const std::vector<std::uint64_t>& members) {
    ++out_.families_found;
    ++out_.size_histogram[members.size()];
    const bool maximum = BigInt(members.size()) == out_.sauer;
    if (!maximum) ++out_.counterexample_candidates;
    if (out_.records.size() >= opt_.max_records) return;
    MaximalFamilyRecord r{.family = SetFamily::from_masks(n_, members), .d = d_};
    r.size = members.size();
    r.is_maximum = maximum;
    r.verified = verify_maximal(r.family, d_);
    if (!r.verified) ++out_.inconsistencies;
    out_.records.push_back(std::move(r));
  }

  int d_, n_;
  std::uint64_t universe_;
  const MaximalOptions& opt_;
  MaximalCensus& out_;
  ShatterTracker tracker_;
  std::vector<bool> present_;
};

}  // namespace

bool verify_maximal(const SetFamily& f, int d) {
  if (f.empty() || vc_dimension(f) > d) return false;
  const int n = f.ground().size();
  if (n > 16) fail(ErrorKind::Capacity, "maximality check limited to n <= 16");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (f.contains(Subset(m))) continue;
    if (vc_dimension(f.with(Subset(m))) <= d) return false;
  }
  return true;
}

MaximalCensus explore_maximal(int d, int n, const MaximalOptions& options) {
  if (d < 0 || d > n) fail(ErrorKind::InvalidInput, "explore_maximal requires 0 <= d <= n");
  GroundSet ground(n);
  if (options.mode == ExploreMode::Exhaustive && n > 6)
    fail(ErrorKind::Capacity, "exhaustive census limited to n <= 6");
  if (options.mode == ExploreMode::Random && n > 10)
    fail(ErrorKind::Capacity, "randomized completion limited to n <= 10");

  MaximalCensus out{.d = d, .n = n, .mode = options.mode, .seed = options.seed};
  out.sauer = sauer_bound(d, n);
  MaximalExplorer explorer(d, n, options, out);
  if (options.mode == ExploreMode::Exhaustive) {
    explorer.exhaustive();
  } else {
    explorer.random();
  }
  return out;
}

bool q5_condition_holds(const SetFamily& f) {
  const auto& m = f.members();
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = 0; b < m.size(); ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < m.size(); ++c) {
        if (c == a || c == b) continue;
        if ((m[a] & m[b]).is_subset_of(m[c])) return false;
      }
    }
  }
  return true;
}

namespace {

// Adding x to `members` keeps the condition iff no triple through x fails.
bool q5_extends(const std::vector<std::uint64_t>& members, std::uint64_t x) {
  const auto within = [](std::uint64_t s, std::uint64_t t) { return (s & ~t) == 0; };
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i == j) continue;
      if (j > i && within(members[i] & members[j], x)) return false;
      if (within(members[i] & x, members[j])) return false;
    }
  }
  return true;
}

struct Q5Exact {
  std::uint64_t universe;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool aborted = false;
  std::vector<std::uint64_t> current, best;

  void run(std::uint64_t next) {
    if (++nodes > budget) {
      aborted = true;
      return;
    }
    if (current.size() > best.size()) best = current;
    for (std::uint64_t x = next; x < universe && !aborted; ++x) {
      if (current.size() + (universe - x) <= best.size()) return;
      if (!q5_extends(current, x)) continue;
      current.push_back(x);
      run(x + 1);
      current.pop_back();
    }
  }
};

}  // namespace

Q5Record explore_q5(int k, const Q5Options& options) {
  if (k < 1) fail(ErrorKind::InvalidInput, "k must be at least 1");
  if (options.exact && k > 5) fail(ErrorKind::Capacity, "exact mode limited to k <= 5");
  if (!options.exact && k > 7) fail(ErrorKind::Capacity, "heuristic mode limited to k <= 7");
  const std::uint64_t universe = std::uint64_t{1} << k;

  Q5Record rec{.k = k, .best = SetFamily(GroundSet(k)), .seed = options.seed};
  std::vector<std::uint64_t> best;
  if (options.exact) {
    Q5Exact search{.universe = universe, .budget = options.node_budget};
    search.run(0);
    best = search.best;
    rec.nodes = search.nodes;
    rec.complete = !search.aborted;
    rec.exact = rec.complete;
  } else {
    // Seeded random greedy restarts with a one-out/two-in improvement pass.
    std::mt19937_64 rng(options.seed);
    std::vector<std::uint64_t> order(universe);
    std::iota(order.begin(), order.end(), 0);
    while (rec.nodes < options.node_budget) {
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::uint64_t> cur;
      for (std::uint64_t x : order) {
        ++rec.nodes;
        if (q5_extends(cur, x)) cur.push_back(x);
      }
      bool improved = true;
      while (improved && rec.nodes < options.node_budget) {
        improved = false;
        for (std::size_t drop = 0; drop < cur.size() && !improved; ++drop) {
          std::vector<std::uint64_t> trial = cur;
          trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(drop));
          const std::size_t before = trial.size();
          for (std::uint64_t x : order) {
            ++rec.nodes;
            if (x != cur[drop] && std::find(trial.begin(), trial.end(), x) == trial.end() &&
                q5_extends(trial, x))
              trial.push_back(x);
          }
          if (trial.size() > before + 1) {
            cur = std::move(trial);
            improved = true;
          }
        }
      }
      if (cur.size() > best.size()) best = cur;
    }
    rec.exact = false;
  }
  rec.best = SetFamily::from_masks(k, best);
  rec.size = rec.best.size();
  if (!q5_condition_holds(rec.best))
    fail(ErrorKind::Internal, "q5 explorer produced a family violating the triple condition");
  return rec;
}

}  // namespace setfam
