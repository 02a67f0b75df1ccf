#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kdyck/exact.hpp"
#include "kdyck/shape.hpp"

namespace kdyck {

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Step : char { U = 'U', D = 'D' };

// An explicit raised k-Dyck path; the oracle-side ground-truth object.
struct Path {
  long k = 2;
  long start_height = 0;
  std::vector<Step> steps;
};

struct PathStats {
  long min_height = 0;
  long max_height = 0;
  long returns = 0;
};

// Trace the running height.  A return is a D step landing on y=0; the
// starting point never counts.
inline PathStats path_stats(const Path& p) {
  long h = p.start_height;
  PathStats st{h, h, 0};
  for (Step s : p.steps) {
    h += (s == Step::U) ? 1 : (1 - p.k);
    if (h < st.min_height) st.min_height = h;
    if (h > st.max_height) st.max_height = h;
    if (s == Step::D && h == 0) ++st.returns;
  }
  return st;
}

// Statistic filter; constraints compose by intersection.  At most one of
// ceiling / exact_max_height may be set.
struct PathFilter {
  std::optional<long> returns;
  std::optional<long> exact_min_height;
  std::optional<long> ceiling;
  std::optional<long> exact_max_height;

  void validate() const {
    if (ceiling && exact_max_height)
      throw std::invalid_argument(
          "PathFilter: ceiling and exact_max_height are mutually exclusive");
  }

  bool accepts(const PathStats& st) const {
    if (returns && st.returns != *returns) return false;
    if (exact_min_height && st.min_height != *exact_min_height) return false;
    if (ceiling && st.max_height > *ceiling) return false;
    if (exact_max_height && st.max_height != *exact_max_height) return false;
    return true;
  }
};

namespace detail {

// Forward DP over (position, height), heights clamped to [floor, ceiling].
// When track_returns is set, counts are layered by returns accumulated so
// far and the layer equal to *track_returns is reported.
inline ExactInt dp_count(long k, long n, Shape s, long floor, long ceiling,
                         std::optional<long> track_returns) {
  const long length = k * n + s.beta - s.alpha;
  const long ups = length - n;
  if (n < 0 || length < 0 || ups < 0) return ExactInt(0);
  if (floor < 0) floor = 0;
  if (ceiling < floor) return ExactInt(0);
  if (s.alpha < floor || s.alpha > ceiling) return ExactInt(0);
  if (s.beta < floor || s.beta > ceiling) return ExactInt(0);
  if (track_returns && (*track_returns < 0 || *track_returns > n))
    return ExactInt(0);

  const long width = ceiling - floor + 1;
  const long layers = track_returns ? n + 1 : 1;
  // state[layer * width + (h - floor)]
  std::vector<ExactInt> state(static_cast<std::size_t>(layers * width));
  state[static_cast<std::size_t>(s.alpha - floor)] = 1;

  std::vector<ExactInt> next(state.size());
  for (long pos = 0; pos < length; ++pos) {
    for (auto& v : next) v = 0;
    for (long layer = 0; layer < layers; ++layer) {
      for (long h = floor; h <= ceiling; ++h) {
        const ExactInt& v =
            state[static_cast<std::size_t>(layer * width + h - floor)];
        if (v == 0) continue;
        if (h + 1 <= ceiling)
          next[static_cast<std::size_t>(layer * width + h + 1 - floor)] += v;
        const long down = h + 1 - k;
        if (down >= floor) {
          long to_layer = layer;
          if (track_returns && down == 0) {
            ++to_layer;
            if (to_layer >= layers) continue;
          }
          next[static_cast<std::size_t>(to_layer * width + down - floor)] += v;
        }
      }
    }
    state.swap(next);
  }
  const long layer = track_returns ? *track_returns : 0;
  return state[static_cast<std::size_t>(layer * width + s.beta - floor)];
}

}  // namespace detail

// Exact DP count of the filtered class.  Exact-minimum and exact-maximum
// constraints are resolved by differencing the corresponding bounded DPs.
inline ExactInt oracle_count(const PathClassQuery& q,
                             const PathFilter& f = {}) {
  q.validate();
  f.validate();
  const long natural_ceiling = (q.k - 1) * q.n + q.shape.beta;

  // (floor, sign) and (ceiling, sign) pairs; products give the
  // inclusion-exclusion over exact-statistic constraints.
  std::vector<std::pair<long, int>> floors{{0, 1}};
  if (f.exact_min_height) {
    if (*f.exact_min_height < 0) return ExactInt(0);
    floors = {{*f.exact_min_height, 1}, {*f.exact_min_height + 1, -1}};
  }
  std::vector<std::pair<long, int>> ceilings{{natural_ceiling, 1}};
  if (f.ceiling) ceilings = {{std::min(*f.ceiling, natural_ceiling), 1}};
  if (f.exact_max_height) {
    const long m = std::min(*f.exact_max_height, natural_ceiling);
    if (*f.exact_max_height > natural_ceiling) return ExactInt(0);
    ceilings = {{m, 1}, {m - 1, -1}};
  }

  ExactInt acc = 0;
  for (auto [floor, fsign] : floors)
    for (auto [ceiling, csign] : ceilings) {
      if (ceiling < 0) continue;
      ExactInt term =
          detail::dp_count(q.k, q.n, q.shape, floor, ceiling, f.returns);
      acc += fsign * csign * term;
    }
  return acc;
}

// Exhaustive backtracking enumeration in lexicographic order (U before D).
// Refuses when the unfiltered class is larger than `limit`.
inline void enumerate(const PathClassQuery& q, const PathFilter& f,
                      const std::function<void(const Path&)>& visit,
                      const ExactInt& limit = ExactInt(10000000)) {
  q.validate();
  f.validate();
  if (q.length() < 0) return;
  if (oracle_count(q) > limit)
    throw ResourceLimitError("enumerate: unfiltered class exceeds limit");

  Path path{q.k, q.shape.alpha, {}};
  const long total_downs = q.n;
  const long total_ups = q.length() - q.n;
  if (total_ups < 0) return;

  auto rec = [&](auto&& self, long h, long ups_left, long downs_left) -> void {
    if (ups_left == 0 && downs_left == 0) {
      if (f.accepts(path_stats(path))) visit(path);
      return;
    }
    if (ups_left > 0) {
      path.steps.push_back(Step::U);
      self(self, h + 1, ups_left - 1, downs_left);
      path.steps.pop_back();
    }
    if (downs_left > 0 && h + 1 - q.k >= 0) {
      path.steps.push_back(Step::D);
      self(self, h + 1 - q.k, ups_left, downs_left - 1);
      path.steps.pop_back();
    }
  };
  rec(rec, q.shape.alpha, total_ups, total_downs);
}

inline std::vector<Path> enumerate_all(const PathClassQuery& q,
                                       const PathFilter& f = {},
                                       const ExactInt& limit = ExactInt(
                                           10000000)) {
  std::vector<Path> out;
  enumerate(q, f, [&](const Path& p) { out.push_back(p); }, limit);
  return out;
}

}  // namespace kdyck
