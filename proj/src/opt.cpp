#include "twofac/opt.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "twofac/errors.hpp"

namespace twofac {

namespace {

// Lower-middle element of sorted[begin, end).
std::size_t median_index(std::size_t begin, std::size_t end) { return begin + (end - begin - 1) / 2; }

}  // namespace

OptResult opt_two_facility(const LocationProfile& p) {
  const std::vector<double> xs = p.sorted();
  const std::size_t n = xs.size();

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + xs[i];

  // 1-median cost of the block [begin, end) of sorted positions.
  auto block_cost = [&](std::size_t begin, std::size_t end) {
    if (begin == end) return 0.0;
    const std::size_t m = median_index(begin, end);
    const double med = xs[m];
    const double below = med * static_cast<double>(m - begin) - (prefix[m] - prefix[begin]);
    const double above = (prefix[end] - prefix[m + 1]) - med * static_cast<double>(end - m - 1);
    return below + above;
  };

  std::size_t best_split = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m <= n; ++m) {
    const double c = block_cost(0, m) + block_cost(m, n);
    if (c < best) {
      best = c;
      best_split = m;
    }
  }

  FacilityPair f;
  if (best_split == 0 || best_split == n) {
    f.l1 = f.l2 = xs[median_index(0, n)];
  } else {
    f.l1 = xs[median_index(0, best_split)];
    f.l2 = xs[median_index(best_split, n)];
  }
  // Re-evaluate directly: prefix sums are only used to pick the split.
  return {social_cost(f, p), f, best_split};
}

double brute_force_opt(const LocationProfile& p) {
  const std::size_t n = p.size();
  if (n > kBruteForceLimit) throw InstanceTooLarge(n, kBruteForceLimit);
  const auto xs = p.positions();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      best = std::min(best, social_cost({xs[i], xs[j]}, p));
    }
  }
  return best;
}

}  // namespace twofac
