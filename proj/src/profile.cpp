#include "twofac/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twofac/errors.hpp"

namespace twofac {

LocationProfile::LocationProfile(std::vector<double> positions) : positions_(std::move(positions)) {
  if (positions_.empty()) throw std::invalid_argument("location profile needs at least one agent");
  for (double x : positions_) {
    if (!std::isfinite(x)) throw std::invalid_argument("location profile contains a non-finite position");
  }
  auto [lo, hi] = std::minmax_element(positions_.begin(), positions_.end());
  min_ = *lo;
  max_ = *hi;
}

std::vector<AgentId> LocationProfile::sorted_ids() const {
  std::vector<AgentId> ids(size());
  for (std::size_t i = 0; i < size(); ++i) ids[i] = AgentId(i + 1);
  std::stable_sort(ids.begin(), ids.end(),
                   [this](AgentId a, AgentId b) { return (*this)[a] < (*this)[b]; });
  return ids;
}

std::vector<double> LocationProfile::sorted() const {
  std::vector<double> out(positions_);
  std::sort(out.begin(), out.end());
  return out;
}

LocationProfile LocationProfile::with(AgentId id, double position) const {
  if (!contains(id)) throw std::out_of_range("agent id out of range");
  std::vector<double> next(positions_);
  next[id.index()] = position;
  return LocationProfile(std::move(next));
}

double cost(const FacilityPair& f, double x) {
  return std::min(std::abs(f.l1 - x), std::abs(f.l2 - x));
}

double social_cost(const FacilityPair& f, const LocationProfile& p) {
  double total = 0.0;
  for (double x : p.positions()) total += cost(f, x);
  return total;
}

FacilityPair apply_affine(const FacilityPair& f, const AffineMap& m) {
  return {m.apply(f.l1), m.apply(f.l2)};
}

LocationProfile apply_affine(const LocationProfile& p, const AffineMap& m) {
  std::vector<double> out;
  out.reserve(p.size());
  for (double x : p.positions()) out.push_back(m.apply(x));
  return LocationProfile(std::move(out));
}

NormalizedProfile normalize(const LocationProfile& p) {
  if (p.degenerate()) throw DegenerateProfile();
  const AffineMap map{p.width(), p.min()};
  std::vector<double> q;
  q.reserve(p.size());
  for (double x : p.positions()) {
    // Pin the extremes so min(q) = 0 and max(q) = 1 hold bitwise.
    if (x == p.min()) q.push_back(0.0);
    else if (x == p.max()) q.push_back(1.0);
    else q.push_back((x - map.offset) / map.scale);
  }
  return {LocationProfile(std::move(q)), map};
}

LocationProfile expand_three_location(const ThreeLocationProfile& t) {
  std::vector<double> out;
  out.reserve(t.size());
  for (std::size_t b = 0; b < 3; ++b) {
    if (t.counts[b] == 0) throw std::invalid_argument("three-location block counts must be positive");
    out.insert(out.end(), t.counts[b], t.positions[b]);
  }
  return LocationProfile(std::move(out));
}

}  // namespace twofac
