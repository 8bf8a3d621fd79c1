#pragma once

// Location profiles, facility pairs and the cost model of the two-facility
// game on the real line.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace twofac {

/// 1-based agent identifier.
class AgentId {
 public:
  constexpr AgentId() = default;
  constexpr explicit AgentId(std::size_t id) : id_(id) {}

  constexpr std::size_t value() const { return id_; }
  constexpr std::size_t index() const { return id_ - 1; }

  friend constexpr bool operator==(AgentId, AgentId) = default;
  friend constexpr auto operator<=>(AgentId, AgentId) = default;

 private:
  std::size_t id_ = 1;
};

/// Reported positions of agents 1..n. Immutable; n >= 1, every entry finite.
class LocationProfile {
 public:
  /// Throws std::invalid_argument on an empty vector or a non-finite entry.
  explicit LocationProfile(std::vector<double> positions);

  std::size_t size() const { return positions_.size(); }
  double operator[](AgentId id) const { return positions_[id.index()]; }
  std::span<const double> positions() const { return positions_; }

  double min() const { return min_; }
  double max() const { return max_; }
  double width() const { return max_ - min_; }
  bool degenerate() const { return max_ == min_; }

  /// Agent ids ordered by position; ties keep ascending id order.
  std::vector<AgentId> sorted_ids() const;
  std::vector<double> sorted() const;

  /// Copy of this profile with one agent's report replaced.
  LocationProfile with(AgentId id, double position) const;

  bool contains(AgentId id) const { return id.value() >= 1 && id.value() <= size(); }

  friend bool operator==(const LocationProfile&, const LocationProfile&) = default;

 private:
  std::vector<double> positions_;
  double min_;
  double max_;
};

/// The two facilities. Equality is unordered; l1 carries the dictator
/// facility for dictator mechanisms.
struct FacilityPair {
  double l1 = 0.0;
  double l2 = 0.0;

  FacilityPair swapped() const { return {l2, l1}; }
  double left() const { return l1 < l2 ? l1 : l2; }
  double right() const { return l1 < l2 ? l2 : l1; }

  friend bool operator==(const FacilityPair& a, const FacilityPair& b) {
    return (a.l1 == b.l1 && a.l2 == b.l2) || (a.l1 == b.l2 && a.l2 == b.l1);
  }
};

/// Distance from x to the nearer facility.
double cost(const FacilityPair& f, double x);

/// Sum of agent costs.
double social_cost(const FacilityPair& f, const LocationProfile& p);

/// Positive affine map x -> offset + scale * x.
struct AffineMap {
  double scale = 1.0;
  double offset = 0.0;

  double apply(double x) const { return offset + scale * x; }
  double invert(double y) const { return (y - offset) / scale; }
};

FacilityPair apply_affine(const FacilityPair& f, const AffineMap& m);
LocationProfile apply_affine(const LocationProfile& p, const AffineMap& m);

struct NormalizedProfile {
  LocationProfile profile;
  AffineMap map;  // maps normalized coordinates back to the original ones
};

/// Rescales p so that min = 0 and max = 1. Throws DegenerateProfile when all
/// agents coincide.
NormalizedProfile normalize(const LocationProfile& p);

/// Agents partitioned into three blocks, block b sitting at positions[b].
struct ThreeLocationProfile {
  std::array<double, 3> positions{};
  std::array<std::size_t, 3> counts{};

  std::size_t size() const { return counts[0] + counts[1] + counts[2]; }
};

/// Block expansion: ids 1..n1 at y1, then n2 at y2, then n3 at y3.
/// Throws std::invalid_argument if any count is zero.
LocationProfile expand_three_location(const ThreeLocationProfile& t);

}  // namespace twofac
