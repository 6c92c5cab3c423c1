// family.hpp — spherically symmetric graph families (antitrees, trees, the
// integer line) given by a sphere-size profile, with exact truncations and
// closed-form sphere volumes. Edge weights are b ≡ 1 throughout.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specgrowth/graph.hpp"

namespace specgrowth {

enum class MeasureRule { unit, weighted_degree };

const char* to_string(MeasureRule rule);
MeasureRule parse_measure_rule(const std::string& s);

// Sphere-size sequence s_r. s_0 is always 1 (single root); the profile
// parameterizes r >= 1. Grammar: "poly:k" -> (r+1)^k, "const:c" -> c,
// "geo:a,q" -> a*q^(r-1), "list:[s0,s1,...]" -> explicit prefix (finite
// family; s0 must be 1).
class SphereProfile {
 public:
  enum class Kind { poly, constant, geometric, list };

  static SphereProfile poly(unsigned k);
  static SphereProfile constant(std::uint64_t c);
  static SphereProfile geometric(std::uint64_t a, std::uint64_t q);
  static SphereProfile list(std::vector<std::uint64_t> sizes);
  static SphereProfile parse(const std::string& text);

  Kind kind() const { return kind_; }
  std::string str() const;

  // Finite families come from list profiles: spheres past the list are empty.
  bool finite() const { return kind_ == Kind::list; }
  std::uint32_t max_radius() const;  // only valid when finite()

  // s_r as an exact integer; throws resource_error on uint64 overflow.
  std::uint64_t size(std::uint32_t r) const;
  // s_r in floating point, valid far past the integer range (log-space users).
  double size_d(std::uint32_t r) const;

 private:
  Kind kind_ = Kind::constant;
  unsigned poly_k_ = 0;
  std::uint64_t const_c_ = 1;
  std::uint64_t geo_a_ = 1;
  std::uint64_t geo_q_ = 1;
  std::vector<std::uint64_t> items_;
};

enum class FamilyKind { antitree, tree, line };

const char* to_string(FamilyKind kind);

// Cumulative row of the closed-form volume table.
struct SphereRow {
  std::uint32_t r;
  double sphere_size;   // s_r
  double ball_count;    // |B_r| = sum of sphere sizes
  double ball_volume;   // m(B_r) under the chosen measure rule
};

class Family {
 public:
  // Antitree: sphere r completely joined to sphere r+1, no horizontal edges.
  static Family antitree(SphereProfile profile);
  // Spherically symmetric tree: each sphere-r vertex has s_{r+1}/s_r children;
  // profiles whose consecutive ratio is not an integer are rejected.
  static Family tree(SphereProfile profile);
  // Two-sided integer lattice: s_0 = 1, s_r = 2.
  static Family line();

  FamilyKind kind() const { return kind_; }
  const SphereProfile& profile() const { return profile_; }
  bool finite() const;
  std::optional<std::uint32_t> max_radius() const;
  std::string describe() const;  // e.g. "antitree poly:2"

  std::uint64_t sphere_size(std::uint32_t r) const;
  double sphere_size_d(std::uint32_t r) const;

  // Weighted degree of a sphere-r vertex in the infinite graph.
  double analytic_degree(std::uint32_t r) const;

  std::uint64_t vertex_count(std::uint32_t R) const;
  std::uint64_t edge_count(std::uint32_t R) const;

  // Materializes the ball B_R. Vertices are numbered sphere by sphere,
  // within a sphere in creation order. The sphere-R layer is marked as
  // boundary and carries exterior weights equal to the weight of its edges
  // into sphere R+1, so Dirichlet problems on the truncation match the
  // infinite graph exactly. A finite family truncated at or past its maximal
  // radius yields the whole graph, with no boundary and no exterior.
  WeightedGraph truncate(std::uint32_t R, MeasureRule rule,
                         std::optional<ResourceCaps> caps = {}) const;

  // Closed-form table for r = 0..R; counts/volumes in floating point so that
  // radii far beyond any materializable size remain usable.
  std::vector<SphereRow> sphere_volumes(std::uint32_t R, MeasureRule rule) const;

 private:
  Family(FamilyKind kind, SphereProfile profile) : kind_(kind), profile_(std::move(profile)) {}
  double children_per_vertex(std::uint32_t r) const;  // tree only
  FamilyKind kind_;
  SphereProfile profile_;
};

}  // namespace specgrowth
