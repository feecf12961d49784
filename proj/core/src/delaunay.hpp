#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hotspots/vec2.hpp"

namespace hotspots::mesh::detail {

enum class SegKind : std::uint8_t { Neumann, Dirichlet, InteriorDirichlet, Soft };

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

struct SegInfo {
  SegKind kind = SegKind::Neumann;
  int curve = -1;  ///< index into the circle table, -1 for straight pieces
};

inline std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint32_t>(a < b ? a : b);
  const auto hi = static_cast<std::uint32_t>(a < b ? b : a);
  return (static_cast<std::uint64_t>(hi) << 32) | lo;
}

struct RefineOptions {
  std::function<double(Vec2)> size;
  double min_angle_deg = 20.7;
  std::size_t max_vertices = 2'000'000;
};

/// Incremental constrained Delaunay triangulation with conforming segment
/// recovery and Ruppert refinement, inside a large enclosing triangle.
class Cdt {
 public:
  struct Tri {
    std::array<int, 3> v{};
    std::array<int, 3> nbr{-1, -1, -1};      // nbr[i] shares the edge opposite v[i]
    std::array<std::uint8_t, 3> fixed{};     // 1 when that edge is a segment
    int region = -1;                          // -1 unknown, 0 exterior, 1 interior
    bool alive = true;
  };

  Cdt(Vec2 lo, Vec2 hi, std::vector<Circle> circles);

  /// Inserts a free vertex; returns the existing index for duplicates.
  int add_vertex(Vec2 p, bool input_corner = false);

  /// Registers a segment to be recovered by recover_segments.
  void add_segment(int a, int b, SegInfo info);

  /// Conforming recovery: missing segments are split until every piece is an edge.
  void recover_segments();

  /// Flood-fills regions across non-segment (and soft) edges and marks each
  /// component interior or exterior with `inside` evaluated at a centroid.
  void label_regions(const std::function<bool(Vec2)>& inside);

  void refine(const RefineOptions& options);

  const std::vector<Vec2>& points() const { return pts_; }
  const std::vector<Tri>& triangles() const { return tris_; }
  const std::unordered_map<std::uint64_t, SegInfo>& segments() const { return segs_; }
  bool is_super(int v) const { return v < 3; }

 private:
  std::vector<Vec2> pts_;
  std::vector<Tri> tris_;
  std::vector<int> vtri_;
  std::vector<char> corner_;
  std::vector<Circle> circles_;
  std::unordered_map<std::uint64_t, SegInfo> segs_;
  std::vector<std::pair<std::pair<int, int>, SegInfo>> pending_;
  std::vector<int> mark_;
  int stamp_ = 0;
  double scale_ = 1.0;
  int last_ = 0;

  // Refinement state.
  std::deque<std::uint64_t> seg_queue_;
  std::deque<std::pair<int, std::array<int, 3>>> tri_queue_;
  const RefineOptions* refine_ = nullptr;

  double incircle(int t, Vec2 p) const;
  int locate(Vec2 p, int hint) const;
  std::optional<std::pair<int, int>> find_edge(int a, int b) const;
  bool build_cavity(Vec2 p, const std::vector<int>& seeds, std::uint64_t allowed, std::vector<int>& cavity);
  int commit(Vec2 p, const std::vector<int>& cavity, std::optional<std::pair<int, int>> split);
  int insert_free(Vec2 p, int hint);
  int split_segment(int a, int b);
  Vec2 split_point(int a, int b, const SegInfo& info) const;
  void set_fixed(int a, int b);
  bool is_bad(int t) const;
  bool encroached(std::uint64_t key) const;
  void after_insert(int v);
  enum class Walk { Reached, HitSegment, Blocked };
  Walk walk_to(int t, Vec2 target, int& end_tri, std::pair<int, int>& hit) const;
};

}  // namespace hotspots::mesh::detail
