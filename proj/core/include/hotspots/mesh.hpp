#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hotspots/geometry.hpp"

namespace hotspots::mesh {

enum class Tag : std::uint8_t { Neumann, Dirichlet };

const char* tag_name(Tag tag) noexcept;

/// Circle carrying curved boundary edges; refinement snaps onto it.
struct CircleRef {
  Vec2 center;
  double radius = 0.0;
};

/// Boundary edge oriented with the domain on its left.
struct BoundaryEdge {
  std::array<int, 2> v{};
  Tag tag = Tag::Neumann;
  int curve = -1;  ///< index into Mesh::circles, -1 for straight edges
};

struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  ///< counterclockwise
  std::vector<BoundaryEdge> boundary_edges;
  /// Interior Dirichlet edges (slits), shared by two triangles.
  std::vector<std::array<int, 2>> constrained_edges;
  std::vector<CircleRef> circles;
  /// Per-vertex parents in the previous level: {i, i} for inherited vertices,
  /// the split edge for midpoints, {-1, -1} at level 0.
  std::vector<std::array<int, 2>> lineage;
  std::vector<std::uint8_t> dirichlet;  ///< per vertex: lies on D
  std::vector<std::uint8_t> boundary;   ///< per vertex: on a boundary edge
  double h = 0.0;                       ///< target edge length of this level
  int level = 0;
};

/// Local size control near Dirichlet pieces. For a piece of diameter R the
/// size is at most near_fraction * R within reach * R of the piece and grows
/// linearly with slope `growth` beyond.
struct Grading {
  bool enabled = true;
  double near_fraction = 0.125;
  double reach = 2.0;
  double growth = 0.25;
};

struct MeshOptions {
  double h = 0.05;
  Grading grading;
  double min_angle_deg = 20.7;
  std::size_t max_vertices = 2'000'000;
};

/// Conforming constrained Delaunay triangulation of Omega minus int(D).
Mesh triangulate(const geometry::DomainSpec& spec, const MeshOptions& options);

/// Uniform red refinement; new boundary vertices on circles are snapped onto them.
Mesh refine(const Mesh& mesh);

/// Triangle-adjacency components, not crossing interior Dirichlet edges.
int connectivity(const Mesh& mesh);

double total_area(const Mesh& mesh);
double min_angle_deg(const Mesh& mesh);

/// OFF file plus a sidecar listing "index v0 v1 TAG" for every boundary and
/// constrained edge.
void write_off(const Mesh& mesh, std::ostream& off, std::ostream& tags);

}  // namespace hotspots::mesh
