#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <vector>

#include "hotspots/mesh.hpp"

namespace hotspots::mesh {

/// Point location in a triangle mesh through a uniform bucket grid.
class Locator {
 public:
  explicit Locator(const Mesh& mesh);

  struct Hit {
    int triangle = -1;
    std::array<double, 3> bary{};
    double outside = 0.0;  ///< distance to the triangle, 0 when inside
  };

  /// Containing triangle, or the nearest one when p lies within `tol` of the mesh.
  std::optional<Hit> locate(Vec2 p, double tol = 0.0) const;

  std::optional<double> interpolate(const Eigen::VectorXd& field, Vec2 p, double tol = 0.0) const;

 private:
  const Mesh* mesh_;
  Vec2 lo_;
  double cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<int> start_, items_;

  Hit probe(int t, Vec2 p) const;
};

}  // namespace hotspots::mesh
