#pragma once

#include <stdexcept>
#include <string>

namespace hotspots {

/// Pipeline stage an error originated from; surfaced by the CLI.
enum class Stage { Geometry, Meshing, Fem, Analysis, Bounds, Lab };

const char* stage_name(Stage stage) noexcept;

/// Base error for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(Stage stage, const std::string& what)
      : std::runtime_error(what), stage_(stage) {}

  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what) : Error(Stage::Geometry, what) {}
};

class MeshError : public Error {
 public:
  explicit MeshError(const std::string& what) : Error(Stage::Meshing, what) {}
};

class FemError : public Error {
 public:
  explicit FemError(const std::string& what) : Error(Stage::Fem, what) {}
};

class AnalysisError : public Error {
 public:
  explicit AnalysisError(const std::string& what) : Error(Stage::Analysis, what) {}
};

class BoundsError : public Error {
 public:
  explicit BoundsError(const std::string& what) : Error(Stage::Bounds, what) {}
};

class LabError : public Error {
 public:
  explicit LabError(const std::string& what) : Error(Stage::Lab, what) {}
};

}  // namespace hotspots
