#include "hotspots/error.hpp"

namespace hotspots {

const char* stage_name(Stage stage) noexcept {
  switch (stage) {
    case Stage::Geometry: return "geometry";
    case Stage::Meshing: return "meshing";
    case Stage::Fem: return "fem";
    case Stage::Analysis: return "analysis";
    case Stage::Bounds: return "bounds";
    case Stage::Lab: return "lab";
  }
  return "unknown";
}

}  // namespace hotspots
