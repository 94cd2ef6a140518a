#pragma once

#include <utility>
#include <vector>

#include "qbd/planemap.hpp"

namespace test {

inline qbd::PlaneMap square() {
  const std::vector<std::pair<double, double>> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return qbd::map_from_drawing(pts, edges, 0);
}

// Two unit squares touching at the corner (1, 1).
inline qbd::PlaneMap two_squares_sharing_a_vertex() {
  const std::vector<std::pair<double, double>> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 1}, {2, 2}, {1, 2}};
  const std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {4, 5}, {5, 6}, {6, 2}};
  return qbd::map_from_drawing(pts, edges, 0);
}

}  // namespace test
