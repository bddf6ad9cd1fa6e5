#pragma once

#include <vector>

#include "isc/graph.hpp"

namespace isc::fixtures {

inline Graph k4() {
    return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

inline Graph p2() { return make_graph(2, {{0, 1}}); }

/// triangular prism (C3 x K2)
inline Graph prism() {
    return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5},
                          {0, 3}, {1, 4}, {2, 5}});
}

/// 3-cube
inline Graph q3() {
    return make_graph(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7},
                          {0, 4}, {1, 5}, {2, 6}, {3, 7}});
}

/// pentagonal prism (C5 x K2)
inline Graph pentaprism() {
    return make_graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                           {5, 6}, {6, 7}, {7, 8}, {8, 9}, {5, 9},
                           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
}

/// truncated tetrahedron: four triangles joined by the tetrahedron's edges
inline Graph truncated_tetrahedron() {
    return make_graph(12, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5},
                           {6, 7}, {7, 8}, {6, 8}, {9, 10}, {10, 11}, {9, 11},
                           {0, 3}, {1, 6}, {2, 9}, {4, 7}, {5, 10}, {8, 11}});
}

inline Graph k33() {
    return make_graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                          {2, 3}, {2, 4}, {2, 5}});
}

inline Graph petersen() {
    return make_graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                           {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8},
                           {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
}

/// cubic planar suite for exhaustive properties (n <= 12)
inline std::vector<Graph> cubic_planar_suite() {
    return {k4(), prism(), q3(), pentaprism(), truncated_tetrahedron()};
}

} // namespace isc::fixtures
