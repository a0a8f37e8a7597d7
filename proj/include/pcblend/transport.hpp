// Exact solvers for the two transport problems the library is built on:
//
//  * solve_balanced_transport — the transportation LP with n unit supplies
//    and k sinks of capacity m, solved by successive shortest paths on the
//    residual network. Cluster nodes aggregate the point->cluster arcs, so
//    each augmentation costs O(k^3 + k log n) instead of O(nk). Costs are
//    quantized to integers (resolution at least 1e-12, finer when the value
//    range allows) so optimality and termination are exact.
//
//  * solve_dense_assignment — the special case k = n with unit capacities,
//    i.e. min-cost perfect matching, solved by shortest augmenting paths
//    with dual potentials (Jonker-Volgenant style) on the dense matrix.
//
// Both are deterministic: ties break towards the lower point index, then the
// lower cluster/column index.

#pragma once

#include <cstdint>
#include <vector>

namespace pcblend::transport {

struct TransportSolution {
  std::vector<int> labels;  // point index -> sink index
  double cost = 0.0;        // sum of picked arc costs, accumulated by point index
};

// costs is row-major n x k; every sink receives exactly `capacity` points
// (n must equal k * capacity).
TransportSolution solve_balanced_transport(const std::vector<double>& costs,
                                           int n, int k, int capacity);

struct AssignmentSolution {
  std::vector<int> match;  // row index -> column index (a permutation)
  double cost = 0.0;
};

// costs is row-major n x n.
AssignmentSolution solve_dense_assignment(const std::vector<double>& costs,
                                          int n);

}  // namespace pcblend::transport
