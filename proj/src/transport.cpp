#include "pcblend/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace pcblend::transport {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

void check_costs(const std::vector<double>& costs, std::size_t expected,
                 const char* who) {
  if (costs.size() != expected) {
    throw std::invalid_argument(std::string(who) + ": cost matrix has " +
                                std::to_string(costs.size()) +
                                " entries, expected " +
                                std::to_string(expected));
  }
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!std::isfinite(costs[i])) {
      throw std::invalid_argument(std::string(who) + ": cost entry " +
                                  std::to_string(i) + " is not finite");
    }
  }
}

// Pick the quantization scale: as fine as possible (capped at 1e15, i.e.
// resolution far below any tolerance used downstream) while keeping every
// partial sum of n+16 quantized arcs inside int64.
double quantization_scale(const std::vector<double>& costs, int n) {
  double maxabs = 0.0;
  for (double c : costs) maxabs = std::max(maxabs, std::fabs(c));
  const double budget = 4.0e18 / (std::max(1.0, maxabs) * (n + 16.0));
  return std::min(1.0e15, budget);
}

}  // namespace

TransportSolution solve_balanced_transport(const std::vector<double>& costs,
                                           int n, int k, int capacity) {
  if (n < 1 || k < 1 || capacity < 1) {
    throw std::invalid_argument("solve_balanced_transport: sizes must be positive");
  }
  if (n != k * capacity) {
    throw std::invalid_argument(
        "solve_balanced_transport: n = " + std::to_string(n) +
        " does not equal k * capacity = " + std::to_string(k) + " * " +
        std::to_string(capacity));
  }
  check_costs(costs, static_cast<std::size_t>(n) * k, "solve_balanced_transport");

  const double scale = quantization_scale(costs, n);
  std::vector<std::int64_t> qc(costs.size());
  for (std::size_t i = 0; i < costs.size(); ++i) {
    qc[i] = std::llround(costs[i] * scale);
  }

  std::vector<int> labels(n, -1);
  std::vector<int> count(k, 0);

  // heaps[a * k + b] holds candidate moves a -> b as (cost delta, point).
  // An entry is alive iff its point is still assigned to a; moves invalidate
  // entries implicitly and duplicates from re-entering a cluster are benign
  // because the delta only depends on (point, a, b).
  using Entry = std::pair<std::int64_t, int>;
  using Heap = std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>>;
  std::vector<Heap> heaps(static_cast<std::size_t>(k) * k);

  auto push_moves = [&](int i, int from) {
    const std::int64_t base = qc[static_cast<std::size_t>(i) * k + from];
    for (int b = 0; b < k; ++b) {
      if (b == from) continue;
      heaps[static_cast<std::size_t>(from) * k + b].emplace(
          qc[static_cast<std::size_t>(i) * k + b] - base, i);
    }
  };
  auto peek = [&](int a, int b) -> const Entry* {
    Heap& h = heaps[static_cast<std::size_t>(a) * k + b];
    while (!h.empty() && labels[h.top().second] != a) h.pop();
    return h.empty() ? nullptr : &h.top();
  };

  std::vector<std::int64_t> w(static_cast<std::size_t>(k) * k);
  std::vector<int> wpt(static_cast<std::size_t>(k) * k);
  std::vector<std::int64_t> dist(k);
  std::vector<int> pred(k);

  for (int p = 0; p < n; ++p) {
    // Snapshot the cheapest inter-cluster move for every ordered pair; the
    // heaps do not change while we run Bellman-Ford below.
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (a == b) continue;
        const Entry* e = peek(a, b);
        w[static_cast<std::size_t>(a) * k + b] = e ? e->first : kInf;
        wpt[static_cast<std::size_t>(a) * k + b] = e ? e->second : -1;
      }
    }
    for (int h = 0; h < k; ++h) {
      dist[h] = qc[static_cast<std::size_t>(p) * k + h];
      pred[h] = -1;
    }
    // Deltas can be negative but the residual network of an optimal partial
    // solution has no negative cycle, so k-1 relaxation rounds suffice.
    for (int round = 1; round < k; ++round) {
      bool changed = false;
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          if (a == b) continue;
          const std::int64_t wab = w[static_cast<std::size_t>(a) * k + b];
          if (wab >= kInf) continue;
          if (dist[a] + wab < dist[b]) {
            dist[b] = dist[a] + wab;
            pred[b] = a;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    int target = -1;
    for (int h = 0; h < k; ++h) {
      if (count[h] < capacity && (target == -1 || dist[h] < dist[target])) {
        target = h;
      }
    }

    // Walk the predecessor chain back to the cluster that receives p itself.
    std::vector<int> path;
    for (int cur = target; cur != -1; cur = pred[cur]) {
      path.push_back(cur);
      if (static_cast<int>(path.size()) > k) {
        throw std::logic_error("solve_balanced_transport: predecessor cycle");
      }
    }
    std::reverse(path.begin(), path.end());  // path[0] takes p directly

    labels[p] = path[0];
    ++count[path[0]];
    push_moves(p, path[0]);
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
      const int a = path[s], b = path[s + 1];
      const int moved = wpt[static_cast<std::size_t>(a) * k + b];
      labels[moved] = b;
      --count[a];
      ++count[b];
      push_moves(moved, b);
    }
  }

  TransportSolution sol;
  sol.labels = std::move(labels);
  sol.cost = 0.0;
  for (int i = 0; i < n; ++i) {
    sol.cost += costs[static_cast<std::size_t>(i) * k + sol.labels[i]];
  }
  return sol;
}

AssignmentSolution solve_dense_assignment(const std::vector<double>& costs,
                                          int n) {
  if (n < 1) {
    throw std::invalid_argument("solve_dense_assignment: n must be positive");
  }
  check_costs(costs, static_cast<std::size_t>(n) * n, "solve_dense_assignment");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n, 0.0), v(n, 0.0), shortest(n);
  std::vector<int> col4row(n, -1), row4col(n, -1), path(n), remaining(n);
  std::vector<char> sr(n), sc(n);

  for (int row = 0; row < n; ++row) {
    std::fill(shortest.begin(), shortest.end(), inf);
    std::fill(sr.begin(), sr.end(), 0);
    std::fill(sc.begin(), sc.end(), 0);
    for (int j = 0; j < n; ++j) remaining[j] = j;
    int num_remaining = n;

    double minval = 0.0;
    int i = row;
    int sink = -1;
    while (sink == -1) {
      sr[i] = 1;
      const double* crow = costs.data() + static_cast<std::size_t>(i) * n;
      int index = -1;
      double lowest = inf;
      for (int it = 0; it < num_remaining; ++it) {
        const int j = remaining[it];
        const double r = minval + crow[j] - u[i] - v[j];
        if (r < shortest[j]) {
          path[j] = i;
          shortest[j] = r;
        }
        if (shortest[j] < lowest ||
            (shortest[j] == lowest && row4col[j] == -1)) {
          lowest = shortest[j];
          index = it;
        }
      }
      minval = lowest;
      if (!(minval < inf)) {
        throw std::logic_error("solve_dense_assignment: no augmenting path");
      }
      const int j = remaining[index];
      if (row4col[j] == -1) {
        sink = j;
      } else {
        i = row4col[j];
      }
      sc[j] = 1;
      remaining[index] = remaining[--num_remaining];
    }

    u[row] += minval;
    for (int r2 = 0; r2 < n; ++r2) {
      if (sr[r2] && r2 != row) u[r2] += minval - shortest[col4row[r2]];
    }
    for (int j = 0; j < n; ++j) {
      if (sc[j]) v[j] -= minval - shortest[j];
    }

    int j = sink;
    while (true) {
      const int r2 = path[j];
      row4col[j] = r2;
      std::swap(col4row[r2], j);
      if (r2 == row) break;
    }
  }

  AssignmentSolution sol;
  sol.match = std::move(col4row);
  sol.cost = 0.0;
  for (int r2 = 0; r2 < n; ++r2) {
    sol.cost += costs[static_cast<std::size_t>(r2) * n + sol.match[r2]];
  }
  return sol;
}

}  // namespace pcblend::transport
