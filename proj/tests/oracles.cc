// Copyright 2026 The privimmune Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "oracles.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace privimmune::testing {

std::vector<Edge> RandomEdges(int32_t n, double p, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(gen) < p) edges.push_back({u, v});
    }
  }
  return edges;
}

Graph MakeGraph(int32_t n, const std::vector<Edge>& edges) {
  return *Graph::FromEdges(n, edges);
}

Graph RandomGraph(int32_t n, double p, std::mt19937_64& gen) {
  return MakeGraph(n, RandomEdges(n, p, gen));
}

std::vector<std::vector<int>> InducedAdjacency(
    int32_t n, const std::vector<Edge>& edges,
    const std::vector<bool>& removed) {
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (const auto& [u, v] : edges) {
    if (u == v || removed[u] || removed[v]) continue;
    adj[u][v] = adj[v][u] = 1;
  }
  return adj;
}

std::vector<int32_t> DegreesByScan(int32_t n, const std::vector<Edge>& edges,
                                   const std::vector<bool>& removed) {
  std::vector<std::vector<int>> adj = InducedAdjacency(n, edges, removed);
  std::vector<int32_t> deg(n, 0);
  for (int32_t u = 0; u < n; ++u) {
    deg[u] = std::accumulate(adj[u].begin(), adj[u].end(), 0);
  }
  return deg;
}

namespace {

// Calls f(walk) for every length-4 walk.
template <typename F>
void ForEachWalk4(const std::vector<std::vector<int>>& adj, F f) {
  const int n = static_cast<int>(adj.size());
  int w[5];
  for (w[0] = 0; w[0] < n; ++w[0])
    for (w[1] = 0; w[1] < n; ++w[1]) {
      if (!adj[w[0]][w[1]]) continue;
      for (w[2] = 0; w[2] < n; ++w[2]) {
        if (!adj[w[1]][w[2]]) continue;
        for (w[3] = 0; w[3] < n; ++w[3]) {
          if (!adj[w[2]][w[3]]) continue;
          for (w[4] = 0; w[4] < n; ++w[4]) {
            if (adj[w[3]][w[4]]) f(w);
          }
        }
      }
    }
}

}  // namespace

int64_t EnumerateWalks4(const std::vector<std::vector<int>>& adj) {
  int64_t count = 0;
  ForEachWalk4(adj, [&](const int*) { ++count; });
  return count;
}

int64_t EnumerateWalks4PositionWeighted(
    const std::vector<std::vector<int>>& adj, int v) {
  int64_t count = 0;
  ForEachWalk4(adj, [&](const int* w) { count += std::count(w, w + 5, v); });
  return count;
}

int64_t EnumerateWalks4Visiting(const std::vector<std::vector<int>>& adj,
                                int v) {
  int64_t count = 0;
  ForEachWalk4(adj, [&](const int* w) {
    if (std::find(w, w + 5, v) != w + 5) ++count;
  });
  return count;
}

double DenseSpectralRadius(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return 0.0;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = adj[i][j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

MultiCoverInstance RandomInstance(int32_t n, int32_t m, int64_t max_requirement,
                                  double density, std::mt19937_64& gen) {
  std::bernoulli_distribution member(density);
  std::uniform_int_distribution<int64_t> mult(1, 3);
  std::bernoulli_distribution unbounded(0.1);
  std::uniform_int_distribution<int64_t> req(0, max_requirement);
  std::vector<std::vector<SetEntry>> sets(m);
  std::vector<int64_t> supply(n, 0);
  for (int32_t s = 0; s < m; ++s) {
    for (int32_t e = 0; e < n; ++e) {
      if (!member(gen)) continue;
      const int64_t k = unbounded(gen) ? kUnbounded : mult(gen);
      sets[s].push_back({e, k});
      supply[e] = (k == kUnbounded || supply[e] == kUnbounded) ? kUnbounded
                                                               : supply[e] + k;
    }
  }
  std::vector<int64_t> requirements(n);
  for (int32_t e = 0; e < n; ++e) {
    requirements[e] = req(gen);
    if (supply[e] != kUnbounded) {
      requirements[e] = std::min(requirements[e], supply[e]);
    }
  }
  return *MultiCoverInstance::Create(n, std::move(requirements),
                                     std::move(sets));
}

bool CoversAll(const MultiCoverInstance& inst, std::span<const int32_t> sets) {
  std::vector<int64_t> got(inst.universe_size(), 0);
  for (int32_t s : sets) {
    for (const SetEntry& e : inst.set(s)) {
      const int64_t need = inst.requirement(e.element);
      got[e.element] = e.multiplicity == kUnbounded
                           ? need
                           : std::min(need, got[e.element] + e.multiplicity);
    }
  }
  for (int32_t e = 0; e < inst.universe_size(); ++e) {
    if (got[e] < inst.requirement(e)) return false;
  }
  return true;
}

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      rows.push_back(row);
      row.clear();
      field.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (any) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

double Slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

namespace {

std::vector<double> Ranks(std::span<const double> v) {
  std::vector<size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    for (size_t k = i; k <= j; ++k) rank[order[k]] = (i + j) / 2.0 + 1.0;
    i = j + 1;
  }
  return rank;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double Spearman(std::span<const double> x, std::span<const double> y) {
  const std::vector<double> rx = Ranks(x);
  const std::vector<double> ry = Ranks(y);
  return Pearson(rx, ry);
}

}  // namespace privimmune::testing
