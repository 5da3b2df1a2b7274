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


#include "privimmune/generators.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "privimmune/dp.h"

namespace privimmune {
namespace {

struct KindName {
  GeneratorKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {GeneratorKind::kErdosRenyi, "erdos-renyi"},
    {GeneratorKind::kChungLuPowerLaw, "chung-lu-powerlaw"},
    {GeneratorKind::kStar, "star"},
    {GeneratorKind::kCycle, "cycle"},
    {GeneratorKind::kComplete, "complete"},
};

double EffectiveDmax(const GeneratorSpec& spec) {
  return spec.dmax > 0.0 ? spec.dmax : std::sqrt(static_cast<double>(spec.n));
}

absl::Status Validate(const GeneratorSpec& spec) {
  if (spec.n < 0) return absl::InvalidArgumentError("n must be non-negative");
  switch (spec.kind) {
    case GeneratorKind::kErdosRenyi:
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("p must lie in [0, 1], got %g", spec.p));
      }
      break;
    case GeneratorKind::kChungLuPowerLaw:
      if (!(spec.gamma > 1.0) || !std::isfinite(spec.gamma)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("gamma must exceed 1, got %g", spec.gamma));
      }
      if (!(spec.dmin > 0.0) || !(EffectiveDmax(spec) >= spec.dmin)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("need 0 < dmin <= dmax, got dmin=%g dmax=%g",
                            spec.dmin, EffectiveDmax(spec)));
      }
      break;
    case GeneratorKind::kCycle:
      if (spec.n != 0 && spec.n < 3) {
        return absl::InvalidArgumentError("cycle needs n >= 3");
      }
      break;
    default:
      break;
  }
  return absl::OkStatus();
}

// Batagelj-Brandes skipping over the lower triangle.
std::vector<Edge> ErdosRenyi(int32_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  if (p <= 0.0 || n < 2) return edges;
  if (p >= 1.0) {
    for (NodeId v = 1; v < n; ++v) {
      for (NodeId w = 0; w < v; ++w) edges.push_back({v, w});
    }
    return edges;
  }
  const double log_q = std::log1p(-p);
  int64_t v = 1;
  int64_t w = -1;
  while (v < n) {
    const double r = rng.Uniform();
    w += 1 + static_cast<int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) {
      edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(w)});
    }
  }
  return edges;
}

// Expected-degree model with linear-time skipping; weights are
// non-increasing in the node index.
std::vector<Edge> ChungLu(const GeneratorSpec& spec, Rng& rng) {
  const int32_t n = spec.n;
  const double dmax = EffectiveDmax(spec);
  std::vector<double> w(n);
  double total = 0.0;
  for (int32_t i = 0; i < n; ++i) {
    w[i] = std::clamp(dmax * std::pow(i + 1.0, -1.0 / (spec.gamma - 1.0)),
                      spec.dmin, dmax);
    total += w[i];
  }
  std::vector<Edge> edges;
  if (n < 2) return edges;
  for (int32_t u = 0; u + 1 < n; ++u) {
    int32_t v = u + 1;
    double p = std::min(1.0, w[u] * w[v] / total);
    while (v < n && p > 0.0) {
      if (p < 1.0) {
        const double r = rng.Uniform();
        const double skip = std::floor(std::log1p(-r) / std::log1p(-p));
        if (skip >= n - v) break;
        v += static_cast<int32_t>(skip);
      }
      const double q = std::min(1.0, w[u] * w[v] / total);
      if (rng.Uniform() < q / p) edges.push_back({u, v});
      p = q;
      ++v;
    }
  }
  return edges;
}

}  // namespace

const char* GeneratorKindName(GeneratorKind kind) {
  for (const KindName& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

absl::StatusOr<GeneratorSpec> GeneratorSpec::Parse(absl::string_view text) {
  std::pair<absl::string_view, absl::string_view> head =
      absl::StrSplit(text, absl::MaxSplits(':', 1));
  GeneratorSpec spec;
  bool known = false;
  for (const KindName& k : kKinds) {
    if (head.first == k.name) {
      spec.kind = k.kind;
      known = true;
    }
  }
  if (!known) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "unknown generator '%s' (expected erdos-renyi, chung-lu-powerlaw, "
        "star, cycle or complete)",
        head.first));
  }
  bool has_n = false;
  for (absl::string_view item :
       absl::StrSplit(head.second, ',', absl::SkipWhitespace())) {
    std::pair<absl::string_view, absl::string_view> kv =
        absl::StrSplit(item, absl::MaxSplits('=', 1));
    const absl::string_view key = absl::StripAsciiWhitespace(kv.first);
    const absl::string_view value = absl::StripAsciiWhitespace(kv.second);
    bool ok = false;
    if (key == "n") {
      ok = absl::SimpleAtoi(value, &spec.n);
      has_n = ok;
    } else if (key == "p") {
      ok = absl::SimpleAtod(value, &spec.p);
    } else if (key == "gamma") {
      ok = absl::SimpleAtod(value, &spec.gamma);
    } else if (key == "dmin") {
      ok = absl::SimpleAtod(value, &spec.dmin);
    } else if (key == "dmax") {
      ok = absl::SimpleAtod(value, &spec.dmax);
    } else if (key == "seed") {
      ok = absl::SimpleAtoi(value, &spec.seed);
    } else {
      return absl::InvalidArgumentError(
          absl::StrFormat("unknown generator parameter '%s'", key));
    }
    if (!ok) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "bad value '%s' for generator parameter '%s'", value, key));
    }
  }
  if (!has_n) {
    return absl::InvalidArgumentError("generator spec needs n=<count>");
  }
  if (absl::Status s = Validate(spec); !s.ok()) return s;
  return spec;
}

std::string GeneratorSpec::Describe() const {
  switch (kind) {
    case GeneratorKind::kErdosRenyi:
      return absl::StrFormat("erdos-renyi:n=%d,p=%g,seed=%d", n, p, seed);
    case GeneratorKind::kChungLuPowerLaw:
      return absl::StrFormat(
          "chung-lu-powerlaw:n=%d,gamma=%g,dmin=%g,dmax=%g,seed=%d", n, gamma,
          dmin, EffectiveDmax(*this), seed);
    default:
      return absl::StrFormat("%s:n=%d", GeneratorKindName(kind), n);
  }
}

absl::StatusOr<Graph> Generate(const GeneratorSpec& spec) {
  if (absl::Status s = Validate(spec); !s.ok()) return s;
  Rng rng(spec.seed);
  const int32_t n = spec.n;
  std::vector<Edge> edges;
  switch (spec.kind) {
    case GeneratorKind::kErdosRenyi:
      edges = ErdosRenyi(n, spec.p, rng);
      break;
    case GeneratorKind::kChungLuPowerLaw:
      edges = ChungLu(spec, rng);
      break;
    case GeneratorKind::kStar:
      for (NodeId v = 1; v < n; ++v) edges.push_back({0, v});
      break;
    case GeneratorKind::kCycle:
      for (NodeId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
      break;
    case GeneratorKind::kComplete:
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
      }
      break;
  }
  return Graph::FromEdges(n, edges);
}

}  // namespace privimmune
