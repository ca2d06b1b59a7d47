#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pmd/block_function.hpp"
#include "pmd/filtration.hpp"
#include "pmd/metric.hpp"

namespace pmd {

/// A simple graph on {0..vertex_count-1}.
struct ThresholdGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // u < v, sorted, unique

  void normalize() {
    for (auto& [u, v] : edges)
      if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  bool contains_edges_of(const ThresholdGraph& other) const {
    return std::includes(edges.begin(), edges.end(), other.edges.begin(), other.edges.end());
  }

  Partition components() const {
    UnionFind uf(vertex_count);
    for (const auto& [u, v] : edges) uf.unite(u, v);
    return Partition::from(uf);
  }
};

inline ThresholdGraph graph_union(const ThresholdGraph& g, const ThresholdGraph& h) {
  ThresholdGraph out{g.vertex_count, g.edges};
  out.edges.insert(out.edges.end(), h.edges.begin(), h.edges.end());
  out.normalize();
  return out;
}

/// Threshold graph of a space itself: edges d(x, y) <= r (< r when strict).
inline ThresholdGraph threshold_graph(const FiniteMetricSpace& z, const Filtration& fz, double r,
                                      bool strict) {
  ThresholdGraph g{z.size(), {}};
  for (std::uint32_t i = 0; i < z.size(); ++i)
    for (std::uint32_t j = i + 1; j < z.size(); ++j)
      if (fz.includes(z(i, j), r, strict)) g.edges.emplace_back(i, j);
  return g;
}

/// Image of the domain threshold graph on the codomain vertex set: edges
/// [m(x), m(y)] for d_X(x, y) within the threshold, self-loops dropped.
inline ThresholdGraph image_threshold_graph(const FiniteMetricSpace& x, const Filtration& fx,
                                            const SetMapping& m, double a, bool strict) {
  ThresholdGraph g{m.codomain_size(), {}};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (m[i] != m[j] && fx.includes(x(i, j), a, strict))
        g.edges.emplace_back(static_cast<std::uint32_t>(m[i]), static_cast<std::uint32_t>(m[j]));
  g.normalize();
  return g;
}

inline ThresholdGraph image_threshold_graph(const FiniteMetricSpace& x, const SetMapping& m,
                                            double a, bool strict) {
  return image_threshold_graph(x, Filtration(x), m, a, strict);
}

struct AbcGraphs {
  ThresholdGraph a;  // f(VR+_a(X)) u VR-_b(Z)
  ThresholdGraph b;  // f(VR-_a(X)) u VR+_b(Z)
  ThresholdGraph c;  // f(VR-_a(X)) u VR-_b(Z)
};

/// Inputs for the geometric construction: both spaces with their filtrations
/// (the filtrations supply the threshold convention) and the mapping.
struct GeometricInput {
  const FiniteMetricSpace& x;
  const Filtration& fx;
  const FiniteMetricSpace& z;
  const Filtration& fz;
  const SetMapping& m;
};

inline AbcGraphs build_abc(const GeometricInput& in, double a, double b) {
  const auto image_plus = image_threshold_graph(in.x, in.fx, in.m, a, false);
  const auto image_minus = image_threshold_graph(in.x, in.fx, in.m, a, true);
  const auto z_plus = threshold_graph(in.z, in.fz, b, false);
  const auto z_minus = threshold_graph(in.z, in.fz, b, true);
  return {graph_union(image_plus, z_minus), graph_union(image_minus, z_plus),
          graph_union(image_minus, z_minus)};
}

inline AbcGraphs build_abc(const FiniteMetricSpace& x, const FiniteMetricSpace& z,
                           const SetMapping& m, double a, double b) {
  const Filtration fx(x), fz(z);
  return build_abc({x, fx, z, fz, m}, a, b);
}

/// The bipartite graph on pi0(A) u pi0(C) u pi0(B) with one iota edge
/// C-component -> A-component and one mu edge C-component -> B-component per
/// component of C. Components are named by their smallest point index.
struct TripartiteComponentGraph {
  enum class Part : std::uint8_t { A, C, B };

  struct Vertex {
    Part part;
    std::uint32_t rep;
    friend bool operator==(const Vertex&, const Vertex&) = default;
  };

  struct Edge {
    std::size_t from;  // a C vertex
    std::size_t to;    // an A vertex (iota) or a B vertex (mu)
    bool iota;
  };

  std::vector<Vertex> vertices;  // A components, then C, then B; reps ascending
  std::vector<Edge> edges;       // iota and mu edge per C vertex, in C order
};

inline TripartiteComponentGraph build_G(const AbcGraphs& abc) {
  using Part = TripartiteComponentGraph::Part;
  const Partition pa = abc.a.components();
  const Partition pb = abc.b.components();
  const Partition pc = abc.c.components();

  TripartiteComponentGraph g;
  const std::size_t n = pa.size();
  std::vector<std::size_t> index_a(n), index_b(n);
  for (std::uint32_t v = 0; v < n; ++v)
    if (pa.labels[v] == v) {
      index_a[v] = g.vertices.size();
      g.vertices.push_back({Part::A, v});
    }
  std::vector<std::uint32_t> c_reps;
  for (std::uint32_t v = 0; v < n; ++v)
    if (pc.labels[v] == v) c_reps.push_back(v);
  const std::size_t c_offset = g.vertices.size();
  for (std::uint32_t v : c_reps) g.vertices.push_back({Part::C, v});
  for (std::uint32_t v = 0; v < n; ++v)
    if (pb.labels[v] == v) {
      index_b[v] = g.vertices.size();
      g.vertices.push_back({Part::B, v});
    }
  for (std::size_t i = 0; i < c_reps.size(); ++i) {
    const std::uint32_t v = c_reps[i];
    g.edges.push_back({c_offset + i, index_a[pa.labels[v]], true});
    g.edges.push_back({c_offset + i, index_b[pb.labels[v]], false});
  }
  return g;
}

inline TripartiteComponentGraph build_G(const GeometricInput& in, double a, double b) {
  return build_G(build_abc(in, a, b));
}

inline TripartiteComponentGraph build_G(const FiniteMetricSpace& x, const FiniteMetricSpace& z,
                                        const SetMapping& m, double a, double b) {
  return build_G(build_abc(x, z, m, a, b));
}

/// dim H1 of a graph: |E| - |V| + #components.
inline std::size_t cycle_rank(std::size_t vertex_count,
                              const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  UnionFind uf(vertex_count);
  for (const auto& [u, v] : edges) uf.unite(u, v);
  return edges.size() + uf.components() - vertex_count;
}

/// Components of G restricted to its iota edges (L-part), mu edges (R-part)
/// or both. Vertices of the unused part are left out of the count.
inline std::size_t component_count(const TripartiteComponentGraph& g, bool use_iota,
                                   bool use_mu) {
  using Part = TripartiteComponentGraph::Part;
  UnionFind uf(g.vertices.size());
  for (const auto& e : g.edges)
    if (e.iota ? use_iota : use_mu)
      uf.unite(static_cast<std::uint32_t>(e.from), static_cast<std::uint32_t>(e.to));
  std::size_t count = 0;
  for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
    const Part p = g.vertices[v].part;
    if ((p == Part::A && !use_iota) || (p == Part::B && !use_mu)) continue;
    count += uf.find(v) == v;
  }
  return count;
}

inline std::size_t cycle_rank(const TripartiteComponentGraph& g) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges)
    edges.emplace_back(static_cast<std::uint32_t>(e.from), static_cast<std::uint32_t>(e.to));
  return cycle_rank(g.vertices.size(), edges);
}

/// Plain-text edge list, one "C:<rep> A:<rep>" or "C:<rep> B:<rep>" per line.
inline std::string to_edge_list(const TripartiteComponentGraph& g) {
  auto name = [&](std::size_t idx) {
    const auto& v = g.vertices[idx];
    const char tag = v.part == TripartiteComponentGraph::Part::A   ? 'A'
                     : v.part == TripartiteComponentGraph::Part::B ? 'B'
                                                                   : 'C';
    return std::string(1, tag) + ":" + std::to_string(v.rep);
  };
  std::ostringstream out;
  out << "# vertices " << g.vertices.size() << " edges " << g.edges.size() << " cycle_rank "
      << cycle_rank(g) << "\n";
  for (const auto& e : g.edges) out << name(e.from) << " " << name(e.to) << "\n";
  return out.str();
}

/// Block function whose cells are cycle ranks of G over the death grid.
inline BlockFunction block_function_geometric(const GeometricInput& in) {
  detail::require_compatible(in.fx, in.fz, in.m);
  BlockFunction bf;
  for (const auto& la : in.fx.levels())
    for (const auto& lb : in.fz.levels()) {
      const std::size_t rank = cycle_rank(build_G(in, la.value, lb.value));
      if (rank > 0) bf.cells[{la.value, lb.value}] = rank;
    }
  complete_deficiency(bf, in.fz);
  return bf;
}

inline BlockFunction block_function_geometric(const FiniteMetricSpace& x,
                                              const FiniteMetricSpace& z, const SetMapping& m) {
  const Filtration fx(x), fz(z);
  return block_function_geometric({x, fx, z, fz, m});
}

}  // namespace pmd
