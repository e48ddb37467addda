#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qroute/cube.hpp"

namespace qroute {

// A simple path, stored as the ordered vertex sequence from source to sink.
// A single vertex is a valid path of length zero.
struct Path {
  std::vector<Vertex> vertices;

  Path() = default;
  explicit Path(std::vector<Vertex> vs) : vertices(std::move(vs)) {}

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }
  Vertex source() const { return vertices.front(); }
  Vertex sink() const { return vertices.back(); }

  Path reversed() const {
    return Path(std::vector<Vertex>(vertices.rbegin(), vertices.rend()));
  }

  std::optional<std::size_t> index_of(Vertex v) const;
};

// Consecutive vertices adjacent, no vertex repeated, labels within range.
bool is_simple_path(const Path& p, int n);

struct PathSystem {
  std::vector<Path> paths;

  std::size_t covered_vertices() const;
};

// True when no vertex appears twice across the whole system.
bool is_vertex_disjoint(const PathSystem& ps);

// Oriented segment of a host path between two of its vertices, inclusive.
// The result runs from `from` to `to`, reversing direction if needed.
Path segment(const Path& host, Vertex from, Vertex to);

// Concatenate pieces in order into one path. Consecutive pieces must meet in
// an edge (back of one adjacent to front of the next) and may not share
// vertices. Empty pieces are skipped.
Path join(const std::vector<Path>& pieces);

// Replace one edge {u, v} of the host with a detour. The detour must connect
// to both edge endpoints: its front adjacent to one and its back to the
// other (it is reversed automatically if oriented the other way), and it may
// not revisit any host vertex.
Path replace_edge(const Path& host, Vertex u, Vertex v, const Path& detour);

// Concatenate two path families along explicit seams. Each seam maps the
// last vertex of one left path to the first vertex of one right path, and
// the two must be adjacent. Left paths without a seam and right paths no
// seam points at are passed through unchanged.
PathSystem link_systems(const PathSystem& left, const PathSystem& right,
                        const std::vector<std::pair<Vertex, Vertex>>& seams);

// Lift paths expressed in half-cube coordinates into the full cube.
Path embed_path(const SplitContext& ctx, const Path& p, int side);
PathSystem embed_system(const SplitContext& ctx, const PathSystem& ps, int side);

} // namespace qroute
