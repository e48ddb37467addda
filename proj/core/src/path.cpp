#include "qroute/path.hpp"

#include <algorithm>
#include <unordered_set>

namespace qroute {

std::optional<std::size_t> Path::index_of(Vertex v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  if (it == vertices.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

bool is_simple_path(const Path& p, int n) {
  if (p.empty()) return false;
  std::unordered_set<Vertex> seen;
  seen.reserve(p.size() * 2);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Vertex v = p.vertices[i];
    if ((v >> n) != 0) return false;
    if (!seen.insert(v).second) return false;
    if (i > 0 && !adjacent(p.vertices[i - 1], v)) return false;
  }
  return true;
}

std::size_t PathSystem::covered_vertices() const {
  std::size_t total = 0;
  for (const Path& p : paths) total += p.size();
  return total;
}

bool is_vertex_disjoint(const PathSystem& ps) {
  std::unordered_set<Vertex> seen;
  seen.reserve(ps.covered_vertices() * 2);
  for (const Path& p : ps.paths)
    for (Vertex v : p.vertices)
      if (!seen.insert(v).second) return false;
  return true;
}

Path segment(const Path& host, Vertex from, Vertex to) {
  auto i = host.index_of(from);
  auto j = host.index_of(to);
  require(i.has_value(), ErrorKind::VertexNotOnPath,
          "segment start " + std::to_string(from) + " not on path");
  require(j.has_value(), ErrorKind::VertexNotOnPath,
          "segment end " + std::to_string(to) + " not on path");
  Path out;
  if (*i <= *j) {
    out.vertices.assign(host.vertices.begin() + static_cast<std::ptrdiff_t>(*i),
                        host.vertices.begin() + static_cast<std::ptrdiff_t>(*j) + 1);
  } else {
    out.vertices.assign(host.vertices.rbegin() +
                            static_cast<std::ptrdiff_t>(host.size() - 1 - *i),
                        host.vertices.rbegin() +
                            static_cast<std::ptrdiff_t>(host.size() - *j));
  }
  return out;
}

Path join(const std::vector<Path>& pieces) {
  Path out;
  std::unordered_set<Vertex> seen;
  for (const Path& piece : pieces) {
    if (piece.empty()) continue;
    if (!out.empty()) {
      require(adjacent(out.sink(), piece.source()), ErrorKind::SeamNotAdjacent,
              "join seam " + std::to_string(out.sink()) + " -- " +
                  std::to_string(piece.source()) + " is not an edge");
    }
    for (Vertex v : piece.vertices) {
      require(seen.insert(v).second, ErrorKind::VertexCollision,
              "join pieces revisit vertex " + std::to_string(v));
      out.vertices.push_back(v);
    }
  }
  require(!out.empty(), ErrorKind::InvalidArgument, "join of no vertices");
  return out;
}

PathSystem link_systems(const PathSystem& left, const PathSystem& right,
                        const std::vector<std::pair<Vertex, Vertex>>& seams) {
  std::vector<bool> consumed(right.paths.size(), false);
  auto right_starting_at = [&](Vertex v) -> std::size_t {
    for (std::size_t i = 0; i < right.paths.size(); ++i)
      if (!consumed[i] && !right.paths[i].empty() && right.paths[i].source() == v)
        return i;
    fail(ErrorKind::ConstructionFailure,
         "no unconsumed path starts at vertex " + std::to_string(v));
  };

  PathSystem out;
  for (const Path& lp : left.paths) {
    auto seam = std::find_if(seams.begin(), seams.end(),
                             [&](const auto& s) { return s.first == lp.sink(); });
    if (seam == seams.end()) {
      out.paths.push_back(lp);
      continue;
    }
    std::size_t ri = right_starting_at(seam->second);
    consumed[ri] = true;
    out.paths.push_back(join({lp, right.paths[ri]}));
  }
  for (std::size_t i = 0; i < right.paths.size(); ++i)
    if (!consumed[i]) out.paths.push_back(right.paths[i]);
  return out;
}

Path embed_path(const SplitContext& ctx, const Path& p, int side) {
  Path out;
  out.vertices.reserve(p.size());
  for (Vertex v : p.vertices) out.vertices.push_back(ctx.embed(v, side));
  return out;
}

PathSystem embed_system(const SplitContext& ctx, const PathSystem& ps,
                        int side) {
  PathSystem out;
  out.paths.reserve(ps.paths.size());
  for (const Path& p : ps.paths) out.paths.push_back(embed_path(ctx, p, side));
  return out;
}

Path replace_edge(const Path& host, Vertex u, Vertex v, const Path& detour) {
  auto iu = host.index_of(u);
  auto iv = host.index_of(v);
  require(iu.has_value() && iv.has_value(), ErrorKind::VertexNotOnPath,
          "edge endpoints not on host path");
  require(*iu + 1 == *iv || *iv + 1 == *iu, ErrorKind::InvalidArgument,
          "vertices " + std::to_string(u) + " and " + std::to_string(v) +
              " are not consecutive on the host path");
  require(!detour.empty(), ErrorKind::InvalidArgument, "empty detour");

  std::size_t cut = std::min(*iu, *iv);
  Vertex a = host.vertices[cut];
  Vertex b = host.vertices[cut + 1];

  Path d = detour;
  if (!(adjacent(a, d.source()) && adjacent(d.sink(), b))) d = d.reversed();
  require(adjacent(a, d.source()) && adjacent(d.sink(), b),
          ErrorKind::SeamNotAdjacent,
          "detour does not connect to both edge endpoints");

  Path head;
  head.vertices.assign(host.vertices.begin(),
                       host.vertices.begin() + static_cast<std::ptrdiff_t>(cut) + 1);
  Path tail;
  tail.vertices.assign(host.vertices.begin() + static_cast<std::ptrdiff_t>(cut) + 1,
                       host.vertices.end());
  return join({head, d, tail});
}

} // namespace qroute
