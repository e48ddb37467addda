#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "qroute/errors.hpp"

namespace qroute {

// A vertex of the n-dimensional hypercube is an n-bit label. Bit j-1 holds
// coordinate j, so dimension j connects labels differing exactly in bit j-1.
using Vertex = std::uint32_t;

// Hard cap on the dimension: labels must fit comfortably in 32 bits and the
// exhaustive helpers allocate arrays of size 2^n.
inline constexpr int kMaxDimension = 30;

inline void check_dimension(int n) {
  require(n >= 1 && n <= kMaxDimension, ErrorKind::InvalidArgument,
          "dimension n=" + std::to_string(n) + " out of range [1, " +
              std::to_string(kMaxDimension) + "]");
}

inline void check_vertex(Vertex v, int n) {
  require((v >> n) == 0, ErrorKind::InvalidArgument,
          "label " + std::to_string(v) + " does not fit in " +
              std::to_string(n) + " bits");
}

inline std::uint32_t vertex_count(int n) { return std::uint32_t{1} << n; }

// The two sides of the bipartition: labels with an even number of one bits
// versus labels with an odd number.
enum class ParityClass : int { Even = 0, Odd = 1 };

inline ParityClass parity_class(Vertex v) {
  return (std::popcount(v) & 1) ? ParityClass::Odd : ParityClass::Even;
}

inline bool same_class(Vertex a, Vertex b) {
  return ((std::popcount(a) ^ std::popcount(b)) & 1) == 0;
}

inline int distance(Vertex a, Vertex b) { return std::popcount(a ^ b); }

inline bool adjacent(Vertex a, Vertex b) { return distance(a, b) == 1; }

// Neighbors in ascending dimension order (dimension 1 first).
inline std::vector<Vertex> neighbors(Vertex v, int n) {
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.push_back(v ^ (Vertex{1} << j));
  return out;
}

inline std::string to_bits(Vertex v, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int j = 0; j < n; ++j)
    if (v & (Vertex{1} << j)) s[static_cast<std::size_t>(n - 1 - j)] = '1';
  return s;
}

// Splitting the n-cube along dimension j yields two (n-1)-cubes: the vertices
// with bit j-1 clear and those with it set. Projection removes that bit,
// embedding restores it, and the peer of a vertex is its unique neighbor in
// the opposite half. Projection preserves adjacency within a half, and peers
// of adjacent same-half vertices are adjacent.
class SplitContext {
public:
  SplitContext(int n, int j) : n_(n), j_(j) {
    check_dimension(n);
    require(n >= 2, ErrorKind::InvalidArgument,
            "cannot split a cube of dimension 1");
    require(j >= 1 && j <= n, ErrorKind::InvalidArgument,
            "split dimension j=" + std::to_string(j) + " out of range [1, " +
                std::to_string(n) + "]");
    bit_ = Vertex{1} << (j - 1);
    low_mask_ = bit_ - 1;
  }

  int dimension() const { return n_; }
  int split_axis() const { return j_; }
  int half_dimension() const { return n_ - 1; }

  // 0 for the half with bit j-1 clear, 1 for the half with it set.
  int side(Vertex v) const { return (v & bit_) ? 1 : 0; }

  Vertex peer(Vertex v) const { return v ^ bit_; }

  // Drop bit j-1, shifting the higher bits down one place.
  Vertex project(Vertex v) const {
    return (v & low_mask_) | ((v >> 1) & ~low_mask_);
  }

  // Inverse of project for the requested half.
  Vertex embed(Vertex w, int side) const {
    Vertex high = (w & ~low_mask_) << 1;
    Vertex v = (w & low_mask_) | high;
    if (side) v |= bit_;
    return v;
  }

private:
  int n_;
  int j_;
  Vertex bit_;
  Vertex low_mask_;
};

} // namespace qroute
