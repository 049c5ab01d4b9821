// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace ltl {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

///
/// Indexed triangle mesh with per-vertex one-ring adjacency.
///
/// The mesh is immutable after construction. Adjacency lists are stored in
/// ascending index order so that every query is deterministic. Construction
/// rejects out-of-range indices, degenerate triangles (a repeated vertex) and
/// non-manifold edges (more than two incident triangles).
///
class TriMesh
{
public:
    TriMesh() = default;
    TriMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

    int num_vertices() const { return static_cast<int>(m_vertices.size()); }
    int num_triangles() const { return static_cast<int>(m_triangles.size()); }

    const std::vector<Vec3>& vertices() const { return m_vertices; }
    const Vec3& vertex(int v) const { return m_vertices[static_cast<std::size_t>(v)]; }
    const std::vector<Triangle>& triangles() const { return m_triangles; }
    const Triangle& triangle(int t) const { return m_triangles[static_cast<std::size_t>(t)]; }

    /// Vertices sharing an edge with `v`, ascending.
    std::span<const int> vertex_neighbors(int v) const;
    /// Triangles incident to `v`, ascending.
    std::span<const int> vertex_triangles(int v) const;

    bool is_boundary(int v) const { return m_boundary[static_cast<std::size_t>(v)] != 0; }
    const std::vector<std::uint8_t>& boundary_flags() const { return m_boundary; }
    bool has_boundary() const;

    /// Undirected edges (a < b), sorted lexicographically.
    const std::vector<std::array<int, 2>>& edges() const { return m_edges; }

    /// True when every interior edge is traversed once in each direction.
    bool is_consistently_oriented() const;

    /// Hash of the vertex coordinates and triangle list; fields and operators
    /// record it to detect use with a different mesh.
    std::uint64_t fingerprint() const { return m_fingerprint; }

    /// Recompute adjacency from the triangle list and compare with the
    /// stored one.
    bool adjacency_consistent() const;

private:
    struct Adjacency
    {
        std::vector<int> neighbor_offsets;
        std::vector<int> neighbors;
        std::vector<int> triangle_offsets;
        std::vector<int> incident;
        std::vector<std::array<int, 2>> edges;
        std::vector<std::uint8_t> boundary;
    };

    static Adjacency build_adjacency(int num_vertices, const std::vector<Triangle>& triangles);

    std::vector<Vec3> m_vertices;
    std::vector<Triangle> m_triangles;
    std::vector<int> m_neighbor_offsets{0};
    std::vector<int> m_neighbors;
    std::vector<int> m_triangle_offsets{0};
    std::vector<int> m_incident;
    std::vector<std::array<int, 2>> m_edges;
    std::vector<std::uint8_t> m_boundary;
    std::uint64_t m_fingerprint = 0;
};

/// Maximum Euclidean edge length. Throws MeshError for a mesh without edges.
double mesh_size(const TriMesh& mesh);

/// Vertices incident to an edge with exactly one incident triangle, ascending.
std::vector<int> boundary_vertices(const TriMesh& mesh);

} // namespace ltl
