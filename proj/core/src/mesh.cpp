// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/mesh.hpp>

#include <algorithm>
#include <cstring>
#include <map>
#include <tuple>
#include <sstream>

namespace ltl {

namespace {

std::uint64_t fnv1a(std::uint64_t hash, const void* data, std::size_t bytes)
{
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        hash ^= p[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

struct EdgeUse
{
    int a, b; // a < b
    int triangle;
};

} // namespace

TriMesh::TriMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles)
    : m_vertices(std::move(vertices))
    , m_triangles(std::move(triangles))
{
    const int nv = num_vertices();
    for (std::size_t t = 0; t < m_triangles.size(); ++t) {
        const auto& tri = m_triangles[t];
        for (int k = 0; k < 3; ++k) {
            if (tri[k] < 0 || tri[k] >= nv) {
                std::ostringstream msg;
                msg << "triangle " << t << " references vertex " << tri[k] << " outside [0, "
                    << nv << ")";
                throw MeshError(msg.str());
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            std::ostringstream msg;
            msg << "triangle " << t << " is degenerate (" << tri[0] << ", " << tri[1] << ", "
                << tri[2] << ")";
            throw MeshError(msg.str());
        }
    }

    auto adj = build_adjacency(nv, m_triangles);
    m_neighbor_offsets = std::move(adj.neighbor_offsets);
    m_neighbors = std::move(adj.neighbors);
    m_triangle_offsets = std::move(adj.triangle_offsets);
    m_incident = std::move(adj.incident);
    m_edges = std::move(adj.edges);
    m_boundary = std::move(adj.boundary);

    std::uint64_t h = 1469598103934665603ull;
    for (const auto& v : m_vertices) h = fnv1a(h, v.data(), 3 * sizeof(double));
    for (const auto& t : m_triangles) h = fnv1a(h, t.data(), 3 * sizeof(int));
    m_fingerprint = h;
}

TriMesh::Adjacency TriMesh::build_adjacency(int nv, const std::vector<Triangle>& triangles)
{
    Adjacency adj;

    std::vector<EdgeUse> uses;
    uses.reserve(triangles.size() * 3);
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) {
        const auto& tri = triangles[static_cast<std::size_t>(t)];
        for (int k = 0; k < 3; ++k) {
            int a = tri[k];
            int b = tri[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            uses.push_back({a, b, t});
        }
    }
    std::sort(uses.begin(), uses.end(), [](const EdgeUse& x, const EdgeUse& y) {
        return std::tie(x.a, x.b, x.triangle) < std::tie(y.a, y.b, y.triangle);
    });

    adj.boundary.assign(static_cast<std::size_t>(nv), 0);
    std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(nv));
    for (std::size_t i = 0; i < uses.size();) {
        std::size_t j = i;
        while (j < uses.size() && uses[j].a == uses[i].a && uses[j].b == uses[i].b) ++j;
        const std::size_t count = j - i;
        if (count > 2) {
            std::ostringstream msg;
            msg << "non-manifold edge (" << uses[i].a << ", " << uses[i].b << ") has " << count
                << " incident triangles";
            throw MeshError(msg.str());
        }
        if (count == 1) {
            adj.boundary[static_cast<std::size_t>(uses[i].a)] = 1;
            adj.boundary[static_cast<std::size_t>(uses[i].b)] = 1;
        }
        adj.edges.push_back({uses[i].a, uses[i].b});
        nbrs[static_cast<std::size_t>(uses[i].a)].push_back(uses[i].b);
        nbrs[static_cast<std::size_t>(uses[i].b)].push_back(uses[i].a);
        i = j;
    }

    adj.neighbor_offsets.assign(1, 0);
    for (auto& list : nbrs) {
        std::sort(list.begin(), list.end());
        adj.neighbors.insert(adj.neighbors.end(), list.begin(), list.end());
        adj.neighbor_offsets.push_back(static_cast<int>(adj.neighbors.size()));
    }

    std::vector<int> counts(static_cast<std::size_t>(nv), 0);
    for (const auto& tri : triangles)
        for (int v : tri) ++counts[static_cast<std::size_t>(v)];
    adj.triangle_offsets.assign(static_cast<std::size_t>(nv) + 1, 0);
    for (int v = 0; v < nv; ++v)
        adj.triangle_offsets[static_cast<std::size_t>(v) + 1] =
            adj.triangle_offsets[static_cast<std::size_t>(v)] + counts[static_cast<std::size_t>(v)];
    adj.incident.resize(static_cast<std::size_t>(adj.triangle_offsets.back()));
    std::vector<int> cursor(adj.triangle_offsets.begin(), adj.triangle_offsets.end() - 1);
    // Triangles are visited in ascending order, so each list ends up sorted.
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
        for (int v : triangles[static_cast<std::size_t>(t)])
            adj.incident[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = t;

    return adj;
}

std::span<const int> TriMesh::vertex_neighbors(int v) const
{
    const auto b = static_cast<std::size_t>(m_neighbor_offsets[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(m_neighbor_offsets[static_cast<std::size_t>(v) + 1]);
    return {m_neighbors.data() + b, e - b};
}

std::span<const int> TriMesh::vertex_triangles(int v) const
{
    const auto b = static_cast<std::size_t>(m_triangle_offsets[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(m_triangle_offsets[static_cast<std::size_t>(v) + 1]);
    return {m_incident.data() + b, e - b};
}

bool TriMesh::has_boundary() const
{
    return std::any_of(m_boundary.begin(), m_boundary.end(), [](std::uint8_t b) { return b != 0; });
}

bool TriMesh::is_consistently_oriented() const
{
    std::map<std::pair<int, int>, int> directed;
    for (const auto& tri : m_triangles)
        for (int k = 0; k < 3; ++k) ++directed[{tri[k], tri[(k + 1) % 3]}];
    for (const auto& [edge, count] : directed) {
        if (count > 1) return false;
    }
    return true;
}

bool TriMesh::adjacency_consistent() const
{
    const auto adj = build_adjacency(num_vertices(), m_triangles);
    return adj.neighbor_offsets == m_neighbor_offsets && adj.neighbors == m_neighbors &&
           adj.triangle_offsets == m_triangle_offsets && adj.incident == m_incident &&
           adj.edges == m_edges && adj.boundary == m_boundary;
}

double mesh_size(const TriMesh& mesh)
{
    if (mesh.edges().empty()) throw MeshError("mesh_size: mesh has no edges");
    double longest = 0.0;
    for (const auto& e : mesh.edges())
        longest = std::max(longest, (mesh.vertex(e[0]) - mesh.vertex(e[1])).norm());
    return longest;
}

std::vector<int> boundary_vertices(const TriMesh& mesh)
{
    std::vector<int> out;
    for (int v = 0; v < mesh.num_vertices(); ++v)
        if (mesh.is_boundary(v)) out.push_back(v);
    return out;
}

} // namespace ltl
