// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/neighborhood.hpp>

#include <algorithm>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace ltl {

void NeighborhoodSpec::validate() const
{
    if (ring_numerator < 1) throw Error("neighborhood ring numerator must be >= 1");
    if (min_count < 5) throw Error("neighborhood min_count must be >= 5");
}

namespace {

// Breadth-first layers around a seed vertex, grown on demand.
class RingWalker
{
public:
    RingWalker(const TriMesh& mesh, int seed)
        : m_mesh(mesh)
    {
        m_layers.push_back({seed});
        m_dist.emplace(seed, 0);
    }

    // Ensures layers 0..depth exist (fewer when the component is exhausted).
    void grow_to(int depth)
    {
        while (static_cast<int>(m_layers.size()) <= depth && !m_layers.back().empty()) {
            const int d = static_cast<int>(m_layers.size());
            std::vector<int> next;
            for (int a : m_layers.back()) {
                for (int b : m_mesh.vertex_neighbors(a)) {
                    if (m_dist.emplace(b, d).second) next.push_back(b);
                }
            }
            std::sort(next.begin(), next.end());
            m_layers.push_back(std::move(next));
        }
    }

    bool exhausted(int depth) const
    {
        return static_cast<int>(m_layers.size()) <= depth || m_layers[static_cast<std::size_t>(depth)].empty();
    }

    int distance(int v) const
    {
        const auto it = m_dist.find(v);
        return it == m_dist.end() ? -1 : it->second;
    }

    const std::vector<int>& layer(int d) const { return m_layers[static_cast<std::size_t>(d)]; }
    int depth() const { return static_cast<int>(m_layers.size()) - 1; }

private:
    const TriMesh& m_mesh;
    std::vector<std::vector<int>> m_layers;
    std::unordered_map<int, int> m_dist;
};

std::vector<std::pair<int, int>> collect_ring(const TriMesh& mesh, RingWalker& walker, int j)
{
    const int k = j / 2;
    walker.grow_to(k + 1);

    std::vector<std::pair<int, int>> found; // (vertex, distance)
    for (int d = 1; d <= std::min(k, walker.depth()); ++d)
        for (int w : walker.layer(d)) found.emplace_back(w, d);

    if (j % 2 == 1 && k >= 1 && k + 1 <= walker.depth()) {
        std::vector<int> extra;
        for (int a : walker.layer(k)) {
            for (int t : mesh.vertex_triangles(a)) {
                const auto& tri = mesh.triangle(t);
                int on_front = 0;
                int outside = -1;
                for (int c : tri) {
                    const int dc = walker.distance(c);
                    if (dc == k) ++on_front;
                    else if (dc == k + 1) outside = c;
                }
                if (on_front == 2 && outside >= 0) extra.push_back(outside);
            }
        }
        std::sort(extra.begin(), extra.end());
        extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
        for (int w : extra) found.emplace_back(w, k + 1);
    }
    return found;
}

} // namespace

std::vector<int> neighborhood(const TriMesh& mesh, int v, const NeighborhoodSpec& spec, int& ring_used)
{
    spec.validate();
    if (v < 0 || v >= mesh.num_vertices()) throw Error("neighborhood: vertex index out of range");

    RingWalker walker(mesh, v);
    std::vector<std::pair<int, int>> found;
    int j = spec.ring_numerator;
    for (;; ++j) {
        found = collect_ring(mesh, walker, j);
        if (static_cast<int>(found.size()) >= spec.min_count) break;
        if (walker.exhausted(j / 2 + 1)) {
            std::ostringstream msg;
            msg << "neighborhood: vertex " << v << " reaches only " << found.size()
                << " vertices, fewer than the required " << spec.min_count;
            throw MeshError(msg.str());
        }
    }
    ring_used = j;

    const Vec3& center = mesh.vertex(v);
    std::vector<std::tuple<int, double, int>> keyed;
    keyed.reserve(found.size());
    for (const auto& [w, d] : found) keyed.emplace_back(d, (mesh.vertex(w) - center).squaredNorm(), w);
    std::sort(keyed.begin(), keyed.end());

    std::vector<int> out;
    out.reserve(keyed.size());
    for (const auto& item : keyed) out.push_back(std::get<2>(item));
    return out;
}

std::vector<int> neighborhood(const TriMesh& mesh, int v, const NeighborhoodSpec& spec)
{
    int ring_used = 0;
    return neighborhood(mesh, v, spec, ring_used);
}

} // namespace ltl
