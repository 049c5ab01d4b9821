// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/generators.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace ltl {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr int max_resolution = 4096;

double param_or(const MeshParams& params, std::string_view key, double fallback)
{
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

int positive_int_param(const MeshParams& params, std::string_view key)
{
    const auto it = params.find(key);
    if (it == params.end()) return 0;
    const double value = it->second;
    if (!(value >= 1.0) || value != std::floor(value))
        throw Error("generate_mesh: parameter '" + std::string(key) + "' must be a positive integer");
    return static_cast<int>(value);
}

struct Polyhedron
{
    std::vector<Vec3> corners;
    std::vector<Triangle> faces;
};

Polyhedron icosahedron()
{
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Polyhedron p;
    p.corners = {{-1, phi, 0},  {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                 {0, -1, phi},  {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                 {phi, 0, -1},  {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& c : p.corners) c.normalize();
    p.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (auto& f : p.faces) {
        const Vec3 n = (p.corners[f[1]] - p.corners[f[0]]).cross(p.corners[f[2]] - p.corners[f[0]]);
        if (n.dot(p.corners[f[0]] + p.corners[f[1]] + p.corners[f[2]]) < 0) std::swap(f[1], f[2]);
    }
    return p;
}

Polyhedron upper_octahedron()
{
    Polyhedron p;
    p.corners = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
    p.faces = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    return p;
}

// Split every face of `base` into frequency^2 triangles on the barycentric
// lattice and project onto the sphere of the given radius. Lattice points on
// shared edges are keyed by their sorted (corner, weight) pairs, so shared
// points are created once and get bit-identical coordinates.
TriMesh subdivide_and_project(const Polyhedron& base, int frequency, double radius)
{
    if (frequency < 1) throw Error("subdivision frequency must be >= 1");
    if (!(radius > 0.0)) throw Error("sphere radius must be positive");

    using Key = std::array<int, 6>;
    std::map<Key, int> ids;
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    const int n = frequency;

    auto lattice_vertex = [&](const Triangle& f, int i, int j) {
        std::array<std::pair<int, int>, 3> w = {
            std::pair{f[0], n - i - j}, std::pair{f[1], i}, std::pair{f[2], j}};
        std::sort(w.begin(), w.end());
        Key key{-1, -1, -1, -1, -1, -1};
        int slot = 0;
        for (const auto& [corner, weight] : w) {
            if (weight == 0) continue;
            key[static_cast<std::size_t>(2 * slot)] = corner;
            key[static_cast<std::size_t>(2 * slot + 1)] = weight;
            ++slot;
        }
        const auto [it, inserted] = ids.emplace(key, static_cast<int>(vertices.size()));
        if (inserted) {
            Vec3 p = Vec3::Zero();
            for (const auto& [corner, weight] : w)
                if (weight != 0) p += static_cast<double>(weight) * base.corners[static_cast<std::size_t>(corner)];
            vertices.push_back(radius * p.normalized());
        }
        return it->second;
    };

    for (const auto& f : base.faces) {
        std::vector<std::vector<int>> grid(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) grid[static_cast<std::size_t>(i)].push_back(lattice_vertex(f, i, j));
        auto at = [&](int i, int j) { return grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
        for (int i = 0; i < n; ++i) {
            for (int j = 0; i + j < n; ++j) {
                triangles.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
                if (i + j + 2 <= n) triangles.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
            }
        }
    }
    return TriMesh(std::move(vertices), std::move(triangles));
}

// Coarsest resolution whose mesh meets the target edge length. `estimate`
// is a guess; the search walks down while the coarser mesh still fits and up
// until the bound holds.
TriMesh coarsest_fitting(const std::function<TriMesh(int)>& build, int estimate, double target_edge)
{
    int n = std::clamp(estimate, 1, max_resolution);
    TriMesh mesh = build(n);
    if (mesh_size(mesh) <= target_edge) {
        while (n > 1) {
            TriMesh coarser = build(n - 1);
            if (mesh_size(coarser) > target_edge) break;
            mesh = std::move(coarser);
            --n;
        }
        return mesh;
    }
    while (mesh_size(mesh) > target_edge) {
        if (++n > max_resolution) throw Error("generate_mesh: target edge too small");
        mesh = build(n);
    }
    return mesh;
}

int estimate_from(double length, double target_edge)
{
    return static_cast<int>(std::floor(0.9 * length / target_edge));
}

} // namespace

SurfaceKind parse_surface_kind(std::string_view name)
{
    if (name == "sphere") return SurfaceKind::sphere;
    if (name == "hemisphere") return SurfaceKind::hemisphere;
    if (name == "torus") return SurfaceKind::torus;
    if (name == "dumbbell") return SurfaceKind::dumbbell;
    if (name == "wave") return SurfaceKind::wave;
    throw Error("unknown surface kind '" + std::string(name) + "'");
}

std::string_view to_string(SurfaceKind kind)
{
    switch (kind) {
    case SurfaceKind::sphere: return "sphere";
    case SurfaceKind::hemisphere: return "hemisphere";
    case SurfaceKind::torus: return "torus";
    case SurfaceKind::dumbbell: return "dumbbell";
    case SurfaceKind::wave: return "wave";
    }
    return "unknown";
}

TriMesh icosphere(int frequency, double radius)
{
    return subdivide_and_project(icosahedron(), frequency, radius);
}

TriMesh octahedral_hemisphere(int frequency, double radius)
{
    return subdivide_and_project(upper_octahedron(), frequency, radius);
}

TriMesh torus_grid(int n_u, int n_v, double inner, double outer)
{
    if (n_u < 3 || n_v < 3) throw Error("torus grid needs at least 3 samples per direction");
    if (!(inner > 0.0) || !(outer > 0.0)) throw Error("torus radii must be positive");
    if (inner >= outer) throw Error("torus inner radius must be smaller than outer radius");
    const double center = 0.5 * (inner + outer);
    const double tube = 0.5 * (outer - inner);

    std::vector<Vec3> vertices;
    vertices.reserve(static_cast<std::size_t>(n_u) * static_cast<std::size_t>(n_v));
    for (int i = 0; i < n_u; ++i) {
        const double u = two_pi * i / n_u;
        for (int j = 0; j < n_v; ++j) {
            const double v = two_pi * j / n_v;
            const double ring = center + tube * std::cos(v);
            vertices.emplace_back(ring * std::cos(u), ring * std::sin(u), tube * std::sin(v));
        }
    }
    std::vector<Triangle> triangles;
    auto id = [&](int i, int j) { return (i % n_u) * n_v + (j % n_v); };
    for (int i = 0; i < n_u; ++i) {
        for (int j = 0; j < n_v; ++j) {
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return TriMesh(std::move(vertices), std::move(triangles));
}

double dumbbell_radius(double v)
{
    const double a2 = 0.81;
    const double s = std::sin(2.0 * v);
    return std::sqrt(a2 * std::cos(2.0 * v) + std::sqrt(1.0 - a2 * a2 * s * s));
}

TriMesh dumbbell_grid(int n_u, int n_v)
{
    if (n_u < 3 || n_v < 2) throw Error("dumbbell grid too coarse");
    std::vector<Vec3> vertices;
    vertices.emplace_back(0.0, 0.0, dumbbell_radius(0.0));
    for (int j = 1; j < n_v; ++j) {
        const double v = std::numbers::pi * j / n_v;
        const double r = dumbbell_radius(v);
        for (int i = 0; i < n_u; ++i) {
            const double u = two_pi * i / n_u;
            vertices.emplace_back(r * std::sin(v) * std::cos(u), r * std::sin(v) * std::sin(u),
                                  r * std::cos(v));
        }
    }
    vertices.emplace_back(0.0, 0.0, -dumbbell_radius(std::numbers::pi));
    const int south = static_cast<int>(vertices.size()) - 1;

    auto id = [&](int ring, int i) { return 1 + (ring - 1) * n_u + (i % n_u); };
    std::vector<Triangle> triangles;
    // (u, v) increasing order is inward for this parametrization; emit the
    // reverse winding so that face normals point outward.
    for (int i = 0; i < n_u; ++i) triangles.push_back({0, id(1, i), id(1, i + 1)});
    for (int ring = 1; ring + 1 < n_v; ++ring) {
        for (int i = 0; i < n_u; ++i) {
            triangles.push_back({id(ring, i), id(ring + 1, i + 1), id(ring, i + 1)});
            triangles.push_back({id(ring, i), id(ring + 1, i), id(ring + 1, i + 1)});
        }
    }
    for (int i = 0; i < n_u; ++i) triangles.push_back({south, id(n_v - 1, i + 1), id(n_v - 1, i)});
    return TriMesh(std::move(vertices), std::move(triangles));
}

TriMesh wave_grid(int n)
{
    if (n < 2) throw Error("wave grid needs at least 2 cells per side");
    std::vector<Vec3> vertices;
    vertices.reserve(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        const double x = two_pi * i / n;
        for (int j = 0; j <= n; ++j) {
            const double y = two_pi * j / n;
            vertices.emplace_back(x, y, std::sin(x) * std::cos(y));
        }
    }
    auto id = [&](int i, int j) { return i * (n + 1) + j; };
    std::vector<Triangle> triangles;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    }
    return TriMesh(std::move(vertices), std::move(triangles));
}

TriMesh generate_mesh(SurfaceKind kind, const MeshParams& params, double target_edge)
{
    if (!(target_edge > 0.0)) throw Error("generate_mesh: target edge must be positive");

    switch (kind) {
    case SurfaceKind::sphere:
    case SurfaceKind::hemisphere: {
        const double radius = param_or(params, "radius", 1.0);
        if (!(radius > 0.0)) throw Error("generate_mesh: radius must be positive");
        auto build = [&](int f) {
            return kind == SurfaceKind::sphere ? icosphere(f, radius) : octahedral_hemisphere(f, radius);
        };
        if (const int f = positive_int_param(params, "frequency")) return build(f);
        const double base_edge = kind == SurfaceKind::sphere ? 1.0515 * radius : std::sqrt(2.0) * radius;
        return coarsest_fitting(build, estimate_from(base_edge, target_edge), target_edge);
    }
    case SurfaceKind::torus: {
        const double inner = param_or(params, "inner", 0.5);
        const double outer = param_or(params, "outer", 1.0);
        if (!(inner > 0.0) || !(outer > 0.0)) throw Error("generate_mesh: torus radii must be positive");
        if (inner >= outer) throw Error("generate_mesh: torus inner radius must be below outer radius");
        const int n_u = positive_int_param(params, "n_u");
        const int n_v = positive_int_param(params, "n_v");
        if (n_u && n_v) return torus_grid(n_u, n_v, inner, outer);
        // Equal u and v spacing at the outer equator.
        const double tube = 0.5 * (outer - inner);
        const double ratio = outer / tube;
        auto build = [&](int nv) {
            return torus_grid(std::max(3, static_cast<int>(std::lround(ratio * nv))), nv, inner, outer);
        };
        return coarsest_fitting(build, estimate_from(two_pi * tube * std::sqrt(2.0), target_edge), target_edge);
    }
    case SurfaceKind::dumbbell: {
        const int n_u = positive_int_param(params, "n_u");
        const int n_v = positive_int_param(params, "n_v");
        if (n_u && n_v) return dumbbell_grid(n_u, n_v);
        auto build = [](int nv) { return dumbbell_grid(2 * nv, nv); };
        return coarsest_fitting(build, estimate_from(std::numbers::pi * 1.2, target_edge), target_edge);
    }
    case SurfaceKind::wave: {
        if (const int n = positive_int_param(params, "n")) return wave_grid(n);
        return coarsest_fitting(wave_grid, estimate_from(two_pi * std::sqrt(2.0), target_edge), target_edge);
    }
    }
    throw Error("generate_mesh: unknown surface kind");
}

TriMesh refine_midpoint(const TriMesh& mesh, bool project_to_sphere)
{
    std::vector<Vec3> vertices = mesh.vertices();
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        const auto [it, inserted] = midpoint.emplace(key, static_cast<int>(vertices.size()));
        if (inserted) {
            const Vec3& pa = mesh.vertex(key.first);
            const Vec3& pb = mesh.vertex(key.second);
            Vec3 p = 0.5 * (pa + pb);
            if (project_to_sphere) p = 0.5 * (pa.norm() + pb.norm()) * p.normalized();
            vertices.push_back(p);
        }
        return it->second;
    };
    std::vector<Triangle> triangles;
    triangles.reserve(4 * mesh.triangles().size());
    for (const auto& t : mesh.triangles()) {
        const int ab = mid(t[0], t[1]);
        const int bc = mid(t[1], t[2]);
        const int ca = mid(t[2], t[0]);
        triangles.push_back({t[0], ab, ca});
        triangles.push_back({ab, t[1], bc});
        triangles.push_back({ca, bc, t[2]});
        triangles.push_back({ab, bc, ca});
    }
    return TriMesh(std::move(vertices), std::move(triangles));
}

} // namespace ltl
