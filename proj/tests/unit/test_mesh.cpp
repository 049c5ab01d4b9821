// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <ltl/errors.hpp>
#include <ltl/generators.hpp>
#include <ltl/mesh.hpp>
#include <ltl/mesh_io.hpp>
#include <ltl/neighborhood.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

using namespace ltl;

namespace {

TriMesh from_off(const std::string& text)
{
    std::istringstream in(text);
    return load_mesh(in, MeshFormat::off);
}

TriMesh from_obj(const std::string& text)
{
    std::istringstream in(text);
    return load_mesh(in, MeshFormat::obj);
}

const char* tetrahedron_off = R"(OFF
4 4 6
0 0 0
1 0 0
0 1 0
0 0 1
3 0 2 1
3 0 1 3
3 1 2 3
3 0 3 2
)";

// Breadth-first distances from `v`; the oracle for the even rings.
std::vector<int> bfs_distance(const TriMesh& mesh, int v)
{
    std::vector<int> dist(static_cast<std::size_t>(mesh.num_vertices()), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(v)] = 0;
    q.push(v);
    while (!q.empty()) {
        const int a = q.front();
        q.pop();
        for (int b : mesh.vertex_neighbors(a))
            if (dist[static_cast<std::size_t>(b)] < 0) {
                dist[static_cast<std::size_t>(b)] = dist[static_cast<std::size_t>(a)] + 1;
                q.push(b);
            }
    }
    return dist;
}

} // namespace

TEST_CASE("OFF single triangle is all boundary")
{
    const TriMesh m = from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
    CHECK(m.num_vertices() == 3);
    CHECK(m.num_triangles() == 1);
    CHECK(boundary_vertices(m) == std::vector<int>{0, 1, 2});
    CHECK(mesh_size(m) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("OFF tetrahedron is closed and oriented")
{
    const TriMesh m = from_off(tetrahedron_off);
    CHECK(m.num_vertices() == 4);
    CHECK_FALSE(m.has_boundary());
    CHECK(boundary_vertices(m).empty());
    CHECK(m.is_consistently_oriented());
    CHECK(m.adjacency_consistent());
}

TEST_CASE("OFF comments, blank lines and polygon fans")
{
    const TriMesh m = from_off("# header comment\nOFF\n\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0 # trailing\n4 0 1 2 3\n");
    CHECK(m.num_triangles() == 2);
    CHECK(m.num_vertices() == 4);
}

TEST_CASE("OBJ icosahedron has 12 vertices, 20 faces and valence 5")
{
    const TriMesh ico = icosphere(1);
    std::ostringstream obj;
    obj << "# icosahedron\n";
    for (const Vec3& p : ico.vertices()) obj << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    for (const auto& t : ico.triangles()) obj << "f " << t[0] + 1 << "/1 " << t[1] + 1 << "//2 " << t[2] + 1 << '\n';
    const TriMesh m = from_obj(obj.str());
    CHECK(m.num_vertices() == 12);
    CHECK(m.num_triangles() == 20);
    for (int v = 0; v < 12; ++v) CHECK(m.vertex_neighbors(v).size() == 5);
}

TEST_CASE("malformed mesh input is rejected")
{
    CHECK_THROWS_AS(from_off(""), ParseError);
    CHECK_THROWS_AS(from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n"), ParseError);
    CHECK_THROWS_AS(from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 x\n"), ParseError);
    CHECK_THROWS_AS(from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n"), ParseError);
    CHECK_THROWS_AS(from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 1\n"), MeshError);
    CHECK_THROWS_AS(from_obj("v 0 0 0\nv 1 0 0\nf 1 2 3\n"), ParseError);
    CHECK_THROWS_AS(load_mesh(std::filesystem::path("mesh.stl")), ParseError);
}

TEST_CASE("non-manifold edge is rejected")
{
    // Three triangles share the edge 0-1.
    std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
    std::vector<Triangle> t = {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
    CHECK_THROWS_AS(TriMesh(v, t), MeshError);
}

TEST_CASE("OFF round trip preserves the mesh")
{
    const TriMesh m = generate_mesh(SurfaceKind::torus, {}, 0.3);
    std::stringstream io;
    write_off(io, m);
    const TriMesh back = load_mesh(io, MeshFormat::off);
    REQUIRE(back.num_vertices() == m.num_vertices());
    CHECK(back.triangles() == m.triangles());
    for (int v = 0; v < m.num_vertices(); ++v) CHECK((back.vertex(v) - m.vertex(v)).norm() == 0.0);
    CHECK(back.fingerprint() == m.fingerprint());
}

TEST_CASE("generators honour the size bound and lie on their surfaces")
{
    for (double edge : {0.5, 0.3, 0.12}) {
        CAPTURE(edge);
        const TriMesh sphere = generate_mesh(SurfaceKind::sphere, {}, edge);
        CHECK(mesh_size(sphere) <= 1.1 * edge);
        CHECK_FALSE(sphere.has_boundary());
        CHECK(sphere.is_consistently_oriented());
        for (const Vec3& p : sphere.vertices()) CHECK(std::abs(p.norm() - 1.0) <= 1e-12);

        const TriMesh hemi = generate_mesh(SurfaceKind::hemisphere, {}, edge);
        CHECK(mesh_size(hemi) <= 1.1 * edge);
        for (const Vec3& p : hemi.vertices()) {
            CHECK(std::abs(p.norm() - 1.0) <= 1e-12);
            CHECK(p.z() >= -1e-12);
        }

        const TriMesh torus = generate_mesh(SurfaceKind::torus, {}, edge);
        CHECK(mesh_size(torus) <= 1.1 * edge);
        CHECK_FALSE(torus.has_boundary());
        CHECK(torus.is_consistently_oriented());
        for (const Vec3& p : torus.vertices()) {
            const double rho = std::hypot(p.x(), p.y());
            CHECK(std::abs((rho - 0.75) * (rho - 0.75) + p.z() * p.z() - 0.0625) <= 1e-12);
        }

        const TriMesh wave = generate_mesh(SurfaceKind::wave, {}, edge);
        CHECK(mesh_size(wave) <= 1.1 * edge);
        for (const Vec3& p : wave.vertices()) {
            CHECK(std::abs(p.z() - std::sin(p.x()) * std::cos(p.y())) <= 1e-12);
            CHECK(p.x() >= 0.0);
            CHECK(p.x() <= 2.0 * std::numbers::pi + 1e-12);
        }

        const TriMesh bell = generate_mesh(SurfaceKind::dumbbell, {}, edge);
        CHECK(mesh_size(bell) <= 1.1 * edge);
        CHECK_FALSE(bell.has_boundary());
        for (const Vec3& p : bell.vertices()) {
            const double v = std::acos(std::clamp(p.z() / p.norm(), -1.0, 1.0));
            CHECK(std::abs(p.norm() - dumbbell_radius(v)) <= 1e-12);
        }
    }
}

TEST_CASE("torus radii are distances from the axis")
{
    const TriMesh m = generate_mesh(SurfaceKind::torus, {{"inner", 1.0}, {"outer", 3.0}}, 0.5);
    double lo = 1e9, hi = 0.0;
    for (const Vec3& p : m.vertices()) {
        const double rho = std::hypot(p.x(), p.y());
        lo = std::min(lo, rho);
        hi = std::max(hi, rho);
        CHECK(std::abs((rho - 2.0) * (rho - 2.0) + p.z() * p.z() - 1.0) <= 1e-12);
    }
    CHECK(lo >= 1.0 - 1e-12);
    CHECK(hi <= 3.0 + 1e-12);
}

TEST_CASE("generator argument errors")
{
    CHECK_THROWS_AS(parse_surface_kind("cube"), Error);
    CHECK_THROWS_AS(generate_mesh(SurfaceKind::sphere, {}, 0.0), Error);
    CHECK_THROWS_AS(generate_mesh(SurfaceKind::sphere, {}, -1.0), Error);
    CHECK_THROWS_AS(generate_mesh(SurfaceKind::torus, {{"inner", 1.0}, {"outer", 0.5}}, 0.3), Error);
    CHECK_THROWS_AS(generate_mesh(SurfaceKind::torus, {{"inner", -1.0}}, 0.3), Error);
    CHECK_THROWS_AS(generate_mesh(SurfaceKind::sphere, {{"radius", 0.0}}, 0.3), Error);
    CHECK(parse_surface_kind("wave") == SurfaceKind::wave);
    CHECK(to_string(SurfaceKind::hemisphere) == "hemisphere");
}

TEST_CASE("hemisphere boundary is exactly the equator loop")
{
    const TriMesh m = generate_mesh(SurfaceKind::hemisphere, {}, 0.2);
    std::vector<int> equator;
    for (int v = 0; v < m.num_vertices(); ++v)
        if (std::abs(m.vertex(v).z()) <= 1e-9) equator.push_back(v);
    CHECK(boundary_vertices(m) == equator);
    CHECK(m.is_consistently_oriented());
}

TEST_CASE("closed surfaces have no boundary vertices")
{
    CHECK(boundary_vertices(generate_mesh(SurfaceKind::torus, {}, 0.3)).empty());
    CHECK(boundary_vertices(generate_mesh(SurfaceKind::sphere, {}, 0.3)).empty());
}

TEST_CASE("mesh_size of refinements")
{
    const TriMesh coarse = icosphere(4);
    const TriMesh fine = refine_midpoint(coarse, true);
    const double r0 = mesh_size(coarse);
    const double r1 = mesh_size(fine);
    CHECK(r1 < r0);
    CHECK(r1 / r0 == doctest::Approx(0.5).epsilon(0.1));
    for (const Vec3& p : fine.vertices()) CHECK(std::abs(p.norm() - 1.0) <= 1e-12);

    const TriMesh grid = test::planar_grid(4, 1.0);
    CHECK(mesh_size(refine_midpoint(grid, false)) < mesh_size(grid));
    CHECK_THROWS_AS(mesh_size(TriMesh()), MeshError);
}

TEST_CASE("adjacency is reproducible from the triangle list")
{
    for (SurfaceKind kind : {SurfaceKind::sphere, SurfaceKind::hemisphere, SurfaceKind::torus, SurfaceKind::dumbbell,
                             SurfaceKind::wave}) {
        const TriMesh m = generate_mesh(kind, {}, 0.4);
        CHECK(m.adjacency_consistent());
        const TriMesh rebuilt(m.vertices(), m.triangles());
        for (int v = 0; v < m.num_vertices(); ++v) {
            CHECK(std::ranges::equal(rebuilt.vertex_neighbors(v), m.vertex_neighbors(v)));
            CHECK(std::ranges::equal(rebuilt.vertex_triangles(v), m.vertex_triangles(v)));
        }
        CHECK(rebuilt.boundary_flags() == m.boundary_flags());
    }
}

TEST_CASE("icosahedron one-ring")
{
    const TriMesh ico = icosphere(1);
    for (int v = 0; v < ico.num_vertices(); ++v) {
        auto n = neighborhood(ico, v, {2, 5});
        std::sort(n.begin(), n.end());
        CHECK(std::ranges::equal(n, ico.vertex_neighbors(v)));
    }
}

TEST_CASE("even rings match a breadth-first oracle")
{
    const TriMesh grid = test::planar_grid(10, 0.1);
    const int v = 5 * 11 + 5;
    for (int j : {2, 4, 6}) {
        const auto dist = bfs_distance(grid, v);
        std::set<int> expected;
        for (int w = 0; w < grid.num_vertices(); ++w)
            if (dist[static_cast<std::size_t>(w)] >= 1 && dist[static_cast<std::size_t>(w)] <= j / 2) expected.insert(w);
        const auto n = neighborhood(grid, v, {j, 5});
        CHECK(std::set<int>(n.begin(), n.end()) == expected);
    }
}

TEST_CASE("neighborhoods are nested, duplicate free and ordered")
{
    const TriMesh m = generate_mesh(SurfaceKind::torus, {}, 0.25);
    for (int v : {0, 17, 101}) {
        const auto dist = bfs_distance(m, v);
        std::vector<int> prev;
        for (int j = 1; j <= 7; ++j) {
            const auto n = neighborhood(m, v, {j, 5});
            const std::set<int> s(n.begin(), n.end());
            CHECK(s.size() == n.size());
            CHECK(s.count(v) == 0);
            for (int w : prev) CHECK(s.count(w) == 1);
            // Ascending graph distance, then Euclidean distance.
            for (std::size_t i = 1; i < n.size(); ++i) {
                const int da = dist[static_cast<std::size_t>(n[i - 1])];
                const int db = dist[static_cast<std::size_t>(n[i])];
                CHECK(da <= db);
                if (da == db)
                    CHECK((m.vertex(n[i - 1]) - m.vertex(v)).norm() <= (m.vertex(n[i]) - m.vertex(v)).norm());
            }
            prev = n;
        }
    }
}

TEST_CASE("half ring adds the vertices of triangles on the ring front")
{
    const TriMesh ico = icosphere(2);
    const int v = 0;
    const auto one = neighborhood(ico, v, {2, 5});
    const auto half = neighborhood(ico, v, {3, 5});
    const auto two = neighborhood(ico, v, {4, 5});
    CHECK(one.size() < half.size());
    CHECK(half.size() < two.size());
    // Oracle: third vertices of triangles with an edge on the one-ring front.
    const std::set<int> ring(one.begin(), one.end());
    std::set<int> expected(one.begin(), one.end());
    for (int t = 0; t < ico.num_triangles(); ++t) {
        int on = 0, other = -1;
        for (int c : ico.triangle(t)) {
            if (ring.count(c)) ++on;
            else if (c != v) other = c;
        }
        if (on == 2 && other >= 0) expected.insert(other);
    }
    CHECK(std::set<int>(half.begin(), half.end()) == expected);
}

TEST_CASE("min_count forces enlargement")
{
    const TriMesh ico = icosphere(2);
    int v5 = -1;
    for (int v = 0; v < ico.num_vertices(); ++v)
        if (ico.vertex_neighbors(v).size() == 5) v5 = v;
    REQUIRE(v5 >= 0);
    int used = 0;
    const auto n = neighborhood(ico, v5, {2, 6}, used);
    CHECK(n.size() >= 6);
    CHECK(used == 3);

    const TriMesh tri = test::planar_grid(1, 1.0);
    CHECK_THROWS_AS(neighborhood(tri, 0, {2, 5}), MeshError);
    CHECK_THROWS_AS(neighborhood(tri, 9, {2, 5}), Error);
    CHECK_THROWS_AS(neighborhood(ico, 0, {0, 5}), Error);
    CHECK_THROWS_AS(neighborhood(ico, 0, {2, 4}), Error);
}
