// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Small fixtures shared by the unit tests.

#include <ltl/mesh.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace ltl::test {

/// Regular (n+1) x (n+1) grid of spacing s in the plane z = 0, each square
/// split along its main diagonal. Vertex (i, j) has index j * (n + 1) + i.
inline TriMesh planar_grid(int n, double s, bool cross_free = false)
{
    std::vector<Vec3> vertices;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) vertices.emplace_back(i * s, j * s, 0.0);
    std::vector<Triangle> triangles;
    const auto id = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            // Alternating diagonals keep every interior vertex at valence 4 or 8.
            if (cross_free || (i + j) % 2 == 0) {
                triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            } else {
                triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            }
        }
    return TriMesh(std::move(vertices), std::move(triangles));
}

/// Regular hexagon of radius s around the origin.
inline std::vector<Vec2> hexagon(double s, double phase = 0.0)
{
    std::vector<Vec2> out;
    for (int k = 0; k < 6; ++k) {
        const double t = phase + k * std::numbers::pi / 3.0;
        out.emplace_back(s * std::cos(t), s * std::sin(t));
    }
    return out;
}

inline std::vector<Vec2> cross(double s)
{
    return {Vec2(s, 0.0), Vec2(0.0, s), Vec2(-s, 0.0), Vec2(0.0, -s)};
}

/// `count` points in an annulus around the origin at random angles, the
/// kind of configuration a vertex star produces.
inline std::vector<Vec2> random_star(std::mt19937_64& rng, int count, double radius = 1.0)
{
    std::uniform_real_distribution<double> r(0.4 * radius, radius);
    std::uniform_real_distribution<double> jitter(-0.35, 0.35);
    const double step = 2.0 * std::numbers::pi / count;
    std::vector<Vec2> out;
    for (int k = 0; k < count; ++k) {
        const double t = (k + jitter(rng)) * step;
        const double rr = r(rng);
        out.emplace_back(rr * std::cos(t), rr * std::sin(t));
    }
    return out;
}

/// Rotation about a fixed, non-axis-aligned direction.
inline Eigen::Matrix3d test_rotation(double angle = 0.7)
{
    return Eigen::AngleAxisd(angle, Vec3(1.0, 2.0, 3.0).normalized()).toRotationMatrix();
}

inline TriMesh transformed(const TriMesh& mesh, const Eigen::Matrix3d& r, const Vec3& shift = Vec3::Zero())
{
    std::vector<Vec3> v;
    for (const Vec3& p : mesh.vertices()) v.push_back(r * p + shift);
    return TriMesh(std::move(v), mesh.triangles());
}

} // namespace ltl::test
