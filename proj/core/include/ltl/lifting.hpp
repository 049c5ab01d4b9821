// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/mesh.hpp>

#include <optional>
#include <span>
#include <vector>

namespace ltl {

/// Orthonormal right-handed frame {e1, e2, normal} at a vertex.
struct LocalFrame
{
    int origin = -1;
    Vec3 normal = Vec3::UnitZ();
    Vec3 e1 = Vec3::UnitX();
    Vec3 e2 = Vec3::UnitY();

    /// Frame coordinates (x, y, z) of a world-space displacement.
    Vec3 to_local(const Vec3& d) const { return {d.dot(e1), d.dot(e2), d.dot(normal)}; }
    /// World-space vector from frame coordinates.
    Vec3 to_world(const Vec3& c) const { return c.x() * e1 + c.y() * e2 + c.z() * normal; }
};

///
/// Neighborhood of a vertex lifted into its approximating tangent plane.
///
/// `coords[i]` are the tangential coordinates of `neighbor_ids[i] - origin`
/// in the frame basis and `heights[i]` the normal component, so that
/// x e1 + y e2 + h N reproduces the displacement.
///
struct TangentPolygon
{
    LocalFrame frame;
    std::vector<int> neighbor_ids;
    std::vector<Vec2> coords;
    std::vector<double> heights;
    std::optional<std::vector<double>> lifted_values;
    double center_value = 0.0;
};

///
/// Approximating vertex normal: the normalized sum of incident face normals
/// weighted by 1 / |centroid - v|^2.
///
/// Face normals are sign-aligned with the first incident triangle before
/// summing. Throws GeometryError when a face is degenerate, when the aligned
/// normals are not pairwise within 90 degrees, or when the sum vanishes.
///
Vec3 vertex_normal(const TriMesh& mesh, int v);

/// Frame with e1 the projection of the global axis least aligned with the
/// normal, and e2 = normal x e1.
LocalFrame tangent_frame(const TriMesh& mesh, int v);

/// Frame for a given unit normal (same axis rule as `tangent_frame`).
LocalFrame frame_from_normal(int origin, const Vec3& normal);

TangentPolygon lift_neighborhood(const TriMesh& mesh, const LocalFrame& frame,
                                 std::span<const int> neighbors,
                                 std::optional<std::span<const double>> field = std::nullopt);

} // namespace ltl
