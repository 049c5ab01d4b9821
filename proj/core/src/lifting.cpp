// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/lifting.hpp>

#include <cmath>
#include <sstream>

namespace ltl {

namespace {

[[noreturn]] void degenerate(int v, const char* what)
{
    std::ostringstream msg;
    msg << "vertex " << v << ": " << what;
    throw GeometryError(msg.str());
}

} // namespace

Vec3 vertex_normal(const TriMesh& mesh, int v)
{
    if (v < 0 || v >= mesh.num_vertices()) throw Error("vertex_normal: vertex index out of range");
    const auto star = mesh.vertex_triangles(v);
    if (star.empty()) degenerate(v, "no incident triangles");

    const Vec3& p = mesh.vertex(v);
    std::vector<Vec3> normals;
    std::vector<double> weights;
    normals.reserve(star.size());
    weights.reserve(star.size());
    for (int t : star) {
        const auto& tri = mesh.triangle(t);
        const Vec3& a = mesh.vertex(tri[0]);
        const Vec3& b = mesh.vertex(tri[1]);
        const Vec3& c = mesh.vertex(tri[2]);
        const Vec3 n = (b - a).cross(c - a);
        const double len = n.norm();
        if (!(len > 0.0)) degenerate(v, "incident triangle with zero area");
        const double d2 = ((a + b + c) / 3.0 - p).squaredNorm();
        if (!(d2 > 0.0)) degenerate(v, "triangle centroid coincides with the vertex");
        normals.push_back(n / len);
        weights.push_back(1.0 / d2);
    }

    const Vec3 reference = normals.front();
    for (auto& n : normals)
        if (n.dot(reference) < 0.0) n = -n;
    for (std::size_t i = 0; i < normals.size(); ++i)
        for (std::size_t j = i + 1; j < normals.size(); ++j)
            if (!(normals[i].dot(normals[j]) > 0.0))
                degenerate(v, "face normals of the star cannot be aligned within a hemisphere");

    Vec3 sum = Vec3::Zero();
    double total = 0.0;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        sum += weights[i] * normals[i];
        total += weights[i];
    }
    sum /= total;
    const double len = sum.norm();
    if (!(len > 0.0)) degenerate(v, "weighted normal sum vanishes");
    return sum / len;
}

LocalFrame frame_from_normal(int origin, const Vec3& normal)
{
    int axis = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(normal[k]) < std::abs(normal[axis])) axis = k;
    const Vec3 seed = Vec3::Unit(axis);

    LocalFrame frame;
    frame.origin = origin;
    frame.normal = normal;
    frame.e1 = (seed - seed.dot(normal) * normal).normalized();
    frame.e2 = normal.cross(frame.e1);
    return frame;
}

LocalFrame tangent_frame(const TriMesh& mesh, int v)
{
    return frame_from_normal(v, vertex_normal(mesh, v));
}

TangentPolygon lift_neighborhood(const TriMesh& mesh, const LocalFrame& frame,
                                 std::span<const int> neighbors,
                                 std::optional<std::span<const double>> field)
{
    if (neighbors.empty()) throw Error("lift_neighborhood: empty neighborhood");
    if (field && static_cast<int>(field->size()) != mesh.num_vertices())
        throw Error("lift_neighborhood: field length does not match the mesh");

    TangentPolygon poly;
    poly.frame = frame;
    poly.neighbor_ids.assign(neighbors.begin(), neighbors.end());
    poly.coords.reserve(neighbors.size());
    poly.heights.reserve(neighbors.size());

    const Vec3& origin = mesh.vertex(frame.origin);
    for (int w : neighbors) {
        if (w == frame.origin) throw Error("lift_neighborhood: neighborhood contains the origin vertex");
        const Vec3 d = mesh.vertex(w) - origin;
        poly.coords.emplace_back(d.dot(frame.e1), d.dot(frame.e2));
        poly.heights.push_back(d.dot(frame.normal));
    }
    if (field) {
        std::vector<double> values;
        values.reserve(neighbors.size());
        for (int w : neighbors) values.push_back((*field)[static_cast<std::size_t>(w)]);
        poly.lifted_values = std::move(values);
        poly.center_value = (*field)[static_cast<std::size_t>(frame.origin)];
    }
    return poly;
}

} // namespace ltl
