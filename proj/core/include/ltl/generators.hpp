// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/mesh.hpp>

#include <map>
#include <string>
#include <string_view>

namespace ltl {

enum class SurfaceKind { sphere, hemisphere, torus, dumbbell, wave };

SurfaceKind parse_surface_kind(std::string_view name);
std::string_view to_string(SurfaceKind kind);

/// Named real parameters. Recognised keys:
///   sphere/hemisphere: "radius" (1), "frequency" (forces the subdivision count)
///   torus: "inner" (0.5), "outer" (1.0), "n_u", "n_v"
///   dumbbell: "n_u", "n_v"
///   wave: "n" (grid cells per side)
using MeshParams = std::map<std::string, double, std::less<>>;

///
/// Mesh one of the analytic test surfaces so that its longest edge does not
/// exceed `target_edge`. The coarsest resolution satisfying the bound is
/// chosen unless the resolution is forced through `params`.
///
/// - sphere: icosahedron with every face split into frequency^2 triangles,
///   vertices projected onto the sphere.
/// - hemisphere: the same construction on the upper half of an octahedron,
///   which keeps an exact edge loop on the equator z = 0.
/// - torus: periodic (u, v) grid of the torus of revolution whose distance
///   from the axis ranges over [inner, outer].
/// - dumbbell: latitude/longitude grid of the surface of revolution
///   r(v) = sqrt(0.81 cos 2v + sqrt(1 - 0.9^4 sin^2 2v)).
/// - wave: the graph z = sin x cos y over [0, 2pi]^2.
///
TriMesh generate_mesh(SurfaceKind kind, const MeshParams& params, double target_edge);

TriMesh icosphere(int frequency, double radius = 1.0);
TriMesh octahedral_hemisphere(int frequency, double radius = 1.0);
TriMesh torus_grid(int n_u, int n_v, double inner = 0.5, double outer = 1.0);
TriMesh dumbbell_grid(int n_u, int n_v);
TriMesh wave_grid(int n);

/// Radius of the dumbbell profile at polar angle v.
double dumbbell_radius(double v);

/// Split every triangle into four at edge midpoints. With
/// `project_to_sphere` the new vertices are pushed radially onto the sphere
/// through the existing vertices (which are assumed to lie on it).
TriMesh refine_midpoint(const TriMesh& mesh, bool project_to_sphere);

} // namespace ltl
