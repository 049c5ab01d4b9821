// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/generators.hpp>
#include <ltl/mesh.hpp>

#include <vector>

/// Closed-form references for the generated test surfaces.
namespace ltl::analytic {

struct SurfacePoint
{
    Vec3 normal = Vec3::UnitZ(); // outward (upward for the wave)
    double gaussian = 0.0;
    double mean = 0.0; // positive on the unit sphere
};

/// -n(n+1).
double sphere_eigenvalue(int n);

/// Sorted Dirichlet eigenvalues of the unit upper hemisphere: -n(n+1) with
/// multiplicity n (harmonics Y_n^m with n - |m| odd).
std::vector<double> hemisphere_dirichlet_eigenvalues(int count);

/// Harmonic homogeneous polynomials of degree n in {0, 1, 2, 3}, sampled at
/// the given vertices (all vertices when `vertices` is empty).
std::vector<std::vector<double>> sphere_harmonics(const TriMesh& mesh, int n, const std::vector<int>& vertices = {});

SurfacePoint sphere_point(const Vec3& p);
SurfacePoint torus_point(const Vec3& p, double center_radius = 0.75, double tube_radius = 0.25);
SurfacePoint dumbbell_point(const Vec3& p);
SurfacePoint wave_point(const Vec3& p);

/// Reference values for a generated model at a mesh vertex position.
SurfacePoint surface_point(SurfaceKind kind, const Vec3& p, const MeshParams& params = {});

/// F(u, v) = exp(0.5 sin u + cos^3 v) on the wave surface (u = x, v = y).
double wave_field(double u, double v);
/// Laplace-Beltrami of `wave_field` on z = sin u cos v.
double wave_field_laplacian(double u, double v);

} // namespace ltl::analytic
