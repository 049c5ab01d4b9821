// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/lifting.hpp>
#include <ltl/mesh.hpp>
#include <ltl/neighborhood.hpp>
#include <ltl/operator.hpp>
#include <ltl/stencil.hpp>

#include <array>
#include <span>
#include <vector>

namespace ltl {

///
/// Truncated Taylor expansion at a vertex in its lifted frame.
///
/// coefficients[monomial_index(a, b)] is the derivative d^(a+b) / dx^a dy^b
/// at the origin, for 1 <= a + b <= degree.
///
struct JetFit
{
    int degree = 2;
    std::vector<double> coefficients;
    double center_value = 0.0;
    /// Largest absolute misfit of the Taylor polynomial at the samples.
    double residual = 0.0;
    LocalFrame frame;
    int ring = 0;

    double derivative(int px, int py) const;
};

struct GeometricInvariants
{
    Vec3 normal = Vec3::UnitZ();
    std::array<double, 3> first_form{1.0, 0.0, 1.0};  // E, F, G
    std::array<double, 3> second_form{0.0, 0.0, 0.0}; // e, f, g
    double gaussian = 0.0;
    double mean = 0.0;
};

struct SurfaceDifferentials
{
    Vec3 gradient = Vec3::Zero();
    double laplacian = 0.0;
};

/// Lifted neighborhood and its degree-k moment system at one vertex.
struct VertexJet
{
    int vertex = -1;
    int ring = 0;
    TangentPolygon polygon;
    MomentSystem system;
};

/// Moment systems worse conditioned than this (in scaled coordinates) are
/// treated like rank-deficient ones and trigger enlargement.
inline constexpr double jet_condition_limit = 1e10;

/// Neighborhood used when none is given: the k/2-ring with at least as many
/// points as jet coefficients.
NeighborhoodSpec default_jet_spec(int degree);

///
/// Builds the lifted degree-k moment system at `v`, enlarging the ring until
/// the system has full row rank and acceptable conditioning. Throws
/// AssemblyError after `max_ring_numerator`.
///
VertexJet vertex_jet(const TriMesh& mesh, int v, int degree, const NeighborhoodSpec& spec);

/// Fits sample values (one per lifted neighbor) given the center value.
JetFit fit_samples(const VertexJet& jet, std::span<const double> values, double center);

/// Height function z = h(x, y) over the lifted frame; h(0, 0) = 0.
JetFit fit_height(const TriMesh& mesh, int v, int degree, const NeighborhoodSpec& spec);
JetFit fit_height(const VertexJet& jet);

/// Scalar field pulled back to the lifted frame.
JetFit fit_scalar(const TriMesh& mesh, int v, int degree, const ScalarField& field, const NeighborhoodSpec& spec);

/// Normal, fundamental forms and curvatures of the fitted graph surface at
/// the origin. The normal is returned in world coordinates.
GeometricInvariants invariants_from_fit(const JetFit& height);

///
/// Coefficients (c_u, c_v, c_uu, c_uv, c_vv) such that the Laplace-Beltrami
/// operator of the graph z = h(u, v) at the origin is
/// c_u phi_u + c_v phi_v + c_uu phi_uu + c_uv phi_uv + c_vv phi_vv,
/// given h_u = p, h_v = q, h_uu = r, h_uv = s, h_vv = t there.
///
std::array<double, 5> laplacian_functional(double p, double q, double r, double s, double t);

/// Surface gradient (world coordinates) and Laplacian of a fitted scalar,
/// both from the fitted height. The two fits must share a frame.
SurfaceDifferentials surface_differentials(const JetFit& height, const JetFit& scalar);

/// Per-vertex invariants over a whole mesh.
std::vector<GeometricInvariants> mesh_invariants(const TriMesh& mesh, int degree, const NeighborhoodSpec& spec);

///
/// Degree-k Laplace-Beltrami operator. At each vertex the height is fitted
/// to degree k, the Laplacian is expressed through `laplacian_functional`,
/// and that functional is mapped through the pseudo-inverse of the same
/// moment system to per-neighbor weights; the diagonal is minus their sum.
///
SparseOperator assemble_highorder_laplacian(const TriMesh& mesh, int degree, const NeighborhoodSpec& spec,
                                            BoundaryMode boundary = BoundaryMode::none);

} // namespace ltl
