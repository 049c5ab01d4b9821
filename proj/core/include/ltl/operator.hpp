// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/lifting.hpp>
#include <ltl/mesh.hpp>
#include <ltl/neighborhood.hpp>
#include <ltl/stencil.hpp>

#include <Eigen/SparseCore>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltl {

///
/// How boundary vertices enter an assembled operator.
///
/// `none` builds a stencil at every vertex. `dirichlet_zero` deletes the rows
/// and columns of boundary vertices, so the operator acts on interior values
/// with zero boundary data. `interior_rows` keeps the full dimension but
/// leaves boundary rows empty, which is what pointwise consistency checks on
/// open surfaces need.
///
enum class BoundaryMode { none, dirichlet_zero, interior_rows };

BoundaryMode parse_boundary_mode(std::string_view name);
const char* to_string(BoundaryMode mode);

/// Per-row record of how the stencil was obtained.
struct RowMeta
{
    int ring = 0;          // ring numerator j actually used, 0 for skipped rows
    double residual = 0.0; // stencil residual
    double omega = 0.0;    // row normalizer (2/sum a x^2, 1/sum b x^2, or 1)
};

/// Field values over the vertices of one mesh.
struct ScalarField
{
    std::vector<double> values;
    /// TriMesh::fingerprint() of the bound mesh, 0 when unbound.
    std::uint64_t mesh = 0;

    ScalarField() = default;
    explicit ScalarField(std::vector<double> v, std::uint64_t fingerprint = 0)
        : values(std::move(v))
        , mesh(fingerprint)
    {}

    int size() const { return static_cast<int>(values.size()); }
};

///
/// Row-compressed operator on mesh vertex values.
///
/// Under `dirichlet_zero` the matrix is indexed by reduced (interior)
/// indices; `row_vertex` maps each row to its mesh vertex and `vertex_row`
/// is the inverse (-1 for deleted vertices). In the other modes both maps
/// are the identity.
///
struct SparseOperator
{
    using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

    Matrix matrix;
    std::vector<RowMeta> row_meta;
    BoundaryMode boundary_mode = BoundaryMode::none;
    std::vector<int> row_vertex;
    std::vector<int> vertex_row;
    std::uint64_t mesh = 0;

    int dim() const { return static_cast<int>(matrix.rows()); }
    int num_mesh_vertices() const { return static_cast<int>(vertex_row.size()); }

    /// Mesh-sized field to operator-sized vector (drops deleted vertices).
    std::vector<double> restrict_field(std::span<const double> mesh_values) const;
    /// Operator-sized vector to a mesh-sized field, zero on deleted vertices.
    std::vector<double> extend_field(std::span<const double> values) const;
};

/// A vertex stencil together with everything needed to reproduce it.
struct VertexStencil
{
    int vertex = -1;
    int ring = 0;
    TangentPolygon polygon;
    StencilWeights weights;
};

///
/// Runs the enlarge-on-failure protocol for one vertex: the first-order
/// configuration system is solved on the j/2-ring, and on rejection j is
/// increased up to `max_ring_numerator`. Throws AssemblyError naming the
/// vertex when every ring fails.
///
VertexStencil first_order_stencil(const TriMesh& mesh, int v, const NeighborhoodSpec& spec,
                                  StencilKind kind = StencilKind::laplace_first_order);

/// W A: row i holds w_i a_ij off the diagonal and minus their sum on it,
/// with w_i = 2 / sum_j a_ij x_ij^2.
SparseOperator assemble_laplacian(const TriMesh& mesh, const NeighborhoodSpec& spec,
                                  BoundaryMode boundary = BoundaryMode::none);

/// W B: the linear map phi -> div(h grad phi) with entries
/// w'_i b_ij (h_j + h_i) off the diagonal, w'_i = 1 / sum_j b_ij x_ij^2.
SparseOperator assemble_weighted_divgrad(const TriMesh& mesh, const ScalarField& h, const NeighborhoodSpec& spec,
                                         BoundaryMode boundary = BoundaryMode::none);

/// Off-diagonal part of one operator row, before boundary handling.
struct RowStencil
{
    int ring = 0;
    double residual = 0.0;
    double omega = 0.0;
    std::vector<int> columns; // mesh vertex ids, distinct, excluding the row vertex
    std::vector<double> values;
};

///
/// Builds an operator from per-vertex rows. The diagonal is minus the sum of
/// the row's off-diagonal values (over all neighbors, including ones whose
/// columns are then deleted under `dirichlet_zero`), so constants are
/// annihilated up to rounding. Rows of boundary vertices are not requested
/// unless the mode is `none`.
///
SparseOperator assemble_from_rows(const TriMesh& mesh, BoundaryMode boundary,
                                  const std::function<RowStencil(int vertex)>& build_row);

/// Matrix-vector product with ascending-column accumulation per row.
std::vector<double> apply_operator(const SparseOperator& op, std::span<const double> u);
ScalarField apply_operator(const SparseOperator& op, const ScalarField& u);

/// MatrixMarket coordinate real general, 1-based, 17 significant digits.
/// The boundary mode and row-to-vertex map are stored in comment lines.
void write_matrix_market(std::ostream& out, const SparseOperator& op);
void write_matrix_market(const std::string& path, const SparseOperator& op);
SparseOperator read_matrix_market(std::istream& in);
SparseOperator read_matrix_market(const std::string& path);

} // namespace ltl
