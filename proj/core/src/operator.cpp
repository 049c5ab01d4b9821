// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/operator.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ltl {

BoundaryMode parse_boundary_mode(std::string_view name)
{
    if (name == "none") return BoundaryMode::none;
    if (name == "dirichlet" || name == "dirichlet_zero") return BoundaryMode::dirichlet_zero;
    if (name == "interior" || name == "interior_rows") return BoundaryMode::interior_rows;
    throw Error("unknown boundary mode '" + std::string(name) + "'");
}

const char* to_string(BoundaryMode mode)
{
    switch (mode) {
    case BoundaryMode::none: return "none";
    case BoundaryMode::dirichlet_zero: return "dirichlet_zero";
    case BoundaryMode::interior_rows: return "interior_rows";
    }
    return "none";
}

std::vector<double> SparseOperator::restrict_field(std::span<const double> mesh_values) const
{
    if (static_cast<int>(mesh_values.size()) != num_mesh_vertices())
        throw Error("restrict_field: field length does not match the mesh");
    std::vector<double> out(static_cast<std::size_t>(dim()));
    for (int r = 0; r < dim(); ++r)
        out[static_cast<std::size_t>(r)] = mesh_values[static_cast<std::size_t>(row_vertex[static_cast<std::size_t>(r)])];
    return out;
}

std::vector<double> SparseOperator::extend_field(std::span<const double> values) const
{
    if (static_cast<int>(values.size()) != dim()) throw Error("extend_field: vector length does not match the operator");
    std::vector<double> out(static_cast<std::size_t>(num_mesh_vertices()), 0.0);
    for (int r = 0; r < dim(); ++r)
        out[static_cast<std::size_t>(row_vertex[static_cast<std::size_t>(r)])] = values[static_cast<std::size_t>(r)];
    return out;
}

VertexStencil first_order_stencil(const TriMesh& mesh, int v, const NeighborhoodSpec& spec, StencilKind kind)
{
    if (kind == StencilKind::moment_general) throw Error("first_order_stencil: kind must be first-order");
    spec.validate();

    LocalFrame frame;
    try {
        frame = tangent_frame(mesh, v);
    } catch (const GeometryError& e) {
        throw AssemblyError(v, e.what());
    }

    std::string last_failure = "no ring attempted";
    const int last_ring = std::max(spec.ring_numerator, max_ring_numerator);
    for (int j = spec.ring_numerator; j <= last_ring;) {
        int used = j;
        std::vector<int> nbrs;
        try {
            nbrs = neighborhood(mesh, v, NeighborhoodSpec{j, spec.min_count}, used);
        } catch (const MeshError& e) {
            throw AssemblyError(v, e.what());
        }
        if (used > last_ring) break;

        VertexStencil out;
        out.vertex = v;
        out.ring = used;
        out.polygon = lift_neighborhood(mesh, frame, nbrs);
        try {
            out.weights = kind == StencilKind::product_rule ? product_stencil(out.polygon.coords)
                                                            : laplace_stencil(out.polygon.coords);
            return out;
        } catch (const StencilRejected& e) {
            last_failure = e.what();
        }
        j = used + 1;
    }
    std::ostringstream msg;
    msg << "vertex " << v << ": no acceptable stencil up to ring " << last_ring << "/2 (" << last_failure << ")";
    throw AssemblyError(v, msg.str());
}

SparseOperator assemble_from_rows(const TriMesh& mesh, BoundaryMode boundary,
                                  const std::function<RowStencil(int vertex)>& build_row)
{
    const int n = mesh.num_vertices();
    SparseOperator op;
    op.boundary_mode = boundary;
    op.mesh = mesh.fingerprint();
    op.vertex_row.assign(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        if (boundary == BoundaryMode::dirichlet_zero && mesh.is_boundary(v)) continue;
        op.vertex_row[static_cast<std::size_t>(v)] = static_cast<int>(op.row_vertex.size());
        op.row_vertex.push_back(v);
    }
    const int dim = static_cast<int>(op.row_vertex.size());
    op.row_meta.assign(static_cast<std::size_t>(dim), RowMeta{});

    std::vector<Eigen::Triplet<double>> triplets;
    for (int r = 0; r < dim; ++r) {
        const int v = op.row_vertex[static_cast<std::size_t>(r)];
        if (boundary == BoundaryMode::interior_rows && mesh.is_boundary(v)) continue;

        const RowStencil row = build_row(v);
        if (row.columns.size() != row.values.size()) throw Error("assemble_from_rows: row size mismatch");
        double sum = 0.0;
        for (std::size_t k = 0; k < row.columns.size(); ++k) {
            sum += row.values[k];
            const int c = op.vertex_row[static_cast<std::size_t>(row.columns[k])];
            if (c >= 0) triplets.emplace_back(r, c, row.values[k]);
        }
        triplets.emplace_back(r, r, -sum);
        op.row_meta[static_cast<std::size_t>(r)] = RowMeta{row.ring, row.residual, row.omega};
    }

    op.matrix.resize(dim, dim);
    op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    op.matrix.makeCompressed();
    return op;
}

SparseOperator assemble_laplacian(const TriMesh& mesh, const NeighborhoodSpec& spec, BoundaryMode boundary)
{
    spec.validate();
    return assemble_from_rows(mesh, boundary, [&](int v) {
        const VertexStencil s = first_order_stencil(mesh, v, spec, StencilKind::laplace_first_order);
        RowStencil row;
        row.ring = s.ring;
        row.residual = s.weights.residual;
        row.omega = 2.0 / s.weights.normalizer;
        row.columns = s.polygon.neighbor_ids;
        row.values.reserve(row.columns.size());
        for (double a : s.weights.weights) row.values.push_back(row.omega * a);
        return row;
    });
}

SparseOperator assemble_weighted_divgrad(const TriMesh& mesh, const ScalarField& h, const NeighborhoodSpec& spec,
                                         BoundaryMode boundary)
{
    spec.validate();
    if (h.size() != mesh.num_vertices()) throw Error("assemble_weighted_divgrad: h length does not match the mesh");
    if (h.mesh != 0 && h.mesh != mesh.fingerprint()) throw Error("assemble_weighted_divgrad: h is bound to another mesh");

    return assemble_from_rows(mesh, boundary, [&](int v) {
        const VertexStencil s = first_order_stencil(mesh, v, spec, StencilKind::product_rule);
        RowStencil row;
        row.ring = s.ring;
        row.residual = s.weights.residual;
        row.omega = 1.0 / s.weights.normalizer;
        row.columns = s.polygon.neighbor_ids;
        row.values.reserve(row.columns.size());
        const double hi = h.values[static_cast<std::size_t>(v)];
        for (std::size_t k = 0; k < row.columns.size(); ++k) {
            const double hj = h.values[static_cast<std::size_t>(row.columns[k])];
            row.values.push_back(row.omega * (s.weights.weights[k] * (hj + hi)));
        }
        return row;
    });
}

std::vector<double> apply_operator(const SparseOperator& op, std::span<const double> u)
{
    if (static_cast<int>(u.size()) != op.dim()) {
        std::ostringstream msg;
        msg << "apply_operator: field has " << u.size() << " values, operator dimension is " << op.dim();
        throw Error(msg.str());
    }
    std::vector<double> out(u.size(), 0.0);
    for (int r = 0; r < op.dim(); ++r) {
        double acc = 0.0;
        for (SparseOperator::Matrix::InnerIterator it(op.matrix, r); it; ++it)
            acc += it.value() * u[static_cast<std::size_t>(it.col())];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

ScalarField apply_operator(const SparseOperator& op, const ScalarField& u)
{
    const bool full = op.dim() == op.num_mesh_vertices();
    if (full && u.mesh != 0 && op.mesh != 0 && u.mesh != op.mesh)
        throw Error("apply_operator: field is bound to a different mesh");
    return ScalarField(apply_operator(op, std::span<const double>(u.values)), full ? op.mesh : 0);
}

void write_matrix_market(std::ostream& out, const SparseOperator& op)
{
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << "% ltl boundary_mode " << to_string(op.boundary_mode) << '\n';
    if (op.boundary_mode == BoundaryMode::dirichlet_zero) {
        out << "% ltl mesh_vertices " << op.num_mesh_vertices() << '\n';
        out << "% ltl row_vertex";
        for (int v : op.row_vertex) out << ' ' << v;
        out << '\n';
    }
    out << op.dim() << ' ' << op.dim() << ' ' << op.matrix.nonZeros() << '\n';
    out << std::setprecision(17);
    for (int r = 0; r < op.dim(); ++r)
        for (SparseOperator::Matrix::InnerIterator it(op.matrix, r); it; ++it)
            out << r + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

void write_matrix_market(const std::string& path, const SparseOperator& op)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_matrix_market(out, op);
    if (!out) throw Error("failed writing '" + path + "'");
}

SparseOperator read_matrix_market(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw ParseError("MatrixMarket: empty input");
    {
        std::istringstream head(line);
        std::string banner, object, format, field, symmetry;
        head >> banner >> object >> format >> field >> symmetry;
        if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
            throw ParseError("MatrixMarket: expected a coordinate matrix header");
        if (field != "real" && field != "double") throw ParseError("MatrixMarket: only real fields are supported");
        if (symmetry != "general") throw ParseError("MatrixMarket: only general symmetry is supported");
    }

    SparseOperator op;
    int mesh_vertices = -1;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] != '%') break;
        std::istringstream c(line.substr(1));
        std::string tag, key;
        c >> tag >> key;
        if (tag != "ltl") continue;
        if (key == "boundary_mode") {
            std::string mode;
            c >> mode;
            op.boundary_mode = parse_boundary_mode(mode);
        } else if (key == "mesh_vertices") {
            c >> mesh_vertices;
        } else if (key == "row_vertex") {
            int v = 0;
            while (c >> v) op.row_vertex.push_back(v);
        }
    }

    long rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> nnz) || rows < 0 || nnz < 0)
            throw ParseError("MatrixMarket line " + std::to_string(line_no) + ": bad size line");
        if (rows != cols) throw ParseError("MatrixMarket: operator must be square");
    }

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(nnz));
    for (long k = 0; k < nnz; ++k) {
        if (!std::getline(in, line)) throw ParseError("MatrixMarket: truncated entry list");
        ++line_no;
        std::istringstream entry(line);
        long r = 0, c = 0;
        double value = 0.0;
        if (!(entry >> r >> c >> value)) throw ParseError("MatrixMarket line " + std::to_string(line_no) + ": bad entry");
        if (r < 1 || r > rows || c < 1 || c > cols)
            throw ParseError("MatrixMarket line " + std::to_string(line_no) + ": index out of range");
        triplets.emplace_back(static_cast<int>(r - 1), static_cast<int>(c - 1), value);
    }

    const int dim = static_cast<int>(rows);
    op.matrix.resize(dim, dim);
    op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    op.matrix.makeCompressed();
    op.row_meta.assign(static_cast<std::size_t>(dim), RowMeta{});

    if (op.row_vertex.empty()) {
        op.row_vertex.resize(static_cast<std::size_t>(dim));
        for (int r = 0; r < dim; ++r) op.row_vertex[static_cast<std::size_t>(r)] = r;
        mesh_vertices = std::max(mesh_vertices, dim);
    }
    if (static_cast<int>(op.row_vertex.size()) != dim) throw ParseError("MatrixMarket: row_vertex map has wrong length");
    if (mesh_vertices < dim) throw ParseError("MatrixMarket: mesh vertex count smaller than the operator");
    op.vertex_row.assign(static_cast<std::size_t>(mesh_vertices), -1);
    for (int r = 0; r < dim; ++r) {
        const int v = op.row_vertex[static_cast<std::size_t>(r)];
        if (v < 0 || v >= mesh_vertices || op.vertex_row[static_cast<std::size_t>(v)] != -1)
            throw ParseError("MatrixMarket: invalid row_vertex map");
        op.vertex_row[static_cast<std::size_t>(v)] = r;
    }
    return op;
}

SparseOperator read_matrix_market(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_matrix_market(in);
}

} // namespace ltl
