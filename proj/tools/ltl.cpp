// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

// Command line front end: mesh generation, operator assembly and export,
// eigenpairs, curvature, diffusion and convergence studies.

#include <ltl/analytic.hpp>
#include <ltl/convergence.hpp>
#include <ltl/diffusion.hpp>
#include <ltl/errors.hpp>
#include <ltl/generators.hpp>
#include <ltl/highorder.hpp>
#include <ltl/mesh_io.hpp>
#include <ltl/operator.hpp>
#include <ltl/spectral.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

struct RingOptions
{
    int ring = 0;      // 0 selects the default for the degree
    int min_count = 0; // 0 selects the default for the degree
    int degree = 1;

    ltl::NeighborhoodSpec spec() const
    {
        ltl::NeighborhoodSpec s = degree == 1 ? ltl::default_pipeline_spec(1) : ltl::default_jet_spec(degree);
        if (ring > 0) s.ring_numerator = ring;
        if (min_count > 0) s.min_count = min_count;
        s.validate();
        return s;
    }
};

void add_ring_options(CLI::App* cmd, RingOptions& opt)
{
    cmd->add_option("--ring", opt.ring, "ring numerator j (the j/2-ring); default 2 for degree 1, max(2, k) otherwise")
        ->check(CLI::Range(1, ltl::max_ring_numerator));
    cmd->add_option("--min-count", opt.min_count, "minimum neighbor count before enlarging")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--degree", opt.degree, "1 for the first-order operator, k >= 2 for degree-k jets")
        ->check(CLI::Range(1, 8));
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ltl::Error("cannot open " + path + " for writing");
    out << std::setprecision(17);
    return out;
}

void write_json(const std::string& path, const json& doc)
{
    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
}

ltl::BoundaryMode boundary_for(const ltl::TriMesh& mesh, const std::string& name)
{
    if (name == "auto") return mesh.has_boundary() ? ltl::BoundaryMode::dirichlet_zero : ltl::BoundaryMode::none;
    return ltl::parse_boundary_mode(name);
}

ltl::SparseOperator build_operator(const ltl::TriMesh& mesh, const RingOptions& ring, const std::string& boundary)
{
    return ltl::build_laplacian(mesh, ring.degree, ring.spec(), boundary_for(mesh, boundary));
}

// Coordinate fields by name: x, y, z or one.
std::vector<double> coordinate_field(const ltl::TriMesh& mesh, const std::string& name)
{
    std::vector<double> out(static_cast<std::size_t>(mesh.num_vertices()));
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const ltl::Vec3& p = mesh.vertex(v);
        double value = 1.0;
        if (name == "x")
            value = p.x();
        else if (name == "y")
            value = p.y();
        else if (name == "z")
            value = p.z();
        else if (name != "one")
            throw ltl::ParseError("unknown field '" + name + "' (expected x, y, z or one)");
        out[static_cast<std::size_t>(v)] = value;
    }
    return out;
}

void dump_frames(const std::string& path, const ltl::TriMesh& mesh)
{
    std::ofstream out = open_out(path);
    out << "vertex,nx,ny,nz,e1x,e1y,e1z,e2x,e2y,e2z\n";
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const ltl::LocalFrame f = ltl::tangent_frame(mesh, v);
        out << v;
        for (const ltl::Vec3* a : {&f.normal, &f.e1, &f.e2}) out << ',' << a->x() << ',' << a->y() << ',' << a->z();
        out << '\n';
    }
}

void dump_stencils(const std::string& path, const ltl::TriMesh& mesh, const ltl::SparseOperator& op,
                   const RingOptions& ring)
{
    std::ofstream out = open_out(path);
    out << "vertex,ring,neighbor,x,y,weight\n";
    const ltl::NeighborhoodSpec spec = ring.spec();
    for (int row = 0; row < op.dim(); ++row) {
        const int v = op.row_vertex[static_cast<std::size_t>(row)];
        const ltl::RowMeta& meta = op.row_meta[static_cast<std::size_t>(row)];
        if (meta.ring == 0) continue;
        if (ring.degree == 1) {
            const ltl::VertexStencil s = ltl::first_order_stencil(mesh, v, spec);
            for (std::size_t i = 0; i < s.polygon.neighbor_ids.size(); ++i)
                out << v << ',' << s.ring << ',' << s.polygon.neighbor_ids[i] << ',' << s.polygon.coords[i].x() << ','
                    << s.polygon.coords[i].y() << ',' << meta.omega * s.weights.weights[i] << '\n';
        } else {
            const ltl::VertexJet jet = ltl::vertex_jet(mesh, v, ring.degree, spec);
            for (std::size_t i = 0; i < jet.polygon.neighbor_ids.size(); ++i) {
                const int u = jet.polygon.neighbor_ids[i];
                const int col = op.vertex_row[static_cast<std::size_t>(u)];
                const double w = col < 0 ? 0.0 : op.matrix.coeff(row, col);
                out << v << ',' << jet.ring << ',' << u << ',' << jet.polygon.coords[i].x() << ','
                    << jet.polygon.coords[i].y() << ',' << w << '\n';
            }
        }
    }
}

int run_generate(const std::string& kind, double edge, std::optional<double> inner, std::optional<double> outer,
                 const std::string& out)
{
    ltl::MeshParams params;
    if (inner) params["inner"] = *inner;
    if (outer) params["outer"] = *outer;
    const ltl::TriMesh mesh = ltl::generate_mesh(ltl::parse_surface_kind(kind), params, edge);
    ltl::write_off(out, mesh);
    std::cout << "wrote " << out << ": " << mesh.num_vertices() << " vertices, " << mesh.num_triangles()
              << " triangles, mesh size " << ltl::mesh_size(mesh) << '\n';
    return 0;
}

struct LaplacianArgs
{
    std::string mesh;
    std::string out;
    std::string boundary = "auto";
    std::string frames;
    std::string stencils;
    RingOptions ring;
};

int run_laplacian(const LaplacianArgs& a)
{
    const ltl::TriMesh mesh = ltl::load_mesh(a.mesh);
    const ltl::SparseOperator op = build_operator(mesh, a.ring, a.boundary);
    ltl::write_matrix_market(a.out, op);
    if (!a.frames.empty()) dump_frames(a.frames, mesh);
    if (!a.stencils.empty()) dump_stencils(a.stencils, mesh, op, a.ring);
    std::cout << "wrote " << a.out << ": " << op.dim() << " rows, " << op.matrix.nonZeros() << " nonzeros, boundary "
              << ltl::to_string(op.boundary_mode) << '\n';
    return 0;
}

struct EigenArgs
{
    std::string op;
    std::string mesh;
    std::string boundary = "auto";
    std::string out;
    std::string vectors;
    int count = 20;
    double tol_cluster = 0.05;
    RingOptions ring;
};

int run_eigen(const EigenArgs& a)
{
    if (a.op.empty() == a.mesh.empty()) throw ltl::ParseError("eigen: give exactly one of --op and --mesh");
    const ltl::SparseOperator op = a.op.empty() ? build_operator(ltl::load_mesh(a.mesh), a.ring, a.boundary)
                                                : ltl::read_matrix_market(a.op);
    ltl::EigenOptions options;
    options.cluster_abs_tol = a.tol_cluster;
    const ltl::EigenResult r = ltl::eigenpairs(op, a.count, options);

    json doc;
    json values = json::array(), imag = json::array(), clusters = json::array();
    for (const auto& l : r.eigenvalues) {
        values.push_back(l.real());
        imag.push_back(l.imag());
    }
    for (const auto& c : r.clusters) clusters.push_back({{"value", c.value}, {"multiplicity", c.multiplicity()}});
    doc["eigenvalues"] = values;
    doc["eigenvalues_imag"] = imag;
    doc["clusters"] = clusters;
    doc["residual_max"] = r.residual_max();
    doc["im_leakage_max"] = r.im_leakage_max();
    doc["converged"] = r.converged;
    doc["iterations"] = r.iterations;
    doc["dimension"] = op.dim();
    if (a.out.empty())
        std::cout << doc.dump(2) << '\n';
    else
        write_json(a.out, doc);

    if (!a.vectors.empty()) {
        // One column per eigenpair, rows in mesh vertex order (zero on
        // eliminated vertices).
        std::ofstream out = open_out(a.vectors);
        std::vector<std::vector<double>> cols;
        for (const auto& x : r.eigenvectors) cols.push_back(op.extend_field(x));
        for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << "v" << k;
        out << '\n';
        const std::size_t n = cols.empty() ? 0 : cols.front().size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k][i];
            out << '\n';
        }
    }
    if (!r.converged) {
        std::cerr << "eigen: not converged, residual_max " << r.residual_max() << '\n';
        return 1;
    }
    return 0;
}

struct CurvatureArgs
{
    std::string mesh;
    std::string out;
    std::string model;
    std::optional<double> inner;
    std::optional<double> outer;
    RingOptions ring;
};

int run_curvature(CurvatureArgs a)
{
    if (a.ring.degree < 2) a.ring.degree = 2;
    const ltl::TriMesh mesh = ltl::load_mesh(a.mesh);
    const auto invariants = ltl::mesh_invariants(mesh, a.ring.degree, a.ring.spec());
    std::optional<ltl::SurfaceKind> model;
    ltl::MeshParams params;
    if (!a.model.empty()) model = ltl::parse_surface_kind(a.model);
    if (a.inner) params["inner"] = *a.inner;
    if (a.outer) params["outer"] = *a.outer;

    std::ofstream out = open_out(a.out);
    out << "vertex,nx,ny,nz,K,H";
    if (model) out << ",normal_error,K_error,absH_error";
    out << '\n';
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        const auto& g = invariants[static_cast<std::size_t>(v)];
        out << v << ',' << g.normal.x() << ',' << g.normal.y() << ',' << g.normal.z() << ',' << g.gaussian << ','
            << g.mean;
        if (model) {
            const auto exact = ltl::analytic::surface_point(*model, mesh.vertex(v), params);
            const double ne = std::min((g.normal - exact.normal).norm(), (g.normal + exact.normal).norm());
            out << ',' << ne << ',' << std::abs(g.gaussian - exact.gaussian) << ','
                << std::abs(std::abs(g.mean) - std::abs(exact.mean));
        }
        out << '\n';
    }
    return 0;
}

struct DiffuseArgs
{
    std::string mesh;
    std::string op;
    std::string boundary = "auto";
    std::string init = "z";
    std::string out;
    std::string scheme = "implicit";
    double dt = 0.01;
    int steps = 10;
    double source = 0.0;
    RingOptions ring;
};

int run_diffuse(const DiffuseArgs& a)
{
    const ltl::TriMesh mesh = ltl::load_mesh(a.mesh);
    const ltl::SparseOperator op = a.op.empty() ? build_operator(mesh, a.ring, a.boundary) : ltl::read_matrix_market(a.op);
    if (op.num_mesh_vertices() != mesh.num_vertices())
        throw ltl::Error("diffuse: operator and mesh have different vertex counts");
    const auto u0 = op.restrict_field(coordinate_field(mesh, a.init));
    const std::vector<double> f(u0.size(), a.source);
    const auto u = op.extend_field(ltl::diffusion_solve(op, u0, f, a.dt, a.steps, ltl::parse_time_scheme(a.scheme)));

    std::ofstream out = open_out(a.out);
    out << "vertex,u\n";
    for (std::size_t v = 0; v < u.size(); ++v) out << v << ',' << u[v] << '\n';
    return 0;
}

std::vector<double> parse_sizes(const std::string& text)
{
    std::vector<double> sizes;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || !(value > 0.0))
            throw ltl::ParseError("bad size '" + item + "' in --sizes");
        sizes.push_back(value);
    }
    return sizes;
}

struct ConvergeArgs
{
    std::string study;
    std::string sizes;
    std::string out;
    int degree = 1;
    int ring = 0;
    int min_count = 0;
};

json report_json(const ltl::ConvergenceReport& r)
{
    json rows = json::array();
    for (const auto& row : r.rows) {
        json j = {{"target", row.target}, {"size", row.size}, {"vertices", row.vertices}, {"error", row.error}};
        if (std::isfinite(row.value)) j["value"] = row.value;
        if (std::isfinite(row.abs_error)) j["abs_error"] = row.abs_error;
        rows.push_back(j);
    }
    json eoc = json::array();
    for (double e : r.eoc) eoc.push_back(std::isfinite(e) ? json(e) : json("inf"));
    return {{"study", r.study},
            {"model", r.model},
            {"metric", r.metric},
            {"index", r.index},
            {"degree", r.degree},
            {"ring", {{"ring_numerator", r.ring.ring_numerator}, {"min_count", r.ring.min_count}}},
            {"rows", rows},
            {"eoc", eoc}};
}

int run_converge(const ConvergeArgs& a)
{
    ltl::StudyConfig config = ltl::parse_study(a.study);
    config.degree = a.degree;
    config.sizes = parse_sizes(a.sizes);
    if (a.ring > 0 || a.min_count > 0) {
        RingOptions ro{a.ring, a.min_count, a.degree};
        config.ring = ro.spec();
    }
    const ltl::ConvergenceReport report = ltl::convergence_study(config);

    bool ok = true;
    for (const auto& row : report.rows)
        if (!std::isfinite(row.error)) ok = false;

    if (a.out.empty()) {
        ltl::write_report_csv(std::cout, report);
    } else {
        std::ofstream out = open_out(a.out);
        ltl::write_report_csv(out, report);
        std::filesystem::path mirror(a.out);
        mirror.replace_extension(".json");
        write_json(mirror.string(), report_json(report));
    }
    if (!ok) {
        std::cerr << "converge: non-finite error in the ladder\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Local tangential lifting: Laplace-Beltrami operators, spectra and curvature on triangle meshes"};
    app.require_subcommand(1);

    std::string kind, gen_out;
    double edge = 0.1;
    std::optional<double> inner, outer;
    auto* gen = app.add_subcommand("generate", "write a model mesh as OFF");
    gen->add_option("--kind", kind, "sphere, hemisphere, torus, dumbbell or wave")->required();
    gen->add_option("--edge", edge, "target edge length")->required()->check(CLI::PositiveNumber);
    gen->add_option("--inner", inner, "torus inner radius");
    gen->add_option("--outer", outer, "torus outer radius");
    gen->add_option("--out", gen_out, "output .off")->required();

    LaplacianArgs lap;
    auto* lcmd = app.add_subcommand("laplacian", "assemble the discrete Laplace-Beltrami operator");
    lcmd->add_option("--mesh", lap.mesh, "input .off or .obj")->required()->check(CLI::ExistingFile);
    lcmd->add_option("--out", lap.out, "output MatrixMarket file")->required();
    lcmd->add_option("--boundary", lap.boundary, "auto, none, dirichlet or interior");
    lcmd->add_option("--dump-frames", lap.frames, "per-vertex tangent frames as CSV");
    lcmd->add_option("--dump-stencils", lap.stencils, "per-vertex stencil weights as CSV");
    add_ring_options(lcmd, lap.ring);

    EigenArgs eig;
    auto* ecmd = app.add_subcommand("eigen", "smallest-magnitude eigenpairs of an operator");
    ecmd->add_option("--op", eig.op, "operator in MatrixMarket form")->check(CLI::ExistingFile);
    ecmd->add_option("--mesh", eig.mesh, "assemble from this mesh instead")->check(CLI::ExistingFile);
    ecmd->add_option("--boundary", eig.boundary, "boundary mode when assembling from --mesh");
    ecmd->add_option("--count", eig.count, "number of eigenpairs")->check(CLI::PositiveNumber);
    ecmd->add_option("--tol-cluster", eig.tol_cluster, "absolute cluster gap")->check(CLI::PositiveNumber);
    ecmd->add_option("--out", eig.out, "output JSON (stdout when omitted)");
    ecmd->add_option("--vectors", eig.vectors, "eigenvectors as CSV columns");
    add_ring_options(ecmd, eig.ring);

    CurvatureArgs curv;
    auto* ccmd = app.add_subcommand("curvature", "per-vertex normals, Gaussian and mean curvature");
    ccmd->add_option("--mesh", curv.mesh, "input .off or .obj")->required()->check(CLI::ExistingFile);
    ccmd->add_option("--out", curv.out, "output CSV")->required();
    ccmd->add_option("--model", curv.model, "analytic model for error columns");
    ccmd->add_option("--inner", curv.inner, "torus inner radius for --model torus");
    ccmd->add_option("--outer", curv.outer, "torus outer radius for --model torus");
    add_ring_options(ccmd, curv.ring);
    curv.ring.degree = 4;

    DiffuseArgs dif;
    auto* dcmd = app.add_subcommand("diffuse", "time-step u_t = Lu + f");
    dcmd->add_option("--mesh", dif.mesh, "input .off or .obj")->required()->check(CLI::ExistingFile);
    dcmd->add_option("--op", dif.op, "precomputed operator for this mesh")->check(CLI::ExistingFile);
    dcmd->add_option("--boundary", dif.boundary, "boundary mode when assembling");
    dcmd->add_option("--init", dif.init, "initial field: x, y, z or one");
    dcmd->add_option("--source", dif.source, "constant source term f");
    dcmd->add_option("--dt", dif.dt, "time step")->required()->check(CLI::PositiveNumber);
    dcmd->add_option("--steps", dif.steps, "number of steps")->required()->check(CLI::PositiveNumber);
    dcmd->add_option("--scheme", dif.scheme, "explicit or implicit");
    dcmd->add_option("--out", dif.out, "output CSV")->required();
    add_ring_options(dcmd, dif.ring);

    ConvergeArgs conv;
    auto* vcmd = app.add_subcommand("converge", "run a convergence study over a size ladder");
    vcmd->add_option("--study", conv.study, "e.g. sphere-eigen1, hemisphere-eigen3, sphere-E2, wave-laplacian, "
                                            "torus-gaussian, torus-mean, torus-normal")
        ->required();
    vcmd->add_option("--degree", conv.degree, "1 for the first-order pipeline, k >= 2 for jets")
        ->check(CLI::Range(1, 8));
    vcmd->add_option("--sizes", conv.sizes, "comma-separated target edge lengths")->required();
    vcmd->add_option("--ring", conv.ring, "ring numerator override")->check(CLI::Range(1, ltl::max_ring_numerator));
    vcmd->add_option("--min-count", conv.min_count, "minimum neighbor count override")->check(CLI::PositiveNumber);
    vcmd->add_option("--out", conv.out, "output CSV; a .json mirror is written next to it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version requests print and succeed; usage errors exit 2.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return run_generate(kind, edge, inner, outer, gen_out);
        if (*lcmd) return run_laplacian(lap);
        if (*ecmd) return run_eigen(eig);
        if (*ccmd) return run_curvature(curv);
        if (*dcmd) return run_diffuse(dif);
        if (*vcmd) return run_converge(conv);
    } catch (const ltl::ParseError& e) {
        std::cerr << "ltl: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ltl: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
