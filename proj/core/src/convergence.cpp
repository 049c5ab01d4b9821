// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/analytic.hpp>
#include <ltl/convergence.hpp>
#include <ltl/errors.hpp>
#include <ltl/highorder.hpp>
#include <ltl/lifting.hpp>
#include <ltl/spectral.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ltl {

double linf_relative_error(std::span<const double> numeric, std::span<const double> reference,
                           std::span<const int> mask)
{
    if (numeric.size() != reference.size()) throw Error("linf_relative_error: length mismatch");
    if (mask.empty()) throw Error("linf_relative_error: empty mask");
    double worst = 0.0;
    for (int i : mask) {
        if (i < 0 || static_cast<std::size_t>(i) >= reference.size())
            throw Error("linf_relative_error: mask index out of range");
        const double ref = reference[static_cast<std::size_t>(i)];
        if (ref == 0.0) throw Error("linf_relative_error: zero reference inside the mask");
        worst = std::max(worst, std::abs(numeric[static_cast<std::size_t>(i)] - ref) / std::abs(ref));
    }
    return worst;
}

std::vector<int> relative_error_mask(std::span<const double> reference, std::span<const std::uint8_t> exclude,
                                     double threshold)
{
    if (!exclude.empty() && exclude.size() != reference.size())
        throw Error("relative_error_mask: exclusion flags have the wrong length");
    double peak = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i)
        if (exclude.empty() || !exclude[i]) peak = std::max(peak, std::abs(reference[i]));
    std::vector<int> mask;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (!exclude.empty() && exclude[i]) continue;
        if (std::abs(reference[i]) > 0.0 && std::abs(reference[i]) >= threshold * peak)
            mask.push_back(static_cast<int>(i));
    }
    return mask;
}

std::vector<std::uint8_t> boundary_reach_flags(const TriMesh& mesh, const SparseOperator& op)
{
    if (op.num_mesh_vertices() != mesh.num_vertices())
        throw Error("boundary_reach_flags: operator was assembled on another mesh");
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(mesh.num_vertices()), 0);
    for (int v = 0; v < mesh.num_vertices(); ++v) flags[static_cast<std::size_t>(v)] = mesh.is_boundary(v) ? 1 : 0;
    for (int row = 0; row < op.dim(); ++row) {
        const int v = op.row_vertex[static_cast<std::size_t>(row)];
        for (SparseOperator::Matrix::InnerIterator it(op.matrix, row); it; ++it) {
            const int u = op.row_vertex[static_cast<std::size_t>(it.col())];
            if (mesh.is_boundary(u)) flags[static_cast<std::size_t>(v)] = 1;
        }
    }
    return flags;
}

std::vector<double> eoc(std::span<const double> errors, std::span<const double> sizes)
{
    if (errors.size() != sizes.size() || errors.size() < 2) throw Error("eoc: need matching sequences of length >= 2");
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        if (!(sizes[i] > sizes[i + 1]) || !(sizes[i + 1] > 0.0)) throw Error("eoc: sizes must be positive and decreasing");
        if (!(errors[i] >= 0.0) || !(errors[i + 1] >= 0.0)) throw Error("eoc: errors must be non-negative");
        if (errors[i + 1] == 0.0) {
            out.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        out.push_back(std::log(errors[i] / errors[i + 1]) / std::log(sizes[i] / sizes[i + 1]));
    }
    return out;
}

double mean_finite(std::span<const double> values)
{
    double sum = 0.0;
    int n = 0;
    for (double v : values)
        if (std::isfinite(v)) {
            sum += v;
            ++n;
        }
    return n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
}

StudyMetric parse_study_metric(std::string_view name)
{
    if (name == "eigen" || name == "eigenvalue") return StudyMetric::eigenvalue;
    if (name == "E" || name == "subspace") return StudyMetric::subspace;
    if (name == "laplacian" || name == "laplacian_field") return StudyMetric::laplacian_field;
    if (name == "normal") return StudyMetric::normal;
    if (name == "gaussian") return StudyMetric::gaussian;
    if (name == "mean") return StudyMetric::mean;
    throw Error("unknown study metric '" + std::string(name) + "'");
}

const char* to_string(StudyMetric metric)
{
    switch (metric) {
    case StudyMetric::eigenvalue: return "eigenvalue";
    case StudyMetric::subspace: return "subspace";
    case StudyMetric::laplacian_field: return "laplacian_field";
    case StudyMetric::normal: return "normal";
    case StudyMetric::gaussian: return "gaussian";
    case StudyMetric::mean: return "mean";
    }
    return "eigenvalue";
}

StudyConfig parse_study(std::string_view id)
{
    const auto dash = id.find('-');
    if (dash == std::string_view::npos) throw Error("study id must look like <model>-<metric>");
    StudyConfig config;
    config.id = std::string(id);
    config.model = parse_surface_kind(id.substr(0, dash));

    std::string_view metric = id.substr(dash + 1);
    std::size_t digits = metric.size();
    while (digits > 0 && std::isdigit(static_cast<unsigned char>(metric[digits - 1]))) --digits;
    if (digits < metric.size()) config.index = std::stoi(std::string(metric.substr(digits)));
    config.metric = parse_study_metric(metric.substr(0, digits));
    if (config.index < 1) throw Error("study index must be >= 1");
    return config;
}

NeighborhoodSpec default_pipeline_spec(int degree)
{
    if (degree < 1) throw Error("pipeline degree must be >= 1");
    return degree == 1 ? NeighborhoodSpec{2, 5} : default_jet_spec(degree);
}

SparseOperator build_laplacian(const TriMesh& mesh, int degree, const NeighborhoodSpec& spec, BoundaryMode boundary)
{
    if (degree == 1) return assemble_laplacian(mesh, spec, boundary);
    return assemble_highorder_laplacian(mesh, degree, spec, boundary);
}

namespace {

struct Measurement
{
    double value = std::numeric_limits<double>::quiet_NaN();
    double error = 0.0;
    double abs_error = std::numeric_limits<double>::quiet_NaN();
};

EigenResult checked_eigenpairs(const SparseOperator& op, int count)
{
    EigenResult res = eigenpairs(op, count);
    if (!res.converged) {
        std::ostringstream msg;
        msg << "eigensolver did not reach the residual bound (max residual " << res.residual_max() << ")";
        throw SolverError(msg.str());
    }
    return res;
}

const EigenCluster& sphere_cluster(const EigenResult& res, int n, std::vector<EigenCluster>& storage)
{
    storage = nonzero_clusters(res.clusters);
    if (static_cast<int>(storage.size()) < n) throw Error("fewer nonzero eigenvalue clusters than requested");
    const EigenCluster& c = storage[static_cast<std::size_t>(n - 1)];
    if (c.multiplicity() != 2 * n + 1) {
        std::ostringstream msg;
        msg << "cluster " << n << " has multiplicity " << c.multiplicity() << ", expected " << 2 * n + 1;
        throw Error(msg.str());
    }
    return c;
}

Measurement measure_eigen(const StudyConfig& config, const TriMesh& mesh, const NeighborhoodSpec& spec)
{
    const int n = config.index;
    if (config.model == SurfaceKind::hemisphere) {
        const auto op = build_laplacian(mesh, config.degree, spec, BoundaryMode::dirichlet_zero);
        const auto res = checked_eigenpairs(op, std::max(n, 6));
        const double target = analytic::hemisphere_dirichlet_eigenvalues(n).back();
        const double value = res.eigenvalues[static_cast<std::size_t>(n - 1)].real();
        return {value, std::abs(value - target)};
    }
    if (config.model != SurfaceKind::sphere) throw Error("eigenvalue studies need the sphere or hemisphere model");

    const auto op = build_laplacian(mesh, config.degree, spec, BoundaryMode::none);
    const auto res = checked_eigenpairs(op, (n + 1) * (n + 1));
    std::vector<EigenCluster> storage;
    const EigenCluster& c = sphere_cluster(res, n, storage);
    if (config.metric == StudyMetric::eigenvalue) return {c.value, std::abs(c.value - analytic::sphere_eigenvalue(n))};

    if (n > 3) throw Error("subspace studies support clusters 1 to 3");
    std::vector<std::vector<double>> computed;
    for (int m : c.members) computed.push_back(res.eigenvectors[static_cast<std::size_t>(m)]);
    const double e = subspace_align_error(analytic::sphere_harmonics(mesh, n), computed);
    return {e, e};
}

Measurement measure_laplacian(const StudyConfig& config, const TriMesh& mesh, const NeighborhoodSpec& spec)
{
    const int nv = mesh.num_vertices();
    std::vector<double> field(static_cast<std::size_t>(nv)), reference(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        const Vec3& p = mesh.vertex(v);
        if (config.model == SurfaceKind::wave) {
            field[static_cast<std::size_t>(v)] = analytic::wave_field(p.x(), p.y());
            reference[static_cast<std::size_t>(v)] = analytic::wave_field_laplacian(p.x(), p.y());
        } else if (config.model == SurfaceKind::sphere) {
            field[static_cast<std::size_t>(v)] = p.z();
            reference[static_cast<std::size_t>(v)] = -2.0 * p.z();
        } else {
            throw Error("laplacian studies need the wave or sphere model");
        }
    }
    const BoundaryMode mode = mesh.has_boundary() ? BoundaryMode::interior_rows : BoundaryMode::none;
    const auto op = build_laplacian(mesh, config.degree, spec, mode);
    const auto numeric = apply_operator(op, field);
    // Interior means the whole stencil is interior: rows next to the boundary
    // are one-sided and, on the grid, nearly rank deficient for k >= 4.
    const auto mask = relative_error_mask(reference, boundary_reach_flags(mesh, op));
    const double e = linf_relative_error(numeric, reference, mask);
    double abs_error = 0.0;
    for (int v : mask)
        abs_error = std::max(abs_error, std::abs(numeric[static_cast<std::size_t>(v)] -
                                                 reference[static_cast<std::size_t>(v)]));
    return {e, e, abs_error};
}

Measurement measure_geometry(const StudyConfig& config, const TriMesh& mesh, const NeighborhoodSpec& spec)
{
    const int nv = mesh.num_vertices();
    if (config.metric != StudyMetric::normal && config.degree < 2)
        throw Error("curvature studies need degree >= 2");

    std::vector<double> numeric, reference;
    std::vector<std::uint8_t> exclude;
    double normal_error = 0.0;
    for (int v = 0; v < nv; ++v) {
        if (mesh.is_boundary(v)) continue;
        const auto exact = analytic::surface_point(config.model, mesh.vertex(v), config.params);
        if (config.metric == StudyMetric::normal) {
            const Vec3 n = config.degree == 1 ? vertex_normal(mesh, v)
                                              : invariants_from_fit(fit_height(mesh, v, config.degree, spec)).normal;
            normal_error = std::max(normal_error, std::min((n - exact.normal).norm(), (n + exact.normal).norm()));
            continue;
        }
        const auto inv = invariants_from_fit(fit_height(mesh, v, config.degree, spec));
        if (config.metric == StudyMetric::gaussian) {
            numeric.push_back(inv.gaussian);
            reference.push_back(exact.gaussian);
        } else {
            numeric.push_back(std::abs(inv.mean));
            reference.push_back(std::abs(exact.mean));
        }
    }
    if (config.metric == StudyMetric::normal) return {normal_error, normal_error};
    const auto mask = relative_error_mask(reference, exclude);
    const double e = linf_relative_error(numeric, reference, mask);
    return {e, e};
}

} // namespace

ConvergenceReport convergence_study(const StudyConfig& config)
{
    if (config.sizes.size() < 2) throw Error("convergence_study: need at least two sizes");
    const NeighborhoodSpec spec = config.ring.value_or(default_pipeline_spec(config.degree));

    ConvergenceReport report;
    report.study = config.id;
    report.model = std::string(to_string(config.model));
    report.metric = to_string(config.metric);
    report.index = config.index;
    report.degree = config.degree;
    report.ring = spec;

    for (double target : config.sizes) {
        try {
            const TriMesh mesh = generate_mesh(config.model, config.params, target);
            ConvergenceRow row;
            row.target = target;
            row.size = mesh_size(mesh);
            row.vertices = mesh.num_vertices();
            Measurement m;
            switch (config.metric) {
            case StudyMetric::eigenvalue:
            case StudyMetric::subspace: m = measure_eigen(config, mesh, spec); break;
            case StudyMetric::laplacian_field: m = measure_laplacian(config, mesh, spec); break;
            default: m = measure_geometry(config, mesh, spec); break;
            }
            row.value = m.value;
            row.error = m.error;
            row.abs_error = m.abs_error;
            report.rows.push_back(row);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "study " << config.id << " at target size " << target << ": " << e.what();
            throw Error(msg.str());
        }
    }

    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.size > b.size; });
    std::vector<double> sizes, errors;
    for (const auto& r : report.rows) {
        sizes.push_back(r.size);
        errors.push_back(r.error);
    }
    report.eoc = eoc(errors, sizes);
    return report;
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report)
{
    out << "size,error,eoc\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        out << report.rows[i].size << ',' << report.rows[i].error << ',';
        if (i > 0) out << report.eoc[i - 1];
        out << '\n';
    }
}

} // namespace ltl
