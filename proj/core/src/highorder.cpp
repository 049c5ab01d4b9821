// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/highorder.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ltl {

double JetFit::derivative(int px, int py) const
{
    if (px < 0 || py < 0 || px + py < 1 || px + py > degree) throw Error("JetFit::derivative: order out of range");
    return coefficients[static_cast<std::size_t>(monomial_index(px, py))];
}

NeighborhoodSpec default_jet_spec(int degree)
{
    if (degree < 2) throw Error("jet degree must be >= 2");
    return NeighborhoodSpec{std::max(2, degree), std::max(5, jet_coefficient_count(degree))};
}

VertexJet vertex_jet(const TriMesh& mesh, int v, int degree, const NeighborhoodSpec& spec)
{
    if (degree < 2) throw Error("jet degree must be >= 2");
    spec.validate();

    LocalFrame frame;
    try {
        frame = tangent_frame(mesh, v);
    } catch (const GeometryError& e) {
        throw AssemblyError(v, e.what());
    }

    const int rows = jet_coefficient_count(degree);
    const NeighborhoodSpec base{spec.ring_numerator, std::max(spec.min_count, rows)};
    const int last_ring = std::max(base.ring_numerator, max_ring_numerator);
    std::string last_failure = "no ring attempted";
    for (int j = base.ring_numerator; j <= last_ring;) {
        int used = j;
        std::vector<int> nbrs;
        try {
            nbrs = neighborhood(mesh, v, NeighborhoodSpec{j, base.min_count}, used);
        } catch (const MeshError& e) {
            throw AssemblyError(v, e.what());
        }
        if (used > last_ring) break;

        TangentPolygon poly = lift_neighborhood(mesh, frame, nbrs);
        MomentSystem system(poly.coords, degree);
        if (system.rank() == rows && system.condition() <= jet_condition_limit)
            return VertexJet{v, used, std::move(poly), std::move(system)};

        std::ostringstream why;
        why << "rank " << system.rank() << " of " << rows << ", condition " << system.condition();
        last_failure = why.str();
        j = used + 1;
    }
    std::ostringstream msg;
    msg << "vertex " << v << ": no well-posed degree-" << degree << " jet up to ring " << last_ring << "/2 ("
        << last_failure << ")";
    throw AssemblyError(v, msg.str());
}

JetFit fit_samples(const VertexJet& jet, std::span<const double> values, double center)
{
    const auto n = static_cast<Eigen::Index>(jet.polygon.coords.size());
    if (static_cast<Eigen::Index>(values.size()) != n) throw Error("fit_samples: sample count mismatch");

    Eigen::VectorXd delta(n);
    for (Eigen::Index i = 0; i < n; ++i) delta[i] = values[static_cast<std::size_t>(i)] - center;
    const Eigen::VectorXd e = jet.system.pseudo_inverse().transpose() * delta;

    JetFit fit;
    fit.degree = jet.system.degree();
    fit.coefficients.assign(e.data(), e.data() + e.size());
    fit.center_value = center;
    fit.frame = jet.polygon.frame;
    fit.ring = jet.ring;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double model = MomentSystem::monomials(jet.polygon.coords[static_cast<std::size_t>(i)], fit.degree).dot(e);
        fit.residual = std::max(fit.residual, std::abs(model - delta[i]));
    }
    return fit;
}

JetFit fit_height(const VertexJet& jet)
{
    return fit_samples(jet, jet.polygon.heights, 0.0);
}

JetFit fit_height(const TriMesh& mesh, int v, int degree, const NeighborhoodSpec& spec)
{
    return fit_height(vertex_jet(mesh, v, degree, spec));
}

JetFit fit_scalar(const TriMesh& mesh, int v, int degree, const ScalarField& field, const NeighborhoodSpec& spec)
{
    if (field.size() != mesh.num_vertices()) throw Error("fit_scalar: field length does not match the mesh");
    if (field.mesh != 0 && field.mesh != mesh.fingerprint()) throw Error("fit_scalar: field is bound to another mesh");
    const VertexJet jet = vertex_jet(mesh, v, degree, spec);
    std::vector<double> samples;
    samples.reserve(jet.polygon.neighbor_ids.size());
    for (int w : jet.polygon.neighbor_ids) samples.push_back(field.values[static_cast<std::size_t>(w)]);
    return fit_samples(jet, samples, field.values[static_cast<std::size_t>(v)]);
}

GeometricInvariants invariants_from_fit(const JetFit& height)
{
    if (height.degree < 2) throw Error("invariants_from_fit: degree must be >= 2");
    const double p = height.derivative(1, 0);
    const double q = height.derivative(0, 1);
    const double r = height.derivative(2, 0);
    const double s = height.derivative(1, 1);
    const double t = height.derivative(0, 2);
    const double w2 = 1.0 + p * p + q * q;
    const double w = std::sqrt(w2);

    GeometricInvariants inv;
    inv.normal = height.frame.to_world(Vec3(-p, -q, 1.0) / w);
    inv.first_form = {1.0 + p * p, p * q, 1.0 + q * q};
    inv.second_form = {r / w, s / w, t / w};
    inv.gaussian = (r * t - s * s) / (w2 * w2);
    inv.mean = ((1.0 + p * p) * t - 2.0 * p * q * s + (1.0 + q * q) * r) / (2.0 * w2 * w);
    return inv;
}

std::array<double, 5> laplacian_functional(double p, double q, double r, double s, double t)
{
    const double E = 1.0 + p * p;
    const double F = p * q;
    const double G = 1.0 + q * q;
    const double W = E * G - F * F;

    const double E_v = 2.0 * p * s;
    const double F_u = r * q + p * s;
    const double F_v = s * q + p * t;
    const double G_u = 2.0 * q * s;
    const double W_u = 2.0 * p * r + 2.0 * q * s;
    const double W_v = 2.0 * p * s + 2.0 * q * t;

    // (1/sqrt W) [ d/du((G phi_u - F phi_v)/sqrt W) + d/dv((E phi_v - F phi_u)/sqrt W) ]
    const double c_u = (G_u - F_v) / W - (G * W_u - F * W_v) / (2.0 * W * W);
    const double c_v = (E_v - F_u) / W - (E * W_v - F * W_u) / (2.0 * W * W);
    return {c_u, c_v, G / W, -2.0 * F / W, E / W};
}

SurfaceDifferentials surface_differentials(const JetFit& height, const JetFit& scalar)
{
    if (height.degree < 2 || scalar.degree < 2) throw Error("surface_differentials: degree must be >= 2");
    if (height.frame.origin != scalar.frame.origin || height.frame.normal != scalar.frame.normal ||
        height.frame.e1 != scalar.frame.e1)
        throw Error("surface_differentials: fits do not share a frame");

    const double p = height.derivative(1, 0);
    const double q = height.derivative(0, 1);
    const double E = 1.0 + p * p;
    const double F = p * q;
    const double G = 1.0 + q * q;
    const double W = E * G - F * F;
    const double fu = scalar.derivative(1, 0);
    const double fv = scalar.derivative(0, 1);

    const Vec3 xu(1.0, 0.0, p);
    const Vec3 xv(0.0, 1.0, q);
    SurfaceDifferentials out;
    out.gradient = height.frame.to_world(((fu * G - fv * F) * xu + (fv * E - fu * F) * xv) / W);

    const auto c = laplacian_functional(p, q, height.derivative(2, 0), height.derivative(1, 1), height.derivative(0, 2));
    out.laplacian = c[0] * fu + c[1] * fv + c[2] * scalar.derivative(2, 0) + c[3] * scalar.derivative(1, 1) +
                    c[4] * scalar.derivative(0, 2);
    return out;
}

std::vector<GeometricInvariants> mesh_invariants(const TriMesh& mesh, int degree, const NeighborhoodSpec& spec)
{
    std::vector<GeometricInvariants> out;
    out.reserve(static_cast<std::size_t>(mesh.num_vertices()));
    for (int v = 0; v < mesh.num_vertices(); ++v) out.push_back(invariants_from_fit(fit_height(mesh, v, degree, spec)));
    return out;
}

SparseOperator assemble_highorder_laplacian(const TriMesh& mesh, int degree, const NeighborhoodSpec& spec,
                                            BoundaryMode boundary)
{
    if (degree < 2) throw Error("assemble_highorder_laplacian: degree must be >= 2");
    spec.validate();
    const int rows = jet_coefficient_count(degree);

    return assemble_from_rows(mesh, boundary, [&](int v) {
        const VertexJet jet = vertex_jet(mesh, v, degree, spec);
        const JetFit h = fit_height(jet);
        const auto c = laplacian_functional(h.derivative(1, 0), h.derivative(0, 1), h.derivative(2, 0),
                                            h.derivative(1, 1), h.derivative(0, 2));
        Eigen::VectorXd target = Eigen::VectorXd::Zero(rows);
        target[monomial_index(1, 0)] = c[0];
        target[monomial_index(0, 1)] = c[1];
        target[monomial_index(2, 0)] = c[2];
        target[monomial_index(1, 1)] = c[3];
        target[monomial_index(0, 2)] = c[4];
        const Eigen::VectorXd w = jet.system.solve(target);

        RowStencil row;
        row.ring = jet.ring;
        row.residual = jet.system.residual(w, target);
        row.omega = 1.0;
        row.columns = jet.polygon.neighbor_ids;
        row.values.assign(w.data(), w.data() + w.size());
        return row;
    });
}

} // namespace ltl
