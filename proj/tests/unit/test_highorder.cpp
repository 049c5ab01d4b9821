// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <ltl/analytic.hpp>
#include <ltl/errors.hpp>
#include <ltl/generators.hpp>
#include <ltl/highorder.hpp>

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace ltl;

namespace {

ScalarField field_of(const TriMesh& m, double (*f)(const Vec3&))
{
    std::vector<double> v;
    for (const Vec3& p : m.vertices()) v.push_back(f(p));
    return ScalarField(std::move(v), m.fingerprint());
}

// Hand-built jet over synthetic planar coordinates.
VertexJet synthetic_jet(const std::vector<Vec2>& coords, int degree)
{
    TangentPolygon poly;
    poly.frame = frame_from_normal(0, Vec3::UnitZ());
    poly.coords = coords;
    for (std::size_t i = 0; i < coords.size(); ++i) poly.neighbor_ids.push_back(static_cast<int>(i) + 1);
    poly.heights.assign(coords.size(), 0.0);
    return VertexJet{0, degree, poly, MomentSystem(coords, degree)};
}

// Random polynomial sum c_ab x^a y^b / (a! b!) of total degree <= k; the
// derivative d^(a+b)/dx^a dy^b at the origin is then c_ab.
struct Polynomial
{
    int degree;
    std::vector<double> c; // indexed like monomial_index, plus c0

    double c0 = 0.0;

    double operator()(const Vec2& p) const
    {
        return c0 + MomentSystem::monomials(p, degree).dot(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
    }
};

Polynomial random_polynomial(std::mt19937_64& rng, int degree)
{
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Polynomial p{degree, std::vector<double>(static_cast<std::size_t>(jet_coefficient_count(degree)))};
    for (double& x : p.c) x = uni(rng);
    p.c0 = uni(rng);
    return p;
}

// Laplace-Beltrami coefficients of the graph of the quadratic
// h = p u + q v + (r u^2 + 2 s u v + t v^2) / 2 at the origin, via
// Christoffel symbols of the metric, whose derivatives are taken by central
// differences.
std::array<double, 5> christoffel_oracle(double p, double q, double r, double s, double t)
{
    const auto metric = [&](double u, double v) {
        const double hu = p + r * u + s * v;
        const double hv = q + s * u + t * v;
        Eigen::Matrix2d g;
        g << 1.0 + hu * hu, hu * hv, hu * hv, 1.0 + hv * hv;
        return g;
    };
    const double d = 1e-5;
    const Eigen::Matrix2d dg[2] = {(metric(d, 0) - metric(-d, 0)) / (2 * d), (metric(0, d) - metric(0, -d)) / (2 * d)};
    const Eigen::Matrix2d g = metric(0, 0);
    const Eigen::Matrix2d gi = g.inverse();
    double gamma[2][2][2]; // gamma[k][i][j]
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double sum = 0.0;
                for (int l = 0; l < 2; ++l) sum += gi(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                gamma[k][i][j] = 0.5 * sum;
            }
    std::array<double, 5> out{};
    for (int k = 0; k < 2; ++k) {
        double sum = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sum += gi(i, j) * gamma[k][i][j];
        out[static_cast<std::size_t>(k)] = -sum;
    }
    out[2] = gi(0, 0);
    out[3] = 2.0 * gi(0, 1);
    out[4] = gi(1, 1);
    return out;
}

int farthest_from_axis(const TriMesh& m)
{
    int best = 0;
    for (int v = 1; v < m.num_vertices(); ++v)
        if (m.vertex(v).head<2>().norm() > m.vertex(best).head<2>().norm()) best = v;
    return best;
}

} // namespace

TEST_CASE("default jet neighborhood")
{
    CHECK(default_jet_spec(2).ring_numerator == 2);
    CHECK(default_jet_spec(2).min_count == 5);
    CHECK(default_jet_spec(4).ring_numerator == 4);
    CHECK(default_jet_spec(4).min_count == 14);
    CHECK_THROWS_AS(default_jet_spec(1), Error);
    CHECK(jet_coefficient_count(2) == 5);
    CHECK(jet_coefficient_count(6) == 27);
}

TEST_CASE("planar heights fit to zero")
{
    const TriMesh grid = test::planar_grid(10, 0.1);
    for (int k : {2, 3, 4}) {
        const JetFit fit = fit_height(grid, 60, k, default_jet_spec(k));
        CHECK(static_cast<int>(fit.coefficients.size()) == jet_coefficient_count(k));
        for (double c : fit.coefficients) CHECK(std::abs(c) <= 1e-12);
        CHECK(fit.center_value == 0.0);
        const GeometricInvariants inv = invariants_from_fit(fit);
        CHECK(inv.gaussian == 0.0);
        CHECK(inv.mean == 0.0);
        CHECK((inv.normal - fit.frame.normal).norm() <= 1e-15);
    }
}

TEST_CASE("paraboloid data gives unit second derivatives")
{
    std::mt19937_64 rng(11);
    const std::vector<Vec2> pts = test::random_star(rng, 8, 0.3);
    const VertexJet jet = synthetic_jet(pts, 2);
    std::vector<double> z;
    for (const Vec2& p : pts) z.push_back(0.5 * p.squaredNorm());
    const JetFit fit = fit_samples(jet, z, 0.0);
    CHECK(std::abs(fit.derivative(1, 0)) <= 1e-10);
    CHECK(std::abs(fit.derivative(0, 1)) <= 1e-10);
    CHECK(std::abs(fit.derivative(2, 0) - 1.0) <= 1e-10);
    CHECK(std::abs(fit.derivative(1, 1)) <= 1e-10);
    CHECK(std::abs(fit.derivative(0, 2) - 1.0) <= 1e-10);
    CHECK(fit.residual <= 1e-12);

    // Degree 2 is determined by exactly five samples.
    const std::vector<Vec2> five(pts.begin(), pts.begin() + 5);
    const VertexJet square = synthetic_jet(five, 2);
    CHECK(square.system.rank() == 5);
    const JetFit exact = fit_samples(square, std::vector<double>(z.begin(), z.begin() + 5), 0.0);
    CHECK(std::abs(exact.derivative(2, 0) - 1.0) <= 1e-10);
}

TEST_CASE("polynomial reproduction")
{
    std::mt19937_64 rng(5);
    for (int k = 2; k <= 6; ++k) {
        for (int trial = 0; trial < 20; ++trial) {
            const int count = jet_coefficient_count(k) + 4;
            const std::vector<Vec2> pts = test::random_star(rng, count, 0.5);
            const Polynomial poly = random_polynomial(rng, k);
            const VertexJet jet = synthetic_jet(pts, k);
            if (jet.system.condition() > jet_condition_limit) continue;
            std::vector<double> values;
            for (const Vec2& p : pts) values.push_back(poly(p));
            const JetFit fit = fit_samples(jet, values, poly.c0);
            // d-th derivatives are compared in units of radius^d, the scale at
            // which the data determine them.
            for (int d = 1; d <= k; ++d)
                for (int b = 0; b <= d; ++b) {
                    const auto i = static_cast<std::size_t>(monomial_index(d - b, b));
                    CAPTURE(k);
                    CHECK(std::abs(fit.coefficients[i] - poly.c[i]) * std::pow(jet.system.radius(), d) <= 1e-10);
                }
            CHECK(fit.center_value == poly.c0);
            CHECK(fit.residual <= 1e-10);
        }
    }
}

TEST_CASE("scalar fits of constant and linear fields on a plane")
{
    const TriMesh grid = test::planar_grid(10, 0.1);
    const ScalarField c = field_of(grid, [](const Vec3&) { return 3.0; });
    const JetFit fc = fit_scalar(grid, 60, 3, c, default_jet_spec(3));
    CHECK(fc.center_value == 3.0);
    for (double x : fc.coefficients) CHECK(std::abs(x) <= 1e-12);

    // The frame of a z-normal is the world x/y frame, so the world x
    // coordinate is the frame x coordinate.
    const ScalarField x = field_of(grid, [](const Vec3& p) { return p.x(); });
    const JetFit fx = fit_scalar(grid, 60, 3, x, default_jet_spec(3));
    REQUIRE(std::abs(fx.frame.e1.dot(Vec3::UnitX())) == doctest::Approx(1.0));
    CHECK(std::abs(fx.derivative(1, 0) - fx.frame.e1.x()) <= 1e-12);
    for (std::size_t i = 1; i < fx.coefficients.size(); ++i) CHECK(std::abs(fx.coefficients[i]) <= 1e-12);

    CHECK_THROWS_AS(fit_scalar(grid, 60, 3, ScalarField(std::vector<double>(3, 1.0)), default_jet_spec(3)), Error);
}

TEST_CASE("curvature formulas agree")
{
    const TriMesh torus = generate_mesh(SurfaceKind::torus, {}, 0.15);
    for (int v = 0; v < torus.num_vertices(); v += 7) {
        const GeometricInvariants inv = invariants_from_fit(fit_height(torus, v, 3, default_jet_spec(3)));
        const auto [E, F, G] = inv.first_form;
        const auto [e, f, g] = inv.second_form;
        const double p2 = E - 1.0, q2 = G - 1.0;
        CHECK(E * G - F * F == doctest::Approx(1.0 + p2 + q2).epsilon(1e-14));
        CHECK(E * G - F * F > 0.0);
        CHECK(std::abs((e * g - f * f) / (E * G - F * F) - inv.gaussian) <= 1e-10);
        CHECK(std::abs(inv.normal.norm() - 1.0) <= 1e-14);
    }
}

TEST_CASE("torus Gaussian curvature at the outer equator")
{
    // K = cos v / (a (c + a cos v)) with c = 0.75, a = 0.25; 4 at v = 0.
    const TriMesh torus = generate_mesh(SurfaceKind::torus, {}, 0.05);
    const int v = farthest_from_axis(torus);
    REQUIRE(torus.vertex(v).head<2>().norm() == doctest::Approx(1.0).epsilon(1e-12));
    const GeometricInvariants inv = invariants_from_fit(fit_height(torus, v, 4, default_jet_spec(4)));
    CHECK(inv.gaussian == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(std::abs(inv.mean) == doctest::Approx(0.5 * (4.0 + 1.0)).epsilon(1e-3));
    CHECK(analytic::torus_point(torus.vertex(v)).gaussian == doctest::Approx(4.0));
}

TEST_CASE("sphere curvatures")
{
    for (double r : {0.2, 0.1}) {
        const TriMesh s = generate_mesh(SurfaceKind::sphere, {}, r);
        double worst_k = 0.0, worst_h = 0.0;
        for (const GeometricInvariants& inv : mesh_invariants(s, 3, default_jet_spec(3))) {
            worst_k = std::max(worst_k, std::abs(inv.gaussian - 1.0));
            worst_h = std::max(worst_h, std::abs(std::abs(inv.mean) - 1.0));
        }
        CAPTURE(r);
        CHECK(worst_k <= mesh_size(s));
        CHECK(worst_h <= mesh_size(s));
    }
}

TEST_CASE("laplacian functional matches the Christoffel form")
{
    const auto flat = laplacian_functional(0, 0, 0.3, -0.2, 0.7);
    CHECK(flat == std::array<double, 5>{0.0, 0.0, 1.0, 0.0, 1.0});

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    for (int trial = 0; trial < 200; ++trial) {
        const double p = uni(rng), q = uni(rng), r = uni(rng), s = uni(rng), t = uni(rng);
        const auto got = laplacian_functional(p, q, r, s, t);
        const auto want = christoffel_oracle(p, q, r, s, t);
        for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-7);

        // Graph surfaces have Gamma^k_ij = h_k h_ij / W.
        const double W = 1.0 + p * p + q * q;
        const double trace = ((1.0 + q * q) * r - 2.0 * p * q * s + (1.0 + p * p) * t) / W;
        CHECK(std::abs(got[0] + p * trace / W) <= 1e-12);
        CHECK(std::abs(got[1] + q * trace / W) <= 1e-12);
    }
}

TEST_CASE("planar differentials")
{
    const TriMesh grid = test::planar_grid(10, 0.1);
    const ScalarField f = field_of(grid, [](const Vec3& p) { return p.x() * p.x() + p.y() * p.y(); });
    for (int v : {45, 60, 72}) {
        const JetFit h = fit_height(grid, v, 3, default_jet_spec(3));
        const JetFit s = fit_scalar(grid, v, 3, f, default_jet_spec(3));
        const SurfaceDifferentials d = surface_differentials(h, s);
        const Vec3 p = grid.vertex(v);
        CHECK(std::abs(d.laplacian - 4.0) <= 1e-10);
        CHECK((d.gradient - Vec3(2 * p.x(), 2 * p.y(), 0.0)).norm() <= 1e-10);
    }
}

TEST_CASE("sphere: Laplacian of z at k = 4")
{
    std::vector<double> errors, sizes;
    for (double r : {0.2, 0.1}) {
        const TriMesh s = generate_mesh(SurfaceKind::sphere, {}, r);
        const ScalarField z = field_of(s, [](const Vec3& p) { return p.z(); });
        double worst = 0.0, worst_grad = 0.0;
        for (int v = 0; v < s.num_vertices(); ++v) {
            const NeighborhoodSpec spec = default_jet_spec(4);
            const SurfaceDifferentials d = surface_differentials(fit_height(s, v, 4, spec), fit_scalar(s, v, 4, z, spec));
            const Vec3 p = s.vertex(v);
            worst = std::max(worst, std::abs(d.laplacian + 2.0 * p.z()));
            worst_grad = std::max(worst_grad, (d.gradient - (Vec3::UnitZ() - p.z() * p)).norm());
        }
        errors.push_back(worst);
        sizes.push_back(mesh_size(s));
        CHECK(worst_grad <= mesh_size(s) * mesh_size(s));
    }
    CHECK(errors[1] < errors[0]);
    CHECK(std::log(errors[0] / errors[1]) / std::log(sizes[0] / sizes[1]) >= 2.0 - 0.5);
}

TEST_CASE("rigid motions leave the invariants unchanged")
{
    const TriMesh torus = generate_mesh(SurfaceKind::torus, {}, 0.1);
    const Eigen::Matrix3d R = test::test_rotation();
    const TriMesh moved = test::transformed(torus, R, Vec3(0.3, -1.2, 2.0));
    const ScalarField f = field_of(torus, [](const Vec3& p) { return std::sin(3 * p.x()) + p.y() * p.z(); });
    const ScalarField g(f.values, moved.fingerprint());
    const NeighborhoodSpec spec = default_jet_spec(4);
    double worst = 0.0;
    for (int v = 0; v < torus.num_vertices(); v += 5) {
        const JetFit ha = fit_height(torus, v, 4, spec), hb = fit_height(moved, v, 4, spec);
        const GeometricInvariants a = invariants_from_fit(ha), b = invariants_from_fit(hb);
        const SurfaceDifferentials da = surface_differentials(ha, fit_scalar(torus, v, 4, f, spec));
        const SurfaceDifferentials db = surface_differentials(hb, fit_scalar(moved, v, 4, g, spec));
        worst = std::max({worst, std::abs(a.gaussian - b.gaussian), std::abs(a.mean - b.mean),
                          (R * a.normal - b.normal).norm(), std::abs(da.laplacian - db.laplacian),
                          (R * da.gradient - db.gradient).norm()});
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("high-order operator")
{
    // Interior rows of the degree-4 operator are exact on quartics in the plane.
    const TriMesh grid = test::planar_grid(12, 1.0 / 12.0);
    const SparseOperator op = assemble_highorder_laplacian(grid, 4, default_jet_spec(4), BoundaryMode::interior_rows);
    std::vector<double> f, ones(static_cast<std::size_t>(grid.num_vertices()), 1.0);
    for (const Vec3& p : grid.vertices()) f.push_back(std::pow(p.x(), 4) + p.x() * std::pow(p.y(), 3) - 2 * p.y() * p.y());
    const std::vector<double> lf = apply_operator(op, f);
    const std::vector<double> l1 = apply_operator(op, ones);
    for (int v = 0; v < grid.num_vertices(); ++v) {
        if (grid.is_boundary(v)) continue;
        const Vec3 p = grid.vertex(v);
        const double exact = 12 * p.x() * p.x() + 6 * p.x() * p.y() - 4.0;
        CHECK(std::abs(lf[static_cast<std::size_t>(v)] - exact) <= 1e-7);
        CHECK(std::abs(l1[static_cast<std::size_t>(v)]) <= 1e-9);
        CHECK(op.row_meta[static_cast<std::size_t>(v)].omega == 1.0);
    }

    // On the sphere it beats the first-order operator on z.
    const TriMesh s = generate_mesh(SurfaceKind::sphere, {}, 0.1);
    std::vector<double> z;
    for (const Vec3& p : s.vertices()) z.push_back(p.z());
    const auto error = [&](const SparseOperator& o) {
        const std::vector<double> out = apply_operator(o, z);
        double e = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) e = std::max(e, std::abs(out[i] + 2.0 * z[i]));
        return e;
    };
    CHECK(error(assemble_highorder_laplacian(s, 4, default_jet_spec(4))) < 0.1 * error(assemble_laplacian(s, {2, 5})));
}

TEST_CASE("argument checks")
{
    const TriMesh grid = test::planar_grid(6, 0.2);
    const JetFit fit = fit_height(grid, 24, 2, default_jet_spec(2));
    CHECK_THROWS_AS(fit.derivative(3, 0), Error);
    CHECK_THROWS_AS(fit.derivative(0, 0), Error);
    CHECK_THROWS_AS(fit_height(grid, 24, 1, default_jet_spec(2)), Error);
    CHECK_THROWS_AS(assemble_highorder_laplacian(grid, 1, default_jet_spec(2)), Error);
    const JetFit other = fit_height(grid, 25, 2, default_jet_spec(2));
    CHECK_THROWS_AS(surface_differentials(fit, other), Error);
    const TriMesh tri({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}});
    CHECK_THROWS_AS(fit_height(tri, 0, 2, default_jet_spec(2)), AssemblyError);
}
