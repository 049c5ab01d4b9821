// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/analytic.hpp>
#include <ltl/errors.hpp>

#include <algorithm>
#include <cmath>

namespace ltl::analytic {

namespace {

double param(const MeshParams& params, const char* key, double fallback)
{
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

// Graph z = h(x, y) with first and second derivatives at a point.
SurfacePoint graph_point(double hx, double hy, double hxx, double hxy, double hyy)
{
    const double w2 = 1.0 + hx * hx + hy * hy;
    const double w = std::sqrt(w2);
    SurfacePoint s;
    s.normal = Vec3(-hx, -hy, 1.0) / w;
    s.gaussian = (hxx * hyy - hxy * hxy) / (w2 * w2);
    s.mean = ((1.0 + hx * hx) * hyy - 2.0 * hx * hy * hxy + (1.0 + hy * hy) * hxx) / (2.0 * w2 * w);
    return s;
}

} // namespace

double sphere_eigenvalue(int n)
{
    return -static_cast<double>(n) * (n + 1);
}

std::vector<double> hemisphere_dirichlet_eigenvalues(int count)
{
    std::vector<double> out;
    for (int n = 1; static_cast<int>(out.size()) < count; ++n)
        for (int m = 0; m < n && static_cast<int>(out.size()) < count; ++m) out.push_back(sphere_eigenvalue(n));
    return out;
}

std::vector<std::vector<double>> sphere_harmonics(const TriMesh& mesh, int n, const std::vector<int>& vertices)
{
    if (n < 0 || n > 3) throw Error("sphere_harmonics: degree must be in [0, 3]");
    std::vector<int> ids = vertices;
    if (ids.empty()) {
        ids.resize(static_cast<std::size_t>(mesh.num_vertices()));
        for (int v = 0; v < mesh.num_vertices(); ++v) ids[static_cast<std::size_t>(v)] = v;
    }

    const int count = 2 * n + 1;
    std::vector<std::vector<double>> basis(static_cast<std::size_t>(count), std::vector<double>(ids.size()));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const Vec3& p = mesh.vertex(ids[i]);
        const double x = p.x(), y = p.y(), z = p.z();
        const double r2 = x * x + y * y;
        double values[7] = {};
        switch (n) {
        case 0: values[0] = 1.0; break;
        case 1:
            values[0] = x;
            values[1] = y;
            values[2] = z;
            break;
        case 2:
            values[0] = x * y;
            values[1] = y * z;
            values[2] = z * x;
            values[3] = x * x - y * y;
            values[4] = 2.0 * z * z - r2;
            break;
        default:
            values[0] = x * (x * x - 3.0 * y * y);
            values[1] = y * (3.0 * x * x - y * y);
            values[2] = x * y * z;
            values[3] = z * (x * x - y * y);
            values[4] = x * (4.0 * z * z - r2);
            values[5] = y * (4.0 * z * z - r2);
            values[6] = z * (2.0 * z * z - 3.0 * r2);
            break;
        }
        for (int k = 0; k < count; ++k) basis[static_cast<std::size_t>(k)][i] = values[k];
    }
    return basis;
}

SurfacePoint sphere_point(const Vec3& p)
{
    const double r = p.norm();
    if (!(r > 0.0)) throw Error("sphere_point: point at the origin");
    return SurfacePoint{p / r, 1.0 / (r * r), 1.0 / r};
}

SurfacePoint torus_point(const Vec3& p, double center_radius, double tube_radius)
{
    const double rho = std::hypot(p.x(), p.y());
    if (!(rho > 0.0)) throw Error("torus_point: point on the symmetry axis");
    const double cos_v = (rho - center_radius) / tube_radius;
    const double a = tube_radius;
    const double c = center_radius;
    SurfacePoint s;
    s.normal = Vec3(cos_v * p.x() / rho, cos_v * p.y() / rho, p.z() / a).normalized();
    s.gaussian = cos_v / (a * (c + a * cos_v));
    s.mean = (c + 2.0 * a * cos_v) / (2.0 * a * (c + a * cos_v));
    return s;
}

SurfacePoint dumbbell_point(const Vec3& p)
{
    // r(v)^2 = a cos 2v + sqrt(1 - b sin^2 2v), v the polar angle.
    constexpr double a = 0.81;
    constexpr double b = 0.6561;
    const double len = p.norm();
    if (!(len > 0.0)) throw Error("dumbbell_point: point at the origin");
    const double v = std::acos(std::clamp(p.z() / len, -1.0, 1.0));
    const double u = std::atan2(p.y(), p.x());

    const double s2 = std::sin(2.0 * v), c2 = std::cos(2.0 * v);
    const double s4 = std::sin(4.0 * v), c4 = std::cos(4.0 * v);
    const double q = 1.0 - b * s2 * s2;
    const double sq = std::sqrt(q);
    const double f = a * c2 + sq;
    const double f1 = -2.0 * a * s2 - b * s4 / sq;
    const double f2 = -4.0 * a * c2 - 4.0 * b * c4 / sq - b * b * s4 * s4 / (q * sq);
    const double r = std::sqrt(f);
    const double r1 = f1 / (2.0 * r);
    const double r2 = f2 / (2.0 * r) - f1 * f1 / (4.0 * r * r * r);

    const double sv = std::sin(v), cv = std::cos(v);
    const double rho = r * sv;
    const double rho1 = r1 * sv + r * cv;
    const double rho2 = r2 * sv + 2.0 * r1 * cv - r * sv;
    const double z1 = r1 * cv - r * sv;
    const double z2 = r2 * cv - 2.0 * r1 * sv - r * cv;
    const double speed = std::hypot(rho1, z1);

    const double k_meridian = (rho1 * z2 - rho2 * z1) / (speed * speed * speed);
    // At the poles the surface is umbilic.
    const double k_parallel = std::abs(sv) > 1e-12 ? z1 / (rho * speed) : k_meridian;

    SurfacePoint s;
    s.normal = Vec3(-z1 * std::cos(u), -z1 * std::sin(u), rho1) / speed;
    if (std::abs(sv) <= 1e-12) s.normal = Vec3(0.0, 0.0, cv > 0.0 ? 1.0 : -1.0);
    s.gaussian = k_meridian * k_parallel;
    s.mean = -0.5 * (k_meridian + k_parallel);
    return s;
}

SurfacePoint wave_point(const Vec3& p)
{
    const double x = p.x(), y = p.y();
    const double sx = std::sin(x), cx = std::cos(x), sy = std::sin(y), cy = std::cos(y);
    return graph_point(cx * cy, -sx * sy, -sx * cy, -cx * sy, -sx * cy);
}

SurfacePoint surface_point(SurfaceKind kind, const Vec3& p, const MeshParams& params)
{
    switch (kind) {
    case SurfaceKind::sphere:
    case SurfaceKind::hemisphere: return sphere_point(p);
    case SurfaceKind::torus: {
        const double inner = param(params, "inner", 0.5);
        const double outer = param(params, "outer", 1.0);
        return torus_point(p, 0.5 * (inner + outer), 0.5 * (outer - inner));
    }
    case SurfaceKind::dumbbell: return dumbbell_point(p);
    case SurfaceKind::wave: return wave_point(p);
    }
    throw Error("surface_point: unknown surface");
}

double wave_field(double u, double v)
{
    const double c = std::cos(v);
    return std::exp(0.5 * std::sin(u) + c * c * c);
}

double wave_field_laplacian(double u, double v)
{
    const double su = std::sin(u), cu = std::cos(u), sv = std::sin(v), cv = std::cos(v);

    // Height h = sin u cos v.
    const double hu = cu * cv, hv = -su * sv;
    const double huu = -su * cv, huv = -cu * sv, hvv = -su * cv;

    // F = exp(g).
    const double f = wave_field(u, v);
    const double gu = 0.5 * cu;
    const double gv = -3.0 * cv * cv * sv;
    const double guu = -0.5 * su;
    const double gvv = 6.0 * cv * sv * sv - 3.0 * cv * cv * cv;
    const double fu = f * gu, fv = f * gv;
    const double fuu = f * (guu + gu * gu), fuv = f * gu * gv, fvv = f * (gvv + gv * gv);

    // g^{ij} = delta_ij - h_i h_j / W; Christoffel symbols h_k h_ij / W.
    const double w = 1.0 + hu * hu + hv * hv;
    const double g11 = 1.0 - hu * hu / w, g12 = -hu * hv / w, g22 = 1.0 - hv * hv / w;
    const double trace_f = g11 * fuu + 2.0 * g12 * fuv + g22 * fvv;
    const double trace_h = g11 * huu + 2.0 * g12 * huv + g22 * hvv;
    return trace_f - trace_h * (hu * fu + hv * fv) / w;
}

} // namespace ltl::analytic
