// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/stencil.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ltl {

namespace {

// Stencils whose scaled normalizer falls below this are treated as zero.
constexpr double normalizer_tolerance = 1e-10;

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double max_radius(std::span<const Vec2> coords)
{
    double r = 0.0;
    for (const auto& p : coords) r = std::max(r, p.norm());
    return r;
}

struct PinvResult
{
    Eigen::MatrixXd pinv;
    int rank = 0;
    Eigen::VectorXd singular_values;
};

PinvResult compute_pinv(const Eigen::MatrixXd& a)
{
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    PinvResult out;
    out.singular_values = s;
    const double smax = s.size() > 0 ? s[0] : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    if (smax > 0.0) {
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            if (s[i] > pinv_rank_tolerance * smax) {
                inv[i] = 1.0 / s[i];
                ++out.rank;
            }
        }
    }
    out.pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    return out;
}

double relative_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b)
{
    const double scale = std::max(b.lpNorm<Eigen::Infinity>(), 1e-300);
    return (a * x - b).lpNorm<Eigen::Infinity>() / scale;
}

[[noreturn]] void reject(StencilRejected::Reason reason, const char* what, double value)
{
    std::ostringstream msg;
    msg << what << " (" << value << ")";
    throw StencilRejected(reason, msg.str());
}

StencilWeights first_order(std::span<const Vec2> coords, StencilKind kind)
{
    if (coords.empty()) throw StencilRejected(StencilRejected::Reason::too_few_points, "empty stencil");
    const double rho = max_radius(coords);
    if (!(rho > 0.0)) throw StencilRejected(StencilRejected::Reason::too_few_points, "all points at the origin");

    const auto n = static_cast<Eigen::Index>(coords.size());
    Eigen::MatrixXd a(5, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = coords[static_cast<std::size_t>(i)].x() / rho;
        const double y = coords[static_cast<std::size_t>(i)].y() / rho;
        a(0, i) = x;
        a(1, i) = y;
        a(2, i) = x * y;
        a(3, i) = x * x - y * y;
        a(4, i) = 1.0;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(5);
    b[4] = 1.0;

    const PinvResult p = compute_pinv(a);
    const Eigen::VectorXd alpha = p.pinv * b;
    const double res = relative_residual(a, alpha, b);
    if (!(res <= stencil_residual_tolerance))
        reject(StencilRejected::Reason::rank_deficient, "first-order configuration system is inconsistent", res);

    double scaled_norm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) scaled_norm += alpha[i] * a(0, i) * a(0, i);
    if (!(std::abs(scaled_norm) > normalizer_tolerance))
        reject(StencilRejected::Reason::zero_normalizer, "first-order stencil has a vanishing normalizer", scaled_norm);

    StencilWeights w;
    w.weights.assign(alpha.data(), alpha.data() + n);
    w.normalizer = scaled_norm * rho * rho;
    w.kind = kind;
    w.residual = res;
    return w;
}

} // namespace

MomentTarget MomentTarget::laplacian(int degree)
{
    if (degree < 2) throw Error("moment system degree must be >= 2");
    MomentTarget t;
    t.degree = degree;
    t.target.assign(static_cast<std::size_t>(monomial_index(0, degree) + 1), 0.0);
    t.target[static_cast<std::size_t>(monomial_index(2, 0))] = 1.0;
    t.target[static_cast<std::size_t>(monomial_index(0, 2))] = 1.0;
    return t;
}

MomentTarget MomentTarget::unit(int degree, int px, int py)
{
    if (px < 0 || py < 0 || px + py < 1 || px + py > degree)
        throw Error("MomentTarget::unit: monomial outside the degree range");
    MomentTarget t;
    t.degree = degree;
    t.target.assign(static_cast<std::size_t>(monomial_index(0, degree) + 1), 0.0);
    t.target[static_cast<std::size_t>(monomial_index(px, py))] = 1.0;
    return t;
}

void MomentTarget::validate() const
{
    if (degree < 2) throw Error("moment system degree must be >= 2");
    const auto rows = static_cast<std::size_t>(monomial_index(0, degree) + 1);
    if (target.size() != rows) throw Error("moment target length does not match its degree");
    if (std::all_of(target.begin(), target.end(), [](double t) { return t == 0.0; }))
        throw Error("moment target is identically zero");
}

Eigen::VectorXd MomentSystem::monomials(const Vec2& p, int degree)
{
    Eigen::VectorXd m(monomial_index(0, degree) + 1);
    for (int d = 1; d <= degree; ++d) {
        for (int k = 0; k <= d; ++k) {
            m[monomial_index(d - k, k)] =
                std::pow(p.x(), d - k) * std::pow(p.y(), k) / (factorial(d - k) * factorial(k));
        }
    }
    return m;
}

MomentSystem::MomentSystem(std::span<const Vec2> coords, int degree)
    : m_degree(degree)
{
    if (degree < 2) throw Error("moment system degree must be >= 2");
    if (coords.empty()) throw StencilRejected(StencilRejected::Reason::too_few_points, "empty stencil");
    m_radius = max_radius(coords);
    if (!(m_radius > 0.0)) throw StencilRejected(StencilRejected::Reason::too_few_points, "all points at the origin");

    const int rows = monomial_index(0, degree) + 1;
    const auto n = static_cast<Eigen::Index>(coords.size());
    m_scaled.resize(rows, n);
    for (Eigen::Index i = 0; i < n; ++i)
        m_scaled.col(i) = monomials(coords[static_cast<std::size_t>(i)] / m_radius, degree);

    m_row_scale.resize(rows);
    for (int d = 1; d <= degree; ++d)
        for (int k = 0; k <= d; ++k) m_row_scale[monomial_index(d - k, k)] = std::pow(m_radius, d);

    PinvResult p = compute_pinv(m_scaled);
    m_rank = p.rank;
    const Eigen::Index full = std::min<Eigen::Index>(rows, n);
    m_condition = (rows <= n && p.singular_values[full - 1] > 0.0)
                      ? p.singular_values[0] / p.singular_values[full - 1]
                      : std::numeric_limits<double>::infinity();
    m_pinv = std::move(p.pinv) * m_row_scale.cwiseInverse().asDiagonal();
}

Eigen::VectorXd MomentSystem::solve(const Eigen::VectorXd& target) const
{
    if (target.size() != m_scaled.rows()) throw Error("MomentSystem::solve: target length mismatch");
    return m_pinv * target;
}

double MomentSystem::residual(const Eigen::VectorXd& weights, const Eigen::VectorXd& target) const
{
    const Eigen::VectorXd scaled_target = target.cwiseQuotient(m_row_scale);
    return relative_residual(m_scaled, weights, scaled_target);
}

StencilWeights laplace_stencil(std::span<const Vec2> coords)
{
    return first_order(coords, StencilKind::laplace_first_order);
}

StencilWeights product_stencil(std::span<const Vec2> coords)
{
    return first_order(coords, StencilKind::product_rule);
}

StencilWeights moment_stencil(std::span<const Vec2> coords, const MomentTarget& target)
{
    target.validate();
    const MomentSystem system(coords, target.degree);
    const Eigen::VectorXd t = Eigen::Map<const Eigen::VectorXd>(target.target.data(),
                                                                static_cast<Eigen::Index>(target.target.size()));
    const Eigen::VectorXd w = system.solve(t);
    const double res = system.residual(w, t);
    if (!(res <= stencil_residual_tolerance))
        reject(StencilRejected::Reason::rank_deficient, "moment system is inconsistent", res);

    StencilWeights out;
    out.weights.assign(w.data(), w.data() + w.size());
    out.normalizer = 1.0;
    out.kind = StencilKind::moment_general;
    out.residual = res;
    return out;
}

double apply_laplace_stencil(const StencilWeights& w, std::span<const double> values, double center)
{
    if (values.size() != w.weights.size()) throw Error("apply_laplace_stencil: value count mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += w.weights[i] * (values[i] - center);
    if (w.kind == StencilKind::moment_general) return sum;
    return 2.0 * sum / w.normalizer;
}

double apply_product_stencil(const StencilWeights& w, std::span<const double> f_values, double f_center,
                             std::span<const double> g_values, double g_center)
{
    if (f_values.size() != w.weights.size() || g_values.size() != w.weights.size())
        throw Error("apply_product_stencil: value count mismatch");
    if (w.kind == StencilKind::moment_general) throw Error("apply_product_stencil: needs a first-order stencil");
    double sum = 0.0;
    for (std::size_t i = 0; i < f_values.size(); ++i)
        sum += w.weights[i] * (f_values[i] - f_center) * (g_values[i] + g_center);
    return sum / w.normalizer;
}

} // namespace ltl
