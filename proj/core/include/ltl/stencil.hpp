// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/mesh.hpp>

#include <Eigen/Core>

#include <span>
#include <vector>

namespace ltl {

enum class StencilKind { laplace_first_order, product_rule, moment_general };

/// Per-vertex configuration coefficients, one per lifted neighbor.
struct StencilWeights
{
    std::vector<double> weights;
    /// sum_j w_j x_j^2 for the first-order forms, 1 for moment_general.
    double normalizer = 1.0;
    StencilKind kind = StencilKind::moment_general;
    /// Largest violation of the configuration rows, relative to the target
    /// and measured in coordinates scaled to unit radius.
    double residual = 0.0;
};

/// Singular values below this fraction of the largest are treated as zero.
inline constexpr double pinv_rank_tolerance = 1e-12;
/// Stencils whose scaled residual exceeds this are rejected.
inline constexpr double stencil_residual_tolerance = 1e-6;

/// Position of the monomial x^px y^py / (px! py!) in the degree-ordered
/// list x, y, x^2/2, xy, y^2/2, x^3/6, ... (constant term excluded).
constexpr int monomial_index(int px, int py)
{
    const int d = px + py;
    return d * (d + 1) / 2 - 1 + py;
}

/// Right-hand side of a degree-k moment system.
struct MomentTarget
{
    int degree = 2;
    std::vector<double> target;

    /// 1 on x^2/2 and y^2/2: weights then evaluate the Laplacian.
    static MomentTarget laplacian(int degree);
    /// 1 on the single monomial x^px y^py / (px! py!).
    static MomentTarget unit(int degree, int px, int py);

    void validate() const;
};

///
/// Monomial moment matrix over lifted coordinates, solved with the
/// minimal-norm pseudo-inverse.
///
/// Row r holds the r-th monomial evaluated at every point; column i belongs
/// to point i. Coordinates are divided by the largest point radius before
/// the SVD and the result mapped back, so the weights solve the unscaled
/// system.
///
class MomentSystem
{
public:
    MomentSystem(std::span<const Vec2> coords, int degree);

    int degree() const { return m_degree; }
    int num_rows() const { return static_cast<int>(m_scaled.rows()); }
    int num_points() const { return static_cast<int>(m_scaled.cols()); }
    int rank() const { return m_rank; }
    double radius() const { return m_radius; }
    /// Ratio of the largest to the num_rows()-th singular value of the scaled
    /// matrix; infinite when the rows are dependent.
    double condition() const { return m_condition; }

    /// Minimal-norm weights for an unscaled right-hand side.
    Eigen::VectorXd solve(const Eigen::VectorXd& target) const;
    /// Scaled relative residual of `weights` against `target`.
    double residual(const Eigen::VectorXd& weights, const Eigen::VectorXd& target) const;

    /// Unscaled pseudo-inverse P (points x rows): weights = P * target.
    const Eigen::MatrixXd& pseudo_inverse() const { return m_pinv; }

    /// Monomial values of a single point, unscaled.
    static Eigen::VectorXd monomials(const Vec2& p, int degree);

private:
    int m_degree;
    double m_radius = 1.0;
    int m_rank = 0;
    double m_condition = 0.0;
    Eigen::MatrixXd m_scaled;     // rows x points, coordinates / radius
    Eigen::VectorXd m_row_scale;  // radius^d per row
    Eigen::MatrixXd m_pinv;       // unscaled
};

/// First-order Laplace configuration: rows x, y, xy, x^2 - y^2, 1 with right
/// side (0, 0, 0, 0, 1). Throws StencilRejected when the system cannot be
/// met or the normalizer vanishes.
StencilWeights laplace_stencil(std::span<const Vec2> coords);

/// Same system as `laplace_stencil`, tagged for the weighted divergence form.
StencilWeights product_stencil(std::span<const Vec2> coords);

/// Full degree-k moment system with the given right side.
StencilWeights moment_stencil(std::span<const Vec2> coords, const MomentTarget& target);

/// laplace_first_order / product_rule: 2 sum w_j (f_j - f_0) / normalizer.
/// moment_general: sum w_j (f_j - f_0).
double apply_laplace_stencil(const StencilWeights& w, std::span<const double> values, double center);

/// sum beta_j (f_j - f_0)(g_j + g_0) / normalizer.
double apply_product_stencil(const StencilWeights& w, std::span<const double> f_values, double f_center,
                             std::span<const double> g_values, double g_center);

} // namespace ltl
