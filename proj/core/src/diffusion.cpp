// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/diffusion.hpp>
#include <ltl/errors.hpp>

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace ltl {

namespace {

constexpr double implicit_tolerance = 1e-10;
constexpr double divergence_factor = 1e6;
constexpr int max_refinement_passes = 3;

double max_norm(std::span<const double> u)
{
    double m = 0.0;
    for (double x : u) m = std::max(m, std::abs(x));
    return m;
}

void check_growth(std::span<const double> u, double initial, int step)
{
    const double now = max_norm(u);
    // A zero start is bounded by 1 so that pure forcing is not flagged.
    if (!std::isfinite(now) || now > divergence_factor * std::max(initial, 1.0)) {
        std::ostringstream msg;
        msg << "diffusion diverged at step " << step << ": |u| = " << now << ", initial " << initial;
        throw SolverError(msg.str());
    }
}

} // namespace

TimeScheme parse_time_scheme(std::string_view name)
{
    if (name == "explicit") return TimeScheme::explicit_euler;
    if (name == "implicit") return TimeScheme::implicit_euler;
    throw Error("unknown time scheme '" + std::string(name) + "'");
}

double explicit_step_bound(const SparseOperator& op)
{
    double d = 0.0;
    for (int r = 0; r < op.dim(); ++r) d = std::max(d, std::abs(op.matrix.coeff(r, r)));
    if (!(d > 0.0)) throw SolverError("explicit_step_bound: operator has a zero diagonal");
    return 2.0 / d;
}

std::vector<double> diffusion_solve(const SparseOperator& op, std::span<const double> u0, std::span<const double> f,
                                    double dt, int steps, TimeScheme scheme)
{
    if (static_cast<int>(u0.size()) != op.dim() || static_cast<int>(f.size()) != op.dim())
        throw Error("diffusion_solve: field length does not match the operator");
    if (!(dt > 0.0)) throw Error("diffusion_solve: dt must be positive");
    if (steps < 1) throw Error("diffusion_solve: steps must be positive");

    const auto n = static_cast<Eigen::Index>(u0.size());
    Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(u0.data(), n);
    const Eigen::VectorXd force = Eigen::Map<const Eigen::VectorXd>(f.data(), n);
    const double initial = max_norm(u0);

    if (scheme == TimeScheme::explicit_euler) {
        const double bound = explicit_step_bound(op);
        if (!(dt < bound)) {
            std::ostringstream msg;
            msg << "explicit step " << dt << " is not below the stability bound " << bound;
            throw SolverError(msg.str());
        }
        for (int s = 1; s <= steps; ++s) {
            const Eigen::VectorXd lu = op.matrix * u;
            u += dt * (lu + force);
            check_growth(std::span<const double>(u.data(), static_cast<std::size_t>(n)), initial, s);
        }
    } else {
        Eigen::SparseMatrix<double> system(n, n);
        system.setIdentity();
        system -= dt * Eigen::SparseMatrix<double>(op.matrix);
        system.makeCompressed();
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(system);
        if (lu.info() != Eigen::Success) throw SolverError("implicit diffusion: factorization failed");
        double a_norm = 0.0; // infinity norm of the system matrix
        {
            const Eigen::SparseMatrix<double, Eigen::RowMajor> rows(system);
            for (Eigen::Index r = 0; r < rows.rows(); ++r) a_norm = std::max(a_norm, rows.row(r).cwiseAbs().sum());
        }
        for (int s = 1; s <= steps; ++s) {
            const Eigen::VectorXd rhs = u + dt * force;
            Eigen::VectorXd next = lu.solve(rhs);
            // Normwise backward error: large steps make |A| |x| much bigger
            // than |b|, and no solver gets |Ax - b| / |b| below eps |A| |x| / |b|.
            const auto backward_error = [&](const Eigen::VectorXd& x) {
                const double scale = a_norm * x.lpNorm<Eigen::Infinity>() + rhs.lpNorm<Eigen::Infinity>();
                return (system * x - rhs).lpNorm<Eigen::Infinity>() / std::max(scale, 1e-300);
            };
            double res = backward_error(next);
            for (int pass = 0; pass < max_refinement_passes && lu.info() == Eigen::Success && !(res <= implicit_tolerance);
                 ++pass) {
                next += lu.solve(rhs - system * next);
                res = backward_error(next);
            }
            if (lu.info() != Eigen::Success || !(res <= implicit_tolerance)) {
                std::ostringstream msg;
                msg << "implicit diffusion: linear solve residual " << res << " at step " << s;
                throw SolverError(msg.str());
            }
            u = std::move(next);
            check_growth(std::span<const double>(u.data(), static_cast<std::size_t>(n)), initial, s);
        }
    }
    return {u.data(), u.data() + n};
}

} // namespace ltl
