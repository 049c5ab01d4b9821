// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/spectral.hpp>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace ltl {

namespace {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Indices of `values` ordered by magnitude, then by imaginary part.
std::vector<int> magnitude_order(const CVector& values)
{
    std::vector<int> idx(static_cast<std::size_t>(values.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double ma = std::abs(values[a]);
        const double mb = std::abs(values[b]);
        if (ma != mb) return ma < mb;
        return values[a].imag() < values[b].imag();
    });
    return idx;
}

// Residual |A x - lambda x| / |x| with a plain sparse product.
double pair_residual(const SparseOperator::Matrix& a, const CVector& x, std::complex<double> lambda)
{
    const Eigen::VectorXd re = x.real();
    const Eigen::VectorXd im = x.imag();
    const CVector ax = (a * re).cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * (a * im);
    return (ax - lambda * x).norm() / x.norm();
}

EigenResult finalize(const SparseOperator& op, const CVector& values, const CMatrix& vectors,
                     const std::vector<int>& order, int count, const EigenOptions& options)
{
    EigenResult out;
    for (int k = 0; k < count; ++k) {
        const int i = order[static_cast<std::size_t>(k)];
        CVector x = vectors.col(i);
        out.eigenvalues.push_back(values[i]);
        out.residuals.push_back(pair_residual(op.matrix, x, values[i]));

        const Eigen::VectorXd a = x.real();
        const Eigen::VectorXd b = x.imag();
        const double theta = 0.5 * std::atan2(-2.0 * a.dot(b), a.squaredNorm() - b.squaredNorm());
        x *= std::polar(1.0, theta);
        const double total = x.norm();
        Eigen::VectorXd re = x.real();
        out.vector_imag.push_back(total > 0.0 ? x.imag().norm() / total : 0.0);
        const double rn = re.norm();
        if (rn > 0.0) re /= rn;
        // Fix the sign so that the largest-magnitude entry is positive.
        Eigen::Index arg = 0;
        re.cwiseAbs().maxCoeff(&arg);
        if (re.size() > 0 && re[arg] < 0.0) re = -re;
        out.eigenvectors.emplace_back(re.data(), re.data() + re.size());
    }
    // Magnitude order and real order can disagree by rounding inside a
    // cluster; cluster in real order and map the members back.
    const std::vector<double> reals = out.real_values();
    std::vector<int> by_real(reals.size());
    std::iota(by_real.begin(), by_real.end(), 0);
    std::stable_sort(by_real.begin(), by_real.end(), [&](int a, int b) {
        return reals[static_cast<std::size_t>(a)] > reals[static_cast<std::size_t>(b)];
    });
    std::vector<double> sorted;
    for (int i : by_real) sorted.push_back(reals[static_cast<std::size_t>(i)]);
    out.clusters = cluster_eigenvalues(sorted, options.cluster_abs_tol, options.cluster_rel_tol);
    for (auto& c : out.clusters)
        for (int& m : c.members) m = by_real[static_cast<std::size_t>(m)];
    out.converged = std::all_of(out.residuals.begin(), out.residuals.end(),
                                [&](double r) { return r <= options.tolerance; });
    return out;
}

EigenResult dense_eigenpairs(const SparseOperator& op, int count, const EigenOptions& options)
{
    const Eigen::MatrixXd dense(op.matrix);
    Eigen::EigenSolver<Eigen::MatrixXd> es(dense, true);
    if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    const CVector values = es.eigenvalues();
    const CMatrix vectors = es.eigenvectors();
    EigenResult out = finalize(op, values, vectors, magnitude_order(values), count, options);
    out.iterations = 1;
    return out;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& z)
{
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    return qr.householderQ() * Eigen::MatrixXd::Identity(z.rows(), z.cols());
}

EigenResult subspace_eigenpairs(const SparseOperator& op, int count, int block, const EigenOptions& options)
{
    const Eigen::Index n = op.dim();
    Eigen::SparseMatrix<double> shifted(op.matrix);
    Eigen::SparseMatrix<double> eye(n, n);
    eye.setIdentity();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    double shift = options.shift;
    for (int attempt = 0; attempt < 3; ++attempt) {
        Eigen::SparseMatrix<double> m = shifted - shift * eye;
        m.makeCompressed();
        lu.compute(m);
        if (lu.info() == Eigen::Success) break;
        shift = shift * 1.37 + 1e-3;
    }
    if (lu.info() != Eigen::Success) throw SolverError("shift-invert factorization failed");

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd q(n, block);
    for (Eigen::Index j = 0; j < block; ++j)
        for (Eigen::Index i = 0; i < n; ++i) q(i, j) = normal(rng);
    q = orthonormalize(q);

    EigenResult best;
    double best_worst = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= options.max_iterations; ++it) {
        const Eigen::MatrixXd z = lu.solve(q);
        if (lu.info() != Eigen::Success) throw SolverError("shift-invert solve failed");
        q = orthonormalize(z);

        const Eigen::MatrixXd aq = op.matrix * q;
        const Eigen::MatrixXd h = q.transpose() * aq;
        Eigen::EigenSolver<Eigen::MatrixXd> es(h, true);
        if (es.info() != Eigen::Success) continue;
        const CVector theta = es.eigenvalues();
        const CMatrix y = es.eigenvectors();
        const std::vector<int> order = magnitude_order(theta);

        double worst = 0.0;
        for (int k = 0; k < count; ++k) {
            const int i = order[static_cast<std::size_t>(k)];
            const CVector yi = y.col(i);
            const CVector r = aq.cast<std::complex<double>>() * yi - theta[i] * (q.cast<std::complex<double>>() * yi);
            worst = std::max(worst, r.norm() / yi.norm());
        }
        // Ritz residuals are cheap to track; the reported ones are recomputed
        // from the assembled vectors in `finalize`.
        if (worst < best_worst || worst <= options.tolerance || it == options.max_iterations) {
            const CMatrix x = q.cast<std::complex<double>>() * y;
            EigenResult candidate = finalize(op, theta, x, order, count, options);
            candidate.iterations = it;
            if (candidate.converged || worst < best_worst) {
                best = std::move(candidate);
                best_worst = worst;
            }
            if (best.converged) return best;
        }
    }
    return best;
}

} // namespace

double EigenResult::residual_max() const
{
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
}

double EigenResult::im_leakage_max() const
{
    double m = 0.0;
    for (const auto& l : eigenvalues)
        if (std::abs(l) > 1e-8) m = std::max(m, std::abs(l.imag()) / std::abs(l));
    return m;
}

std::vector<double> EigenResult::real_values() const
{
    std::vector<double> out;
    out.reserve(eigenvalues.size());
    for (const auto& l : eigenvalues) out.push_back(l.real());
    return out;
}

EigenResult eigenpairs(const SparseOperator& op, int count, const EigenOptions& options)
{
    const int n = op.dim();
    if (count < 1 || count > n) {
        std::ostringstream msg;
        msg << "eigenpairs: count " << count << " outside [1, " << n << "]";
        throw Error(msg.str());
    }
    const int block = std::min(n, std::max(2 * count + 10, count + 20));
    if (n <= options.dense_limit || 2 * block > n) return dense_eigenpairs(op, count, options);
    return subspace_eigenpairs(op, count, block, options);
}

std::vector<EigenCluster> cluster_eigenvalues(std::span<const double> values, double abs_tol, double rel_tol)
{
    if (!(abs_tol > 0.0) || !(rel_tol >= 0.0)) throw Error("cluster_eigenvalues: tolerances must be positive");
    const bool ascending = std::is_sorted(values.begin(), values.end());
    const bool descending = std::is_sorted(values.begin(), values.end(), std::greater<>());
    if (!ascending && !descending) throw Error("cluster_eigenvalues: values must be sorted");

    std::vector<EigenCluster> clusters;
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!clusters.empty()) {
            auto& c = clusters.back();
            const double mean = sum / c.multiplicity();
            if (std::abs(v - values[i - 1]) <= std::max(abs_tol, rel_tol * std::abs(mean))) {
                c.members.push_back(static_cast<int>(i));
                sum += v;
                c.value = sum / c.multiplicity();
                continue;
            }
        }
        clusters.push_back(EigenCluster{v, {static_cast<int>(i)}});
        sum = v;
    }
    return clusters;
}

std::vector<EigenCluster> nonzero_clusters(const std::vector<EigenCluster>& clusters, double zero_tol)
{
    std::vector<EigenCluster> out;
    for (const auto& c : clusters)
        if (std::abs(c.value) > zero_tol) out.push_back(c);
    return out;
}

double subspace_align_error(const std::vector<std::vector<double>>& reference,
                            const std::vector<std::vector<double>>& computed)
{
    if (reference.empty() || computed.empty()) throw Error("subspace_align_error: empty basis");
    const std::size_t n = reference.front().size();
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(reference.size()));
    for (std::size_t j = 0; j < reference.size(); ++j) {
        if (reference[j].size() != n) throw Error("subspace_align_error: dimension mismatch");
        basis.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(reference[j].data(),
                                                                                    static_cast<Eigen::Index>(n));
    }
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(basis);

    double worst = 0.0;
    for (const auto& c : computed) {
        if (c.size() != n) throw Error("subspace_align_error: dimension mismatch");
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(n));
        const double scale = x.lpNorm<Eigen::Infinity>();
        if (!(scale > 0.0)) throw Error("subspace_align_error: zero computed vector");
        x /= scale;
        const Eigen::VectorXd beta = cod.solve(x);
        worst = std::max(worst, (basis * beta - x).lpNorm<Eigen::Infinity>());
    }
    return worst;
}

} // namespace ltl
