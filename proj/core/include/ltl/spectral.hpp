// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/operator.hpp>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ltl {

struct EigenCluster
{
    double value = 0.0;       // mean of the members' real parts
    std::vector<int> members; // indices into EigenResult::eigenvalues
    int multiplicity() const { return static_cast<int>(members.size()); }
};

struct EigenResult
{
    /// Sorted by ascending magnitude.
    std::vector<std::complex<double>> eigenvalues;
    /// Real part of each eigenvector after the phase rotation that maximizes
    /// it, scaled to unit 2-norm. Indexed like the operator (reduced under
    /// dirichlet_zero).
    std::vector<std::vector<double>> eigenvectors;
    /// |Im x| / |x| of each complex eigenvector after that rotation.
    std::vector<double> vector_imag;
    /// |A x - lambda x| / |x| for each complex pair, from a plain product.
    std::vector<double> residuals;
    std::vector<EigenCluster> clusters;
    bool converged = false;
    int iterations = 0;

    double residual_max() const;
    /// max |Im lambda| / |lambda| over eigenvalues with |lambda| > 1e-8.
    double im_leakage_max() const;
    std::vector<double> real_values() const;
};

struct EigenOptions
{
    /// Up to this dimension a dense nonsymmetric factorization is used.
    int dense_limit = 500;
    /// Shift for the inverted iteration; eigenvalues are ordered by their
    /// distance to it, which matches |lambda| order for a nonpositive
    /// spectrum.
    double shift = 0.1;
    double tolerance = 1e-8;
    int max_iterations = 400;
    std::uint64_t seed = 20260101;
    double cluster_abs_tol = 0.05;
    double cluster_rel_tol = 0.02;
};

/// The `count` eigenpairs of smallest magnitude. Never throws for lack of
/// convergence; `converged` is false and the residuals show by how much.
EigenResult eigenpairs(const SparseOperator& op, int count, const EigenOptions& options = {});

///
/// Greedy gap clustering of sorted values: a value joins the current
/// cluster when its distance to the previous value is at most
/// max(abs_tol, rel_tol * |cluster mean|). Member indices refer to
/// positions in `values`.
///
std::vector<EigenCluster> cluster_eigenvalues(std::span<const double> values, double abs_tol = 0.05,
                                              double rel_tol = 0.02);

/// Clusters whose value is farther than `zero_tol` from zero.
std::vector<EigenCluster> nonzero_clusters(const std::vector<EigenCluster>& clusters, double zero_tol = 1e-6);

///
/// E_n: each computed vector is scaled to unit max-norm and projected in the
/// least-squares sense onto the span of the reference vectors; the result is
/// the largest max-norm distance to its projection.
///
double subspace_align_error(const std::vector<std::vector<double>>& reference,
                            const std::vector<std::vector<double>>& computed);

} // namespace ltl
