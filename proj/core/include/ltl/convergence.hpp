// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/generators.hpp>
#include <ltl/neighborhood.hpp>
#include <ltl/operator.hpp>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltl {

/// References with |ref| below this fraction of max |ref| are masked out of
/// relative errors.
inline constexpr double relative_mask_threshold = 1e-8;

/// max over `mask` of |numeric - reference| / |reference|. Throws on an
/// empty mask or a zero reference inside it.
double linf_relative_error(std::span<const double> numeric, std::span<const double> reference,
                           std::span<const int> mask);

/// Indices with |reference| >= threshold * max |reference| that are not
/// flagged in `exclude` (e.g. boundary flags; may be empty).
std::vector<int> relative_error_mask(std::span<const double> reference, std::span<const std::uint8_t> exclude = {},
                                     double threshold = relative_mask_threshold);

/// Flags, per mesh vertex, boundary vertices and vertices whose operator row
/// reaches a boundary vertex. Such rows are one-sided fits.
std::vector<std::uint8_t> boundary_reach_flags(const TriMesh& mesh, const SparseOperator& op);

/// Pairwise orders log(e1/e2) / log(h1/h2). A zero error gives +infinity.
std::vector<double> eoc(std::span<const double> errors, std::span<const double> sizes);

/// Mean of the finite entries (NaN when there are none).
double mean_finite(std::span<const double> values);

enum class StudyMetric { eigenvalue, subspace, laplacian_field, normal, gaussian, mean };

StudyMetric parse_study_metric(std::string_view name);
const char* to_string(StudyMetric metric);

struct StudyConfig
{
    std::string id;
    SurfaceKind model = SurfaceKind::sphere;
    StudyMetric metric = StudyMetric::eigenvalue;
    /// Eigenvalue cluster n on the sphere, or eigenvalue position on the
    /// hemisphere; unused by the other metrics.
    int index = 1;
    /// 1 selects the first-order pipeline; k >= 2 the degree-k jets.
    int degree = 1;
    std::optional<NeighborhoodSpec> ring;
    /// Target edge lengths handed to the generator.
    std::vector<double> sizes;
    MeshParams params;
};

///
/// Parses ids of the form <model>-<metric>[n], e.g. "sphere-eigen",
/// "sphere-eigen2", "sphere-E1", "hemisphere-eigen4", "wave-laplacian",
/// "torus-gaussian".
///
StudyConfig parse_study(std::string_view id);

struct ConvergenceRow
{
    double target = 0.0; // requested edge length
    double size = 0.0;   // measured mesh size
    int vertices = 0;
    double value = std::numeric_limits<double>::quiet_NaN(); // computed quantity when scalar
    double error = 0.0;
    /// Max absolute error over the same mask (Laplacian fields only).
    double abs_error = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceReport
{
    std::string study;
    std::string model;
    std::string metric;
    int index = 1;
    int degree = 1;
    NeighborhoodSpec ring;
    /// Sorted by descending mesh size.
    std::vector<ConvergenceRow> rows;
    /// eoc[i] pairs rows i and i + 1.
    std::vector<double> eoc;
};

/// Ring used by a pipeline of the given degree when none is configured.
NeighborhoodSpec default_pipeline_spec(int degree);

/// First-order operator for degree 1, degree-k operator otherwise.
SparseOperator build_laplacian(const TriMesh& mesh, int degree, const NeighborhoodSpec& spec, BoundaryMode boundary);

/// Runs generate -> assemble/fit -> measure over the ladder. Failures are
/// rethrown as Error carrying the target size.
ConvergenceReport convergence_study(const StudyConfig& config);

/// CSV with columns size,error,eoc (eoc empty on the first row).
void write_report_csv(std::ostream& out, const ConvergenceReport& report);

} // namespace ltl
