// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/mesh.hpp>

#include <vector>

namespace ltl {

/// Selects the j/2-ring of a vertex: `ring_numerator` = j.
struct NeighborhoodSpec
{
    int ring_numerator = 2;
    int min_count = 5;

    /// Throws Error when j < 1 or min_count < 5.
    void validate() const;
};

/// Largest ring numerator reached by the enlarge-on-failure protocol.
inline constexpr int max_ring_numerator = 8;

/// Minimum number of samples for a degree-k jet: (k+1)(k+2)/2 - 1.
constexpr int jet_coefficient_count(int degree) { return (degree + 1) * (degree + 2) / 2 - 1; }

///
/// Vertices of the j/2-ring around `v`, excluding `v`.
///
/// An even j selects all vertices within graph distance j/2. An odd j adds
/// to the (j-1)/2-ring the third corner of every triangle that has an edge
/// on the front of that ring (both corners at distance exactly (j-1)/2).
/// When fewer than `min_count` vertices are found, j is increased until the
/// count is met.
///
/// The order is ascending graph distance, then Euclidean distance to `v`,
/// then index.
///
std::vector<int> neighborhood(const TriMesh& mesh, int v, const NeighborhoodSpec& spec);

/// Same as `neighborhood` but reports the ring numerator actually used after
/// expansion.
std::vector<int> neighborhood(const TriMesh& mesh, int v, const NeighborhoodSpec& spec, int& ring_used);

} // namespace ltl
