// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/operator.hpp>

#include <span>
#include <string_view>
#include <vector>

namespace ltl {

enum class TimeScheme { explicit_euler, implicit_euler };

TimeScheme parse_time_scheme(std::string_view name);

/// Largest explicit step admitted by the precondition: 2 / max |diagonal|.
double explicit_step_bound(const SparseOperator& op);

///
/// Time steps u_t = op u + f.
///
/// Explicit: u <- u + dt (op u + f), rejected up front when dt is not below
/// `explicit_step_bound`. Implicit: (I - dt op) u' = u + dt f, factored once
/// with sparse LU; each solve must reach a normwise backward error of 1e-10.
/// Throws SolverError when the norm grows beyond 1e6 times its initial value.
///
/// Vectors are operator-sized (reduced under dirichlet_zero).
///
std::vector<double> diffusion_solve(const SparseOperator& op, std::span<const double> u0, std::span<const double> f,
                                    double dt, int steps, TimeScheme scheme);

} // namespace ltl
