// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ltl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed OFF/OBJ/MatrixMarket input.
class ParseError : public Error
{
public:
    using Error::Error;
};

/// Invalid mesh topology or geometry (bad index, degenerate or non-manifold element).
class MeshError : public Error
{
public:
    using Error::Error;
};

/// A vertex star whose normal cannot be formed.
class GeometryError : public Error
{
public:
    using Error::Error;
};

/// A configuration system that cannot be satisfied with the given points.
/// Callers treat this as a request to enlarge the neighborhood.
class StencilRejected : public Error
{
public:
    enum class Reason { rank_deficient, zero_normalizer, too_few_points };

    StencilRejected(Reason reason, const std::string& what)
        : Error(what)
        , m_reason(reason)
    {}

    Reason reason() const noexcept { return m_reason; }

private:
    Reason m_reason;
};

/// Stencil failure at a specific vertex after the neighborhood was enlarged
/// as far as allowed.
class AssemblyError : public Error
{
public:
    AssemblyError(int vertex, const std::string& what)
        : Error(what)
        , m_vertex(vertex)
    {}

    int vertex() const noexcept { return m_vertex; }

private:
    int m_vertex;
};

/// Time stepping or eigen iteration that diverged or failed to converge.
class SolverError : public Error
{
public:
    using Error::Error;
};

} // namespace ltl
