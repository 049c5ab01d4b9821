// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ltl/mesh.hpp>

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace ltl {

enum class MeshFormat { off, obj };

/// Parse ASCII OFF or OBJ. Polygons with more than three corners are
/// fan-triangulated around their first corner.
TriMesh load_mesh(std::istream& in, MeshFormat format);

/// Load from a file, choosing the format from the extension (.off / .obj).
TriMesh load_mesh(const std::filesystem::path& path);

/// Write ASCII OFF with round-trip precision.
void write_off(std::ostream& out, const TriMesh& mesh);
void write_off(const std::filesystem::path& path, const TriMesh& mesh);

MeshFormat mesh_format_from_extension(const std::filesystem::path& path);

} // namespace ltl
