// Copyright 2026 The ltl Authors
// SPDX-License-Identifier: Apache-2.0

#include <ltl/errors.hpp>
#include <ltl/mesh_io.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

namespace ltl {

namespace {

std::string strip_comment(const std::string& line)
{
    const auto hash = line.find('#');
    std::string s = hash == std::string::npos ? line : line.substr(0, hash);
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what)
{
    std::ostringstream msg;
    msg << "line " << line_no << ": " << what;
    throw ParseError(msg.str());
}

void fan_triangulate(const std::vector<int>& polygon, std::vector<Triangle>& out)
{
    for (std::size_t k = 1; k + 1 < polygon.size(); ++k)
        out.push_back({polygon[0], polygon[k], polygon[k + 1]});
}

TriMesh read_off(std::istream& in)
{
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto s = strip_comment(raw);
        if (!s.empty()) lines.emplace_back(line_no, std::move(s));
    }
    if (lines.empty()) throw ParseError("OFF: empty input");

    std::size_t cursor = 0;
    std::istringstream header(lines[0].second);
    std::string magic;
    header >> magic;
    if (magic != "OFF") fail(lines[0].first, "expected OFF header, found '" + magic + "'");

    long nv = -1, nf = -1, ne = 0;
    if (!(header >> nv)) {
        ++cursor;
        if (cursor >= lines.size()) throw ParseError("OFF: missing element counts");
        std::istringstream counts(lines[cursor].second);
        if (!(counts >> nv >> nf)) fail(lines[cursor].first, "malformed element counts");
        counts >> ne;
    } else if (!(header >> nf)) {
        fail(lines[0].first, "malformed element counts");
    }
    if (nv < 0 || nf < 0) fail(lines[cursor].first, "negative element count");
    ++cursor;

    std::vector<Vec3> vertices;
    vertices.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i, ++cursor) {
        if (cursor >= lines.size()) throw ParseError("OFF: truncated vertex list");
        std::istringstream ls(lines[cursor].second);
        Vec3 p;
        if (!(ls >> p.x() >> p.y() >> p.z())) fail(lines[cursor].first, "malformed vertex");
        vertices.push_back(p);
    }

    std::vector<Triangle> triangles;
    triangles.reserve(static_cast<std::size_t>(nf));
    for (long f = 0; f < nf; ++f, ++cursor) {
        if (cursor >= lines.size()) throw ParseError("OFF: truncated face list");
        std::istringstream ls(lines[cursor].second);
        long n = 0;
        if (!(ls >> n) || n < 3) fail(lines[cursor].first, "face needs at least 3 corners");
        std::vector<int> polygon(static_cast<std::size_t>(n));
        for (auto& idx : polygon) {
            long value = 0;
            if (!(ls >> value)) fail(lines[cursor].first, "malformed face index");
            if (value < 0 || value >= nv) fail(lines[cursor].first, "face index out of range");
            idx = static_cast<int>(value);
        }
        fan_triangulate(polygon, triangles);
    }
    return TriMesh(std::move(vertices), std::move(triangles));
}

int parse_obj_index(const std::string& token, int nv, std::size_t line_no)
{
    const auto slash = token.find('/');
    const std::string head = token.substr(0, slash);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
    if (ec != std::errc() || ptr != head.data() + head.size() || value == 0)
        fail(line_no, "malformed face index '" + token + "'");
    const int idx = value > 0 ? value - 1 : nv + value;
    if (idx < 0 || idx >= nv) fail(line_no, "face index out of range '" + token + "'");
    return idx;
}

TriMesh read_obj(std::istream& in)
{
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto s = strip_comment(raw);
        if (s.empty()) continue;
        std::istringstream ls(s);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x() >> p.y() >> p.z())) fail(line_no, "malformed vertex");
            vertices.push_back(p);
        } else if (tag == "f") {
            std::vector<int> polygon;
            std::string token;
            while (ls >> token)
                polygon.push_back(parse_obj_index(token, static_cast<int>(vertices.size()), line_no));
            if (polygon.size() < 3) fail(line_no, "face needs at least 3 corners");
            fan_triangulate(polygon, triangles);
        }
        // Other records (vt, vn, g, o, s, usemtl, ...) carry nothing we use.
    }
    return TriMesh(std::move(vertices), std::move(triangles));
}

} // namespace

MeshFormat mesh_format_from_extension(const std::filesystem::path& path)
{
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".off") return MeshFormat::off;
    if (ext == ".obj") return MeshFormat::obj;
    throw ParseError("unsupported mesh extension '" + ext + "' (expected .off or .obj)");
}

TriMesh load_mesh(std::istream& in, MeshFormat format)
{
    return format == MeshFormat::off ? read_off(in) : read_obj(in);
}

TriMesh load_mesh(const std::filesystem::path& path)
{
    const auto format = mesh_format_from_extension(path);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return load_mesh(in, format);
}

void write_off(std::ostream& out, const TriMesh& mesh)
{
    out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_triangles() << ' '
        << mesh.edges().size() << '\n';
    out << std::setprecision(17);
    for (const auto& p : mesh.vertices()) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_off(const std::filesystem::path& path, const TriMesh& mesh)
{
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_off(out, mesh);
}

} // namespace ltl
