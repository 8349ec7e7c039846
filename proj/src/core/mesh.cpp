#include "core/mesh.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "core/errors.hpp"

namespace beltrami {
namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double raw_face_area(const Eigen::Matrix<double, Eigen::Dynamic, 3>& v,
                     const std::array<int, 3>& f) {
  const Eigen::Vector3d a = v.row(f[0]).transpose();
  const Eigen::Vector3d b = v.row(f[1]).transpose();
  const Eigen::Vector3d c = v.row(f[2]).transpose();
  return 0.5 * (b - a).cross(c - a).norm();
}

// Significant lines of an ASCII geometry file: comments ('#' to end of line)
// stripped, blank lines skipped.
std::vector<std::string> significant_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    const bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) {
      return std::isspace(c) != 0;
    });
    if (!blank) lines.push_back(line);
  }
  return lines;
}

LoadResult parse_off(const std::string& path) {
  const auto lines = significant_lines(path);
  if (lines.empty()) fail(ErrorCode::ParseError, path + ": empty OFF file");

  // Header may be "OFF" alone or "OFF nv nf ne" on one line.
  std::istringstream header(lines[0]);
  std::string magic;
  header >> magic;
  if (magic != "OFF") fail(ErrorCode::ParseError, path + ": missing OFF header");

  std::size_t cursor = 1;
  long nv = -1, nf = -1, ne = 0;
  if (!(header >> nv >> nf >> ne)) {
    if (cursor >= lines.size()) fail(ErrorCode::ParseError, path + ": missing counts line");
    std::istringstream counts(lines[cursor++]);
    if (!(counts >> nv >> nf)) fail(ErrorCode::ParseError, path + ": malformed counts line");
    counts >> ne;
  }
  if (nv < 0 || nf < 0) fail(ErrorCode::ParseError, path + ": negative counts");

  Eigen::Matrix<double, Eigen::Dynamic, 3> vertices(nv, 3);
  for (long i = 0; i < nv; ++i) {
    if (cursor >= lines.size()) fail(ErrorCode::ParseError, path + ": truncated vertex list");
    std::istringstream vs(lines[cursor++]);
    double x, y, z;
    if (!(vs >> x >> y >> z)) {
      fail(ErrorCode::ParseError, path + ": malformed vertex line " + std::to_string(i));
    }
    vertices.row(i) << x, y, z;
  }

  std::vector<std::array<int, 3>> faces;
  faces.reserve(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    if (cursor >= lines.size()) fail(ErrorCode::ParseError, path + ": truncated face list");
    std::istringstream fs(lines[cursor++]);
    int count;
    if (!(fs >> count)) fail(ErrorCode::ParseError, path + ": malformed face line " + std::to_string(i));
    if (count != 3) {
      fail(ErrorCode::ParseError,
           path + ": face " + std::to_string(i) + " has " + std::to_string(count) +
               " vertices; only triangles are supported");
    }
    std::array<int, 3> f{};
    if (!(fs >> f[0] >> f[1] >> f[2])) {
      fail(ErrorCode::ParseError, path + ": malformed face line " + std::to_string(i));
    }
    faces.push_back(f);
  }
  return finalize_mesh(std::move(vertices), std::move(faces));
}

// Leading vertex index of an OBJ face token "v", "v/t", "v//n", "v/t/n".
int parse_obj_index(const std::string& token, long nv, const std::string& path) {
  std::size_t slash = token.find('/');
  const std::string head = token.substr(0, slash);
  long idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stol(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, path + ": malformed face index '" + token + "'");
  }
  if (idx < 0) fail(ErrorCode::ParseError, path + ": negative OBJ indices are not supported");
  if (idx == 0 || idx > nv) {
    fail(ErrorCode::ParseError, path + ": face index " + std::to_string(idx) + " out of range");
  }
  return static_cast<int>(idx - 1);  // OBJ is 1-based
}

LoadResult parse_obj(const std::string& path) {
  const auto lines = significant_lines(path);
  std::vector<Eigen::Vector3d> verts;
  std::vector<std::array<std::string, 3>> face_tokens;
  for (const auto& line : lines) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) fail(ErrorCode::ParseError, path + ": malformed vertex line");
      verts.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::array<std::string, 3> toks;
      if (!(ls >> toks[0] >> toks[1] >> toks[2])) {
        fail(ErrorCode::ParseError, path + ": face with fewer than 3 vertices");
      }
      std::string extra;
      if (ls >> extra) fail(ErrorCode::ParseError, path + ": only triangular faces are supported");
      face_tokens.push_back(std::move(toks));
    }
    // vt/vn/usemtl/o/g/s/mtllib and anything else: ignored.
  }

  const long nv = static_cast<long>(verts.size());
  Eigen::Matrix<double, Eigen::Dynamic, 3> vertices(nv, 3);
  for (long i = 0; i < nv; ++i) vertices.row(i) = verts[i].transpose();

  std::vector<std::array<int, 3>> faces;
  faces.reserve(face_tokens.size());
  for (const auto& toks : face_tokens) {
    faces.push_back({parse_obj_index(toks[0], nv, path), parse_obj_index(toks[1], nv, path),
                     parse_obj_index(toks[2], nv, path)});
  }
  return finalize_mesh(std::move(vertices), std::move(faces));
}

}  // namespace

int Mesh::boundary_vertex_count() const {
  int count = 0;
  for (auto flag : boundary) count += flag ? 1 : 0;
  return count;
}

int Mesh::edge_count() const {
  return static_cast<int>(unique_edges(*this).size());
}

int Mesh::euler_characteristic() const {
  return vertex_count() - edge_count() + face_count();
}

double Mesh::face_area(int f) const { return raw_face_area(vertices, faces[f]); }

double Mesh::surface_area() const {
  double total = 0.0;
  for (int f = 0; f < face_count(); ++f) total += face_area(f);
  return total;
}

LoadResult finalize_mesh(Eigen::Matrix<double, Eigen::Dynamic, 3> vertices,
                         std::vector<std::array<int, 3>> faces) {
  const int nv = static_cast<int>(vertices.rows());
  for (const auto& f : faces) {
    for (int idx : f) {
      if (idx < 0 || idx >= nv) {
        fail(ErrorCode::ParseError,
             "face index " + std::to_string(idx) + " out of range (mesh has " +
                 std::to_string(nv) + " vertices)");
      }
    }
  }

  std::vector<std::array<int, 3>> kept;
  kept.reserve(faces.size());
  int dropped = 0;
  for (const auto& f : faces) {
    const bool distinct = f[0] != f[1] && f[1] != f[2] && f[0] != f[2];
    if (distinct && raw_face_area(vertices, f) > 0.0) {
      kept.push_back(f);
    } else {
      ++dropped;
    }
  }

  if (nv == 0 || kept.empty()) fail(ErrorCode::EmptyMesh, "mesh has no valid faces");

  std::unordered_map<std::uint64_t, int> edge_faces;
  edge_faces.reserve(kept.size() * 3);
  for (const auto& f : kept) {
    for (int e = 0; e < 3; ++e) {
      const int count = ++edge_faces[edge_key(f[e], f[(e + 1) % 3])];
      if (count > 2) {
        fail(ErrorCode::NonManifold, "edge (" + std::to_string(f[e]) + "," +
                                         std::to_string(f[(e + 1) % 3]) +
                                         ") borders more than two faces");
      }
    }
  }

  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.faces = std::move(kept);
  mesh.boundary.assign(nv, 0);
  for (const auto& [key, count] : edge_faces) {
    if (count == 1) {
      mesh.boundary[static_cast<int>(key >> 32)] = 1;
      mesh.boundary[static_cast<int>(key & 0xffffffffu)] = 1;
    }
  }
  return LoadResult{std::move(mesh), dropped};
}

LoadResult load_mesh(const std::string& path, MeshFormat format) {
  return format == MeshFormat::Off ? parse_off(path) : parse_obj(path);
}

LoadResult load_mesh(const std::string& path) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == "off") return parse_off(path);
  if (ext == "obj") return parse_obj(path);
  fail(ErrorCode::ParseError, path + ": unknown mesh extension '" + ext + "'");
}

namespace {

// %.17g guarantees binary64 round-trip through decimal.
void write_coord_line(std::FILE* out, const Eigen::Vector3d& p) {
  std::fprintf(out, "%.17g %.17g %.17g\n", p.x(), p.y(), p.z());
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

void save_mesh_off(const Mesh& mesh, const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> out(std::fopen(path.c_str(), "w"));
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  std::fprintf(out.get(), "OFF\n%d %d 0\n", mesh.vertex_count(), mesh.face_count());
  for (int v = 0; v < mesh.vertex_count(); ++v) write_coord_line(out.get(), mesh.vertex(v));
  for (const auto& f : mesh.faces) std::fprintf(out.get(), "3 %d %d %d\n", f[0], f[1], f[2]);
}

void save_mesh_obj(const Mesh& mesh, const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> out(std::fopen(path.c_str(), "w"));
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Eigen::Vector3d p = mesh.vertex(v);
    std::fprintf(out.get(), "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
  }
  for (const auto& f : mesh.faces) {
    std::fprintf(out.get(), "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
  }
}

Mesh with_vertices(const Mesh& mesh, const Eigen::MatrixXd& coords) {
  if (coords.rows() != mesh.vertex_count() || coords.cols() > 3 || coords.cols() < 1) {
    fail(ErrorCode::DimensionMismatch, "coordinate matrix must be n x m with m in 1..3");
  }
  Mesh out = mesh;
  out.vertices.setZero(mesh.vertex_count(), 3);
  out.vertices.leftCols(coords.cols()) = coords;
  return out;
}

Mesh scaled(const Mesh& mesh, double factor) {
  Mesh out = mesh;
  out.vertices *= factor;
  return out;
}

std::vector<std::array<int, 2>> unique_edges(const Mesh& mesh) {
  std::vector<std::array<int, 2>> edges;
  edges.reserve(mesh.faces.size() * 3);
  for (const auto& f : mesh.faces) {
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace beltrami
