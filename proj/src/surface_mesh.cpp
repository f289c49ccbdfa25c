#include "osrc/surface_mesh.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "osrc/errors.hpp"

namespace osrc
{

double TriangleMesh::Area(int t) const
{
  const auto &f = triangles[t];
  return 0.5 * (vertices[f[1]] - vertices[f[0]]).cross(vertices[f[2]] - vertices[f[0]]).norm();
}

Vec3 TriangleMesh::Normal(int t) const
{
  const auto &f = triangles[t];
  return (vertices[f[1]] - vertices[f[0]]).cross(vertices[f[2]] - vertices[f[0]]).normalized();
}

Vec3 TriangleMesh::Centroid(int t) const
{
  const auto &f = triangles[t];
  return (vertices[f[0]] + vertices[f[1]] + vertices[f[2]]) / 3.0;
}

double TriangleMesh::Diameter(int t) const
{
  const auto &f = triangles[t];
  const Vec3 &a = vertices[f[0]], &b = vertices[f[1]], &c = vertices[f[2]];
  return std::max({(a - b).norm(), (b - c).norm(), (c - a).norm()});
}

double SignedVolume(const TriangleMesh &mesh)
{
  double v = 0.0;
  for (const auto &f : mesh.triangles)
  {
    v += mesh.vertices[f[0]].dot(mesh.vertices[f[1]].cross(mesh.vertices[f[2]]));
  }
  return v / 6.0;
}

double SurfaceArea(const TriangleMesh &mesh)
{
  double a = 0.0;
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    a += mesh.Area(t);
  }
  return a;
}

namespace
{

using EdgeKey = std::pair<int, int>;

struct EdgeUse
{
  int count_forward = 0;  // traversed lo -> hi
  int count_backward = 0;
  int tri_forward = -1;
  int tri_backward = -1;
};

std::map<EdgeKey, EdgeUse> CollectEdges(const TriangleMesh &mesh)
{
  std::map<EdgeKey, EdgeUse> edges;
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    const auto &f = mesh.triangles[t];
    for (int i = 0; i < 3; ++i)
    {
      const int a = f[(i + 1) % 3], b = f[(i + 2) % 3];
      auto &use = edges[{std::min(a, b), std::max(a, b)}];
      if (a < b)
      {
        ++use.count_forward;
        use.tri_forward = t;
      }
      else
      {
        ++use.count_backward;
        use.tri_backward = t;
      }
    }
  }
  return edges;
}

}  // namespace

void ValidateMesh(const TriangleMesh &mesh)
{
  if (mesh.triangles.empty())
  {
    throw TopologyError("mesh has no triangles");
  }
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    const auto &f = mesh.triangles[t];
    for (int v : f)
    {
      if (v < 0 || v >= mesh.NumVertices())
      {
        throw TopologyError("triangle " + std::to_string(t) + " references a missing vertex");
      }
    }
    if (f[0] == f[1] || f[1] == f[2] || f[2] == f[0])
    {
      throw TopologyError("triangle " + std::to_string(t) + " is degenerate");
    }
    if (!(mesh.Area(t) > 0.0))
    {
      throw TopologyError("triangle " + std::to_string(t) + " has zero area");
    }
  }
  for (const auto &[key, use] : CollectEdges(mesh))
  {
    if (use.count_forward + use.count_backward != 2)
    {
      throw TopologyError("edge (" + std::to_string(key.first) + ", " +
                          std::to_string(key.second) + ") is not shared by exactly two triangles");
    }
    if (use.count_forward != 1)
    {
      throw TopologyError("inconsistent orientation across edge (" + std::to_string(key.first) +
                          ", " + std::to_string(key.second) + ")");
    }
  }
  if (!(SignedVolume(mesh) > 0.0))
  {
    throw TopologyError("mesh normals point inward (non-positive enclosed volume)");
  }
}

TriangleMesh icosphere(int subdivisions, double radius)
{
  if (subdivisions < 0 || subdivisions > 7)
  {
    throw ParameterError("icosphere subdivision level must lie in [0, 7]");
  }
  if (!(radius > 0.0))
  {
    throw ParameterError("icosphere radius must be positive");
  }
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh mesh;
  mesh.vertices = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                   {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  mesh.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                    {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                    {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                    {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (auto &v : mesh.vertices)
  {
    v.normalize();
  }
  for (int level = 0; level < subdivisions; ++level)
  {
    std::map<EdgeKey, int> midpoint;
    auto mid = [&](int a, int b) {
      const EdgeKey key{std::min(a, b), std::max(a, b)};
      auto it = midpoint.find(key);
      if (it != midpoint.end())
      {
        return it->second;
      }
      mesh.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]).normalized());
      const int id = mesh.NumVertices() - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(4 * mesh.triangles.size());
    for (const auto &f : mesh.triangles)
    {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      refined.push_back({f[0], ab, ca});
      refined.push_back({f[1], bc, ab});
      refined.push_back({f[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    mesh.triangles = std::move(refined);
  }
  for (auto &v : mesh.vertices)
  {
    v *= radius;
  }
  if (SignedVolume(mesh) < 0.0)
  {
    for (auto &f : mesh.triangles)
    {
      std::swap(f[1], f[2]);
    }
  }
  return mesh;
}

RwgSpace build_rwg_space(const TriangleMesh &mesh)
{
  ValidateMesh(mesh);
  RwgSpace space;
  space.tri_edges.assign(mesh.NumTriangles(), {-1, -1, -1});
  space.tri_signs.assign(mesh.NumTriangles(), {0, 0, 0});
  auto third = [&](int t, int a, int b) {
    for (int v : mesh.triangles[t])
    {
      if (v != a && v != b)
      {
        return v;
      }
    }
    return -1;
  };
  for (const auto &[key, use] : CollectEdges(mesh))
  {
    Edge e;
    e.vertices = {key.first, key.second};
    e.tri_plus = use.tri_forward;
    e.tri_minus = use.tri_backward;
    e.opp_plus = third(e.tri_plus, key.first, key.second);
    e.opp_minus = third(e.tri_minus, key.first, key.second);
    e.length = (mesh.vertices[key.first] - mesh.vertices[key.second]).norm();
    const int id = space.Size();
    space.edges.push_back(e);
    for (int side = 0; side < 2; ++side)
    {
      const int t = side == 0 ? e.tri_plus : e.tri_minus;
      const int opp = side == 0 ? e.opp_plus : e.opp_minus;
      for (int i = 0; i < 3; ++i)
      {
        if (mesh.triangles[t][i] == opp)
        {
          space.tri_edges[t][i] = id;
          space.tri_signs[t][i] = side == 0 ? 1 : -1;
        }
      }
    }
  }
  return space;
}

MeshStats mesh_stats(const TriangleMesh &mesh, double kappa)
{
  if (!(kappa > 0.0))
  {
    throw ParameterError("wavenumber must be positive");
  }
  const RwgSpace space = build_rwg_space(mesh);
  MeshStats s;
  s.vertices = mesh.NumVertices();
  s.triangles = mesh.NumTriangles();
  s.edges = space.Size();
  s.euler = s.vertices - s.edges + s.triangles;
  double sum = 0.0;
  for (const auto &e : space.edges)
  {
    s.h_max = std::max(s.h_max, e.length);
    sum += e.length;
  }
  s.h_avg = sum / s.edges;
  s.area = SurfaceArea(mesh);
  s.volume = SignedVolume(mesh);
  s.ppw = 2.0 * std::numbers::pi / (kappa * s.h_avg);
  return s;
}

Vec3 RwgValue(const TriangleMesh &mesh, const RwgSpace &space, int n, int t, const Vec3 &r)
{
  const Edge &e = space.edges[n];
  if (t == e.tri_plus)
  {
    return (r - mesh.vertices[e.opp_plus]) / (2.0 * mesh.Area(t));
  }
  if (t == e.tri_minus)
  {
    return -(r - mesh.vertices[e.opp_minus]) / (2.0 * mesh.Area(t));
  }
  return Vec3::Zero();
}

double RwgDivergence(const TriangleMesh &mesh, const RwgSpace &space, int n, int t)
{
  const Edge &e = space.edges[n];
  if (t == e.tri_plus)
  {
    return 1.0 / mesh.Area(t);
  }
  if (t == e.tri_minus)
  {
    return -1.0 / mesh.Area(t);
  }
  return 0.0;
}

namespace
{

// Drop unused vertices, flip inward meshes, then validate.
TriangleMesh Finalize(std::vector<Vec3> nodes, std::vector<std::array<int, 3>> tris)
{
  std::vector<int> remap(nodes.size(), -1);
  TriangleMesh mesh;
  for (auto &f : tris)
  {
    for (int &v : f)
    {
      if (remap[v] < 0)
      {
        remap[v] = mesh.NumVertices();
        mesh.vertices.push_back(nodes[v]);
      }
      v = remap[v];
    }
  }
  mesh.triangles = std::move(tris);
  if (SignedVolume(mesh) < 0.0)
  {
    for (auto &f : mesh.triangles)
    {
      std::swap(f[1], f[2]);
    }
  }
  ValidateMesh(mesh);
  return mesh;
}

std::ifstream OpenInput(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot open mesh file '" + path + "'");
  }
  return in;
}

}  // namespace

TriangleMesh ReadGmsh(const std::string &path)
{
  std::ifstream in = OpenInput(path);
  std::string line;
  std::vector<Vec3> nodes;
  std::unordered_map<long, int> node_index;
  std::vector<std::array<int, 3>> tris;
  bool have_format = false;
  while (std::getline(in, line))
  {
    if (line.rfind("$MeshFormat", 0) == 0)
    {
      double version;
      int file_type, data_size;
      if (!(in >> version >> file_type >> data_size) || version < 2.0 || version >= 3.0 ||
          file_type != 0)
      {
        throw FormatError("only ASCII Gmsh version 2 files are supported");
      }
      have_format = true;
    }
    else if (line.rfind("$Nodes", 0) == 0)
    {
      long n;
      in >> n;
      for (long i = 0; i < n; ++i)
      {
        long id;
        Vec3 x;
        if (!(in >> id >> x[0] >> x[1] >> x[2]))
        {
          throw FormatError("truncated $Nodes section");
        }
        node_index[id] = static_cast<int>(nodes.size());
        nodes.push_back(x);
      }
    }
    else if (line.rfind("$Elements", 0) == 0)
    {
      long n;
      in >> n;
      std::getline(in, line);
      for (long i = 0; i < n; ++i)
      {
        if (!std::getline(in, line))
        {
          throw FormatError("truncated $Elements section");
        }
        std::istringstream ls(line);
        long id;
        int type, ntags;
        ls >> id >> type >> ntags;
        for (int k = 0; k < ntags; ++k)
        {
          long tag;
          ls >> tag;
        }
        if (type == 15 || type == 1)
        {
          continue;
        }
        if (type != 2)
        {
          throw FormatError("element type " + std::to_string(type) +
                            " is not supported (triangles only)");
        }
        std::array<int, 3> f;
        for (int k = 0; k < 3; ++k)
        {
          long node;
          if (!(ls >> node) || !node_index.count(node))
          {
            throw FormatError("triangle references unknown node");
          }
          f[k] = node_index[node];
        }
        tris.push_back(f);
      }
    }
  }
  if (!have_format)
  {
    throw FormatError("missing $MeshFormat section");
  }
  return Finalize(std::move(nodes), std::move(tris));
}

TriangleMesh ReadOff(const std::string &path)
{
  std::ifstream in = OpenInput(path);
  std::stringstream content;
  std::string line;
  while (std::getline(in, line))
  {
    const auto hash = line.find('#');
    if (hash != std::string::npos)
    {
      line.erase(hash);
    }
    content << line << '\n';
  }
  std::string magic;
  content >> magic;
  if (magic != "OFF")
  {
    throw FormatError("missing OFF header");
  }
  long nv, nf, ne;
  if (!(content >> nv >> nf >> ne))
  {
    throw FormatError("malformed OFF counts");
  }
  std::vector<Vec3> nodes(nv);
  for (auto &x : nodes)
  {
    if (!(content >> x[0] >> x[1] >> x[2]))
    {
      throw FormatError("truncated OFF vertex list");
    }
  }
  std::vector<std::array<int, 3>> tris(nf);
  for (auto &f : tris)
  {
    int k;
    if (!(content >> k >> f[0] >> f[1] >> f[2]) || k != 3)
    {
      throw FormatError("OFF faces must be triangles");
    }
    for (int v : f)
    {
      if (v < 0 || v >= nv)
      {
        throw FormatError("OFF face references unknown vertex");
      }
    }
  }
  return Finalize(std::move(nodes), std::move(tris));
}

TriangleMesh ReadMesh(const std::string &path)
{
  auto ends_with = [&](const std::string &s) {
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".msh"))
  {
    return ReadGmsh(path);
  }
  if (ends_with(".off"))
  {
    return ReadOff(path);
  }
  throw FormatError("unrecognised mesh extension for '" + path + "'");
}

std::string OffString(const TriangleMesh &mesh)
{
  std::ostringstream out;
  out.precision(17);
  out << "OFF\n" << mesh.NumVertices() << ' ' << mesh.NumTriangles() << " 0\n";
  for (const auto &v : mesh.vertices)
  {
    out << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
  }
  for (const auto &f : mesh.triangles)
  {
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
  return out.str();
}

void WriteOff(const TriangleMesh &mesh, const std::string &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw IoError("cannot write '" + path + "'");
  }
  out << OffString(mesh);
}

}  // namespace osrc
