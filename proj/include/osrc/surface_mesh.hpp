#ifndef OSRC_SURFACE_MESH_HPP
#define OSRC_SURFACE_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace osrc
{

using Vec3 = Eigen::Vector3d;

// Closed, consistently oriented triangulated surface with outward normals.
struct TriangleMesh
{
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  int NumVertices() const { return static_cast<int>(vertices.size()); }
  int NumTriangles() const { return static_cast<int>(triangles.size()); }
  double Area(int t) const;
  Vec3 Normal(int t) const;  // unit
  Vec3 Centroid(int t) const;
  double Diameter(int t) const;
};

struct Edge
{
  std::array<int, 2> vertices;  // sorted
  int tri_plus = -1;
  int tri_minus = -1;
  int opp_plus = -1;   // vertex of T+ opposite the edge
  int opp_minus = -1;  // vertex of T- opposite the edge
  double length = 0.0;
};

// Lowest-order div-conforming space on a closed mesh. One function per edge:
// phi = (r - p+) / (2 A+) on T+, -(r - p-) / (2 A-) on T-.
struct RwgSpace
{
  std::vector<Edge> edges;
  // For triangle t and local vertex i, the edge opposite that vertex and the sign of
  // the basis function on t (+1 on T+, -1 on T-).
  std::vector<std::array<int, 3>> tri_edges;
  std::vector<std::array<int, 3>> tri_signs;

  int Size() const { return static_cast<int>(edges.size()); }
};

struct MeshStats
{
  int vertices = 0;
  int edges = 0;
  int triangles = 0;
  int euler = 0;
  double h_max = 0.0;
  double h_avg = 0.0;
  double area = 0.0;
  double volume = 0.0;
  double ppw = 0.0;
};

// Throws TopologyError unless the mesh is a closed oriented manifold with positive
// areas and positive enclosed volume.
void ValidateMesh(const TriangleMesh &mesh);

double SignedVolume(const TriangleMesh &mesh);
double SurfaceArea(const TriangleMesh &mesh);

TriangleMesh icosphere(int subdivisions, double radius = 1.0);

RwgSpace build_rwg_space(const TriangleMesh &mesh);

MeshStats mesh_stats(const TriangleMesh &mesh, double kappa);

// Value of basis function n on triangle t at point r (zero off its support).
Vec3 RwgValue(const TriangleMesh &mesh, const RwgSpace &space, int n, int t, const Vec3 &r);
double RwgDivergence(const TriangleMesh &mesh, const RwgSpace &space, int n, int t);

TriangleMesh ReadGmsh(const std::string &path);
TriangleMesh ReadOff(const std::string &path);
TriangleMesh ReadMesh(const std::string &path);
void WriteOff(const TriangleMesh &mesh, const std::string &path);
std::string OffString(const TriangleMesh &mesh);

}  // namespace osrc

#endif  // OSRC_SURFACE_MESH_HPP
