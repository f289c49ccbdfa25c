#ifndef OSRC_BEM_CORE_HPP
#define OSRC_BEM_CORE_HPP

#include <complex>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "osrc/surface_mesh.hpp"

namespace osrc
{

using cplx = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// Bilinear cross product; Eigen conjugates complex operands.
inline Eigen::Vector3cd CrossC(const Eigen::Vector3cd &a, const Eigen::Vector3cd &b)
{
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

enum class SpaceTag : std::uint32_t
{
  Rwg = 1,
  Snc = 2,
  P1 = 3
};

// Assembled Galerkin matrix. Rows are indexed by the test (dual) space and columns by
// the trial (domain) space.
struct DiscreteOperator
{
  enum class Storage : std::uint32_t
  {
    Dense = 0,
    Sparse = 1
  };

  Storage storage = Storage::Dense;
  DenseMatrix dense;
  SparseMatrix sparse;
  SpaceTag domain = SpaceTag::Rwg;
  SpaceTag dual = SpaceTag::Rwg;
  std::string label;

  Eigen::Index Rows() const;
  Eigen::Index Cols() const;
  VectorXc Apply(const VectorXc &x) const;
  DenseMatrix ToDense() const;
};

struct PlaneWave
{
  Vec3 direction{0.0, 0.0, -1.0};
  Vec3 polarization{1.0, 0.0, 0.0};
  double kappa = 3.141592653589793;

  Eigen::Vector3cd Field(const Vec3 &x) const;
  void Validate() const;
};

struct QuadratureConfig
{
  int regular_degree = 5;
  // Non-touching pairs whose centroid distance is below near_factor * h_avg.
  double near_factor = 2.0;
  int near_degree = 8;
  // Touching pairs: graded outer rule on the test triangle, inner rule for the
  // smooth remainder left after removing the 1/R and R terms analytically.
  // Pairs sharing a single vertex use the lighter vertex rule.
  int singular_outer_degree = 40;
  int vertex_outer_degree = 24;
  int singular_inner_degree = 8;

  // Separated entries accurate to about 1e-8 on meshes with ppw near 10.
  static QuadratureConfig HighOrder()
  {
    return {10, 2.0, 12, 60, 36, 12};
  }
  // Every degree doubled.
  QuadratureConfig Doubled() const
  {
    return {2 * regular_degree, near_factor, 2 * near_degree, 2 * singular_outer_degree,
            2 * vertex_outer_degree, 2 * singular_inner_degree};
  }
  void Validate() const;
};

// -(T phi_j, phi_k) with T u = i k S u + (i/k) grad S div u; complex symmetric.
DiscreteOperator assemble_efie(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
                               const QuadratureConfig &quad = {});

// (K phi_j, phi_k) with K u = p.v. int grad_y G x u(y); complex symmetric.
DiscreteOperator assemble_dlayer(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
                                 const QuadratureConfig &quad = {});

// Single-pair kernels exposed for oracle tests: local 3x3 blocks between test
// triangle a and source triangle b (local index = opposite vertex, signs excluded,
// basis normalisation included).
struct PairBlocks
{
  Eigen::Matrix3cd efie;
  Eigen::Matrix3cd dlayer;
};
PairBlocks IntegratePair(const TriangleMesh &mesh, int a, int b, double kappa,
                         const QuadratureConfig &quad, double h_avg);
// Reference value by plain tensor quadrature with n x n collapsed Gauss per triangle.
PairBlocks IntegratePairBruteForce(const TriangleMesh &mesh, int a, int b, double kappa, int n);

enum class MassKind
{
  RwgSnc,
  RwgRwg,
  P1P1
};

DiscreteOperator assemble_mass(const TriangleMesh &mesh, const RwgSpace &space, MassKind kind);

// Sparse blocks of the surface operators on the curl-conforming space.
struct OsrcBlocks
{
  SparseMatrix G;  // (t, r)
  SparseMatrix N;  // (curl t, curl r) / kappa_eps^2
  SparseMatrix K;  // kappa_eps^2 (eta, eta)
  SparseMatrix L;  // (grad eta_p, t_k), rows k, columns p
  cplx kappa_eps;
};

OsrcBlocks assemble_osrc_sparse(const TriangleMesh &mesh, const RwgSpace &space, cplx kappa_eps);

enum class RhsMode
{
  Direct,
  Indirect
};

// Right-hand side of the canonical EFIE system. The direct variant needs the
// double-layer matrix; it is assembled on the fly when none is supplied.
VectorXc incident_rhs(const TriangleMesh &mesh, const RwgSpace &space, const PlaneWave &wave,
                      RhsMode mode, const DenseMatrix *dlayer = nullptr,
                      const QuadratureConfig &quad = {});

// Coefficients of the projection of (e^i x nu) onto the div-conforming space.
VectorXc ProjectTangentialTrace(const TriangleMesh &mesh, const RwgSpace &space,
                                const PlaneWave &wave);

// Binary container: "OEBM", u32 version, u64 rows, u64 cols, u32 storage, u32 domain,
// u32 dual, then either row-major complex64 values or CSR (u64 row_ptr, u64 col,
// complex64 values). Little endian throughout.
void SaveOperator(const DiscreteOperator &op, const std::string &path);
DiscreteOperator LoadOperator(const std::string &path);

std::string SpaceTagName(SpaceTag tag);

}  // namespace osrc

#endif  // OSRC_BEM_CORE_HPP
