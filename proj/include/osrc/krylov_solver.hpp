#ifndef OSRC_KRYLOV_SOLVER_HPP
#define OSRC_KRYLOV_SOLVER_HPP

#include <functional>
#include <string>
#include <vector>

#include "osrc/bem_core.hpp"
#include "osrc/osrc_ops.hpp"

namespace osrc
{

using LinearMap = std::function<VectorXc(const VectorXc &)>;

enum class PreconditionSide
{
  None,
  Left,
  Right
};

struct GmresOptions
{
  double tol = 1e-5;
  int max_iter = 1000;
  PreconditionSide side = PreconditionSide::None;
};

struct GmresResult
{
  VectorXc x;
  int iterations = 0;
  // Relative residual norms, starting with the initial one. With left
  // preconditioning these are preconditioned residuals.
  std::vector<double> residual_history;
  bool converged = false;
};

// Full (unrestarted) GMRES with modified Gram-Schmidt and Givens rotations.
GmresResult gmres(const LinearMap &a, const VectorXc &b, const GmresOptions &options = {},
                  const LinearMap &m = nullptr);

enum class SolveFormulation
{
  Efie,
  MteEfie,
  MteEfieRight
};

std::string SolveFormulationName(SolveFormulation f);
SolveFormulation ParseSolveFormulation(const std::string &name);

struct SolveOptions
{
  double tol = 1e-5;
  int max_iter = 2000;
  RhsMode rhs = RhsMode::Direct;
  OsrcConfig osrc;
  QuadratureConfig quad;
  PlaneWave wave;  // kappa is overwritten by the solve wavenumber
};

struct SolveReport
{
  std::string formulation;
  int iterations = 0;
  std::vector<double> residual_history;
  bool converged = false;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
  int dof_count = 0;
  double kappa = 0.0;
  double ppw = 0.0;
  int sqrt_order = 0;
  int invsqrt_order = 0;
  double theta = 0.0;
  double tol = 0.0;
  std::string rhs;
};

struct ScatteringSolution
{
  SolveReport report;
  // Coefficients of the unknown trace in the div-conforming space: the exterior
  // magnetic trace of the scattered field (direct) or the surface current (indirect).
  VectorXc coefficients;
  RhsMode rhs = RhsMode::Direct;
};

// Reusable EFIE system data for one mesh and wavenumber.
struct EfieSystem
{
  DiscreteOperator efie;
  DenseMatrix dlayer;  // empty unless the direct right-hand side was requested
  double assembly_seconds = 0.0;
};

EfieSystem AssembleEfieSystem(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
                              bool need_dlayer, const QuadratureConfig &quad = {});

ScatteringSolution solve_scattering(const TriangleMesh &mesh, double kappa,
                                    SolveFormulation formulation,
                                    const SolveOptions &options = {});

// Same solve with pre-assembled dense operators.
ScatteringSolution solve_scattering(const TriangleMesh &mesh, const RwgSpace &space,
                                    const EfieSystem &system, double kappa,
                                    SolveFormulation formulation, const SolveOptions &options);

struct BenchmarkRow
{
  std::string kind;  // "run" or "ratio"
  double kappa = 0.0;
  int subdivisions = 0;
  int dofs = 0;
  double ppw = 0.0;
  std::string formulation;
  int iterations = 0;
  bool converged = false;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
  double iteration_ratio = 0.0;
  double solve_time_ratio = 0.0;
  double total_time_ratio = 0.0;
  std::string error;  // empty unless the cell failed
};

struct BenchmarkOptions
{
  std::vector<double> kappas;
  // One icosphere level per wavenumber, or a single level used for all of them.
  std::vector<int> subdivisions;
  std::vector<SolveFormulation> formulations{SolveFormulation::Efie, SolveFormulation::MteEfie};
  SolveOptions solve;
};

// Smallest icosphere level (unit sphere) whose mesh reaches the requested ppw.
int SubdivisionForPpw(double kappa, double ppw, int max_level = 5);

// Ratio row of one run against the plain EFIE run of the same cell.
BenchmarkRow RatioRow(const BenchmarkRow &base, const BenchmarkRow &run);

std::vector<BenchmarkRow> benchmark_suite(const BenchmarkOptions &options);
std::string BenchmarkCsv(const std::vector<BenchmarkRow> &rows);

}  // namespace osrc

#endif  // OSRC_KRYLOV_SOLVER_HPP
