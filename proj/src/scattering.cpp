#include <chrono>
#include <cstdio>
#include <memory>
#include <sstream>

#include "osrc/errors.hpp"
#include "osrc/krylov_solver.hpp"

namespace osrc
{

namespace
{

double Seconds(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string SolveFormulationName(SolveFormulation f)
{
  switch (f)
  {
    case SolveFormulation::Efie:
      return "efie";
    case SolveFormulation::MteEfie:
      return "mte_efie";
    case SolveFormulation::MteEfieRight:
      return "mte_efie_right";
  }
  return "unknown";
}

SolveFormulation ParseSolveFormulation(const std::string &name)
{
  for (auto f : {SolveFormulation::Efie, SolveFormulation::MteEfie, SolveFormulation::MteEfieRight})
  {
    if (SolveFormulationName(f) == name)
    {
      return f;
    }
  }
  throw UsageError("unknown solve formulation '" + name + "'");
}

EfieSystem AssembleEfieSystem(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
                              bool need_dlayer, const QuadratureConfig &quad)
{
  const auto start = std::chrono::steady_clock::now();
  EfieSystem sys;
  sys.efie = assemble_efie(mesh, space, kappa, quad);
  if (need_dlayer)
  {
    sys.dlayer = assemble_dlayer(mesh, space, kappa, quad).dense;
  }
  sys.assembly_seconds = Seconds(start);
  return sys;
}

ScatteringSolution solve_scattering(const TriangleMesh &mesh, const RwgSpace &space,
                                    const EfieSystem &system, double kappa,
                                    SolveFormulation formulation, const SolveOptions &options)
{
  PlaneWave wave = options.wave;
  wave.kappa = kappa;
  wave.Validate();
  const MeshStats stats = mesh_stats(mesh, kappa);

  ScatteringSolution out;
  out.rhs = options.rhs;
  SolveReport &rep = out.report;
  rep.formulation = SolveFormulationName(formulation);
  rep.dof_count = space.Size();
  rep.kappa = kappa;
  rep.ppw = stats.ppw;
  rep.tol = options.tol;
  rep.rhs = options.rhs == RhsMode::Direct ? "direct" : "indirect";
  rep.assembly_seconds = system.assembly_seconds;

  if (options.rhs == RhsMode::Direct && system.dlayer.size() == 0)
  {
    throw ParameterError("direct right-hand side needs the double-layer matrix");
  }
  const VectorXc b = incident_rhs(mesh, space, wave, options.rhs,
                                  options.rhs == RhsMode::Direct ? &system.dlayer : nullptr,
                                  options.quad);

  std::unique_ptr<OsrcContext> ctx;
  if (formulation != SolveFormulation::Efie)
  {
    const auto start = std::chrono::steady_clock::now();
    ctx = std::make_unique<OsrcContext>(mesh, space, kappa, options.osrc);
    rep.assembly_seconds += Seconds(start);
    rep.sqrt_order = options.osrc.sqrt_order;
    rep.invsqrt_order = options.osrc.invsqrt_order;
    rep.theta = options.osrc.theta;
  }

  const DenseMatrix &a = system.efie.dense;
  const LinearMap amap = [&a](const VectorXc &v) { return VectorXc(a * v); };
  GmresOptions go;
  go.tol = options.tol;
  go.max_iter = options.max_iter;
  LinearMap pre;
  if (formulation == SolveFormulation::MteEfie)
  {
    go.side = PreconditionSide::Left;
    pre = [&ctx](const VectorXc &v) { return ctx->mte_precondition(v); };
  }
  else if (formulation == SolveFormulation::MteEfieRight)
  {
    go.side = PreconditionSide::Right;
    pre = [&ctx](const VectorXc &v) { return ctx->mte_precondition_right(v); };
  }
  const auto start = std::chrono::steady_clock::now();
  GmresResult res = gmres(amap, b, go, pre);
  rep.solve_seconds = Seconds(start);
  rep.iterations = res.iterations;
  rep.residual_history = res.residual_history;
  rep.converged = res.converged;
  out.coefficients = std::move(res.x);
  return out;
}

ScatteringSolution solve_scattering(const TriangleMesh &mesh, double kappa,
                                    SolveFormulation formulation, const SolveOptions &options)
{
  const RwgSpace space = build_rwg_space(mesh);
  const EfieSystem sys =
      AssembleEfieSystem(mesh, space, kappa, options.rhs == RhsMode::Direct, options.quad);
  return solve_scattering(mesh, space, sys, kappa, formulation, options);
}

int SubdivisionForPpw(double kappa, double ppw, int max_level)
{
  if (!(kappa > 0.0) || !(ppw > 0.0))
  {
    throw ParameterError("ppw selection needs positive wavenumber and ppw");
  }
  for (int level = 0; level < max_level; ++level)
  {
    if (mesh_stats(icosphere(level, 1.0), kappa).ppw >= ppw)
    {
      return level;
    }
  }
  return max_level;
}

std::vector<BenchmarkRow> benchmark_suite(const BenchmarkOptions &options)
{
  if (options.kappas.empty())
  {
    throw ParameterError("benchmark needs at least one wavenumber");
  }
  if (options.subdivisions.size() != 1 && options.subdivisions.size() != options.kappas.size())
  {
    throw ParameterError("benchmark needs one subdivision level or one per wavenumber");
  }
  std::vector<BenchmarkRow> rows;
  for (size_t i = 0; i < options.kappas.size(); ++i)
  {
    const double kappa = options.kappas[i];
    const int level = options.subdivisions.size() == 1 ? options.subdivisions[0]
                                                       : options.subdivisions[i];
    std::vector<BenchmarkRow> block;
    auto failed = [&](SolveFormulation f, const std::string &what) {
      BenchmarkRow row;
      row.kind = "run";
      row.kappa = kappa;
      row.subdivisions = level;
      row.formulation = SolveFormulationName(f);
      row.error = what;
      return row;
    };
    try
    {
      const TriangleMesh mesh = icosphere(level, 1.0);
      const RwgSpace space = build_rwg_space(mesh);
      const EfieSystem sys = AssembleEfieSystem(mesh, space, kappa,
                                                options.solve.rhs == RhsMode::Direct,
                                                options.solve.quad);
      for (SolveFormulation f : options.formulations)
      {
        try
        {
          const ScatteringSolution sol =
              solve_scattering(mesh, space, sys, kappa, f, options.solve);
          BenchmarkRow row;
          row.kind = "run";
          row.kappa = kappa;
          row.subdivisions = level;
          row.dofs = sol.report.dof_count;
          row.ppw = sol.report.ppw;
          row.formulation = sol.report.formulation;
          row.iterations = sol.report.iterations;
          row.converged = sol.report.converged;
          row.assembly_seconds = sol.report.assembly_seconds;
          row.solve_seconds = sol.report.solve_seconds;
          block.push_back(row);
        }
        catch (const std::exception &e)
        {
          block.push_back(failed(f, e.what()));
        }
      }
    }
    catch (const std::exception &e)
    {
      for (SolveFormulation f : options.formulations)
      {
        block.push_back(failed(f, e.what()));
      }
    }
    rows.insert(rows.end(), block.begin(), block.end());
    const BenchmarkRow *base = nullptr;
    for (const auto &r : block)
    {
      if (r.formulation == "efie" && r.error.empty())
      {
        base = &r;
      }
    }
    if (!base)
    {
      continue;
    }
    for (const auto &r : block)
    {
      if (&r == base || !r.error.empty())
      {
        continue;
      }
      rows.push_back(RatioRow(*base, r));
    }
  }
  return rows;
}

BenchmarkRow RatioRow(const BenchmarkRow &base, const BenchmarkRow &run)
{
  BenchmarkRow ratio = run;
  ratio.kind = "ratio";
  ratio.iteration_ratio = static_cast<double>(run.iterations) / std::max(1, base.iterations);
  ratio.solve_time_ratio = run.solve_seconds / base.solve_seconds;
  ratio.total_time_ratio =
      (run.assembly_seconds + run.solve_seconds) / (base.assembly_seconds + base.solve_seconds);
  return ratio;
}

std::string BenchmarkCsv(const std::vector<BenchmarkRow> &rows)
{
  std::ostringstream out;
  out << "kind,kappa,subdivisions,dofs,ppw,formulation,iterations,converged,assembly_s,solve_s,"
         "iteration_ratio,solve_time_ratio,total_time_ratio,error\n";
  char buf[512];
  for (const auto &r : rows)
  {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%d,%d,%.6f,%s,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,",
                  r.kind.c_str(), r.kappa, r.subdivisions, r.dofs, r.ppw, r.formulation.c_str(),
                  r.iterations, r.converged ? 1 : 0, r.assembly_seconds, r.solve_seconds,
                  r.iteration_ratio, r.solve_time_ratio, r.total_time_ratio);
    std::string err = r.error;
    for (char &c : err)
    {
      if (c == ',' || c == '\n' || c == '"')
      {
        c = ';';
      }
    }
    out << buf << err << '\n';
  }
  return out.str();
}

}  // namespace osrc
