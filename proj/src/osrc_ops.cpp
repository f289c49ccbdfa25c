#include "osrc/osrc_ops.hpp"

#include <cstdio>

#include "osrc/errors.hpp"
#include "osrc/sphere_spectrum.hpp"

namespace osrc
{

namespace
{

void CheckLength(const VectorXc &v, int n, const char *what)
{
  if (v.size() != n)
  {
    throw DimensionError(std::string(what) + ": vector length " + std::to_string(v.size()) +
                         " does not match space dimension " + std::to_string(n));
  }
}

}  // namespace

OsrcContext::OsrcContext(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
                         const OsrcConfig &config)
    : size_(space.Size()), vertices_(mesh.NumVertices()), kappa_(kappa), config_(config)
{
  if (!(kappa > 0.0))
  {
    throw ParameterError("wavenumber must be positive");
  }
  const double eps =
      config.epsilon >= 0.0 ? config.epsilon : damping_epsilon(kappa, config.curvature);
  blocks_ = assemble_osrc_sparse(mesh, space, cplx(kappa, eps));
  sqrt_ = sqrt_pade(config.sqrt_order, config.theta);
  invsqrt_ = invsqrt_pade(config.invsqrt_order, config.theta);

  lambda2_ = std::make_unique<SparseSolver>();
  lambda2_->compute(Eigen::SparseMatrix<cplx>(blocks_.G - blocks_.N));
  if (lambda2_->info() != Eigen::Success)
  {
    throw FactorizationError("factorization of G - N failed");
  }
  for (const cplx b : sqrt_.B)
  {
    sqrt_solvers_.push_back(FactorSaddle(1.0 / b));
  }
  for (const cplx s : invsqrt_.S)
  {
    invsqrt_solvers_.push_back(FactorSaddle(s));
  }

  char buf[256];
  std::snprintf(buf, sizeof(buf), "E%d-V%d-k%.17g-e%.17g-p%d-q%d-t%.17g-r%d", size_, vertices_,
                kappa, eps, config.sqrt_order, config.invsqrt_order, config.theta,
                config.mass_only_rhs ? 1 : 0);
  fingerprint_ = buf;
}

std::unique_ptr<OsrcContext::SparseSolver> OsrcContext::FactorSaddle(cplx d) const
{
  const int n = size_ + vertices_;
  std::vector<Eigen::Triplet<cplx>> trip;
  const SparseMatrix top = d * blocks_.G - blocks_.N;
  auto push = [&](const SparseMatrix &m, int r0, int c0, bool transpose) {
    for (int k = 0; k < m.outerSize(); ++k)
    {
      for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      {
        const int r = static_cast<int>(transpose ? it.col() : it.row());
        const int c = static_cast<int>(transpose ? it.row() : it.col());
        trip.emplace_back(r0 + r, c0 + c, it.value());
      }
    }
  };
  push(top, 0, 0, false);
  push(blocks_.L, 0, size_, false);
  push(blocks_.L, size_, 0, true);
  push(blocks_.K, size_, size_, false);
  Eigen::SparseMatrix<cplx> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  auto solver = std::make_unique<SparseSolver>();
  solver->compute(m);
  if (solver->info() != Eigen::Success)
  {
    throw FactorizationError("saddle-point factorization failed");
  }
  return solver;
}

VectorXc OsrcContext::SolveSaddle(const SparseSolver &solver, const VectorXc &rhs,
                                  VectorXc *rho) const
{
  VectorXc full = VectorXc::Zero(size_ + vertices_);
  full.head(size_) = rhs;
  const VectorXc sol = solver.solve(full);
  if (rho)
  {
    *rho = sol.tail(vertices_);
  }
  return sol.head(size_);
}

VectorXc OsrcContext::apply_lambda2(const VectorXc &v) const
{
  CheckLength(v, size_, "apply_lambda2");
  return blocks_.G * v - blocks_.N * v;
}

VectorXc OsrcContext::apply_lambda2_inv(const VectorXc &v) const
{
  CheckLength(v, size_, "apply_lambda2_inv");
  return lambda2_->solve(v);
}

VectorXc OsrcContext::apply_lambda1_weak(const VectorXc &w) const
{
  CheckLength(w, size_, "apply_lambda1");
  VectorXc out = sqrt_.F0 * w;
  VectorXc acc = VectorXc::Zero(size_);
  for (int j = 0; j < sqrt_.order; ++j)
  {
    const cplx b = sqrt_.B[j];
    acc += (sqrt_.A[j] / (b * b)) * SolveSaddle(*sqrt_solvers_[j], w);
  }
  out -= blocks_.G * acc;
  return out;
}

VectorXc OsrcContext::apply_lambda1(const VectorXc &v) const
{
  CheckLength(v, size_, "apply_lambda1");
  return apply_lambda1_weak(blocks_.G * v);
}

VectorXc OsrcContext::apply_lambda1_inv_weak(const VectorXc &w) const
{
  CheckLength(w, size_, "apply_lambda1_inv");
  VectorXc out = VectorXc::Zero(size_);
  for (int l = 0; l < invsqrt_.order; ++l)
  {
    out += invsqrt_.R[l] * SolveSaddle(*invsqrt_solvers_[l], w);
  }
  return out;
}

VectorXc OsrcContext::apply_lambda1_inv(const VectorXc &v) const
{
  CheckLength(v, size_, "apply_lambda1_inv");
  return apply_lambda1_inv_weak(config_.mass_only_rhs ? VectorXc(blocks_.G * v)
                                                      : apply_lambda2(v));
}

VectorXc OsrcContext::mte_precondition(const VectorXc &w) const
{
  return apply_lambda2_inv(apply_lambda1_weak(w));
}

VectorXc OsrcContext::mte_precondition_right(const VectorXc &v) const
{
  CheckLength(v, size_, "mte_precondition_right");
  return mte_precondition(blocks_.G * v);
}

double OsrcContext::ConstraintResidual(const VectorXc &v) const
{
  CheckLength(v, size_, "constraint residual");
  const VectorXc rhs = blocks_.G * v;
  double worst = 0.0;
  auto check = [&](const SparseSolver &solver) {
    VectorXc rho;
    const VectorXc phi = SolveSaddle(solver, rhs, &rho);
    const VectorXc lt = blocks_.L.transpose() * phi;
    const VectorXc kr = blocks_.K * rho;
    const double scale = std::max(lt.norm(), kr.norm());
    if (scale > 0.0)
    {
      worst = std::max(worst, (kr + lt).norm() / scale);
    }
  };
  for (const auto &s : sqrt_solvers_)
  {
    check(*s);
  }
  for (const auto &s : invsqrt_solvers_)
  {
    check(*s);
  }
  return worst;
}

}  // namespace osrc
