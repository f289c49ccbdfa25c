#include "osrc/krylov_solver.hpp"

#include <cmath>
#include <string>

#include "osrc/errors.hpp"

namespace osrc
{

GmresResult gmres(const LinearMap &a, const VectorXc &b, const GmresOptions &options,
                  const LinearMap &m)
{
  if (options.side != PreconditionSide::None && !m)
  {
    throw ParameterError("preconditioning side selected without a preconditioner");
  }
  if (!(options.tol > 0.0) || options.max_iter < 1)
  {
    throw ParameterError("GMRES needs a positive tolerance and iteration limit");
  }
  const Eigen::Index n = b.size();
  const bool left = options.side == PreconditionSide::Left;
  const bool right = options.side == PreconditionSide::Right;
  auto op = [&](const VectorXc &v) -> VectorXc {
    if (left)
    {
      return m(a(v));
    }
    if (right)
    {
      return a(m(v));
    }
    return a(v);
  };

  GmresResult result;
  result.x = VectorXc::Zero(n);
  const VectorXc r0 = left ? m(b) : b;
  const double beta = r0.norm();
  result.residual_history.push_back(beta > 0.0 ? 1.0 : 0.0);
  if (beta == 0.0)
  {
    result.converged = true;
    return result;
  }

  const int kmax = static_cast<int>(std::min<Eigen::Index>(options.max_iter, n));
  std::vector<VectorXc> basis;
  basis.push_back(r0 / beta);
  DenseMatrix h = DenseMatrix::Zero(kmax + 1, kmax);
  std::vector<cplx> cs(kmax), sn(kmax);
  VectorXc g = VectorXc::Zero(kmax + 1);
  g[0] = beta;
  int k = 0;
  for (; k < kmax; ++k)
  {
    VectorXc w = op(basis[k]);
    if (w.size() != n)
    {
      throw DimensionError("operator output length differs from the right-hand side");
    }
    const double wnorm = w.norm();
    for (int pass = 0; pass < 2; ++pass)
    {
      for (int i = 0; i <= k; ++i)
      {
        const cplx hij = basis[i].dot(w);
        h(i, k) += hij;
        w -= hij * basis[i];
      }
      if (w.norm() > 0.7 * wnorm)
      {
        break;
      }
    }
    const double hnext = w.norm();
    h(k + 1, k) = hnext;
    for (int i = 0; i < k; ++i)
    {
      const cplx t = std::conj(cs[i]) * h(i, k) + std::conj(sn[i]) * h(i + 1, k);
      h(i + 1, k) = -sn[i] * h(i, k) + cs[i] * h(i + 1, k);
      h(i, k) = t;
    }
    const double rho = std::hypot(std::abs(h(k, k)), hnext);
    if (rho == 0.0)
    {
      throw SolverError("GMRES breakdown: Krylov operator annihilated the basis vector at step " +
                        std::to_string(k + 1));
    }
    cs[k] = h(k, k) / rho;
    sn[k] = hnext / rho;
    h(k, k) = rho;
    h(k + 1, k) = 0.0;
    g[k + 1] = -sn[k] * g[k];
    g[k] = std::conj(cs[k]) * g[k];
    const double res = std::abs(g[k + 1]) / beta;
    result.residual_history.push_back(res);
    const bool happy = hnext <= 1e-14 * wnorm;
    if (res <= options.tol || happy)
    {
      result.converged = true;
      ++k;
      break;
    }
    basis.push_back(w / hnext);
  }
  result.iterations = k;
  if (k > 0)
  {
    const VectorXc y = h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    VectorXc sol = VectorXc::Zero(n);
    for (int i = 0; i < k; ++i)
    {
      sol += y[i] * basis[i];
    }
    result.x = right ? m(sol) : sol;
  }
  return result;
}

}  // namespace osrc
