#ifndef OSRC_OSRC_OPS_HPP
#define OSRC_OSRC_OPS_HPP

#include <memory>
#include <string>
#include <vector>

#include <Eigen/SparseLU>

#include "osrc/bem_core.hpp"
#include "osrc/pade.hpp"

namespace osrc
{

struct OsrcConfig
{
  int sqrt_order = 8;     // order of the square-root approximant
  int invsqrt_order = 8;  // order of the inverse square-root approximant
  double theta = 1.0471975511965976;
  double curvature = 1.0;
  // Negative selects the damping rule.
  double epsilon = -1.0;
  // Right-hand side of the inverse square-root solves: (G - N) v when false,
  // G v when true.
  bool mass_only_rhs = false;
};

// Sparse surface operators on the curl-conforming space with cached factorizations.
// Vectors are either coefficient vectors or weak-form vectors (pairings with the
// basis); each method states which.
class OsrcContext
{
public:
  OsrcContext(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
              const OsrcConfig &config = {});

  int Size() const { return size_; }
  double Kappa() const { return kappa_; }
  cplx KappaEps() const { return blocks_.kappa_eps; }
  const OsrcBlocks &Blocks() const { return blocks_; }
  const OsrcConfig &Config() const { return config_; }
  const std::string &Fingerprint() const { return fingerprint_; }

  // (G - N) v: coefficients -> weak form.
  VectorXc apply_lambda2(const VectorXc &v) const;
  // Solves (G - N) x = v: weak form -> coefficients.
  VectorXc apply_lambda2_inv(const VectorXc &v) const;
  // F0 G v - sum (A/B) G x_j with x_j the rotated square-root solves of G v:
  // coefficients -> weak form.
  VectorXc apply_lambda1(const VectorXc &v) const;
  // Same map with a weak-form input: weak form -> weak form.
  VectorXc apply_lambda1_weak(const VectorXc &w) const;
  // Sum R_l phi_l with phi_l solving the saddle system for (S_l, rhs):
  // coefficients -> coefficients. The rhs follows OsrcConfig::mass_only_rhs.
  VectorXc apply_lambda1_inv(const VectorXc &v) const;
  // Same sum with a given weak-form right-hand side: weak form -> coefficients.
  VectorXc apply_lambda1_inv_weak(const VectorXc &w) const;
  // Magnetic-to-electric map: weak form -> coefficients.
  VectorXc mte_precondition(const VectorXc &w) const;
  // Right-preconditioner version: coefficients -> coefficients.
  VectorXc mte_precondition_right(const VectorXc &v) const;

  // Largest relative residual of the constraint row K rho + L^T phi = 0 over the
  // saddle solves performed for v (coefficients).
  double ConstraintResidual(const VectorXc &v) const;

private:
  using SparseSolver = Eigen::SparseLU<Eigen::SparseMatrix<cplx>, Eigen::COLAMDOrdering<int>>;

  // Solves [[dG - N, L], [L^T, K]] (phi, rho) = (rhs, 0) with the cached factor.
  VectorXc SolveSaddle(const SparseSolver &solver, const VectorXc &rhs,
                       VectorXc *rho = nullptr) const;
  std::unique_ptr<SparseSolver> FactorSaddle(cplx d) const;

  int size_;
  int vertices_;
  double kappa_;
  OsrcConfig config_;
  OsrcBlocks blocks_;
  SqrtPadeCoeffs sqrt_;
  InvSqrtPadeCoeffs invsqrt_;
  std::unique_ptr<SparseSolver> lambda2_;
  std::vector<std::unique_ptr<SparseSolver>> sqrt_solvers_;
  std::vector<std::unique_ptr<SparseSolver>> invsqrt_solvers_;
  std::vector<cplx> invsqrt_shift_;
  std::string fingerprint_;
};

}  // namespace osrc

#endif  // OSRC_OSRC_OPS_HPP
