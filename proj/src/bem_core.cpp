#include "osrc/bem_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "osrc/errors.hpp"
#include "osrc/quadrature.hpp"
#include "osrc/static_potentials.hpp"

namespace osrc
{

namespace
{

constexpr double kFourPi = 4.0 * std::numbers::pi;
const cplx kI(0.0, 1.0);

struct PointSet
{
  std::vector<Vec3> x;
  std::vector<double> w;  // sums to one
};

PointSet MapRule(const TriangleMesh &mesh, int t, const TriangleRule &rule)
{
  const auto &f = mesh.triangles[t];
  const Vec3 &a = mesh.vertices[f[0]], &b = mesh.vertices[f[1]], &c = mesh.vertices[f[2]];
  PointSet p;
  p.x.reserve(rule.Size());
  for (int q = 0; q < rule.Size(); ++q)
  {
    p.x.push_back(a + rule.u[q] * (b - a) + rule.v[q] * (c - a));
  }
  p.w = rule.w;
  return p;
}

// Appends the rule mapped onto (p0, p1, p2) with weights scaled by the area fraction.
void AppendMapped(const Vec3 &p0, const Vec3 &p1, const Vec3 &p2, const TriangleRule &rule,
                  double fraction, PointSet &out)
{
  for (int q = 0; q < rule.Size(); ++q)
  {
    out.x.push_back(p0 + rule.u[q] * (p1 - p0) + rule.v[q] * (p2 - p0));
    out.w.push_back(fraction * rule.w[q]);
  }
}

// Outer points on triangle a for a pair touching triangle b. The collapsed
// corner of the rule (u, v) = (1, 0) is placed on each shared vertex; an
// edge-adjacent triangle is split at the midpoint of the shared edge.
PointSet TouchingOuterPoints(const TriangleMesh &mesh, int a, int b, const TriangleRule &rule)
{
  const auto &fa = mesh.triangles[a];
  const auto &fb = mesh.triangles[b];
  std::vector<int> shared, other;
  for (int u : fa)
  {
    (std::find(fb.begin(), fb.end(), u) != fb.end() ? shared : other).push_back(u);
  }
  const auto &v = mesh.vertices;
  PointSet out;
  if (shared.size() == 1)
  {
    AppendMapped(v[other[0]], v[shared[0]], v[other[1]], rule, 1.0, out);
  }
  else if (shared.size() == 2)
  {
    const Vec3 mid = 0.5 * (v[shared[0]] + v[shared[1]]);
    AppendMapped(v[other[0]], v[shared[0]], mid, rule, 0.5, out);
    AppendMapped(v[other[0]], v[shared[1]], mid, rule, 0.5, out);
  }
  else
  {
    return MapRule(mesh, a, rule);
  }
  return out;
}

int SharedVertices(const TriangleMesh &mesh, int a, int b)
{
  int n = 0;
  for (int u : mesh.triangles[a])
  {
    for (int v : mesh.triangles[b])
    {
      n += u == v ? 1 : 0;
    }
  }
  return n;
}

// 4 pi times the smooth remainder of e^{ikR}/R after removing 1/R - k^2 R/2.
cplx RemainderValue(double kappa, double r)
{
  const double x = kappa * r;
  if (x < 1e-3)
  {
    return kI * kappa - kI * kappa * kappa * kappa * r * r / 6.0 +
           std::pow(kappa, 4) * r * r * r / 24.0;
  }
  const double s = std::sin(0.5 * x);
  const cplx em1(-2.0 * s * s, std::sin(x));
  return em1 / r + 0.5 * kappa * kappa * r;
}

// 4 pi times the radial derivative of the remainder.
cplx RemainderSlope(double kappa, double r)
{
  const double x = kappa * r;
  if (x < 0.05)
  {
    // sum_{n>=3} (ik)^n (n-1) R^{n-2} / n!
    cplx term = 0.0, power = std::pow(kI * kappa, 3);
    double fact = 6.0, rp = r;
    for (int n = 3; n <= 10; ++n)
    {
      term += power * (n - 1.0) * rp / fact;
      power *= kI * kappa;
      rp *= r;
      fact *= (n + 1.0);
    }
    return term;
  }
  const cplx e = std::exp(kI * x);
  const double s = std::sin(0.5 * x);
  const cplx em1(-2.0 * s * s, std::sin(x));
  return (kI * x * e - em1) / (r * r) + 0.5 * kappa * kappa;
}

// Turns the accumulated integrals into the canonical EFIE and double-layer blocks.
PairBlocks Finish(const Eigen::Matrix3cd &q, const cplx p, const Eigen::Matrix3cd &d,
                  double kappa)
{
  PairBlocks out;
  for (int i = 0; i < 3; ++i)
  {
    for (int j = 0; j < 3; ++j)
    {
      const cplx z = kI * kappa * q(i, j) / 4.0 - kI / kappa * p;
      out.efie(i, j) = -z;
      out.dlayer(i, j) = d(i, j) / 4.0;
    }
  }
  return out;
}

PairBlocks RegularPair(const TriangleMesh &mesh, int a, int b, double kappa,
                       const PointSet &pa, const PointSet &pb)
{
  cplx s0 = 0.0, sxy = 0.0, s1 = 0.0;
  Eigen::Vector3cd sx = Eigen::Vector3cd::Zero(), sy = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd gp = Eigen::Vector3cd::Zero(), gq = Eigen::Vector3cd::Zero(),
                   gu = Eigen::Vector3cd::Zero();
  for (size_t i = 0; i < pa.x.size(); ++i)
  {
    const Vec3 &x = pa.x[i];
    for (size_t j = 0; j < pb.x.size(); ++j)
    {
      const Vec3 &y = pb.x[j];
      const Vec3 diff = y - x;
      const double r = diff.norm();
      const double w = pa.w[i] * pb.w[j];
      const cplx g = std::exp(kI * kappa * r) / (kFourPi * r);
      const cplx gw = g * w;
      s0 += gw;
      sx += gw * x.cast<cplx>();
      sy += gw * y.cast<cplx>();
      sxy += gw * x.dot(y);
      // grad_y G = (ik - 1/R) G (y - x)/R
      const cplx f = (kI * kappa - 1.0 / r) * gw / r;
      const Eigen::Vector3cd grad = f * diff.cast<cplx>();
      gp += grad;
      gq += CrossC(grad, y.cast<cplx>());
      gu += CrossC(x.cast<cplx>(), grad);
      s1 += x.cast<cplx>().dot(CrossC(grad, y.cast<cplx>()));
    }
  }
  const auto &fa = mesh.triangles[a];
  const auto &fb = mesh.triangles[b];
  Eigen::Matrix3cd q, d;
  for (int i = 0; i < 3; ++i)
  {
    const Vec3 &va = mesh.vertices[fa[i]];
    for (int j = 0; j < 3; ++j)
    {
      const Vec3 &vb = mesh.vertices[fb[j]];
      q(i, j) = sxy - vb.cast<cplx>().dot(sx) - va.cast<cplx>().dot(sy) + va.dot(vb) * s0;
      d(i, j) = s1 - vb.cast<cplx>().dot(gu) - va.cast<cplx>().dot(gq) +
                va.cast<cplx>().dot(CrossC(gp, vb.cast<cplx>()));
    }
  }
  return Finish(q, s0, d, kappa);
}

PairBlocks SingularPair(const TriangleMesh &mesh, int a, int b, double kappa,
                        const PointSet &outer, const PointSet &inner)
{
  const auto &fa = mesh.triangles[a];
  const auto &fb = mesh.triangles[b];
  const Vec3 &b0 = mesh.vertices[fb[0]], &b1 = mesh.vertices[fb[1]], &b2 = mesh.vertices[fb[2]];
  const double area_b = mesh.Area(b);
  const double k2 = kappa * kappa;
  Eigen::Matrix3cd q = Eigen::Matrix3cd::Zero(), d = Eigen::Matrix3cd::Zero();
  cplx p = 0.0;
  for (size_t i = 0; i < outer.x.size(); ++i)
  {
    const Vec3 &x = outer.x[i];
    const StaticPotentials st = ComputeStaticPotentials(b0, b1, b2, x);
    cplx i0 = st.inv_r - 0.5 * k2 * st.r;
    Eigen::Vector3cd iv = (st.inv_r_vec - 0.5 * k2 * st.r_vec).cast<cplx>();
    Eigen::Vector3cd ig = (st.grad_inv_r - 0.5 * k2 * st.inv_r_vec).cast<cplx>();
    for (size_t j = 0; j < inner.x.size(); ++j)
    {
      const Vec3 diff = inner.x[j] - x;
      const double r = diff.norm();
      const double w = inner.w[j] * area_b;
      const cplx g = RemainderValue(kappa, r) * w;
      i0 += g;
      iv += g * diff.cast<cplx>();
      if (r > 0.0)
      {
        ig += (RemainderSlope(kappa, r) * w / r) * diff.cast<cplx>();
      }
    }
    i0 /= kFourPi;
    iv /= kFourPi;
    ig /= kFourPi;
    const double wo = outer.w[i] / area_b;
    p += wo * i0;
    for (int ii = 0; ii < 3; ++ii)
    {
      const Eigen::Vector3cd xa = (x - mesh.vertices[fa[ii]]).cast<cplx>();
      for (int jj = 0; jj < 3; ++jj)
      {
        const Eigen::Vector3cd xb = (x - mesh.vertices[fb[jj]]).cast<cplx>();
        q(ii, jj) += wo * xa.dot(iv + xb * i0);
        d(ii, jj) += wo * xa.dot(CrossC(ig, xb));
      }
    }
  }
  return Finish(q, p, d, kappa);
}

double MeanEdgeLength(const RwgSpace &space)
{
  double s = 0.0;
  for (const auto &e : space.edges)
  {
    s += e.length;
  }
  return s / space.Size();
}

struct RuleCache
{
  explicit RuleCache(const QuadratureConfig &q)
      : valid((q.Validate(), true)),
        regular(TriangleQuadrature(q.regular_degree)),
        near(TriangleQuadrature(q.near_degree)),
        outer(GradedCollapsedRule(q.singular_outer_degree / 2 + 1)),
        vertex_outer(GradedCollapsedRule(q.vertex_outer_degree / 2 + 1)),
        inner(TriangleQuadrature(q.singular_inner_degree))
  {
  }
  bool valid;
  TriangleRule regular, near, outer, vertex_outer, inner;
};

PairBlocks PairWithRules(const TriangleMesh &mesh, int a, int b, double kappa,
                         const QuadratureConfig &quad, const RuleCache &rules, double h_avg,
                         const std::vector<PointSet> &regular_points)
{
  const int shared = SharedVertices(mesh, a, b);
  if (shared > 0)
  {
    return SingularPair(mesh, a, b, kappa,
                        TouchingOuterPoints(mesh, a, b,
                                            shared == 1 ? rules.vertex_outer : rules.outer),
                        MapRule(mesh, b, rules.inner));
  }
  const double dist = (mesh.Centroid(a) - mesh.Centroid(b)).norm();
  if (dist < quad.near_factor * h_avg)
  {
    return RegularPair(mesh, a, b, kappa, MapRule(mesh, a, rules.near),
                       MapRule(mesh, b, rules.near));
  }
  return RegularPair(mesh, a, b, kappa, regular_points[a], regular_points[b]);
}

}  // namespace

void QuadratureConfig::Validate() const
{
  auto in_range = [](int d, int lo) { return d >= lo && d <= 160; };
  if (!in_range(regular_degree, 1) || !in_range(near_degree, 1) ||
      !in_range(singular_outer_degree, 4) || !in_range(vertex_outer_degree, 4) ||
      !in_range(singular_inner_degree, 2))
  {
    throw ParameterError("quadrature degree outside the supported range");
  }
  if (near_degree < regular_degree)
  {
    throw ParameterError("near-pair quadrature degree below the regular degree");
  }
  if (!(near_factor >= 0.0))
  {
    throw ParameterError("near-pair factor must be non-negative");
  }
}

namespace
{

void CheckKappa(double kappa)
{
  if (!(kappa > 0.0))
  {
    throw ParameterError("wavenumber must be positive");
  }
}

// Loops over unordered triangle pairs and scatters the symmetric blocks.
void AssembleDense(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
                   const QuadratureConfig &quad, DenseMatrix *efie, DenseMatrix *dlayer)
{
  CheckKappa(kappa);
  const int n = space.Size();
  if (efie)
  {
    efie->setZero(n, n);
  }
  if (dlayer)
  {
    dlayer->setZero(n, n);
  }
  const RuleCache rules(quad);
  const double h_avg = MeanEdgeLength(space);
  std::vector<PointSet> regular_points;
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    regular_points.push_back(MapRule(mesh, t, rules.regular));
  }
  for (int a = 0; a < mesh.NumTriangles(); ++a)
  {
    for (int b = a; b < mesh.NumTriangles(); ++b)
    {
      PairBlocks blk = PairWithRules(mesh, a, b, kappa, quad, rules, h_avg, regular_points);
      if (a == b)
      {
        blk.efie = 0.5 * (blk.efie + blk.efie.transpose()).eval();
        blk.dlayer = 0.5 * (blk.dlayer + blk.dlayer.transpose()).eval();
      }
      for (int i = 0; i < 3; ++i)
      {
        const int ki = space.tri_edges[a][i];
        const double si = space.tri_signs[a][i];
        for (int j = 0; j < 3; ++j)
        {
          const int kj = space.tri_edges[b][j];
          const double s = si * space.tri_signs[b][j];
          if (efie)
          {
            (*efie)(ki, kj) += s * blk.efie(i, j);
            if (a != b)
            {
              (*efie)(kj, ki) += s * blk.efie(i, j);
            }
          }
          if (dlayer)
          {
            (*dlayer)(ki, kj) += s * blk.dlayer(i, j);
            if (a != b)
            {
              (*dlayer)(kj, ki) += s * blk.dlayer(i, j);
            }
          }
        }
      }
    }
  }
}

SparseMatrix FromTriplets(Eigen::Index rows, Eigen::Index cols,
                          const std::vector<Eigen::Triplet<cplx>> &triplets)
{
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

Eigen::Index DiscreteOperator::Rows() const
{
  return storage == Storage::Dense ? dense.rows() : sparse.rows();
}

Eigen::Index DiscreteOperator::Cols() const
{
  return storage == Storage::Dense ? dense.cols() : sparse.cols();
}

VectorXc DiscreteOperator::Apply(const VectorXc &x) const
{
  if (x.size() != Cols())
  {
    throw DimensionError("operator '" + label + "' applied to a vector of wrong length");
  }
  return storage == Storage::Dense ? VectorXc(dense * x) : VectorXc(sparse * x);
}

DenseMatrix DiscreteOperator::ToDense() const
{
  return storage == Storage::Dense ? dense : DenseMatrix(sparse);
}

Eigen::Vector3cd PlaneWave::Field(const Vec3 &x) const
{
  return polarization.cast<cplx>() * std::exp(kI * kappa * direction.dot(x));
}

void PlaneWave::Validate() const
{
  if (!(kappa > 0.0))
  {
    throw ParameterError("plane wave needs a positive wavenumber");
  }
  if (std::abs(direction.norm() - 1.0) > 1e-12)
  {
    throw ParameterError("plane wave direction must be a unit vector");
  }
  if (std::abs(polarization.dot(direction)) > 1e-12)
  {
    throw ParameterError("plane wave polarization must be orthogonal to its direction");
  }
}

PairBlocks IntegratePair(const TriangleMesh &mesh, int a, int b, double kappa,
                         const QuadratureConfig &quad, double h_avg)
{
  CheckKappa(kappa);
  const RuleCache rules(quad);
  std::vector<PointSet> regular_points(mesh.NumTriangles());
  regular_points[a] = MapRule(mesh, a, rules.regular);
  regular_points[b] = MapRule(mesh, b, rules.regular);
  return PairWithRules(mesh, a, b, kappa, quad, rules, h_avg, regular_points);
}

PairBlocks IntegratePairBruteForce(const TriangleMesh &mesh, int a, int b, double kappa, int n)
{
  const TriangleRule rule = CollapsedGaussRule(n);
  return RegularPair(mesh, a, b, kappa, MapRule(mesh, a, rule), MapRule(mesh, b, rule));
}

DiscreteOperator assemble_efie(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
                               const QuadratureConfig &quad)
{
  DiscreteOperator op;
  AssembleDense(mesh, space, kappa, quad, &op.dense, nullptr);
  op.domain = SpaceTag::Rwg;
  op.dual = SpaceTag::Snc;
  op.label = "efie: -(T phi_j, phi_k)";
  return op;
}

DiscreteOperator assemble_dlayer(const TriangleMesh &mesh, const RwgSpace &space, double kappa,
                                 const QuadratureConfig &quad)
{
  DiscreteOperator op;
  AssembleDense(mesh, space, kappa, quad, nullptr, &op.dense);
  op.domain = SpaceTag::Rwg;
  op.dual = SpaceTag::Snc;
  op.label = "double layer: (K phi_j, phi_k)";
  return op;
}

DiscreteOperator assemble_mass(const TriangleMesh &mesh, const RwgSpace &space, MassKind kind)
{
  DiscreteOperator op;
  op.storage = DiscreteOperator::Storage::Sparse;
  std::vector<Eigen::Triplet<cplx>> trip;
  if (kind == MassKind::P1P1)
  {
    for (int t = 0; t < mesh.NumTriangles(); ++t)
    {
      const double area = mesh.Area(t);
      for (int i = 0; i < 3; ++i)
      {
        for (int j = 0; j < 3; ++j)
        {
          trip.emplace_back(mesh.triangles[t][i], mesh.triangles[t][j],
                            area / 12.0 * (i == j ? 2.0 : 1.0));
        }
      }
    }
    op.sparse = FromTriplets(mesh.NumVertices(), mesh.NumVertices(), trip);
    op.domain = op.dual = SpaceTag::P1;
    op.label = "mass P1-P1";
    return op;
  }
  const TriangleRule rule = TriangleQuadrature(2);
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    const PointSet pts = MapRule(mesh, t, rule);
    const double area = mesh.Area(t);
    const Vec3 n = mesh.Normal(t);
    for (int i = 0; i < 3; ++i)
    {
      const Vec3 &vi = mesh.vertices[mesh.triangles[t][i]];
      for (int j = 0; j < 3; ++j)
      {
        const Vec3 &vj = mesh.vertices[mesh.triangles[t][j]];
        double s = 0.0;
        for (size_t q = 0; q < pts.x.size(); ++q)
        {
          const Vec3 fi = pts.x[q] - vi, fj = pts.x[q] - vj;
          s += pts.w[q] * (kind == MassKind::RwgRwg ? fi.dot(fj) : fi.dot(fj.cross(n)));
        }
        const double sign = space.tri_signs[t][i] * space.tri_signs[t][j];
        trip.emplace_back(space.tri_edges[t][i], space.tri_edges[t][j],
                          sign * s / (4.0 * area));
      }
    }
  }
  op.sparse = FromTriplets(space.Size(), space.Size(), trip);
  op.dual = SpaceTag::Rwg;
  op.domain = kind == MassKind::RwgRwg ? SpaceTag::Rwg : SpaceTag::Snc;
  op.label = kind == MassKind::RwgRwg ? "mass RWG-RWG" : "mass RWG-SNC";
  return op;
}

OsrcBlocks assemble_osrc_sparse(const TriangleMesh &mesh, const RwgSpace &space, cplx kappa_eps)
{
  if (kappa_eps == 0.0)
  {
    throw ParameterError("damped wavenumber must be non-zero");
  }
  OsrcBlocks out;
  out.kappa_eps = kappa_eps;
  const cplx k2 = kappa_eps * kappa_eps;
  out.G = assemble_mass(mesh, space, MassKind::RwgRwg).sparse;
  out.K = (k2 * assemble_mass(mesh, space, MassKind::P1P1).sparse).eval();
  std::vector<Eigen::Triplet<cplx>> tn, tl;
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    const auto &f = mesh.triangles[t];
    const double area = mesh.Area(t);
    const Vec3 n = mesh.Normal(t);
    const Vec3 c = mesh.Centroid(t);
    for (int i = 0; i < 3; ++i)
    {
      const int ki = space.tri_edges[t][i];
      const double si = space.tri_signs[t][i];
      for (int j = 0; j < 3; ++j)
      {
        tn.emplace_back(ki, space.tri_edges[t][j], si * space.tri_signs[t][j] / (area * k2));
      }
      // int_T (phi_i x n) = s_i (c - v_i) / 2 x n
      const Vec3 snc = si * 0.5 * (c - mesh.vertices[f[i]]).cross(n);
      for (int m = 0; m < 3; ++m)
      {
        const Vec3 grad =
            n.cross(mesh.vertices[f[(m + 2) % 3]] - mesh.vertices[f[(m + 1) % 3]]) / (2.0 * area);
        tl.emplace_back(ki, f[m], grad.dot(snc));
      }
    }
  }
  out.N = FromTriplets(space.Size(), space.Size(), tn);
  out.L = FromTriplets(space.Size(), mesh.NumVertices(), tl);
  return out;
}

VectorXc ProjectTangentialTrace(const TriangleMesh &mesh, const RwgSpace &space,
                                const PlaneWave &wave)
{
  wave.Validate();
  const TriangleRule rule = TriangleQuadrature(8);
  VectorXc load = VectorXc::Zero(space.Size());
  for (int t = 0; t < mesh.NumTriangles(); ++t)
  {
    const PointSet pts = MapRule(mesh, t, rule);
    const Vec3 n = mesh.Normal(t);
    for (size_t q = 0; q < pts.x.size(); ++q)
    {
      const Eigen::Vector3cd m = CrossC(wave.Field(pts.x[q]), n.cast<cplx>());
      for (int i = 0; i < 3; ++i)
      {
        const Vec3 phi = space.tri_signs[t][i] * (pts.x[q] - mesh.vertices[mesh.triangles[t][i]]) / 2.0;
        load[space.tri_edges[t][i]] += pts.w[q] * phi.cast<cplx>().dot(m);
      }
    }
  }
  const SparseMatrix g = assemble_mass(mesh, space, MassKind::RwgRwg).sparse;
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(Eigen::SparseMatrix<cplx>(g));
  if (lu.info() != Eigen::Success)
  {
    throw FactorizationError("mass matrix factorization failed");
  }
  return lu.solve(load);
}

VectorXc incident_rhs(const TriangleMesh &mesh, const RwgSpace &space, const PlaneWave &wave,
                      RhsMode mode, const DenseMatrix *dlayer, const QuadratureConfig &quad)
{
  wave.Validate();
  if (mode == RhsMode::Indirect)
  {
    const TriangleRule rule = TriangleQuadrature(8);
    VectorXc b = VectorXc::Zero(space.Size());
    for (int t = 0; t < mesh.NumTriangles(); ++t)
    {
      const PointSet pts = MapRule(mesh, t, rule);
      for (size_t q = 0; q < pts.x.size(); ++q)
      {
        const Eigen::Vector3cd e = wave.Field(pts.x[q]);
        for (int i = 0; i < 3; ++i)
        {
          const Vec3 phi =
              space.tri_signs[t][i] * (pts.x[q] - mesh.vertices[mesh.triangles[t][i]]) / 2.0;
          b[space.tri_edges[t][i]] += pts.w[q] * phi.cast<cplx>().dot(e);
        }
      }
    }
    return b;
  }
  const VectorXc a = ProjectTangentialTrace(mesh, space, wave);
  const SparseMatrix twist = assemble_mass(mesh, space, MassKind::RwgSnc).sparse;
  VectorXc rhs = 0.5 * (twist * a);
  if (dlayer)
  {
    rhs += (*dlayer) * a;
  }
  else
  {
    rhs += assemble_dlayer(mesh, space, wave.kappa, quad).dense * a;
  }
  return rhs;
}

std::string SpaceTagName(SpaceTag tag)
{
  switch (tag)
  {
    case SpaceTag::Rwg:
      return "RWG";
    case SpaceTag::Snc:
      return "SNC";
    case SpaceTag::P1:
      return "P1";
  }
  return "unknown";
}

}  // namespace osrc
