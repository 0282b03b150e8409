// SPDX-License-Identifier: Apache-2.0
#include "hpsr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "hpsr/kdtree.hpp"
#include "hpsr/parallel.hpp"

namespace hpsr {

namespace {

// Per-point squared errors are collected into a vector and summed
// sequentially, so results are independent of the thread count.
double mean_of(const std::vector<double>& values)
{
  double sum = 0.0;
  for (double v : values)
    sum += v;
  return sum / double(values.size());
}

void require_non_empty(const VoxelCloud& A, const VoxelCloud& B)
{
  if (A.empty() || B.empty())
    throw ArgError("empty cloud");
}

}  // namespace

double d1_mse_directional(const VoxelCloud& A, const VoxelCloud& B)
{
  require_non_empty(A, B);
  KdTree tree(B.points);
  std::vector<double> e2(A.size());
  parallel_for(A.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; i++) {
      std::size_t j = tree.nearest(A.points[i]);
      e2[i] = double(squared_distance(A.points[i], tree.point(j)));
    }
  });
  return mean_of(e2);
}

double d1_mse(const VoxelCloud& A, const VoxelCloud& B)
{
  return std::max(d1_mse_directional(A, B), d1_mse_directional(B, A));
}

double d2_mse_directional(const VoxelCloud& A, const VoxelCloud& B,
                          const NormalField& normals_B)
{
  require_non_empty(A, B);
  if (normals_B.size() != B.size())
    throw ArgError("normals missing or misaligned; run estimate_normals");
  KdTree tree(B.points);
  std::vector<double> e2(A.size());
  parallel_for(A.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; i++) {
      std::size_t j = tree.nearest(A.points[i]);
      const Voxel& a = A.points[i];
      const Voxel& b = tree.point(j);
      const std::array<double, 3>& n = normals_B.normals[j];
      double proj = (a.x - b.x) * n[0] + (a.y - b.y) * n[1]
        + (a.z - b.z) * n[2];
      e2[i] = proj * proj;
    }
  });
  return mean_of(e2);
}

double d2_mse(const VoxelCloud& A, const VoxelCloud& B,
              const NormalField& normals_A, const NormalField& normals_B)
{
  return std::max(d2_mse_directional(A, B, normals_B),
                  d2_mse_directional(B, A, normals_A));
}

NormalField estimate_normals(const VoxelCloud& cloud, int k)
{
  if (k < 3)
    throw ArgError("normal estimation needs k >= 3");
  if (cloud.size() <= std::size_t(k))
    throw ArgError("normal estimation needs more than k points");

  KdTree tree(cloud.points);
  NormalField field;
  field.normals.resize(cloud.size());
  std::vector<int> degenerate(cloud.size(), 0);

  parallel_for(cloud.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; i++) {
      std::vector<std::size_t> nn = tree.knearest(cloud.points[i],
                                                  std::size_t(k));
      Eigen::Vector3d mean = Eigen::Vector3d::Zero();
      for (std::size_t j : nn) {
        const Voxel& v = cloud.points[j];
        mean += Eigen::Vector3d(v.x, v.y, v.z);
      }
      mean /= double(nn.size());
      Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
      for (std::size_t j : nn) {
        const Voxel& v = cloud.points[j];
        Eigen::Vector3d d = Eigen::Vector3d(v.x, v.y, v.z) - mean;
        cov += d * d.transpose();
      }
      cov /= double(nn.size());

      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
      Eigen::Vector3d evals = solver.eigenvalues();  // ascending
      // Rank < 2 (colinear or tighter): the normal direction is
      // underdetermined; fall back to +z.
      if (evals(1) <= 1e-9 * std::max(evals(2), 1.0)) {
        field.normals[i] = {0.0, 0.0, 1.0};
        degenerate[i] = 1;
        continue;
      }
      Eigen::Vector3d n = solver.eigenvectors().col(0).normalized();
      if (n.z() < 0 || (n.z() == 0 && (n.y() < 0 || (n.y() == 0 && n.x() < 0))))
        n = -n;
      field.normals[i] = {n.x(), n.y(), n.z()};
    }
  });

  for (int d : degenerate)
    field.degenerate_count += d;
  return field;
}

double psnr(double mse, int bitdepth)
{
  if (mse < 0)
    throw ArgError("negative MSE");
  if (mse == 0)
    return std::numeric_limits<double>::infinity();
  double peak = double((std::int64_t(1) << bitdepth) - 1);
  return 10.0 * std::log10(3.0 * peak * peak / mse);
}

namespace {

// Least-squares cubic fit of y over x; x is pre-shifted by the caller for
// conditioning.
Eigen::Vector4d fit_cubic(const std::vector<double>& x,
                          const std::vector<double>& y)
{
  Eigen::MatrixXd V(x.size(), 4);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); i++) {
    V(i, 0) = 1.0;
    V(i, 1) = x[i];
    V(i, 2) = x[i] * x[i];
    V(i, 3) = x[i] * x[i] * x[i];
    b(i) = y[i];
  }
  return V.colPivHouseholderQr().solve(b);
}

double integrate_cubic(const Eigen::Vector4d& p, double lo, double hi)
{
  auto antiderivative = [&](double t) {
    return p(0) * t + p(1) * t * t / 2 + p(2) * t * t * t / 3
      + p(3) * t * t * t * t / 4;
  };
  return antiderivative(hi) - antiderivative(lo);
}

void extract_curve(const std::vector<RdPoint>& curve, Distortion which,
                   std::vector<double>& psnrs, std::vector<double>& log_rates)
{
  if (curve.size() < 4)
    throw ArgError("bd_rate needs at least 4 points per curve");
  double prev_bpp = 0.0;
  for (const RdPoint& pt : curve) {
    if (!(pt.bpp > prev_bpp))
      throw ArgError("bd_rate curves must be strictly increasing in rate");
    prev_bpp = pt.bpp;
    double q = which == Distortion::D1 ? pt.d1_psnr : pt.d2_psnr;
    if (!std::isfinite(q))
      throw ArgError("bd_rate needs finite PSNR values");
    psnrs.push_back(q);
    log_rates.push_back(std::log10(pt.bpp));
  }
}

}  // namespace

double bd_rate(const std::vector<RdPoint>& curveA,
               const std::vector<RdPoint>& curveB, Distortion which)
{
  std::vector<double> qa, ra, qb, rb;
  extract_curve(curveA, which, qa, ra);
  extract_curve(curveB, which, qb, rb);

  double lo = std::max(*std::min_element(qa.begin(), qa.end()),
                       *std::min_element(qb.begin(), qb.end()));
  double hi = std::min(*std::max_element(qa.begin(), qa.end()),
                       *std::max_element(qb.begin(), qb.end()));
  if (!(lo < hi))
    throw ArgError("no overlap between the PSNR ranges");

  // Shared shift keeps the Vandermonde systems well conditioned without
  // changing either fitted function.
  double shift = (lo + hi) / 2;
  for (double& v : qa)
    v -= shift;
  for (double& v : qb)
    v -= shift;

  Eigen::Vector4d pa = fit_cubic(qa, ra);
  Eigen::Vector4d pb = fit_cubic(qb, rb);
  double gap = (integrate_cubic(pb, lo - shift, hi - shift)
                - integrate_cubic(pa, lo - shift, hi - shift))
    / (hi - lo);
  return 100.0 * (std::pow(10.0, gap) - 1.0);
}

}  // namespace hpsr
