#include "fatigue/sift.hpp"

#include <cmath>
#include <numbers>

namespace fatigue {

namespace {

struct Gradients {
  Eigen::MatrixXd magnitude;
  Eigen::MatrixXd orientation;  // radians in [0, 2*pi)
};

// Central differences with replicated borders. Differencing removes any
// constant intensity offset, which is what makes the descriptor invariant
// to brightness shifts.
Gradients compute_gradients(const Eigen::MatrixXd& patch) {
  const int h = static_cast<int>(patch.rows());
  const int w = static_cast<int>(patch.cols());
  Gradients g{Eigen::MatrixXd(h, w), Eigen::MatrixXd(h, w)};
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (int y = 0; y < h; ++y) {
    const int ym = std::max(y - 1, 0);
    const int yp = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = std::max(x - 1, 0);
      const int xp = std::min(x + 1, w - 1);
      const double dx = 0.5 * (patch(y, xp) - patch(y, xm));
      const double dy = 0.5 * (patch(yp, x) - patch(ym, x));
      g.magnitude(y, x) = std::hypot(dx, dy);
      double theta = std::atan2(dy, dx);
      if (theta < 0.0) theta += kTwoPi;
      if (theta >= kTwoPi) theta = 0.0;
      g.orientation(y, x) = theta;
    }
  }
  return g;
}

}  // namespace

Eigen::VectorXd dense_sift(const Eigen::MatrixXd& patch, const SiftParams& p) {
  const int h = static_cast<int>(patch.rows());
  const int w = static_cast<int>(patch.cols());
  const int nx = keypoints_along(w, p.support, p.grid_step);
  const int ny = keypoints_along(h, p.support, p.grid_step);
  const int block = p.values_per_keypoint();
  Eigen::VectorXd descriptor = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(nx) * ny * block);
  if (nx == 0 || ny == 0) return descriptor;

  const Gradients grads = compute_gradients(patch);

  const double cell_px = static_cast<double>(p.support) / p.spatial_cells;
  const double center = 0.5 * (p.support - 1);
  const double sigma = p.sigma_ratio * p.support;
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
  const double bins_per_rad = p.orientation_bins / (2.0 * std::numbers::pi);
  const int nbo = p.orientation_bins;
  const int nbs = p.spatial_cells;

  for (int ky = 0; ky < ny; ++ky) {
    for (int kx = 0; kx < nx; ++kx) {
      const int ax = kx * p.grid_step;
      const int ay = ky * p.grid_step;
      auto hist = descriptor.segment(
          (static_cast<Eigen::Index>(ky) * nx + kx) * block, block);

      for (int v = 0; v < p.support; ++v) {
        for (int u = 0; u < p.support; ++u) {
          const double mag = grads.magnitude(ay + v, ax + u);
          if (mag == 0.0) continue;
          const double du = u - center;
          const double dv = v - center;
          const double weight =
              mag * std::exp(-(du * du + dv * dv) * inv_two_sigma2);

          // Trilinear soft binning: spatial cell coordinates have integer
          // values at cell centers, the orientation coordinate at bin
          // centers (wrapping modulo nbo).
          const double bx = u / cell_px - 0.5;
          const double by = v / cell_px - 0.5;
          const double bo = grads.orientation(ay + v, ax + u) * bins_per_rad;

          const int ix0 = static_cast<int>(std::floor(bx));
          const int iy0 = static_cast<int>(std::floor(by));
          const int io0 = static_cast<int>(std::floor(bo));
          const double fx = bx - ix0;
          const double fy = by - iy0;
          const double fo = bo - io0;

          for (int dyb = 0; dyb < 2; ++dyb) {
            const int iy = iy0 + dyb;
            if (iy < 0 || iy >= nbs) continue;
            const double wy = dyb ? fy : 1.0 - fy;
            for (int dxb = 0; dxb < 2; ++dxb) {
              const int ix = ix0 + dxb;
              if (ix < 0 || ix >= nbs) continue;
              const double wx = dxb ? fx : 1.0 - fx;
              for (int dob = 0; dob < 2; ++dob) {
                const int io = (io0 + dob) % nbo;
                const double wo = dob ? fo : 1.0 - fo;
                hist[(iy * nbs + ix) * nbo + io] += weight * wy * wx * wo;
              }
            }
          }
        }
      }

      double norm = hist.norm();
      if (norm > 0.0) {
        hist /= norm;
        hist = hist.cwiseMin(p.clamp);
        norm = hist.norm();
        if (norm > 0.0) hist /= norm;
      }
    }
  }
  return descriptor;
}

}  // namespace fatigue
