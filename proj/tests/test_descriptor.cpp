#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fatigue/descriptor.hpp"
#include "fatigue/errors.hpp"
#include "support.hpp"

using namespace fatigue;

TEST_CASE("constant patch yields the all-zero descriptor") {
  const Eigen::MatrixXd patch = Eigen::MatrixXd::Constant(32, 64, 0.37);
  const Eigen::VectorXd d = dense_sift(patch);
  CHECK(d.size() == descriptor_length(64, 32));
  CHECK(d.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("descriptor is invariant to a constant intensity offset") {
  // Dyadic intensities (k/256) keep the shifted values exactly
  // representable, so the gradients and the descriptor match bit for bit.
  Eigen::MatrixXd patch(32, 64);
  std::mt19937_64 rng(11);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 64; ++x) {
      patch(y, x) = static_cast<double>(rng() % 192) / 256.0;
    }
  }
  const Eigen::VectorXd base = dense_sift(patch);
  const Eigen::VectorXd offset = dense_sift(patch.array() + 16.0 / 256.0);
  CHECK((base - offset).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("every 128-entry block has norm zero or one") {
  Eigen::MatrixXd patch(40, 80);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 80; ++x) patch(y, x) = unif(rng);
  }
  const Eigen::VectorXd d = dense_sift(patch);
  const SiftParams p;
  REQUIRE(d.size() % p.values_per_keypoint() == 0);
  for (Eigen::Index b = 0; b < d.size(); b += p.values_per_keypoint()) {
    const double norm = d.segment(b, p.values_per_keypoint()).norm();
    CHECK((norm == 0.0 || std::abs(norm - 1.0) <= 1e-9));
  }
}

// Independent brute-force binning for one 16x16 keypoint, kept deliberately
// naive: walk every pixel, compute its gradient the same way, and histogram
// with nested loops.
namespace {

Eigen::VectorXd brute_force_keypoint(const Eigen::MatrixXd& patch, int ax,
                                     int ay) {
  const SiftParams p;
  Eigen::VectorXd hist = Eigen::VectorXd::Zero(128);
  const int h = static_cast<int>(patch.rows());
  const int w = static_cast<int>(patch.cols());
  for (int v = 0; v < 16; ++v) {
    for (int u = 0; u < 16; ++u) {
      const int x = ax + u, y = ay + v;
      const int xm = std::max(x - 1, 0), xp = std::min(x + 1, w - 1);
      const int ym = std::max(y - 1, 0), yp = std::min(y + 1, h - 1);
      const double dx = 0.5 * (patch(y, xp) - patch(y, xm));
      const double dy = 0.5 * (patch(yp, x) - patch(ym, x));
      const double mag = std::hypot(dx, dy);
      if (mag == 0.0) continue;
      double theta = std::atan2(dy, dx);
      if (theta < 0) theta += 2.0 * std::numbers::pi;
      const double g =
          std::exp(-((u - 7.5) * (u - 7.5) + (v - 7.5) * (v - 7.5)) /
                   (2.0 * 8.0 * 8.0));
      const double bx = u / 4.0 - 0.5;
      const double by = v / 4.0 - 0.5;
      const double bo = theta * 8.0 / (2.0 * std::numbers::pi);
      for (int iy = 0; iy < 4; ++iy) {
        const double wy = 1.0 - std::abs(by - iy);
        if (wy <= 0.0) continue;
        for (int ix = 0; ix < 4; ++ix) {
          const double wx = 1.0 - std::abs(bx - ix);
          if (wx <= 0.0) continue;
          for (int io = 0; io < 8; ++io) {
            // circular distance in orientation bins
            double dist = std::abs(bo - io);
            dist = std::min(dist, 8.0 - dist);
            const double wo = 1.0 - dist;
            if (wo <= 0.0) continue;
            hist[(iy * 4 + ix) * 8 + io] += mag * g * wx * wy * wo;
          }
        }
      }
    }
  }
  double norm = hist.norm();
  if (norm > 0.0) {
    hist /= norm;
    hist = hist.cwiseMin(0.2);
    norm = hist.norm();
    if (norm > 0.0) hist /= norm;
  }
  return hist;
}

}  // namespace

TEST_CASE("vertical step edge lands in the horizontal orientation bins") {
  // Single 16x16 keypoint; intensity steps up at column 8.
  Eigen::MatrixXd patch = Eigen::MatrixXd::Zero(16, 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 8; x < 16; ++x) patch(y, x) = 1.0;
  }
  const Eigen::VectorXd d = dense_sift(patch);
  REQUIRE(d.size() == 128);

  const Eigen::VectorXd oracle = brute_force_keypoint(patch, 0, 0);
  CHECK((d - oracle).cwiseAbs().maxCoeff() < 1e-12);

  // A rising step has dx > 0, dy = 0 everywhere it has gradient at all, so
  // only orientation bin 0 may hold energy (bin 4 would be a falling edge).
  double horizontal = 0.0, other = 0.0;
  for (int cell = 0; cell < 16; ++cell) {
    for (int o = 0; o < 8; ++o) {
      const double e = d[cell * 8 + o];
      if (o == 0 || o == 4) {
        horizontal += e;
      } else {
        other += e;
      }
    }
  }
  CHECK(horizontal > 0.0);
  CHECK(other == 0.0);

  // Gradient energy exists only in the two cell columns straddling the
  // edge (the step sits between spatial cells 1 and 2).
  for (int iy = 0; iy < 4; ++iy) {
    for (int ix = 0; ix < 4; ++ix) {
      const double cell_energy = d.segment((iy * 4 + ix) * 8, 8).sum();
      if (ix == 1 || ix == 2) {
        CHECK(cell_energy > 0.0);
      } else {
        CHECK(cell_energy == 0.0);
      }
    }
  }
}

TEST_CASE("dense grid agrees with the brute-force oracle on a textured patch") {
  Eigen::MatrixXd patch(24, 64);
  for (int y = 0; y < 24; ++y) {
    for (int x = 0; x < 64; ++x) {
      patch(y, x) = testsupport::stripe_intensity(x, y, 0.6);
    }
  }
  const Eigen::VectorXd d = dense_sift(patch);
  const SiftParams p;
  const int nx = keypoints_along(64, p.support, p.grid_step);
  const int ny = keypoints_along(24, p.support, p.grid_step);
  REQUIRE(d.size() == static_cast<Eigen::Index>(nx) * ny * 128);
  for (int ky = 0; ky < ny; ++ky) {
    for (int kx = 0; kx < nx; ++kx) {
      const Eigen::VectorXd oracle =
          brute_force_keypoint(patch, kx * 8, ky * 8);
      const Eigen::VectorXd block = d.segment((ky * nx + kx) * 128, 128);
      CHECK((block - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("group descriptor lengths follow the grid rule") {
  CHECK(group_descriptor_length(CueGroup::Eyes) == 2 * 21 * 128);
  CHECK(group_descriptor_length(CueGroup::EyeBottoms) == 2 * 14 * 128);
  CHECK(group_descriptor_length(CueGroup::Cheek) == 49 * 128);
  CHECK(group_descriptor_length(CueGroup::Mouth) == 36 * 128);

  const Image img = testsupport::banded_face_image(10, 30, 50, 70);
  const RoiPatches patches = extract_all(img, testsupport::standard_landmarks());
  for (int g = 0; g < kCueGroupCount; ++g) {
    const CueGroup group = static_cast<CueGroup>(g);
    CHECK(describe_group(patches, group).size() ==
          group_descriptor_length(group));
  }
}

TEST_CASE("eye groups concatenate left then right") {
  const Image img = testsupport::banded_face_image(10, 30, 50, 70);
  RoiPatches patches = extract_all(img, testsupport::standard_landmarks());
  const Eigen::VectorXd eyes = describe_group(patches, CueGroup::Eyes);
  const Eigen::VectorXd left = dense_sift(
      patches[static_cast<int>(RegionKind::LeftEye)].pixels);
  const Eigen::VectorXd right = dense_sift(
      patches[static_cast<int>(RegionKind::RightEye)].pixels);
  CHECK((eyes.head(left.size()).array() == left.array()).all());
  CHECK((eyes.tail(right.size()).array() == right.array()).all());

  // Swapping the patches permutes the halves exactly.
  std::swap(patches[static_cast<int>(RegionKind::LeftEye)].pixels,
            patches[static_cast<int>(RegionKind::RightEye)].pixels);
  const Eigen::VectorXd swapped = describe_group(patches, CueGroup::Eyes);
  CHECK((swapped.head(right.size()).array() == right.array()).all());
  CHECK((swapped.tail(left.size()).array() == left.array()).all());

  // Cheek passes through a single patch verbatim.
  const Eigen::VectorXd cheek = describe_group(patches, CueGroup::Cheek);
  CHECK((cheek.array() == dense_sift(patches[static_cast<int>(RegionKind::Cheek)].pixels).array()).all());
}

TEST_CASE("standardizer: degenerate and hand-computed cases") {
  SUBCASE("single descriptor: mean equals it, std is the floor") {
    Eigen::MatrixXd X(1, 3);
    X << 1.0, -2.0, 7.0;
    const Standardizer s = fit_standardizer(X);
    CHECK((s.mean.array() == X.row(0).transpose().array()).all());
    CHECK((s.std.array() == Standardizer::kStdFloor).all());
  }
  SUBCASE("population convention: {0, 2} has std 1") {
    Eigen::MatrixXd X(2, 1);
    X << 0.0, 2.0;
    const Standardizer s = fit_standardizer(X);
    CHECK(s.mean[0] == doctest::Approx(1.0));
    CHECK(s.std[0] == doctest::Approx(1.0));
  }
  SUBCASE("empty input is an error") {
    CHECK_THROWS_AS(fit_standardizer(Eigen::MatrixXd(0, 4)), InputError);
  }
}

TEST_CASE("standardizing the training set itself zeroes mean, unit std") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(5.0, 3.0);
  Eigen::MatrixXd X(40, 6);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = gauss(rng);
  X.col(5).setConstant(2.5);  // constant dimension exercises the floor

  const Standardizer s = fit_standardizer(X);
  const Eigen::MatrixXd Z = standardize_rows(s, X);
  for (int d = 0; d < 5; ++d) {
    CHECK(std::abs(Z.col(d).mean()) < 1e-9);
    const double var = (Z.col(d).array() - Z.col(d).mean()).square().mean();
    CHECK(std::sqrt(var) == doctest::Approx(1.0).epsilon(1e-6));
  }
  // Constant dimension: finite output, zero after centering.
  CHECK(Z.col(5).cwiseAbs().maxCoeff() < 1e+12);
  CHECK(std::isfinite(Z.col(5).sum()));
}

TEST_CASE("apply_standardizer algebra") {
  Standardizer s;
  s.mean = Eigen::Vector2d(1.0, -1.0);
  s.std = Eigen::Vector2d(2.0, 4.0);

  SUBCASE("v == mean maps to zero") {
    CHECK(apply_standardizer(s, s.mean).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("double application equals the expanded affine form") {
    const Eigen::Vector2d v(3.0, 7.0);
    const Eigen::VectorXd twice = apply_standardizer(s, apply_standardizer(s, v));
    const Eigen::Vector2d expected =
        (((v - s.mean).cwiseQuotient(s.std) - s.mean).cwiseQuotient(s.std));
    CHECK((twice - expected).cwiseAbs().maxCoeff() == 0.0);
    // And it is not idempotent.
    CHECK((twice - apply_standardizer(s, v)).cwiseAbs().maxCoeff() > 0.1);
  }
  SUBCASE("length mismatch is an input error") {
    CHECK_THROWS_AS(apply_standardizer(s, Eigen::Vector3d(1, 2, 3)), InputError);
  }
}
