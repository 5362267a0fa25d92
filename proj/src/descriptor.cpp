#include "fatigue/descriptor.hpp"

#include <string>

#include "fatigue/errors.hpp"

namespace fatigue {

std::string_view to_string(CueGroup group) {
  switch (group) {
    case CueGroup::Eyes: return "eyes";
    case CueGroup::EyeBottoms: return "eye_bottoms";
    case CueGroup::Cheek: return "cheek";
    case CueGroup::Mouth: return "mouth";
  }
  return "";
}

CueGroup cue_group_from_string(std::string_view s) {
  if (s == "eyes") return CueGroup::Eyes;
  if (s == "eye_bottoms") return CueGroup::EyeBottoms;
  if (s == "cheek") return CueGroup::Cheek;
  if (s == "mouth") return CueGroup::Mouth;
  throw InputError("unknown cue group '" + std::string(s) + "'");
}

namespace {

const RoiPatch& patch_for(const RoiPatches& patches, RegionKind kind) {
  const RoiPatch& p = patches[static_cast<int>(kind)];
  const PatchSize expected = patch_size(kind);
  if (p.pixels.rows() != expected.height || p.pixels.cols() != expected.width) {
    throw InputError("missing or mis-sized patch for region '" +
                     std::string(to_string(kind)) + "'");
  }
  return p;
}

}  // namespace

Eigen::VectorXd describe_group(const RoiPatches& patches, CueGroup group,
                               const SiftParams& params) {
  switch (group) {
    case CueGroup::Eyes: {
      Eigen::VectorXd left =
          dense_sift(patch_for(patches, RegionKind::LeftEye).pixels, params);
      Eigen::VectorXd right =
          dense_sift(patch_for(patches, RegionKind::RightEye).pixels, params);
      Eigen::VectorXd out(left.size() + right.size());
      out << left, right;
      return out;
    }
    case CueGroup::EyeBottoms: {
      Eigen::VectorXd left = dense_sift(
          patch_for(patches, RegionKind::LeftEyeBottom).pixels, params);
      Eigen::VectorXd right = dense_sift(
          patch_for(patches, RegionKind::RightEyeBottom).pixels, params);
      Eigen::VectorXd out(left.size() + right.size());
      out << left, right;
      return out;
    }
    case CueGroup::Cheek:
      return dense_sift(patch_for(patches, RegionKind::Cheek).pixels, params);
    case CueGroup::Mouth:
      return dense_sift(patch_for(patches, RegionKind::Mouth).pixels, params);
  }
  throw InputError("unknown cue group");
}

Standardizer fit_standardizer(const Eigen::MatrixXd& X) {
  if (X.rows() == 0) {
    throw InputError("cannot fit a standardizer on an empty descriptor set");
  }
  Standardizer s;
  const double n = static_cast<double>(X.rows());
  s.mean = X.colwise().mean().transpose();
  Eigen::VectorXd var = (X.rowwise() - s.mean.transpose())
                            .array().square().colwise().sum().transpose() / n;
  s.std = var.array().sqrt().max(Standardizer::kStdFloor);
  return s;
}

Eigen::VectorXd apply_standardizer(const Standardizer& s,
                                   const Eigen::VectorXd& v) {
  if (v.size() != s.mean.size()) {
    throw InputError("descriptor length " + std::to_string(v.size()) +
                     " does not match standardizer length " +
                     std::to_string(s.mean.size()));
  }
  return (v - s.mean).cwiseQuotient(s.std);
}

Eigen::MatrixXd standardize_rows(const Standardizer& s,
                                 const Eigen::MatrixXd& X) {
  if (X.cols() != s.mean.size()) {
    throw InputError("descriptor length " + std::to_string(X.cols()) +
                     " does not match standardizer length " +
                     std::to_string(s.mean.size()));
  }
  return (X.rowwise() - s.mean.transpose()).array().rowwise() /
         s.std.transpose().array();
}

}  // namespace fatigue
