// Copyright 2026 The PoseKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POSEKIT_POSE_HPP_
#define POSEKIT_POSE_HPP_

#include "posekit/rotation.hpp"

namespace posekit {

// Rigid transform x -> R x + T from model space into the camera frame.
struct Pose6D {
  Rotation rotation;
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }

  Pose6D inverse() const {
    const Rotation inv = rotation.inverse();
    return {inv, -(inv * translation)};
  }
};

// (a * b) applies b first, then a.
inline Pose6D operator*(const Pose6D& a, const Pose6D& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

}  // namespace posekit

#endif  // POSEKIT_POSE_HPP_
