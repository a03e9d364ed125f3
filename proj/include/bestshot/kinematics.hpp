#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "bestshot/error.hpp"
#include "bestshot/geometry.hpp"
#include "bestshot/skeleton.hpp"

namespace bestshot {

// Per-frame 3D joint positions, meters, same frame as Skeleton.
struct Pose {
    std::vector<Vec3> joints;
};

// Per-joint axis-angle rotations relative to the parent frame; the root
// entry is the global orientation.
struct RotationSet {
    std::vector<Vec3> axis_angles;
};

inline Pose forward_kinematics(const RotationSet& rotations, const Skeleton& skeleton) {
    const std::size_t n = skeleton.joint_count();
    if (rotations.axis_angles.size() != n)
        throw InputError("forward_kinematics: rotation count " +
                         std::to_string(rotations.axis_angles.size()) +
                         " does not match skeleton joint count " + std::to_string(n));
    std::vector<Mat3> accumulated(n);
    Pose pose;
    pose.joints.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Mat3 local = axis_angle_to_matrix(rotations.axis_angles[i]);
        if (skeleton.parents[i] < 0) {
            accumulated[i] = local;
            pose.joints[i] = skeleton.rest_offsets[i];
        } else {
            const int p = skeleton.parents[i];
            pose.joints[i] = pose.joints[p] + accumulated[p] * skeleton.rest_offsets[i];
            accumulated[i] = accumulated[p] * local;
        }
    }
    return pose;
}

// Facing direction: normal of the hip-to-hip and hip-to-spine plane,
// projected to the horizontal plane. Empty when degenerate (missing
// landmarks, coincident hips, or a vertical facing vector).
inline std::optional<Vec3> facing_direction(const Pose& pose, const Skeleton& skeleton) {
    if (skeleton.left_hip < 0 || skeleton.right_hip < 0 || skeleton.spine < 0)
        return std::nullopt;
    const Vec3 hip_axis = pose.joints[skeleton.left_hip] - pose.joints[skeleton.right_hip];
    const Vec3 spine_axis = pose.joints[skeleton.spine] - pose.joints[0];
    if (hip_axis.norm() < 1e-6) return std::nullopt;
    Vec3 normal = hip_axis.cross(spine_axis);
    Vec3 horizontal{normal.x, 0.0, normal.z};
    if (horizontal.norm() < 1e-6) return std::nullopt;
    return horizontal.normalized();
}

// Signed yaw of the facing direction relative to +Z, in [-pi, pi).
inline std::optional<double> facing_yaw(const Pose& pose, const Skeleton& skeleton) {
    auto dir = facing_direction(pose, skeleton);
    if (!dir) return std::nullopt;
    return yaw_of(*dir);
}

struct AlignedPose {
    Pose pose;
    bool degenerate = false;  // translation-only fallback was used
};

// Translate the root to the origin, then rotate about +Y so the facing
// direction points toward +Z. Vertical coordinates are unchanged.
inline AlignedPose yaw_align(const Pose& pose, const Skeleton& skeleton) {
    if (pose.joints.size() != skeleton.joint_count())
        throw InputError("yaw_align: pose joint count does not match skeleton");
    AlignedPose out;
    out.pose.joints.reserve(pose.joints.size());
    const Vec3 root = pose.joints.empty() ? Vec3{} : pose.joints[0];
    auto yaw = facing_yaw(pose, skeleton);
    out.degenerate = !yaw.has_value();
    const Mat3 rot = yaw ? yaw_matrix(-*yaw) : Mat3::identity();
    for (const Vec3& j : pose.joints) out.pose.joints.push_back(rot * (j - root));
    return out;
}

// Mean per-joint position error, meters.
inline double mpjpe(const Pose& a, const Pose& b) {
    if (a.joints.size() != b.joints.size())
        throw InputError("mpjpe: joint count mismatch (" + std::to_string(a.joints.size()) +
                         " vs " + std::to_string(b.joints.size()) + ")");
    if (a.joints.empty()) throw InputError("mpjpe: empty poses");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.joints.size(); ++i) sum += (a.joints[i] - b.joints[i]).norm();
    return sum / static_cast<double>(a.joints.size());
}

// MPJPE between yaw-aligned poses; the distance used by furthest point
// sampling.
inline double aligned_mpjpe(const Pose& a, const Pose& b, const Skeleton& skeleton) {
    return mpjpe(yaw_align(a, skeleton).pose, yaw_align(b, skeleton).pose);
}

// Reflect across the sagittal plane: negate X, then swap positions within
// each left/right pair.
inline Pose mirror(const Pose& pose, const Skeleton& skeleton) {
    if (pose.joints.size() != skeleton.joint_count())
        throw InputError("mirror: pose joint count does not match skeleton");
    Pose out;
    out.joints.resize(pose.joints.size());
    for (std::size_t i = 0; i < pose.joints.size(); ++i) {
        const Vec3& src = pose.joints[skeleton.mirror_map[i]];
        out.joints[i] = {-src.x, src.y, src.z};
    }
    return out;
}

}  // namespace bestshot
