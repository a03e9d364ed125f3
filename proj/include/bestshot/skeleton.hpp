#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bestshot/error.hpp"
#include "bestshot/geometry.hpp"

namespace bestshot {

// Kinematic tree with rest offsets. Joint 0 is the root; every other joint's
// parent has a smaller index. rest_offsets are parent-relative, in meters.
struct Skeleton {
    std::vector<std::string> joint_names;
    std::vector<int> parents;  // -1 for the root
    std::vector<Vec3> rest_offsets;
    std::vector<std::pair<int, int>> left_right_pairs;  // (left, right)

    std::size_t joint_count() const { return joint_names.size(); }

    int index_of(const std::string& name) const {
        auto it = std::find(joint_names.begin(), joint_names.end(), name);
        return it == joint_names.end() ? -1 : static_cast<int>(it - joint_names.begin());
    }

    // Landmarks used to compute the facing direction (hip pair cross spine).
    // -1 when the skeleton has no recognizable hips/spine; yaw alignment is
    // then degenerate by definition.
    int left_hip = -1;
    int right_hip = -1;
    int spine = -1;

    // For each joint, the joint it maps to under mirroring (identity for
    // unpaired joints). Filled in by validate().
    std::vector<int> mirror_map;

    void validate();
};

inline void Skeleton::validate() {
    const std::size_t n = joint_names.size();
    if (n == 0) throw InputError("skeleton: no joints");
    if (parents.size() != n || rest_offsets.size() != n)
        throw InputError("skeleton: parents/rest_offsets size mismatch");
    if (parents[0] != -1) throw InputError("skeleton: joint 0 must be the root");
    for (std::size_t i = 1; i < n; ++i) {
        if (parents[i] < 0 || static_cast<std::size_t>(parents[i]) >= i)
            throw InputError("skeleton: parent of joint " + std::to_string(i) +
                             " must have a smaller index");
    }
    for (const auto& off : rest_offsets)
        if (!off.finite()) throw InputError("skeleton: non-finite rest offset");

    mirror_map.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) mirror_map[i] = static_cast<int>(i);
    std::vector<bool> seen(n, false);
    for (const auto& [l, r] : left_right_pairs) {
        if (l < 0 || r < 0 || static_cast<std::size_t>(l) >= n ||
            static_cast<std::size_t>(r) >= n || l == r)
            throw InputError("skeleton: invalid left/right pair");
        if (seen[l] || seen[r])
            throw InputError("skeleton: joint appears in more than one pair");
        seen[l] = seen[r] = true;
        const Vec3& ol = rest_offsets[l];
        const Vec3& orr = rest_offsets[r];
        if (std::abs(ol.x + orr.x) > 1e-6 || std::abs(ol.y - orr.y) > 1e-6 ||
            std::abs(ol.z - orr.z) > 1e-6)
            throw InputError("skeleton: pair (" + joint_names[l] + ", " + joint_names[r] +
                             ") rest offsets are not sagittal mirror images");
        mirror_map[l] = r;
        mirror_map[r] = l;
    }

    left_hip = index_of("left_hip");
    right_hip = index_of("right_hip");
    spine = -1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& nm = joint_names[i];
        if (nm.find("spine") != std::string::npos || nm == "neck") {
            spine = static_cast<int>(i);
            break;
        }
    }
}

}  // namespace bestshot
