#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bestshot/error.hpp"
#include "bestshot/hash.hpp"
#include "bestshot/kinematics.hpp"
#include "bestshot/skeleton.hpp"

namespace bestshot {

enum class PosecodeType {
    Angle,             // interior angle at a pivot joint, radians
    Distance,          // euclidean distance between two joints, meters
    RelativePosition,  // signed coordinate difference (first - second), meters
    PitchRoll,         // elevation of a segment direction vs the horizontal plane
    GroundContact,     // height of a joint above the lowest joint in the pose
    BodyOrientation,   // signed yaw of the facing direction vs +Z
};

enum class Axis { Lateral, Vertical, Depth };  // x, y, z

struct PosecodeKind {
    PosecodeType type = PosecodeType::Angle;
    Axis axis = Axis::Vertical;  // RelativePosition only
    // Angle: {a, pivot, b}; Distance/RelativePosition/PitchRoll: {first, second, -1};
    // GroundContact: {joint, -1, -1}; BodyOrientation: unused.
    int joints[3] = {-1, -1, -1};
};

struct Measurement {
    PosecodeKind kind;
    double value = 0.0;
};

// One kind's discretization: len(labels) == len(edges) + 1.
struct BinScheme {
    std::vector<double> edges;  // strictly increasing
    std::vector<std::string> labels;
    std::vector<bool> skippable;  // uninformative bins, droppable downstream
};

// Schemes keyed by name: angle, distance, distance_to, relative_lateral,
// relative_vertical, relative_depth, pitch, ground_contact, body_orientation.
struct BinConfig {
    std::string config_version = "1";
    std::map<std::string, BinScheme> schemes;

    const BinScheme& scheme(const std::string& name) const {
        auto it = schemes.find(name);
        if (it == schemes.end()) throw InputError("bin config: no scheme named '" + name + "'");
        return it->second;
    }
    void validate() const {
        for (const auto& [name, s] : schemes) {
            if (s.labels.size() != s.edges.size() + 1)
                throw InputError("bin config '" + name + "': label count must be edge count + 1");
            if (s.skippable.size() != s.labels.size())
                throw InputError("bin config '" + name + "': skippable count must match labels");
            for (std::size_t i = 1; i < s.edges.size(); ++i)
                if (!(s.edges[i - 1] < s.edges[i]))
                    throw InputError("bin config '" + name + "': edges must be strictly increasing");
        }
    }
};

struct CategorizedPosecode {
    PosecodeKind kind;
    std::string label;
    double value = 0.0;
    bool skippable = false;
    int entry_index = -1;  // roster position that produced this code, -1 if none
};

// A roster entry names one measurement to take plus the phrases the
// describer uses to realize it.
struct RosterEntry {
    std::string id;
    PosecodeKind kind;
    std::string scheme;        // BinConfig scheme name
    std::string subject;       // e.g. "the left elbow"
    std::string object;        // second phrase for two-joint schemes, may be empty
    bool plural = false;       // verb agreement for the subject
    int side = 0;              // -1 left, +1 right, 0 neutral
    std::string merge_key;     // left/right entries sharing a key may merge
    std::string both_subject;  // e.g. "both arms"; empty disables merging
    std::string both_object;   // replaces object in merged statements
};

struct ExtractionConfig {
    std::vector<RosterEntry> roster;
    BinConfig bins;
    std::uint64_t jitter_seed = 0;
    double jitter_amplitude = 0.0;  // 0 disables edge jitter
};

inline Measurement measure(const Pose& pose, const PosecodeKind& kind, const Skeleton& skeleton) {
    auto joint = [&](int idx) -> const Vec3& {
        if (idx < 0 || static_cast<std::size_t>(idx) >= pose.joints.size())
            throw InputError("measure: joint index " + std::to_string(idx) + " out of range");
        return pose.joints[idx];
    };
    auto name = [&](int idx) {
        return static_cast<std::size_t>(idx) < skeleton.joint_names.size()
                   ? skeleton.joint_names[idx]
                   : std::to_string(idx);
    };

    Measurement m;
    m.kind = kind;
    switch (kind.type) {
        case PosecodeType::Angle: {
            const Vec3 u = joint(kind.joints[0]) - joint(kind.joints[1]);
            const Vec3 v = joint(kind.joints[2]) - joint(kind.joints[1]);
            if (u.norm() < 1e-9 || v.norm() < 1e-9)
                throw InputError("measure: degenerate angle (" + name(kind.joints[0]) + ", " +
                                 name(kind.joints[1]) + ", " + name(kind.joints[2]) +
                                 "): coincident joints");
            double c = u.dot(v) / (u.norm() * v.norm());
            m.value = std::acos(std::clamp(c, -1.0, 1.0));
            break;
        }
        case PosecodeType::Distance:
            m.value = (joint(kind.joints[0]) - joint(kind.joints[1])).norm();
            break;
        case PosecodeType::RelativePosition: {
            const Vec3 d = joint(kind.joints[0]) - joint(kind.joints[1]);
            m.value = kind.axis == Axis::Lateral ? d.x : (kind.axis == Axis::Vertical ? d.y : d.z);
            break;
        }
        case PosecodeType::PitchRoll: {
            const Vec3 dir = joint(kind.joints[1]) - joint(kind.joints[0]);
            const double n = dir.norm();
            if (n < 1e-9)
                throw InputError("measure: degenerate segment (" + name(kind.joints[0]) + ", " +
                                 name(kind.joints[1]) + ")");
            m.value = std::asin(std::clamp(dir.y / n, -1.0, 1.0));
            break;
        }
        case PosecodeType::GroundContact: {
            double lowest = joint(0).y;
            for (const Vec3& j : pose.joints) lowest = std::min(lowest, j.y);
            m.value = joint(kind.joints[0]).y - lowest;
            break;
        }
        case PosecodeType::BodyOrientation: {
            auto yaw = facing_yaw(pose, skeleton);
            if (!yaw) throw InputError("measure: degenerate facing, body orientation undefined");
            m.value = *yaw;
            break;
        }
    }
    return m;
}

// Bin index: count of edges <= value, so a value exactly on an edge lands
// in the higher bin.
inline std::size_t bin_index(const std::vector<double>& edges, double value) {
    return static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), value) - edges.begin());
}

inline CategorizedPosecode categorize(const Measurement& m, const BinScheme& scheme) {
    const std::size_t i = bin_index(scheme.edges, m.value);
    CategorizedPosecode code;
    code.kind = m.kind;
    code.value = m.value;
    code.label = scheme.labels[i];
    code.skippable = scheme.skippable[i];
    return code;
}

// Scheme with per-entry deterministic edge jitter applied.
inline BinScheme jittered_scheme(const BinScheme& scheme, const std::string& entry_id,
                                 std::uint64_t seed, double amplitude) {
    if (amplitude == 0.0) return scheme;
    BinScheme out = scheme;
    for (std::size_t i = 0; i < out.edges.size(); ++i) {
        const std::string key =
            entry_id + "#" + std::to_string(seed) + "#" + std::to_string(i);
        out.edges[i] += amplitude * detail::signed_unit_hash(key);
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

// One categorized code per roster entry, in roster order.
inline std::vector<CategorizedPosecode> extract_all(const Pose& pose, const Skeleton& skeleton,
                                                    const ExtractionConfig& config) {
    std::vector<CategorizedPosecode> codes;
    codes.reserve(config.roster.size());
    for (std::size_t i = 0; i < config.roster.size(); ++i) {
        const RosterEntry& entry = config.roster[i];
        try {
            Measurement m = measure(pose, entry.kind, skeleton);
            BinScheme scheme = jittered_scheme(config.bins.scheme(entry.scheme), entry.id,
                                               config.jitter_seed, config.jitter_amplitude);
            CategorizedPosecode code = categorize(m, scheme);
            code.entry_index = static_cast<int>(i);
            codes.push_back(std::move(code));
        } catch (const InputError& e) {
            throw InputError("roster entry " + std::to_string(i) + " (" + entry.id +
                             "): " + e.what());
        }
    }
    return codes;
}

inline constexpr const char* kOrientationIndeterminate = "orientation indeterminate";

// Global yaw discretized into eight 45-degree sectors; degenerate facing
// maps to a dedicated indeterminate category.
inline CategorizedPosecode body_orientation_code(const Pose& pose, const Skeleton& skeleton,
                                                 const BinConfig& bins) {
    PosecodeKind kind;
    kind.type = PosecodeType::BodyOrientation;
    auto yaw = facing_yaw(pose, skeleton);
    if (!yaw) {
        CategorizedPosecode code;
        code.kind = kind;
        code.label = kOrientationIndeterminate;
        code.value = 0.0;
        code.skippable = true;
        return code;
    }
    Measurement m;
    m.kind = kind;
    m.value = *yaw;
    return categorize(m, bins.scheme("body_orientation"));
}

}  // namespace bestshot
