#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bestshot/describer.hpp"
#include "bestshot/posecode.hpp"
#include "bestshot/skeleton.hpp"

namespace bestshot {

// 22-joint SMPL-style body skeleton in a T-pose rest configuration,
// facing the camera (+Z). Offsets are meters, parent-relative.
inline Skeleton default_skeleton() {
    Skeleton s;
    struct J {
        const char* name;
        int parent;
        Vec3 offset;
    };
    const std::vector<J> joints = {
        {"pelvis", -1, {0.0, 0.0, 0.0}},
        {"left_hip", 0, {0.09, -0.09, 0.0}},
        {"right_hip", 0, {-0.09, -0.09, 0.0}},
        {"spine1", 0, {0.0, 0.11, 0.0}},
        {"left_knee", 1, {0.0, -0.40, 0.0}},
        {"right_knee", 2, {0.0, -0.40, 0.0}},
        {"spine2", 3, {0.0, 0.12, 0.0}},
        {"left_ankle", 4, {0.0, -0.42, 0.0}},
        {"right_ankle", 5, {0.0, -0.42, 0.0}},
        {"spine3", 6, {0.0, 0.12, 0.0}},
        {"left_foot", 7, {0.0, -0.06, 0.12}},
        {"right_foot", 8, {0.0, -0.06, 0.12}},
        {"neck", 9, {0.0, 0.10, 0.0}},
        {"left_collar", 9, {0.05, 0.05, 0.0}},
        {"right_collar", 9, {-0.05, 0.05, 0.0}},
        {"head", 12, {0.0, 0.12, 0.0}},
        {"left_shoulder", 13, {0.12, 0.02, 0.0}},
        {"right_shoulder", 14, {-0.12, 0.02, 0.0}},
        {"left_elbow", 16, {0.26, 0.0, 0.0}},
        {"right_elbow", 17, {-0.26, 0.0, 0.0}},
        {"left_wrist", 18, {0.25, 0.0, 0.0}},
        {"right_wrist", 19, {-0.25, 0.0, 0.0}},
    };
    for (const J& j : joints) {
        s.joint_names.emplace_back(j.name);
        s.parents.push_back(j.parent);
        s.rest_offsets.push_back(j.offset);
    }
    s.left_right_pairs = {{1, 2}, {4, 5}, {7, 8}, {10, 11}, {13, 14}, {16, 17}, {18, 19}, {20, 21}};
    s.validate();
    return s;
}

inline double deg(double d) { return d * kPi / 180.0; }

// Stand-in discretization thresholds; every edge is overridable through a
// JSON bin config file.
inline BinConfig default_bin_config() {
    BinConfig c;
    c.config_version = "1";
    // Labels deliberately avoid the words "left"/"right" except where they
    // name a body side; mirrored descriptions are produced by swapping
    // exactly those two words.
    c.schemes["angle"] = {
        {deg(45), deg(90), deg(135), deg(160)},
        {"completely bent", "bent at a sharp angle", "bent at a 90 degree angle",
         "slightly bent", "straight"},
        {false, false, false, true, false}};
    c.schemes["distance"] = {
        {0.2, 0.5},
        {"close together", "about shoulder width apart", "spread wide apart"},
        {false, true, false}};
    c.schemes["distance_to"] = {
        {0.2, 0.5},
        {"very close to", "near", "far from"},
        {false, true, true}};
    c.schemes["relative_vertical"] = {
        {-0.08, 0.08},
        {"below", "at the same level as", "above"},
        {false, true, false}};
    c.schemes["relative_lateral"] = {
        {-0.08, 0.08},
        {"to the right of", "laterally in line with", "to the left of"},
        {false, true, false}};
    c.schemes["relative_depth"] = {
        {-0.08, 0.08},
        {"behind", "at the same depth as", "in front of"},
        {false, true, false}};
    c.schemes["pitch"] = {
        {deg(-60), deg(-30), deg(30), deg(60)},
        {"hanging straight down", "angled downward", "roughly horizontal", "angled upward",
         "pointing straight up"},
        {false, true, false, true, false}};
    c.schemes["ground_contact"] = {
        {0.05, 0.30},
        {"on the ground", "just off the ground", "high off the ground"},
        {false, true, true}};
    c.schemes["body_orientation"] = {
        {deg(-157.5), deg(-112.5), deg(-67.5), deg(-22.5), deg(22.5), deg(67.5), deg(112.5),
         deg(157.5)},
        {"facing away from the camera", "facing back and to the right", "facing right",
         "facing slightly to the right", "facing the camera", "facing slightly to the left",
         "facing left", "facing back and to the left", "facing away from the camera"},
        {false, false, false, false, false, false, false, false, false}};
    c.validate();
    return c;
}

namespace detail {

struct RosterBuilder {
    const Skeleton& skel;
    std::vector<RosterEntry> entries;

    int idx(const std::string& name) const {
        int i = skel.index_of(name);
        if (i < 0) throw InputError("default roster: skeleton has no joint '" + name + "'");
        return i;
    }

    void add(RosterEntry e) { entries.push_back(std::move(e)); }

    // Emits the left entry and its mirrored right twin.
    void add_pair(const std::string& id_stem, PosecodeType type, Axis axis,
                  std::vector<std::string> left_joints, const std::string& scheme,
                  const std::string& subject_stem, const std::string& object_stem,
                  const std::string& merge_key, const std::string& both_subject,
                  const std::string& both_object) {
        for (int side : {-1, +1}) {
            const std::string from = side < 0 ? "left" : "right";
            const std::string to = side < 0 ? "right" : "left";
            RosterEntry e;
            e.id = id_stem + (side < 0 ? ".l" : ".r");
            e.kind.type = type;
            e.kind.axis = axis;
            for (std::size_t i = 0; i < left_joints.size(); ++i) {
                std::string joint = left_joints[i];
                if (side > 0) {
                    // left_* joints become right_* and vice versa
                    if (joint.rfind("left_", 0) == 0)
                        joint = "right_" + joint.substr(5);
                    else if (joint.rfind("right_", 0) == 0)
                        joint = "left_" + joint.substr(6);
                }
                e.kind.joints[i] = idx(joint);
            }
            auto swap_words = [&](std::string text) {
                if (side > 0) {
                    std::size_t p;
                    while ((p = text.find("left")) != std::string::npos)
                        text.replace(p, 4, "RIGHT");
                    while ((p = text.find("right")) != std::string::npos)
                        text.replace(p, 5, "left");
                    while ((p = text.find("RIGHT")) != std::string::npos)
                        text.replace(p, 5, "right");
                }
                return text;
            };
            e.scheme = scheme;
            e.subject = swap_words(subject_stem);
            e.object = swap_words(object_stem);
            e.side = side;
            e.merge_key = merge_key;
            e.both_subject = both_subject;
            e.both_object = both_object;
            add(std::move(e));
        }
    }
};

}  // namespace detail

// ~90 measurement instances over the 22-joint template, mirror-closed so
// description symmetry properties hold.
inline std::vector<RosterEntry> default_roster(const Skeleton& skel) {
    detail::RosterBuilder b{skel, {}};

    // Joint angles.
    b.add_pair("angle.elbow", PosecodeType::Angle, Axis::Vertical,
               {"left_shoulder", "left_elbow", "left_wrist"}, "angle", "the left elbow", "",
               "angle.elbow", "both arms", "");
    b.add_pair("angle.knee", PosecodeType::Angle, Axis::Vertical,
               {"left_hip", "left_knee", "left_ankle"}, "angle", "the left knee", "",
               "angle.knee", "both legs", "");
    b.add_pair("angle.hip", PosecodeType::Angle, Axis::Vertical,
               {"left_knee", "left_hip", "spine3"}, "angle", "the left hip", "",
               "angle.hip", "both hips", "");
    b.add_pair("angle.armpit", PosecodeType::Angle, Axis::Vertical,
               {"left_elbow", "left_shoulder", "left_hip"}, "angle", "the left armpit", "",
               "angle.armpit", "both armpits", "");
    b.add_pair("angle.ankle", PosecodeType::Angle, Axis::Vertical,
               {"left_knee", "left_ankle", "left_foot"}, "angle", "the left ankle", "",
               "angle.ankle", "both ankles", "");

    // Distances between paired extremities (single plural subject).
    auto add_pair_distance = [&](const std::string& id, const std::string& l,
                                 const std::string& r, const std::string& subject) {
        RosterEntry e;
        e.id = id;
        e.kind.type = PosecodeType::Distance;
        e.kind.joints[0] = b.idx(l);
        e.kind.joints[1] = b.idx(r);
        e.scheme = "distance";
        e.subject = subject;
        e.plural = true;
        b.add(std::move(e));
    };
    add_pair_distance("dist.hands", "left_wrist", "right_wrist", "the hands");
    add_pair_distance("dist.elbows", "left_elbow", "right_elbow", "the elbows");
    add_pair_distance("dist.knees", "left_knee", "right_knee", "the knees");
    add_pair_distance("dist.ankles", "left_ankle", "right_ankle", "the ankles");
    add_pair_distance("dist.feet", "left_foot", "right_foot", "the feet");

    // Distances from a hand to a body landmark.
    b.add_pair("dist.hand_head", PosecodeType::Distance, Axis::Vertical,
               {"left_wrist", "head"}, "distance_to", "the left hand", "the head",
               "dist.hand_head", "both hands", "the head");
    b.add_pair("dist.hand_hip", PosecodeType::Distance, Axis::Vertical,
               {"left_wrist", "left_hip"}, "distance_to", "the left hand", "the left hip",
               "dist.hand_hip", "both hands", "the hips");
    b.add_pair("dist.hand_knee", PosecodeType::Distance, Axis::Vertical,
               {"left_wrist", "left_knee"}, "distance_to", "the left hand", "the left knee",
               "dist.hand_knee", "both hands", "the knees");
    b.add_pair("dist.hand_ankle", PosecodeType::Distance, Axis::Vertical,
               {"left_wrist", "left_ankle"}, "distance_to", "the left hand", "the left ankle",
               "dist.hand_ankle", "both hands", "the ankles");
    b.add_pair("dist.hand_opp_shoulder", PosecodeType::Distance, Axis::Vertical,
               {"left_wrist", "right_shoulder"}, "distance_to", "the left hand",
               "the right shoulder", "", "", "");

    // Vertical relative positions.
    b.add_pair("vert.wrist_shoulder", PosecodeType::RelativePosition, Axis::Vertical,
               {"left_wrist", "left_shoulder"}, "relative_vertical", "the left wrist",
               "the left shoulder", "vert.wrist_shoulder", "both wrists", "the shoulders");
    b.add_pair("vert.wrist_head", PosecodeType::RelativePosition, Axis::Vertical,
               {"left_wrist", "head"}, "relative_vertical", "the left wrist", "the head",
               "vert.wrist_head", "both wrists", "the head");
    b.add_pair("vert.wrist_hip", PosecodeType::RelativePosition, Axis::Vertical,
               {"left_wrist", "left_hip"}, "relative_vertical", "the left wrist",
               "the left hip", "vert.wrist_hip", "both wrists", "the hips");
    b.add_pair("vert.elbow_shoulder", PosecodeType::RelativePosition, Axis::Vertical,
               {"left_elbow", "left_shoulder"}, "relative_vertical", "the left elbow",
               "the left shoulder", "vert.elbow_shoulder", "both elbows", "the shoulders");
    b.add_pair("vert.knee_hip", PosecodeType::RelativePosition, Axis::Vertical,
               {"left_knee", "left_hip"}, "relative_vertical", "the left knee",
               "the left hip", "vert.knee_hip", "both knees", "the hips");
    b.add_pair("vert.ankle_knee", PosecodeType::RelativePosition, Axis::Vertical,
               {"left_ankle", "left_knee"}, "relative_vertical", "the left ankle",
               "the left knee", "vert.ankle_knee", "both ankles", "the knees");
    b.add_pair("vert.foot_hip", PosecodeType::RelativePosition, Axis::Vertical,
               {"left_foot", "left_hip"}, "relative_vertical", "the left foot",
               "the left hip", "vert.foot_hip", "both feet", "the hips");
    b.add_pair("vert.elbow_hip", PosecodeType::RelativePosition, Axis::Vertical,
               {"left_elbow", "left_hip"}, "relative_vertical", "the left elbow",
               "the left hip", "vert.elbow_hip", "both elbows", "the hips");
    {
        RosterEntry e;
        e.id = "vert.head_pelvis";
        e.kind.type = PosecodeType::RelativePosition;
        e.kind.axis = Axis::Vertical;
        e.kind.joints[0] = b.idx("head");
        e.kind.joints[1] = b.idx("pelvis");
        e.scheme = "relative_vertical";
        e.subject = "the head";
        e.object = "the hips";
        b.add(std::move(e));
    }

    // Lateral relative positions (world X; sign flips under mirroring).
    b.add_pair("lat.wrist_hips", PosecodeType::RelativePosition, Axis::Lateral,
               {"left_wrist", "pelvis"}, "relative_lateral", "the left wrist", "the hips",
               "", "", "");
    b.add_pair("lat.wrist_shoulder", PosecodeType::RelativePosition, Axis::Lateral,
               {"left_wrist", "left_shoulder"}, "relative_lateral", "the left wrist",
               "the left shoulder", "", "", "");
    b.add_pair("lat.wrist_opp_wrist", PosecodeType::RelativePosition, Axis::Lateral,
               {"left_wrist", "right_wrist"}, "relative_lateral", "the left wrist",
               "the right wrist", "", "", "");
    b.add_pair("lat.ankle_hip", PosecodeType::RelativePosition, Axis::Lateral,
               {"left_ankle", "left_hip"}, "relative_lateral", "the left ankle",
               "the left hip", "", "", "");
    b.add_pair("lat.knee_hip", PosecodeType::RelativePosition, Axis::Lateral,
               {"left_knee", "left_hip"}, "relative_lateral", "the left knee",
               "the left hip", "", "", "");
    b.add_pair("lat.elbow_shoulder", PosecodeType::RelativePosition, Axis::Lateral,
               {"left_elbow", "left_shoulder"}, "relative_lateral", "the left elbow",
               "the left shoulder", "", "", "");

    // Depth relative positions (world Z).
    b.add_pair("depth.wrist_hips", PosecodeType::RelativePosition, Axis::Depth,
               {"left_wrist", "pelvis"}, "relative_depth", "the left wrist", "the hips",
               "depth.wrist_hips", "both wrists", "the hips");
    b.add_pair("depth.ankle_hips", PosecodeType::RelativePosition, Axis::Depth,
               {"left_ankle", "pelvis"}, "relative_depth", "the left ankle", "the hips",
               "depth.ankle_hips", "both ankles", "the hips");
    b.add_pair("depth.elbow_shoulder", PosecodeType::RelativePosition, Axis::Depth,
               {"left_elbow", "left_shoulder"}, "relative_depth", "the left elbow",
               "the left shoulder", "depth.elbow_shoulder", "both elbows", "the shoulders");
    b.add_pair("depth.knee_hips", PosecodeType::RelativePosition, Axis::Depth,
               {"left_knee", "pelvis"}, "relative_depth", "the left knee", "the hips",
               "depth.knee_hips", "both knees", "the hips");
    {
        RosterEntry e;
        e.id = "depth.head_pelvis";
        e.kind.type = PosecodeType::RelativePosition;
        e.kind.axis = Axis::Depth;
        e.kind.joints[0] = b.idx("head");
        e.kind.joints[1] = b.idx("pelvis");
        e.scheme = "relative_depth";
        e.subject = "the head";
        e.object = "the hips";
        b.add(std::move(e));
    }

    // Segment pitch.
    {
        RosterEntry e;
        e.id = "pitch.torso";
        e.kind.type = PosecodeType::PitchRoll;
        e.kind.joints[0] = b.idx("pelvis");
        e.kind.joints[1] = b.idx("neck");
        e.scheme = "pitch";
        e.subject = "the torso";
        b.add(std::move(e));
    }
    b.add_pair("pitch.upper_arm", PosecodeType::PitchRoll, Axis::Vertical,
               {"left_shoulder", "left_elbow"}, "pitch", "the left upper arm", "",
               "pitch.upper_arm", "both upper arms", "");
    b.add_pair("pitch.forearm", PosecodeType::PitchRoll, Axis::Vertical,
               {"left_elbow", "left_wrist"}, "pitch", "the left forearm", "",
               "pitch.forearm", "both forearms", "");
    b.add_pair("pitch.thigh", PosecodeType::PitchRoll, Axis::Vertical,
               {"left_hip", "left_knee"}, "pitch", "the left thigh", "",
               "pitch.thigh", "both thighs", "");
    b.add_pair("pitch.shin", PosecodeType::PitchRoll, Axis::Vertical,
               {"left_knee", "left_ankle"}, "pitch", "the left shin", "",
               "pitch.shin", "both shins", "");

    // Ground contact.
    b.add_pair("ground.foot", PosecodeType::GroundContact, Axis::Vertical, {"left_foot"},
               "ground_contact", "the left foot", "", "ground.foot", "both feet", "");
    b.add_pair("ground.hand", PosecodeType::GroundContact, Axis::Vertical, {"left_wrist"},
               "ground_contact", "the left hand", "", "ground.hand", "both hands", "");
    b.add_pair("ground.knee", PosecodeType::GroundContact, Axis::Vertical, {"left_knee"},
               "ground_contact", "the left knee", "", "ground.knee", "both knees", "");
    b.add_pair("ground.elbow", PosecodeType::GroundContact, Axis::Vertical, {"left_elbow"},
               "ground_contact", "the left elbow", "", "ground.elbow", "both elbows", "");
    {
        RosterEntry e;
        e.id = "ground.head";
        e.kind.type = PosecodeType::GroundContact;
        e.kind.joints[0] = b.idx("head");
        e.scheme = "ground_contact";
        e.subject = "the head";
        b.add(std::move(e));
    }

    return b.entries;
}

// Editable sentence patterns; slots are {subject}, {be}, {label} and, for
// two-place predicates, {object}.
inline TemplateSet default_templates() {
    TemplateSet t;
    t.config_version = "1";
    auto add = [&t](const std::string& category, int arity, std::vector<std::string> variants) {
        t.by_category[category] = Template{category, arity, std::move(variants)};
    };
    add("angle", 1,
        {"{subject} {be} {label}", "{subject} {be} held {label}", "{subject} {be} kept {label}"});
    add("distance", 1,
        {"{subject} {be} {label}", "{subject} {be} held {label}",
         "{subject} {be} positioned {label}"});
    add("distance_to", 2,
        {"{subject} {be} {label} {object}", "{subject} {be} held {label} {object}",
         "{subject} {be} kept {label} {object}"});
    add("relative_vertical", 2,
        {"{subject} {be} {label} {object}", "{subject} {be} positioned {label} {object}",
         "{subject} {be} held {label} {object}"});
    add("relative_lateral", 2,
        {"{subject} {be} {label} {object}", "{subject} {be} positioned {label} {object}",
         "{subject} {be} held {label} {object}"});
    add("relative_depth", 2,
        {"{subject} {be} {label} {object}", "{subject} {be} positioned {label} {object}",
         "{subject} {be} held {label} {object}"});
    add("pitch", 1,
        {"{subject} {be} {label}", "{subject} {be} currently {label}",
         "{subject} {be} clearly {label}"});
    add("ground_contact", 1,
        {"{subject} {be} {label}", "{subject} {be} currently {label}",
         "{subject} {be} visibly {label}"});
    add("body_orientation", 1,
        {"{subject} {be} {label}", "{subject} {be} seen {label}", "{subject} {be} shown {label}"});
    t.validate();
    return t;
}

// Full default extraction configuration over the shipped skeleton.
inline ExtractionConfig default_extraction_config(const Skeleton& skeleton) {
    ExtractionConfig c;
    c.roster = default_roster(skeleton);
    c.bins = default_bin_config();
    return c;
}

}  // namespace bestshot
