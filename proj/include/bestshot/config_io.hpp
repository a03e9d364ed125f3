#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bestshot/describer.hpp"
#include "bestshot/error.hpp"
#include "bestshot/posecode.hpp"
#include "bestshot/skeleton.hpp"

namespace bestshot {

namespace detail {

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("'" + path + "': " + e.what());
    }
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

}  // namespace detail

// --- Skeleton ---------------------------------------------------------------

inline nlohmann::json skeleton_to_json(const Skeleton& s) {
    nlohmann::json offsets = nlohmann::json::array();
    for (const Vec3& o : s.rest_offsets) offsets.push_back({o.x, o.y, o.z});
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [l, r] : s.left_right_pairs)
        pairs.push_back({s.joint_names[l], s.joint_names[r]});
    return {{"joint_names", s.joint_names},
            {"parents", s.parents},
            {"rest_offsets", offsets},
            {"left_right_pairs", pairs}};
}

inline Skeleton skeleton_from_json(const nlohmann::json& j) {
    Skeleton s;
    s.joint_names = j.at("joint_names").get<std::vector<std::string>>();
    s.parents = j.at("parents").get<std::vector<int>>();
    for (const nlohmann::json& row : j.at("rest_offsets"))
        s.rest_offsets.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    for (const nlohmann::json& pair : j.value("left_right_pairs", nlohmann::json::array())) {
        const int l = s.index_of(pair[0].get<std::string>());
        const int r = s.index_of(pair[1].get<std::string>());
        if (l < 0 || r < 0) throw InputError("skeleton: unknown joint in left_right_pairs");
        s.left_right_pairs.emplace_back(l, r);
    }
    s.validate();
    return s;
}

inline Skeleton load_skeleton(const std::string& path) {
    return skeleton_from_json(detail::load_json_file(path));
}

// --- Bin config -------------------------------------------------------------

inline nlohmann::json bin_config_to_json(const BinConfig& c) {
    nlohmann::json schemes;
    for (const auto& [name, s] : c.schemes) {
        std::vector<bool> skippable(s.skippable.begin(), s.skippable.end());
        schemes[name] = {{"edges", s.edges}, {"labels", s.labels}, {"skippable", skippable}};
    }
    return {{"config_version", c.config_version}, {"schemes", schemes}};
}

inline BinConfig bin_config_from_json(const nlohmann::json& j) {
    BinConfig c;
    c.config_version = j.value("config_version", "1");
    for (const auto& [name, s] : j.at("schemes").items()) {
        BinScheme scheme;
        scheme.edges = s.at("edges").get<std::vector<double>>();
        scheme.labels = s.at("labels").get<std::vector<std::string>>();
        if (s.contains("skippable")) {
            for (const nlohmann::json& f : s["skippable"]) scheme.skippable.push_back(f.get<bool>());
        } else {
            scheme.skippable.assign(scheme.labels.size(), false);
        }
        c.schemes[name] = std::move(scheme);
    }
    c.validate();
    return c;
}

inline BinConfig load_bin_config(const std::string& path) {
    return bin_config_from_json(detail::load_json_file(path));
}

// --- Roster -----------------------------------------------------------------

inline std::string posecode_type_name(PosecodeType t) {
    switch (t) {
        case PosecodeType::Angle: return "angle";
        case PosecodeType::Distance: return "distance";
        case PosecodeType::RelativePosition: return "relative_position";
        case PosecodeType::PitchRoll: return "pitch_roll";
        case PosecodeType::GroundContact: return "ground_contact";
        case PosecodeType::BodyOrientation: return "body_orientation";
    }
    return "?";
}

inline PosecodeType posecode_type_from_name(const std::string& name) {
    if (name == "angle") return PosecodeType::Angle;
    if (name == "distance") return PosecodeType::Distance;
    if (name == "relative_position") return PosecodeType::RelativePosition;
    if (name == "pitch_roll") return PosecodeType::PitchRoll;
    if (name == "ground_contact") return PosecodeType::GroundContact;
    if (name == "body_orientation") return PosecodeType::BodyOrientation;
    throw InputError("unknown posecode type '" + name + "'");
}

inline int joints_used(PosecodeType t) {
    switch (t) {
        case PosecodeType::Angle: return 3;
        case PosecodeType::Distance:
        case PosecodeType::RelativePosition:
        case PosecodeType::PitchRoll: return 2;
        case PosecodeType::GroundContact: return 1;
        case PosecodeType::BodyOrientation: return 0;
    }
    return 0;
}

inline nlohmann::json roster_to_json(const std::vector<RosterEntry>& roster,
                                     const Skeleton& skeleton) {
    nlohmann::json entries = nlohmann::json::array();
    for (const RosterEntry& e : roster) {
        nlohmann::json joints = nlohmann::json::array();
        for (int i = 0; i < joints_used(e.kind.type); ++i)
            joints.push_back(skeleton.joint_names.at(e.kind.joints[i]));
        nlohmann::json entry{{"id", e.id},
                             {"type", posecode_type_name(e.kind.type)},
                             {"joints", joints},
                             {"scheme", e.scheme},
                             {"subject", e.subject}};
        if (e.kind.type == PosecodeType::RelativePosition)
            entry["axis"] = e.kind.axis == Axis::Lateral
                                ? "lateral"
                                : (e.kind.axis == Axis::Vertical ? "vertical" : "depth");
        if (!e.object.empty()) entry["object"] = e.object;
        if (e.plural) entry["plural"] = true;
        if (e.side != 0) entry["side"] = e.side < 0 ? "left" : "right";
        if (!e.merge_key.empty()) {
            entry["merge_key"] = e.merge_key;
            entry["both_subject"] = e.both_subject;
            if (!e.both_object.empty()) entry["both_object"] = e.both_object;
        }
        entries.push_back(std::move(entry));
    }
    return {{"config_version", "1"}, {"entries", entries}};
}

inline std::vector<RosterEntry> roster_from_json(const nlohmann::json& j,
                                                 const Skeleton& skeleton) {
    std::vector<RosterEntry> roster;
    for (const nlohmann::json& entry : j.at("entries")) {
        RosterEntry e;
        e.id = entry.at("id").get<std::string>();
        e.kind.type = posecode_type_from_name(entry.at("type").get<std::string>());
        if (entry.contains("axis")) {
            const std::string axis = entry["axis"].get<std::string>();
            e.kind.axis = axis == "lateral" ? Axis::Lateral
                                            : (axis == "vertical" ? Axis::Vertical : Axis::Depth);
        }
        const nlohmann::json& joints = entry.value("joints", nlohmann::json::array());
        if (static_cast<int>(joints.size()) != joints_used(e.kind.type))
            throw InputError("roster entry '" + e.id + "': expected " +
                             std::to_string(joints_used(e.kind.type)) + " joints");
        for (std::size_t i = 0; i < joints.size(); ++i) {
            const std::string name = joints[i].get<std::string>();
            const int idx = skeleton.index_of(name);
            if (idx < 0) throw InputError("roster entry '" + e.id + "': unknown joint '" +
                                          name + "'");
            e.kind.joints[i] = idx;
        }
        e.scheme = entry.at("scheme").get<std::string>();
        e.subject = entry.at("subject").get<std::string>();
        e.object = entry.value("object", "");
        e.plural = entry.value("plural", false);
        if (entry.contains("side"))
            e.side = entry["side"].get<std::string>() == "left" ? -1 : 1;
        e.merge_key = entry.value("merge_key", "");
        e.both_subject = entry.value("both_subject", "");
        e.both_object = entry.value("both_object", "");
        roster.push_back(std::move(e));
    }
    return roster;
}

inline std::vector<RosterEntry> load_roster(const std::string& path, const Skeleton& skeleton) {
    return roster_from_json(detail::load_json_file(path), skeleton);
}

// --- Templates ---------------------------------------------------------------

inline nlohmann::json templates_to_json(const TemplateSet& t) {
    nlohmann::json templates = nlohmann::json::array();
    for (const auto& [name, tpl] : t.by_category)
        templates.push_back(
            {{"category", name}, {"arity", tpl.arity}, {"variants", tpl.variants}});
    return {{"config_version", t.config_version}, {"templates", templates}};
}

inline TemplateSet templates_from_json(const nlohmann::json& j) {
    TemplateSet t;
    t.config_version = j.value("config_version", "1");
    for (const nlohmann::json& entry : j.at("templates")) {
        Template tpl;
        tpl.category = entry.at("category").get<std::string>();
        tpl.arity = entry.value("arity", 1);
        tpl.variants = entry.at("variants").get<std::vector<std::string>>();
        t.by_category[tpl.category] = std::move(tpl);
    }
    t.validate();
    return t;
}

inline TemplateSet load_templates(const std::string& path) {
    return templates_from_json(detail::load_json_file(path));
}

}  // namespace bestshot
