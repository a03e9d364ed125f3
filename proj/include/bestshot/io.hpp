#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bestshot/error.hpp"
#include "bestshot/hash.hpp"
#include "bestshot/kinematics.hpp"
#include "bestshot/metrics.hpp"
#include "bestshot/retrieval.hpp"

namespace bestshot {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// SHOTMAT1: magic, little-endian u32 rows, u32 cols, u8 normalized flag,
// then rows*cols little-endian float32.
// ---------------------------------------------------------------------------

inline constexpr char kMatrixMagic[8] = {'S', 'H', 'O', 'T', 'M', 'A', 'T', '1'};

inline void save_matrix(const std::string& path, const EmbeddingMatrix& m) {
    m.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    out.write(kMatrixMagic, 8);
    const std::uint32_t rows = m.rows, cols = m.cols;
    const std::uint8_t flag = m.normalized ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&rows), 4);
    out.write(reinterpret_cast<const char*>(&cols), 4);
    out.write(reinterpret_cast<const char*>(&flag), 1);
    out.write(reinterpret_cast<const char*>(m.data.data()),
              static_cast<std::streamsize>(m.data.size() * sizeof(float)));
    if (!out) throw PipelineError("write failed for '" + path + "'");
}

inline EmbeddingMatrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    char magic[8];
    in.read(magic, 8);
    if (in.gcount() != 8 || std::memcmp(magic, kMatrixMagic, 8) != 0)
        throw InputError("'" + path + "': not a SHOTMAT1 file");
    EmbeddingMatrix m;
    std::uint8_t flag = 0;
    in.read(reinterpret_cast<char*>(&m.rows), 4);
    in.read(reinterpret_cast<char*>(&m.cols), 4);
    in.read(reinterpret_cast<char*>(&flag), 1);
    if (!in) throw InputError("'" + path + "': truncated header");
    m.normalized = flag != 0;
    const std::size_t expected = std::size_t(m.rows) * m.cols;
    m.data.resize(expected);
    in.read(reinterpret_cast<char*>(m.data.data()),
            static_cast<std::streamsize>(expected * sizeof(float)));
    const std::size_t got = static_cast<std::size_t>(in.gcount()) / sizeof(float);
    if (got != expected)
        throw InputError("'" + path + "': truncated matrix, expected " +
                         std::to_string(expected * sizeof(float)) + " data bytes, got " +
                         std::to_string(static_cast<std::size_t>(in.gcount())));
    char extra;
    if (in.read(&extra, 1))
        throw InputError("'" + path + "': trailing bytes after matrix data");
    m.validate();
    return m;
}

// ---------------------------------------------------------------------------
// JSONL loading helpers
// ---------------------------------------------------------------------------

namespace detail {

template <typename Fn>
void for_each_jsonl(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        try {
            fn(j);
        } catch (const InputError& e) {
            throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
        } catch (const json::exception& e) {
            throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

inline Interval interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw InputError("interval must be a [start, end] pair");
    return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pose records
// ---------------------------------------------------------------------------

struct PoseRecord {
    std::string id;
    std::string dataset;
    int frame_index = 0;
    Pose pose;
    std::optional<RotationSet> rotations;
    std::optional<std::string> description;
};

inline json to_json(const PoseRecord& r) {
    json joints = json::array();
    for (const Vec3& v : r.pose.joints) joints.push_back({v.x, v.y, v.z});
    json j{{"schema", "pose/1"},
           {"id", r.id},
           {"dataset", r.dataset},
           {"frame_index", r.frame_index},
           {"joints", joints}};
    if (r.rotations) {
        json rot = json::array();
        for (const Vec3& v : r.rotations->axis_angles) rot.push_back({v.x, v.y, v.z});
        j["rotations"] = rot;
    }
    if (r.description) j["description"] = *r.description;
    return j;
}

inline PoseRecord pose_record_from_json(const json& j) {
    PoseRecord r;
    r.id = j.at("id").get<std::string>();
    r.dataset = j.value("dataset", "");
    r.frame_index = j.value("frame_index", 0);
    for (const json& row : j.at("joints")) {
        if (!row.is_array() || row.size() != 3)
            throw InputError("pose '" + r.id + "': joints rows must have 3 values");
        Vec3 v{row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
        if (!v.finite()) throw InputError("pose '" + r.id + "': non-finite joint");
        r.pose.joints.push_back(v);
    }
    if (j.contains("rotations")) {
        RotationSet rot;
        for (const json& row : j["rotations"]) {
            Vec3 v{row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
            if (!v.finite() || v.norm() >= 2.0 * kPi)
                throw InputError("pose '" + r.id + "': axis-angle magnitude must be < 2*pi");
            rot.axis_angles.push_back(v);
        }
        if (rot.axis_angles.size() != r.pose.joints.size())
            throw InputError("pose '" + r.id + "': rotations length != joints length");
        r.rotations = std::move(rot);
    }
    if (j.contains("description")) r.description = j["description"].get<std::string>();
    return r;
}

inline std::vector<PoseRecord> load_pose_records(const std::string& path,
                                                 std::size_t expected_joints = 0) {
    std::vector<PoseRecord> records;
    std::set<std::string> ids;
    detail::for_each_jsonl(path, [&](const json& j) {
        PoseRecord r = pose_record_from_json(j);
        if (!ids.insert(r.id).second) throw InputError("duplicate pose id '" + r.id + "'");
        if (expected_joints && r.pose.joints.size() != expected_joints)
            throw InputError("pose '" + r.id + "': expected " + std::to_string(expected_joints) +
                             " joints, got " + std::to_string(r.pose.joints.size()));
        records.push_back(std::move(r));
    });
    return records;
}

inline void save_pose_records(const std::string& path, const std::vector<PoseRecord>& records) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    for (const PoseRecord& r : records) out << to_json(r).dump() << "\n";
}

// ---------------------------------------------------------------------------
// Annotation / prediction records
// ---------------------------------------------------------------------------

struct AnnotationRecord {
    QueryAnnotation annotation;
    std::optional<double> frame_rate;  // set when the source file uses seconds
};

inline json to_json(const QueryAnnotation& a) {
    json intervals = json::array();
    for (const Interval& iv : a.intervals) intervals.push_back({iv.start, iv.end});
    json j{{"schema", "annotation/1"}, {"query_id", a.query_id},
           {"video_id", a.video_id},  {"category", to_string(a.category)},
           {"query", a.query_text},   {"intervals", intervals},
           {"video_length", a.video_length}};
    if (a.key_frame) j["key_frame"] = *a.key_frame;
    if (!a.fine_category.empty()) j["fine_category"] = a.fine_category;
    return j;
}

// `fps` > 0 converts second-valued intervals/key frames/lengths to frames;
// a per-record "frame_rate" field takes precedence over the argument.
inline std::vector<QueryAnnotation> load_annotations(const std::string& path, double fps = 0.0) {
    std::vector<QueryAnnotation> anns;
    std::set<std::string> ids;
    detail::for_each_jsonl(path, [&](const json& j) {
        QueryAnnotation a;
        a.query_id = j.at("query_id").get<std::string>();
        if (!ids.insert(a.query_id).second)
            throw InputError("duplicate query id '" + a.query_id + "'");
        a.video_id = j.value("video_id", "");
        a.category = category_from_string(j.at("category").get<std::string>());
        a.query_text = j.value("query", "");
        a.fine_category = j.value("fine_category", "");
        const double record_fps = j.value("frame_rate", fps);
        if (record_fps > 0.0) {
            for (const json& iv : j.value("intervals", json::array()))
                a.intervals.push_back({static_cast<int>(std::lround(iv[0].get<double>() * record_fps)),
                                       static_cast<int>(std::lround(iv[1].get<double>() * record_fps))});
            a.video_length = static_cast<int>(
                std::lround(j.at("video_length").get<double>() * record_fps));
            if (j.contains("key_frame"))
                a.key_frame = static_cast<int>(
                    std::lround(j["key_frame"].get<double>() * record_fps));
        } else {
            for (const json& iv : j.value("intervals", json::array()))
                a.intervals.push_back(detail::interval_from_json(iv));
            a.video_length = j.at("video_length").get<int>();
            if (j.contains("key_frame")) a.key_frame = j["key_frame"].get<int>();
        }
        a.validate();
        anns.push_back(std::move(a));
    });
    return anns;
}

inline void save_annotations(const std::string& path, const std::vector<QueryAnnotation>& anns) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    for (const QueryAnnotation& a : anns) out << to_json(a).dump() << "\n";
}

struct PredictionRecord {
    Prediction prediction;
    std::string video_id;    // TAL evaluation only
    std::string class_name;  // TAL evaluation only
};

inline json to_json(const PredictionRecord& r) {
    json j{{"schema", "prediction/1"}, {"query_id", r.prediction.query_id}};
    if (r.prediction.frame) j["frame"] = *r.prediction.frame;
    if (r.prediction.interval)
        j["interval"] = {r.prediction.interval->start, r.prediction.interval->end};
    j["score"] = r.prediction.score;
    if (!r.video_id.empty()) j["video_id"] = r.video_id;
    if (!r.class_name.empty()) j["class"] = r.class_name;
    return j;
}

inline std::vector<PredictionRecord> load_predictions(const std::string& path) {
    std::vector<PredictionRecord> records;
    detail::for_each_jsonl(path, [&](const json& j) {
        PredictionRecord r;
        r.prediction.query_id = j.value("query_id", "");
        if (j.contains("frame")) r.prediction.frame = j["frame"].get<int>();
        if (j.contains("interval"))
            r.prediction.interval = detail::interval_from_json(j["interval"]);
        if (!r.prediction.frame && !r.prediction.interval)
            throw InputError("prediction needs a frame or an interval");
        r.prediction.score = j.value("score", 0.0);
        r.video_id = j.value("video_id", "");
        r.class_name = j.value("class", "");
        records.push_back(std::move(r));
    });
    return records;
}

inline void save_predictions(const std::string& path,
                             const std::vector<PredictionRecord>& records) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path + "' for writing");
    for (const PredictionRecord& r : records) out << to_json(r).dump() << "\n";
}

// ---------------------------------------------------------------------------
// Dataset mixing
// ---------------------------------------------------------------------------

struct MixSource {
    std::string name;
    int weight = 1;
    std::vector<std::string> lines;  // opaque records
};

struct MixSpec {
    std::size_t total = 0;  // output size
    std::uint64_t seed = 0;
};

struct MixResult {
    std::vector<std::string> lines;
    std::vector<std::string> source_of;  // source name per output line
    std::map<std::string, int> wrap_counts;
};

namespace detail {

// Endless seeded stream over one source: a fresh permutation per pass.
struct SourceStream {
    const MixSource* source;
    std::uint64_t seed;
    std::vector<std::size_t> order;
    std::size_t cursor = 0;
    int wraps = 0;

    void reshuffle() {
        order.resize(source->lines.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        XorShift rng(fnv1a64(source->name + "#" + std::to_string(seed) + "#" +
                             std::to_string(wraps)));
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);
        cursor = 0;
    }
    const std::string& next() {
        if (cursor >= order.size()) {
            ++wraps;
            reshuffle();
        }
        return source->lines[order[cursor++]];
    }
};

}  // namespace detail

// Seeded interleaving: every window of sum(weights) output lines contains
// exactly `weight` lines from each source. Sources repeat (with a wrap
// count) when exhausted.
inline MixResult mix_datasets(const std::vector<MixSource>& sources, const MixSpec& spec) {
    if (sources.empty()) throw InputError("mix: no sources");
    int window = 0;
    for (const MixSource& s : sources) {
        if (s.weight < 1) throw InputError("mix: source '" + s.name + "' weight must be >= 1");
        if (s.lines.empty()) throw InputError("mix: source '" + s.name + "' is empty");
        window += s.weight;
    }

    std::vector<detail::SourceStream> streams;
    for (const MixSource& s : sources) {
        detail::SourceStream stream{&s, spec.seed, {}, 0, 0};
        stream.reshuffle();
        streams.push_back(std::move(stream));
    }

    std::vector<int> slot_template;
    for (std::size_t i = 0; i < sources.size(); ++i)
        for (int w = 0; w < sources[i].weight; ++w) slot_template.push_back(static_cast<int>(i));

    MixResult result;
    detail::XorShift rng(detail::fnv1a64("mix#" + std::to_string(spec.seed)));
    std::size_t emitted = 0;
    while (emitted < spec.total) {
        std::vector<int> slots = slot_template;
        for (std::size_t i = slots.size(); i > 1; --i)
            std::swap(slots[i - 1], slots[rng.below(i)]);
        for (int s : slots) {
            if (emitted >= spec.total) break;
            result.lines.push_back(streams[s].next());
            result.source_of.push_back(sources[s].name);
            ++emitted;
        }
    }
    for (const auto& stream : streams) result.wrap_counts[stream.source->name] = stream.wraps;
    return result;
}

}  // namespace bestshot
