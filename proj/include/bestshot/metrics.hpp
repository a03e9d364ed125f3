#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bestshot/error.hpp"
#include "bestshot/retrieval.hpp"

namespace bestshot {

enum class QueryCategory { Content, Action, Pose, Full };

inline std::string to_string(QueryCategory c) {
    switch (c) {
        case QueryCategory::Content: return "Content";
        case QueryCategory::Action: return "Action";
        case QueryCategory::Pose: return "Pose";
        case QueryCategory::Full: return "Full";
    }
    return "?";
}

inline QueryCategory category_from_string(const std::string& s) {
    if (s == "Content") return QueryCategory::Content;
    if (s == "Action") return QueryCategory::Action;
    if (s == "Pose") return QueryCategory::Pose;
    if (s == "Full") return QueryCategory::Full;
    throw InputError("unknown query category '" + s + "'");
}

// Pose queries score against a fixed window around the key frame.
inline constexpr int kPoseToleranceFrames = 4;

struct QueryAnnotation {
    std::string query_id;
    std::string video_id;
    QueryCategory category = QueryCategory::Content;
    std::string query_text;
    std::vector<Interval> intervals;
    std::optional<int> key_frame;  // required for Pose
    int video_length = 0;
    std::string fine_category;  // optional grouping tag

    void validate() const {
        if (query_id.empty()) throw InputError("annotation: empty query id");
        if (video_length < 1)
            throw InputError("annotation '" + query_id + "': video_length must be >= 1");
        if (category == QueryCategory::Pose) {
            if (!key_frame)
                throw InputError("annotation '" + query_id + "': Pose queries need a key frame");
            if (*key_frame < 0 || *key_frame >= video_length)
                throw InputError("annotation '" + query_id + "': key frame outside video");
        } else if (intervals.empty()) {
            throw InputError("annotation '" + query_id + "': at least one interval required");
        }
        for (const Interval& iv : intervals)
            if (iv.start < 0 || iv.start > iv.end || iv.end >= video_length)
                throw InputError("annotation '" + query_id + "': invalid interval [" +
                                 std::to_string(iv.start) + ", " + std::to_string(iv.end) + "]");
        if (key_frame && (*key_frame < 0 || *key_frame >= video_length))
            throw InputError("annotation '" + query_id + "': key frame outside video");
    }
};

struct Prediction {
    std::string query_id;
    std::optional<int> frame;
    std::optional<Interval> interval;
    double score = 0.0;
};

// Scoring intervals: the Pose tolerance window, or the annotated intervals
// unchanged for every other category.
inline std::vector<Interval> effective_intervals(const QueryAnnotation& ann) {
    ann.validate();
    if (ann.category == QueryCategory::Pose) {
        return {expand_frame(*ann.key_frame, kPoseToleranceFrames, ann.video_length)};
    }
    return ann.intervals;
}

inline bool top1_hit(int predicted_frame, const QueryAnnotation& ann) {
    for (const Interval& iv : effective_intervals(ann))
        if (iv.contains(predicted_frame)) return true;
    return false;
}

struct BestshotResult {
    std::map<std::string, int> counts;  // per category
    std::map<std::string, int> hits;
    std::map<std::string, double> accuracy;
    double overall_accuracy = 0.0;
    int total_hits = 0;
    std::vector<std::string> missing_prediction_ids;  // queries with no prediction
};

namespace detail {

inline std::map<std::string, const Prediction*> index_predictions(
    const std::vector<Prediction>& preds, const std::vector<QueryAnnotation>& anns) {
    std::set<std::string> known;
    for (const QueryAnnotation& a : anns) {
        if (!known.insert(a.query_id).second)
            throw InputError("duplicate annotation for query '" + a.query_id + "'");
    }
    std::map<std::string, const Prediction*> by_id;
    std::vector<std::string> unknown;
    for (const Prediction& p : preds) {
        if (!known.count(p.query_id)) {
            unknown.push_back(p.query_id);
            continue;
        }
        if (by_id.count(p.query_id))
            throw InputError("multiple predictions for query '" + p.query_id + "'");
        by_id[p.query_id] = &p;
    }
    if (!unknown.empty()) {
        std::string msg = "predictions reference unknown query ids:";
        for (const std::string& id : unknown) msg += " " + id;
        throw InputError(msg);
    }
    return by_id;
}

}  // namespace detail

// Top@1: a prediction is a hit when its frame falls inside any effective
// interval; a missing prediction is a miss.
inline BestshotResult eval_bestshot(const std::vector<Prediction>& preds,
                                    const std::vector<QueryAnnotation>& anns) {
    auto by_id = detail::index_predictions(preds, anns);
    BestshotResult result;
    int total = 0;
    for (const QueryAnnotation& ann : anns) {
        const std::string cat = to_string(ann.category);
        result.counts[cat] += 1;
        total += 1;
        auto it = by_id.find(ann.query_id);
        if (it == by_id.end() || !it->second->frame) {
            result.missing_prediction_ids.push_back(ann.query_id);
            continue;
        }
        if (top1_hit(*it->second->frame, ann)) {
            result.hits[cat] += 1;
            result.total_hits += 1;
        }
    }
    for (const auto& [cat, count] : result.counts)
        result.accuracy[cat] = count ? double(result.hits[cat]) / count : 0.0;
    result.overall_accuracy = total ? double(result.total_hits) / total : 0.0;
    return result;
}

// Intersection over union with inclusive frame counting.
inline double interval_iou(const Interval& a, const Interval& b) {
    const int inter = std::max(0, std::min(a.end, b.end) - std::max(a.start, b.start) + 1);
    const int uni = a.length() + b.length() - inter;
    return uni > 0 ? double(inter) / uni : 0.0;
}

inline const std::vector<double>& default_iou_thresholds() {
    static const std::vector<double> t = {0.3, 0.4, 0.5, 0.6, 0.7};
    return t;
}

struct IouAccuracyResult {
    std::vector<double> thresholds;
    std::vector<double> accuracy;  // aligned with thresholds
    double average = 0.0;
};

// Fraction of queries whose predicted interval reaches each IoU threshold
// against its best-matching effective interval. Frame predictions must be
// expanded to intervals beforehand.
inline IouAccuracyResult iou_accuracy(const std::vector<Prediction>& preds,
                                      const std::vector<QueryAnnotation>& anns,
                                      const std::vector<double>& thresholds =
                                          default_iou_thresholds()) {
    auto by_id = detail::index_predictions(preds, anns);
    IouAccuracyResult result;
    result.thresholds = thresholds;
    result.accuracy.assign(thresholds.size(), 0.0);
    if (anns.empty()) return result;
    for (const QueryAnnotation& ann : anns) {
        auto it = by_id.find(ann.query_id);
        if (it == by_id.end() || !it->second->interval) continue;
        double best = 0.0;
        for (const Interval& iv : effective_intervals(ann))
            best = std::max(best, interval_iou(*it->second->interval, iv));
        for (std::size_t t = 0; t < thresholds.size(); ++t)
            if (best >= thresholds[t]) result.accuracy[t] += 1.0;
    }
    for (double& a : result.accuracy) a /= double(anns.size());
    for (double a : result.accuracy) result.average += a;
    result.average /= double(result.accuracy.size());
    return result;
}

// Per-video scored segment for temporal action localization scoring.
struct ScoredSegment {
    std::string video_id;
    Interval interval;
    double score = 0.0;
};

struct GtSegment {
    std::string video_id;
    Interval interval;
};

namespace detail {

// Greedy matching at one threshold: walk predictions by descending score
// and claim the unmatched ground truth with the highest IoU.
inline std::vector<bool> match_predictions(std::vector<ScoredSegment> preds,
                                           const std::vector<GtSegment>& gts, double threshold) {
    std::stable_sort(preds.begin(), preds.end(),
                     [](const ScoredSegment& a, const ScoredSegment& b) {
                         return a.score > b.score;
                     });
    std::vector<bool> gt_used(gts.size(), false);
    std::vector<bool> tp;
    tp.reserve(preds.size());
    for (const ScoredSegment& p : preds) {
        int best_gt = -1;
        double best_iou = 0.0;
        for (std::size_t g = 0; g < gts.size(); ++g) {
            if (gt_used[g] || gts[g].video_id != p.video_id) continue;
            double iou = interval_iou(p.interval, gts[g].interval);
            if (iou > best_iou) {
                best_iou = iou;
                best_gt = static_cast<int>(g);
            }
        }
        if (best_gt >= 0 && best_iou >= threshold) {
            gt_used[best_gt] = true;
            tp.push_back(true);
        } else {
            tp.push_back(false);
        }
    }
    return tp;
}

// All-point interpolated AP: area under the precision envelope.
inline double average_precision(const std::vector<bool>& tp_flags, std::size_t n_gt) {
    if (n_gt == 0) return 0.0;
    std::vector<double> recall{0.0}, precision{0.0};
    std::size_t tp = 0;
    for (std::size_t k = 0; k < tp_flags.size(); ++k) {
        if (tp_flags[k]) ++tp;
        recall.push_back(double(tp) / double(n_gt));
        precision.push_back(double(tp) / double(k + 1));
    }
    recall.push_back(recall.back());
    precision.push_back(0.0);
    for (std::size_t i = precision.size() - 1; i > 0; --i)
        precision[i - 1] = std::max(precision[i - 1], precision[i]);
    double ap = 0.0;
    for (std::size_t i = 0; i + 1 < recall.size(); ++i)
        ap += (recall[i + 1] - recall[i]) * precision[i + 1];
    return ap;
}

}  // namespace detail

struct TalMapResult {
    std::vector<double> thresholds;
    std::vector<double> map_per_threshold;
    double mean_map = 0.0;
    int classes_scored = 0;
    int classes_skipped = 0;  // classes without any ground truth
};

// mAP over classes at each IoU threshold, plus the mean across thresholds.
// Classes with zero ground truth are excluded and counted.
inline TalMapResult tal_map(const std::map<std::string, std::vector<ScoredSegment>>& preds,
                            const std::map<std::string, std::vector<GtSegment>>& gts,
                            const std::vector<double>& thresholds = default_iou_thresholds()) {
    TalMapResult result;
    result.thresholds = thresholds;
    result.map_per_threshold.assign(thresholds.size(), 0.0);

    std::set<std::string> classes;
    for (const auto& [cls, v] : gts) classes.insert(cls);
    for (const auto& [cls, v] : preds) classes.insert(cls);

    static const std::vector<ScoredSegment> no_preds;
    for (const std::string& cls : classes) {
        auto git = gts.find(cls);
        if (git == gts.end() || git->second.empty()) {
            result.classes_skipped += 1;
            continue;
        }
        result.classes_scored += 1;
        auto pit = preds.find(cls);
        const std::vector<ScoredSegment>& class_preds =
            pit == preds.end() ? no_preds : pit->second;
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            auto tp = detail::match_predictions(class_preds, git->second, thresholds[t]);
            result.map_per_threshold[t] += detail::average_precision(tp, git->second.size());
        }
    }
    if (result.classes_scored > 0)
        for (double& m : result.map_per_threshold) m /= result.classes_scored;
    for (double m : result.map_per_threshold) result.mean_map += m;
    if (!result.map_per_threshold.empty()) result.mean_map /= result.map_per_threshold.size();
    return result;
}

// Hits grouped by the annotations' fine-category tag; untagged queries
// land in "other". Every tag present in the annotations gets a key.
inline std::map<std::string, int> hit_count_by_category(const std::vector<Prediction>& preds,
                                                        const std::vector<QueryAnnotation>& anns) {
    auto by_id = detail::index_predictions(preds, anns);
    std::map<std::string, int> counts;
    for (const QueryAnnotation& ann : anns) {
        const std::string tag = ann.fine_category.empty() ? "other" : ann.fine_category;
        counts.emplace(tag, 0);
        auto it = by_id.find(ann.query_id);
        if (it == by_id.end()) continue;
        const Prediction& p = *it->second;
        bool hit = false;
        if (p.frame) {
            hit = top1_hit(*p.frame, ann);
        } else if (p.interval) {
            for (const Interval& iv : effective_intervals(ann))
                if (interval_iou(*p.interval, iv) > 0.0) hit = true;
        }
        if (hit) counts[tag] += 1;
    }
    return counts;
}

}  // namespace bestshot
