#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bestshot/error.hpp"

namespace bestshot {

// Row-major float matrix; the carrier for frame/query embeddings and
// query-by-frame similarity scores (SHOTMAT1 files on disk).
struct EmbeddingMatrix {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    bool normalized = false;  // every row claims unit L2 norm
    std::vector<float> data;

    const float* row(std::uint32_t r) const { return data.data() + std::size_t(r) * cols; }

    void validate() const {
        if (data.size() != std::size_t(rows) * cols)
            throw InputError("matrix: expected " + std::to_string(std::size_t(rows) * cols) +
                             " values, got " + std::to_string(data.size()));
        for (float v : data)
            if (!std::isfinite(v)) throw InputError("matrix: non-finite value");
        if (normalized) {
            for (std::uint32_t r = 0; r < rows; ++r) {
                double norm = 0.0;
                for (std::uint32_t c = 0; c < cols; ++c)
                    norm += double(row(r)[c]) * row(r)[c];
                if (std::abs(std::sqrt(norm) - 1.0) > 1e-4)
                    throw InputError("matrix: row " + std::to_string(r) +
                                     " is not unit norm despite the normalized flag");
            }
        }
    }

    void validate_similarity() const {
        validate();
        for (float v : data)
            if (v < -1.0f - 1e-6f || v > 1.0f + 1e-6f)
                throw InputError("similarity matrix: score outside [-1, 1]");
    }
};

// Inclusive frame range, 0-based.
struct Interval {
    int start = 0;
    int end = 0;

    int length() const { return end - start + 1; }
    bool contains(int frame) const { return frame >= start && frame <= end; }
    bool operator==(const Interval&) const = default;
};

struct ScoredInterval {
    Interval interval;
    double score = 0.0;  // peak smoothed similarity inside the segment
};

namespace detail {

inline double row_norm(const float* v, std::uint32_t dim) {
    double s = 0.0;
    for (std::uint32_t i = 0; i < dim; ++i) s += double(v[i]) * v[i];
    return std::sqrt(s);
}

inline double dot(const float* a, const float* b, std::uint32_t dim) {
    double s = 0.0;
    for (std::uint32_t i = 0; i < dim; ++i) s += double(a[i]) * b[i];
    return s;
}

}  // namespace detail

// Cosine similarity of one query embedding against every frame row.
inline std::vector<double> score_frames(const float* query, std::uint32_t dim,
                                        const EmbeddingMatrix& frames) {
    if (dim != frames.cols)
        throw InputError("score_frames: query dimension " + std::to_string(dim) +
                         " != frame dimension " + std::to_string(frames.cols));
    const double qn = detail::row_norm(query, dim);
    if (qn < 1e-12) throw InputError("score_frames: zero-norm query embedding");
    std::vector<double> scores(frames.rows);
    for (std::uint32_t f = 0; f < frames.rows; ++f) {
        double fn = frames.normalized ? 1.0 : detail::row_norm(frames.row(f), dim);
        if (fn < 1e-12)
            throw InputError("score_frames: zero-norm frame embedding at row " +
                             std::to_string(f));
        scores[f] = detail::dot(query, frames.row(f), dim) / (qn * fn);
    }
    return scores;
}

inline std::vector<double> score_frames(const EmbeddingMatrix& queries, std::uint32_t query_row,
                                        const EmbeddingMatrix& frames) {
    return score_frames(queries.row(query_row), queries.cols, frames);
}

// Index of the maximum score; ties go to the lowest index.
inline int best_frame(const std::vector<double>& scores) {
    if (scores.empty()) throw InputError("best_frame: empty score vector");
    int best = 0;
    for (int i = 1; i < static_cast<int>(scores.size()); ++i)
        if (scores[i] > scores[best]) best = i;
    return best;
}

// 1-D non-maximum suppression: repeatedly take the highest unsuppressed
// score (ties to the lowest index) and suppress indices within +-radius.
// Picks are returned in selection order.
inline std::vector<int> nms_select(const std::vector<double>& scores, int radius, int k) {
    if (scores.empty()) throw InputError("nms_select: empty score vector");
    if (radius < 0) throw InputError("nms_select: radius must be >= 0");
    if (k < 1) throw InputError("nms_select: k must be >= 1");
    const int n = static_cast<int>(scores.size());
    std::vector<bool> suppressed(n, false);
    std::vector<int> picks;
    while (static_cast<int>(picks.size()) < k) {
        int best = -1;
        for (int i = 0; i < n; ++i)
            if (!suppressed[i] && (best < 0 || scores[i] > scores[best])) best = i;
        if (best < 0) break;
        picks.push_back(best);
        for (int i = std::max(0, best - radius); i <= std::min(n - 1, best + radius); ++i)
            suppressed[i] = true;
    }
    return picks;
}

// Zero-shot pseudo-label: class whose embedding is closest (cosine) to the
// mean frame embedding. Ties go to the lowest class index.
inline int t3al_pseudo_label(const EmbeddingMatrix& frames, const EmbeddingMatrix& class_queries) {
    if (frames.cols != class_queries.cols)
        throw InputError("t3al_pseudo_label: dimension mismatch");
    if (class_queries.rows == 0) throw InputError("t3al_pseudo_label: no classes");
    if (frames.rows == 0) throw InputError("t3al_pseudo_label: no frames");
    std::vector<float> mean(frames.cols, 0.0f);
    for (std::uint32_t f = 0; f < frames.rows; ++f)
        for (std::uint32_t c = 0; c < frames.cols; ++c)
            mean[c] += frames.row(f)[c] / static_cast<float>(frames.rows);
    EmbeddingMatrix classes_only = class_queries;
    classes_only.normalized = false;
    std::vector<double> scores = score_frames(mean.data(), frames.cols, classes_only);
    return best_frame(scores);
}

enum class ThresholdPolicy { Mean, MeanPlusStd };

struct SegmentationParams {
    int smooth_radius = 2;
    ThresholdPolicy policy = ThresholdPolicy::Mean;
    double std_k = 0.5;  // MeanPlusStd only
    int min_length = 3;
    int merge_gap = 2;
};

// Centered moving average; the window is truncated at the boundaries.
inline std::vector<double> smooth_scores(const std::vector<double>& scores, int radius) {
    if (radius <= 0) return scores;
    const int n = static_cast<int>(scores.size());
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - radius), hi = std::min(n - 1, i + radius);
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) sum += scores[j];
        out[i] = sum / (hi - lo + 1);
    }
    return out;
}

// Threshold the smoothed curve into maximal above-threshold runs, merge
// runs separated by at most merge_gap frames, then drop short runs.
inline std::vector<ScoredInterval> t3al_segment(const std::vector<double>& scores,
                                                const SegmentationParams& params) {
    if (scores.empty()) throw InputError("t3al_segment: empty score vector");
    if (params.smooth_radius < 0 || params.min_length < 1 || params.merge_gap < 0)
        throw InputError("t3al_segment: invalid parameters");
    const std::vector<double> smoothed = smooth_scores(scores, params.smooth_radius);
    const int n = static_cast<int>(smoothed.size());

    double mean = 0.0;
    for (double v : smoothed) mean += v / n;
    double threshold = mean;
    if (params.policy == ThresholdPolicy::MeanPlusStd) {
        double var = 0.0;
        for (double v : smoothed) var += (v - mean) * (v - mean) / n;
        threshold = mean + params.std_k * std::sqrt(var);
    }

    std::vector<Interval> runs;
    int run_start = -1;
    for (int i = 0; i < n; ++i) {
        const bool above = smoothed[i] > threshold;  // strictly above
        if (above && run_start < 0) run_start = i;
        if (!above && run_start >= 0) {
            runs.push_back({run_start, i - 1});
            run_start = -1;
        }
    }
    if (run_start >= 0) runs.push_back({run_start, n - 1});

    std::vector<Interval> merged;
    for (const Interval& run : runs) {
        if (!merged.empty() && run.start - merged.back().end - 1 <= params.merge_gap)
            merged.back().end = run.end;
        else
            merged.push_back(run);
    }

    std::vector<ScoredInterval> out;
    for (const Interval& run : merged) {
        if (run.length() < params.min_length) continue;
        double peak = smoothed[run.start];
        for (int i = run.start; i <= run.end; ++i) peak = std::max(peak, smoothed[i]);
        out.push_back({run, peak});
    }
    return out;
}

// Frame index widened into an interval, clamped to the video bounds.
inline Interval expand_frame(int idx, int margin, int video_length) {
    if (idx < 0 || idx >= video_length)
        throw InputError("expand_frame: frame " + std::to_string(idx) +
                         " outside video of length " + std::to_string(video_length));
    if (margin < 0) throw InputError("expand_frame: negative margin");
    return {std::max(0, idx - margin), std::min(video_length - 1, idx + margin)};
}

}  // namespace bestshot
