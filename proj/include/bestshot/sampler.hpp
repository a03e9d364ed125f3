#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "bestshot/error.hpp"
#include "bestshot/hash.hpp"
#include "bestshot/kinematics.hpp"
#include "bestshot/skeleton.hpp"

namespace bestshot {

struct PoseCollection {
    Skeleton skeleton;
    std::vector<std::string> frame_ids;
    std::vector<Pose> poses;

    std::size_t size() const { return frame_ids.size(); }

    void validate() const {
        if (frame_ids.size() != poses.size())
            throw InputError("pose collection: id/pose count mismatch");
        std::set<std::string> ids(frame_ids.begin(), frame_ids.end());
        if (ids.size() != frame_ids.size())
            throw InputError("pose collection: duplicate frame ids");
        for (const Pose& p : poses)
            if (p.joints.size() != skeleton.joint_count())
                throw InputError("pose collection: pose joint count does not match skeleton");
    }

    int index_of(const std::string& id) const {
        for (std::size_t i = 0; i < frame_ids.size(); ++i)
            if (frame_ids[i] == id) return static_cast<int>(i);
        return -1;
    }
};

enum class StartPolicy { ExplicitList, SeededRandom };

struct SubsetSpec {
    double fraction = 0.01;  // of the population, rounded to a count
    int subset_count = 10;
    StartPolicy policy = StartPolicy::SeededRandom;
    std::vector<std::string> explicit_starts;  // used when policy is ExplicitList
};

namespace detail {

// Greedy farthest-point selection over a precomputed aligned pose cache,
// using the O(n*k) running-minimum recurrence.
inline std::vector<int> fps_indices(const std::vector<Pose>& aligned,
                                    const std::vector<std::string>& ids, int n, int start) {
    const int population = static_cast<int>(aligned.size());
    std::vector<int> selected;
    selected.reserve(n);
    selected.push_back(start);

    std::vector<bool> chosen(population, false);
    chosen[start] = true;
    std::vector<double> min_dist(population, std::numeric_limits<double>::infinity());
    int last = start;
    while (static_cast<int>(selected.size()) < n) {
        int best = -1;
        double best_dist = -1.0;
        for (int i = 0; i < population; ++i) {
            if (chosen[i]) continue;
            double d = mpjpe(aligned[i], aligned[last]);
            if (d < min_dist[i]) min_dist[i] = d;
            if (min_dist[i] > best_dist ||
                (min_dist[i] == best_dist && ids[i] < ids[best])) {
                best = i;
                best_dist = min_dist[i];
            }
        }
        chosen[best] = true;
        selected.push_back(best);
        last = best;
    }
    return selected;
}

}  // namespace detail

// Furthest point sampling under aligned MPJPE. The first pick is `start`;
// every later pick maximizes its minimum distance to the selected set,
// ties broken by the lowest frame id.
inline std::vector<std::string> fps_select(const PoseCollection& collection, int n,
                                           const std::string& start) {
    collection.validate();
    const int population = static_cast<int>(collection.size());
    if (n < 1 || n > population)
        throw InputError("fps_select: n = " + std::to_string(n) + " out of range [1, " +
                         std::to_string(population) + "]");
    const int start_idx = collection.index_of(start);
    if (start_idx < 0) throw InputError("fps_select: unknown start frame id '" + start + "'");

    std::vector<Pose> aligned;
    aligned.reserve(population);
    for (const Pose& p : collection.poses)
        aligned.push_back(yaw_align(p, collection.skeleton).pose);

    std::vector<int> picks = detail::fps_indices(aligned, collection.frame_ids, n, start_idx);
    std::vector<std::string> out;
    out.reserve(picks.size());
    for (int i : picks) out.push_back(collection.frame_ids[i]);
    return out;
}

// `subset_count` FPS runs of round(fraction * population) frames each,
// started from distinct frames.
inline std::vector<std::vector<std::string>> generate_subsets(const PoseCollection& collection,
                                                              const SubsetSpec& spec,
                                                              std::uint64_t seed) {
    collection.validate();
    const int population = static_cast<int>(collection.size());
    if (spec.subset_count < 1) throw InputError("generate_subsets: subset_count must be >= 1");
    if (spec.subset_count > population)
        throw InputError("generate_subsets: subset_count exceeds population");
    if (!(spec.fraction > 0.0 && spec.fraction <= 1.0))
        throw InputError("generate_subsets: fraction must be in (0, 1]");
    const int n = static_cast<int>(std::lround(spec.fraction * population));
    if (n < 1) throw InputError("generate_subsets: fraction * population < 1");

    std::vector<std::string> starts;
    if (spec.policy == StartPolicy::ExplicitList) {
        starts = spec.explicit_starts;
        if (static_cast<int>(starts.size()) != spec.subset_count)
            throw InputError("generate_subsets: explicit start list size != subset_count");
    } else {
        // Seeded draw without replacement via a partial Fisher-Yates over
        // indices; xorshift keeps the stream identical across platforms.
        std::vector<int> order(population);
        for (int i = 0; i < population; ++i) order[i] = i;
        detail::XorShift rng(seed);
        for (int i = 0; i < spec.subset_count; ++i) {
            int j = i + static_cast<int>(rng.below(population - i));
            std::swap(order[i], order[j]);
            starts.push_back(collection.frame_ids[order[i]]);
        }
    }

    std::vector<std::vector<std::string>> subsets;
    subsets.reserve(spec.subset_count);
    for (const std::string& start : starts) subsets.push_back(fps_select(collection, n, start));
    return subsets;
}

}  // namespace bestshot
