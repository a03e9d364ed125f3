#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bestshot/error.hpp"
#include "bestshot/posecode.hpp"

namespace bestshot {

// One sentence-to-be: a subject phrase plus a predicate category/label,
// with the codes that produced it.
struct AggregatedStatement {
    std::string subject;
    std::string category;  // template/scheme name
    std::string label;
    std::string object;  // empty for one-place predicates
    bool plural = false;
    int priority = 0;  // roster position; lower realizes earlier
    std::vector<CategorizedPosecode> codes;
};

struct Template {
    std::string category;
    int arity = 1;  // 1 = subject only, 2 = subject + object
    std::vector<std::string> variants;
};

struct TemplateSet {
    std::string config_version = "1";
    std::map<std::string, Template> by_category;

    void validate() const {
        for (const auto& [name, t] : by_category) {
            if (t.variants.empty())
                throw InputError("template '" + name + "': at least one variant required");
            for (const std::string& v : t.variants) {
                auto count = [&](const std::string& slot) {
                    std::size_t n = 0, p = 0;
                    while ((p = v.find(slot, p)) != std::string::npos) {
                        ++n;
                        p += slot.size();
                    }
                    return n;
                };
                if (count("{subject}") != 1 || count("{label}") != 1)
                    throw InputError("template '" + name +
                                     "': each variant needs {subject} and {label} exactly once");
                if (t.arity == 2 && count("{object}") != 1)
                    throw InputError("template '" + name +
                                     "': two-place variants need {object} exactly once");
            }
        }
    }
};

enum class SentenceOrder { FixedRoster, SeededShuffle };

struct DescriberConfig {
    std::uint64_t seed = 0;
    std::size_t max_sentences = 16;
    bool skip_skippable = true;
    SentenceOrder order = SentenceOrder::FixedRoster;
};

struct PoseDescription {
    std::vector<std::string> sentences;
    std::vector<AggregatedStatement> statements;  // aligned with sentences
    std::string config_version;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string swap_side_words(std::string text) {
    std::size_t p;
    while ((p = text.find("left")) != std::string::npos) text.replace(p, 4, "R1GHT");
    while ((p = text.find("right")) != std::string::npos) text.replace(p, 5, "left");
    while ((p = text.find("R1GHT")) != std::string::npos) text.replace(p, 5, "right");
    return text;
}

// Side-normalized so a statement and its mirror image draw the same variant.
inline std::string normalize_side(std::string text) {
    std::size_t p;
    while ((p = text.find("right")) != std::string::npos) text.replace(p, 5, "left");
    return text;
}

}  // namespace detail

// Symmetry merge + skippable filtering. Codes must come from one
// extract_all pass over the given roster.
inline std::vector<AggregatedStatement> aggregate(const std::vector<CategorizedPosecode>& codes,
                                                  const std::vector<RosterEntry>& roster,
                                                  bool skip_skippable = true) {
    struct Item {
        const CategorizedPosecode* code;
        const RosterEntry* entry;
    };
    std::map<std::string, std::vector<Item>> merge_groups;
    std::vector<Item> items;
    for (const CategorizedPosecode& code : codes) {
        if (code.entry_index < 0 || static_cast<std::size_t>(code.entry_index) >= roster.size())
            throw InputError("aggregate: code without a roster entry");
        if (skip_skippable && code.skippable) continue;
        const RosterEntry& entry = roster[code.entry_index];
        items.push_back({&code, &entry});
        if (!entry.merge_key.empty() && !entry.both_subject.empty() && entry.side != 0)
            merge_groups[entry.merge_key].push_back({&code, &entry});
    }

    // A left/right pair with the same label collapses into one statement.
    std::map<int, bool> merged;  // entry_index -> consumed by a merge
    std::vector<AggregatedStatement> out;
    for (auto& [key, group] : merge_groups) {
        const Item* left = nullptr;
        const Item* right = nullptr;
        for (const Item& it : group) {
            if (it.entry->side < 0) left = &it;
            if (it.entry->side > 0) right = &it;
        }
        if (!left || !right || left->code->label != right->code->label) continue;
        AggregatedStatement s;
        s.subject = left->entry->both_subject;
        s.object = left->entry->both_object;
        s.category = left->entry->scheme;
        s.label = left->code->label;
        s.plural = true;
        s.priority = std::min(left->code->entry_index, right->code->entry_index);
        s.codes = {*left->code, *right->code};
        out.push_back(std::move(s));
        merged[left->code->entry_index] = true;
        merged[right->code->entry_index] = true;
    }
    for (const Item& it : items) {
        if (merged.count(it.code->entry_index)) continue;
        AggregatedStatement s;
        s.subject = it.entry->subject;
        s.object = it.entry->object;
        s.category = it.entry->scheme;
        s.label = it.code->label;
        s.plural = it.entry->plural;
        s.priority = it.code->entry_index;
        s.codes = {*it.code};
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const AggregatedStatement& a, const AggregatedStatement& b) {
                  return a.priority < b.priority;
              });
    return out;
}

inline std::string render_statement(const AggregatedStatement& s, const TemplateSet& templates,
                                    std::uint64_t seed) {
    auto it = templates.by_category.find(s.category);
    if (it == templates.by_category.end())
        throw InputError("realize: no template for category '" + s.category + "'");
    const Template& tpl = it->second;
    const std::string draw_key = std::to_string(seed) + "|" + s.category + "|" +
                                 detail::normalize_side(s.subject) + "|" +
                                 detail::normalize_side(s.label) + "|" +
                                 detail::normalize_side(s.object);
    const std::size_t variant = detail::fnv1a64(draw_key) % tpl.variants.size();
    std::string text = tpl.variants[variant];
    auto fill = [&text](const std::string& slot, const std::string& value) {
        std::size_t p = text.find(slot);
        if (p != std::string::npos) text.replace(p, slot.size(), value);
    };
    fill("{subject}", s.subject);
    fill("{be}", s.plural ? "are" : "is");
    fill("{label}", s.label);
    fill("{object}", s.object);
    if (!text.empty()) text[0] = static_cast<char>(std::toupper(text[0]));
    text += ".";
    return text;
}

// Statements -> sentences. Truncation keeps roster priority; the seeded
// shuffle, when enabled, reorders everything after the first statement.
inline PoseDescription realize(std::vector<AggregatedStatement> statements,
                               const TemplateSet& templates, const DescriberConfig& config,
                               const std::string& config_version = "1") {
    if (config.max_sentences < 1) throw InputError("realize: max_sentences must be >= 1");
    if (statements.size() > config.max_sentences) statements.resize(config.max_sentences);
    if (config.order == SentenceOrder::SeededShuffle && statements.size() > 2) {
        // Fisher-Yates with a hash-derived stream; std::shuffle is not
        // reproducible across standard libraries.
        std::uint64_t state = detail::fnv1a64("shuffle|" + std::to_string(config.seed));
        auto next = [&state]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        for (std::size_t i = statements.size() - 1; i > 1; --i) {
            std::size_t j = 1 + next() % i;  // keep index 0 in place
            std::swap(statements[i], statements[j]);
        }
    }
    PoseDescription desc;
    desc.seed = config.seed;
    desc.config_version = config_version;
    for (const AggregatedStatement& s : statements)
        desc.sentences.push_back(render_statement(s, templates, config.seed));
    desc.statements = std::move(statements);
    return desc;
}

// Full pipeline: extract_all -> aggregate -> realize, with the body
// orientation statement first whenever the facing is well defined.
inline PoseDescription describe(const Pose& pose, const Skeleton& skeleton,
                                const ExtractionConfig& extraction, const TemplateSet& templates,
                                const DescriberConfig& config) {
    std::vector<CategorizedPosecode> codes = extract_all(pose, skeleton, extraction);
    std::vector<AggregatedStatement> statements =
        aggregate(codes, extraction.roster, config.skip_skippable);

    CategorizedPosecode orientation = body_orientation_code(pose, skeleton, extraction.bins);
    if (orientation.label != kOrientationIndeterminate) {
        AggregatedStatement s;
        s.subject = "the figure";
        s.category = "body_orientation";
        s.label = orientation.label;
        s.priority = -1;
        s.codes = {orientation};
        statements.insert(statements.begin(), std::move(s));
    }
    return realize(std::move(statements), templates, config, extraction.bins.config_version);
}

}  // namespace bestshot
