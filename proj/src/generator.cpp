#include "regionlm/generator.hpp"

#include <algorithm>
#include <set>

#include "regionlm/errors.hpp"

namespace regionlm {

namespace {

void emit_words(std::string& xml, const CorpusProfile& profile, Rng& rng,
                int count) {
    for (int i = 0; i < count; ++i) {
        const std::string& word =
            (!profile.focus_words.empty() && rng.chance(profile.focus_probability))
                ? rng.pick(profile.focus_words)
                : rng.pick(profile.filler_words);
        xml += word;
        xml += ' ';
    }
}

void emit_level(std::string& xml, const CorpusProfile& profile, Rng& rng,
                size_t level) {
    if (level == profile.chain.size()) {
        emit_words(xml, profile, rng, rng.range(profile.min_leaf_words,
                                                profile.max_leaf_words));
        return;
    }
    const std::string& tag = profile.chain[level];
    int children = rng.range(profile.min_children, profile.max_children);
    for (int i = 0; i < children; ++i) {
        if (profile.words_between_children && rng.chance(0.25)) {
            emit_words(xml, profile, rng, rng.range(1, 2));
        }
        xml += '<' + tag + '>';
        emit_level(xml, profile, rng, level + 1);
        xml += "</" + tag + '>';
    }
    if (profile.words_between_children && rng.chance(0.25)) {
        emit_words(xml, profile, rng, rng.range(1, 2));
    }
}

}  // namespace

GeneratedCorpus generate_corpus(const CorpusProfile& profile, Rng& rng) {
    // Regenerate on the rare all-empty draw; an indexable corpus needs at
    // least one word.
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::string xml = "<collection>";
        emit_level(xml, profile, rng, 0);
        xml += "</collection>";
        bool has_word = xml.find(' ') != std::string::npos;
        if (!has_word) continue;
        return {xml, build_index(xml)};
    }
    throw Error("corpus generator failed to produce a non-empty corpus");
}

RegionSet generate_prior_set(const CorpusIndex& index, const std::string& target_tag,
                             Rng& rng) {
    RegionSet targets = index.element_regions(target_tag);
    std::vector<Region> chosen;
    for (const Region& r : targets) {
        if (rng.chance(0.8)) {
            chosen.push_back({r.start, r.end, rng.positive(0.05, 1.0)});
        }
    }
    if (chosen.empty() && !targets.empty()) {
        const Region& r = targets.regions()[rng.below(targets.size())];
        chosen.push_back({r.start, r.end, rng.positive(0.05, 1.0)});
    }
    return RegionSet::canonical(std::move(chosen));
}

RegionSet generate_region_set(Rng& rng, int max_regions, int max_position) {
    int count = rng.range(0, max_regions);
    std::vector<Region> regions;
    regions.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        uint32_t start = static_cast<uint32_t>(rng.range(1, max_position));
        uint32_t end = start
                     + static_cast<uint32_t>(rng.range(
                         1, max_position + 1 - static_cast<int>(start)));
        regions.push_back({start, end, rng.positive(0.01, 10.0)});
    }
    return RegionSet::canonical(std::move(regions));
}

namespace {

void collect(const ExprPtr& expr, std::vector<std::string>& tags,
             std::vector<std::string>& words, std::vector<std::string>& stored) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, WordLeaf>) {
                words.push_back(node.token);
            } else if constexpr (std::is_same_v<T, ElementLeaf>) {
                if (node.tag != CorpusIndex::kRootTag) tags.push_back(node.tag);
            } else if constexpr (std::is_same_v<T, StoredSetLeaf>) {
                stored.push_back(node.name);
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                collect(node.child, tags, words, stored);
            } else {
                collect(node.lhs, tags, words, stored);
                collect(node.rhs, tags, words, stored);
            }
        },
        expr->node);
}

void dedupe_keep_order(std::vector<std::string>& items) {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (auto& item : items) {
        if (seen.insert(item).second) out.push_back(std::move(item));
    }
    items = std::move(out);
}

}  // namespace

CorpusProfile profile_for_queries(const std::vector<ExprPtr>& exprs) {
    std::vector<std::string> tags, words, stored;
    for (const auto& e : exprs) collect(e, tags, words, stored);
    dedupe_keep_order(tags);
    dedupe_keep_order(words);

    CorpusProfile profile;
    bool has_video = std::find(tags.begin(), tags.end(), "video") != tags.end()
        || std::find(tags.begin(), tags.end(), "scene") != tags.end()
        || std::find(tags.begin(), tags.end(), "shot") != tags.end();
    if (has_video) {
        profile.chain = {"video", "scene", "shot"};
        profile.min_children = 1;
        profile.max_children = 2;
        profile.min_leaf_words = 0;
        profile.max_leaf_words = 4;
    } else if (!tags.empty()) {
        // Nest the mentioned tags in first-mention order, innermost ranked.
        profile.chain.assign(tags.begin(),
                             tags.begin() + std::min<size_t>(tags.size(), 3));
    }
    if (!words.empty()) profile.focus_words = words;
    return profile;
}

std::vector<std::string> collect_stored_sets(const ExprPtr& expr) {
    std::vector<std::string> tags, words, stored;
    collect(expr, tags, words, stored);
    dedupe_keep_order(stored);
    return stored;
}

}  // namespace regionlm
