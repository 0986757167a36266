#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "regionlm/region.hpp"

namespace regionlm {

/// Start/end extent of one element occurrence. Unlike RegionSet entries,
/// occurrences of the same tag may repeat an extent (identically-spanning
/// nested elements), so they are kept as a plain list.
struct Extent {
    uint32_t start = 0;
    uint32_t end = 0;

    friend bool operator==(const Extent&, const Extent&) = default;
};

/// Positional index over an XML-tagged corpus. Words occupy consecutive
/// positions 1..n in document order; tags consume no positions. Immutable
/// once built (stored-set registration belongs to the build phase), so any
/// number of readers may share it.
class CorpusIndex {
  public:
    static constexpr const char* kRootTag = "root";
    static constexpr const char* kFormatVersion = "1";

    uint64_t word_count() const { return word_count_; }

    /// One unit-score single-word region per occurrence of the token.
    /// An absent token is an empty set, not an error.
    RegionSet word_regions(const std::string& token) const;

    /// One unit-score region per stored occurrence of the tag. The reserved
    /// tag "root" always resolves to the collection root.
    RegionSet element_regions(const std::string& tag) const;

    /// Number of occurrences of `token` at positions in [start, end).
    uint64_t occurrence_count(const std::string& token, uint32_t start,
                              uint32_t end) const;

    /// Registers a named region set addressable as $name in queries.
    /// Validates the name, the regions, and corpus bounds; replaces any
    /// previous registration under the same name.
    void register_stored_set(const std::string& name, RegionSet set);

    /// nullptr when no set of that name is registered.
    const RegionSet* stored_set(const std::string& name) const;

    const std::map<std::string, std::vector<uint32_t>>& postings() const {
        return postings_;
    }
    const std::map<std::string, std::vector<Extent>>& elements() const {
        return elements_;
    }
    const std::map<std::string, RegionSet>& stored_sets() const {
        return stored_sets_;
    }

    friend bool operator==(const CorpusIndex& a, const CorpusIndex& b) {
        return a.word_count_ == b.word_count_ && a.postings_ == b.postings_
            && a.elements_ == b.elements_ && a.stored_sets_ == b.stored_sets_;
    }

  private:
    friend class IndexBuilder;
    friend CorpusIndex load_index(const std::filesystem::path& directory);

    uint64_t word_count_ = 0;
    std::map<std::string, std::vector<uint32_t>> postings_;
    std::map<std::string, std::vector<Extent>> elements_;
    std::map<std::string, RegionSet> stored_sets_;
};

/// Parses a well-formed single-rooted XML document into an index.
/// Tokenization: maximal runs of word bytes, lowercased; attributes are
/// parsed but ignored; elements without word descendants are dropped; the
/// root element additionally registers under the reserved tag "root".
/// Throws XmlParseError on malformed input and ValidationError when the
/// corpus has no words at all.
CorpusIndex build_index(std::string_view xml_text);
CorpusIndex build_index_from_file(const std::filesystem::path& path);

/// Line-based text persistence: meta.tsv, postings.tsv, elements.tsv and
/// stored/<name>.tsv with shortest round-trip decimal scores, such that
/// load(save(x)) == x.
void save_index(const CorpusIndex& index, const std::filesystem::path& directory);
CorpusIndex load_index(const std::filesystem::path& directory);

/// Reads a stored-set TSV (start<TAB>end<TAB>score per line). Duplicate
/// extents merge by score summation.
RegionSet load_stored_set_tsv(const std::filesystem::path& path);

}  // namespace regionlm
