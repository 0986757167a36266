#include "regionlm/corpus_index.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "regionlm/errors.hpp"
#include "regionlm/text_util.hpp"

namespace regionlm {

RegionSet CorpusIndex::word_regions(const std::string& token) const {
    auto it = postings_.find(token);
    if (it == postings_.end()) return {};
    std::vector<Region> regions;
    regions.reserve(it->second.size());
    for (uint32_t p : it->second) regions.push_back({p, p + 1, 1.0});
    return RegionSet::from_sorted(std::move(regions));
}

RegionSet CorpusIndex::element_regions(const std::string& tag) const {
    auto it = elements_.find(tag);
    if (it == elements_.end()) return {};
    std::vector<Region> regions;
    regions.reserve(it->second.size());
    for (const Extent& e : it->second) regions.push_back({e.start, e.end, 1.0});
    return RegionSet::canonical(std::move(regions));
}

uint64_t CorpusIndex::occurrence_count(const std::string& token, uint32_t start,
                                       uint32_t end) const {
    auto it = postings_.find(token);
    if (it == postings_.end()) return 0;
    const auto& positions = it->second;
    auto lo = std::lower_bound(positions.begin(), positions.end(), start);
    auto hi = std::lower_bound(positions.begin(), positions.end(), end);
    return static_cast<uint64_t>(hi - lo);
}

static bool valid_set_name(const std::string& name) {
    if (name.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
        return false;
    }
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

void CorpusIndex::register_stored_set(const std::string& name, RegionSet set) {
    if (!valid_set_name(name)) {
        throw ValidationError("invalid stored-set name '" + name
                              + "': expected [A-Za-z_][A-Za-z0-9_]*");
    }
    for (const Region& r : set) {
        validate_region(r);
        if (r.end > word_count_ + 1) {
            throw ValidationError("stored set '" + name + "' region ("
                                  + std::to_string(r.start) + ", "
                                  + std::to_string(r.end)
                                  + ") exceeds corpus bound "
                                  + std::to_string(word_count_ + 1));
        }
    }
    stored_sets_[name] = std::move(set);
}

const RegionSet* CorpusIndex::stored_set(const std::string& name) const {
    auto it = stored_sets_.find(name);
    return it == stored_sets_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Building

namespace {

struct OpenElement {
    std::string tag;
    uint32_t first_position;  // position the next word would get at open time
};

}  // namespace

class IndexBuilder {
  public:
    CorpusIndex take() { return std::move(index_); }

    void start_element(const char* name) {
        flush_word();
        stack_.push_back({name, next_position()});
    }

    void end_element() {
        flush_word();
        OpenElement open = std::move(stack_.back());
        stack_.pop_back();
        uint32_t end = next_position();
        // Elements without word descendants have no extent and are dropped.
        if (end > open.first_position) {
            index_.elements_[open.tag].push_back({open.first_position, end});
            if (stack_.empty() && open.tag != CorpusIndex::kRootTag) {
                index_.elements_[CorpusIndex::kRootTag].push_back(
                    {open.first_position, end});
            }
        }
    }

    void characters(const char* data, int len) {
        // A token may arrive split across callbacks; element boundaries are
        // the only hard separators besides non-word bytes.
        for (int i = 0; i < len; ++i) {
            unsigned char c = static_cast<unsigned char>(data[i]);
            if (is_word_byte(c)) {
                word_.push_back(normalize_word_byte(c));
            } else {
                flush_word();
            }
        }
    }

    void finish() {
        if (index_.word_count_ == 0) {
            throw ValidationError("corpus contains no words");
        }
        for (auto& [tag, extents] : index_.elements_) {
            std::sort(extents.begin(), extents.end(),
                      [](const Extent& a, const Extent& b) {
                          return a.start != b.start ? a.start < b.start
                                                    : a.end < b.end;
                      });
        }
    }

  private:
    uint32_t next_position() const {
        return static_cast<uint32_t>(index_.word_count_) + 1;
    }

    void flush_word() {
        if (word_.empty()) return;
        ++index_.word_count_;
        index_.postings_[word_].push_back(
            static_cast<uint32_t>(index_.word_count_));
        word_.clear();
    }

    CorpusIndex index_;
    std::vector<OpenElement> stack_;
    std::string word_;
};

namespace {

void on_start(void* user, const XML_Char* name, const XML_Char**) {
    static_cast<IndexBuilder*>(user)->start_element(name);
}

void on_end(void* user, const XML_Char*) {
    static_cast<IndexBuilder*>(user)->end_element();
}

void on_chars(void* user, const XML_Char* data, int len) {
    static_cast<IndexBuilder*>(user)->characters(data, len);
}

struct ParserGuard {
    XML_Parser parser;
    explicit ParserGuard(XML_Parser p) : parser(p) {}
    ~ParserGuard() { XML_ParserFree(parser); }
};

}  // namespace

CorpusIndex build_index(std::string_view xml_text) {
    IndexBuilder builder;
    XML_Parser parser = XML_ParserCreate(nullptr);
    if (parser == nullptr) throw Error("failed to create XML parser");
    ParserGuard guard(parser);

    XML_SetUserData(parser, &builder);
    XML_SetElementHandler(parser, on_start, on_end);
    XML_SetCharacterDataHandler(parser, on_chars);

    if (XML_Parse(parser, xml_text.data(), static_cast<int>(xml_text.size()),
                  /*isFinal=*/1)
        == XML_STATUS_ERROR) {
        throw XmlParseError(
            std::string("XML parse error: ")
                + XML_ErrorString(XML_GetErrorCode(parser)),
            XML_GetCurrentLineNumber(parser),
            XML_GetCurrentColumnNumber(parser) + 1);
    }
    builder.finish();
    return builder.take();
}

CorpusIndex build_index_from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return build_index(buffer.str());
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr const char* kMetaFile = "meta.tsv";
constexpr const char* kPostingsFile = "postings.tsv";
constexpr const char* kElementsFile = "elements.tsv";
constexpr const char* kStoredDir = "stored";

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    size_t pos = 0;
    while (true) {
        size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return fields;
}

uint64_t parse_u64(const std::string& text, const std::string& context) {
    if (text.empty()
        || !std::all_of(text.begin(), text.end(), [](unsigned char c) {
               return std::isdigit(c);
           })) {
        throw IoError(context + ": expected an unsigned integer, got '" + text
                      + "'");
    }
    return std::stoull(text);
}

}  // namespace

void save_index(const CorpusIndex& index, const std::filesystem::path& directory) {
    std::filesystem::create_directories(directory);

    {
        auto out = open_out(directory / kMetaFile);
        out << "version\t" << CorpusIndex::kFormatVersion << "\n";
        out << "word_count\t" << index.word_count() << "\n";
    }
    {
        auto out = open_out(directory / kPostingsFile);
        for (const auto& [token, positions] : index.postings()) {
            out << token << '\t';
            for (size_t i = 0; i < positions.size(); ++i) {
                if (i > 0) out << ' ';
                out << positions[i];
            }
            out << '\n';
        }
    }
    {
        auto out = open_out(directory / kElementsFile);
        for (const auto& [tag, extents] : index.elements()) {
            for (const Extent& e : extents) {
                out << tag << '\t' << e.start << '\t' << e.end << '\n';
            }
        }
    }
    std::filesystem::remove_all(directory / kStoredDir);
    if (!index.stored_sets().empty()) {
        std::filesystem::create_directories(directory / kStoredDir);
        for (const auto& [name, set] : index.stored_sets()) {
            auto out = open_out(directory / kStoredDir / (name + ".tsv"));
            out << set.to_tsv();
        }
    }
}

CorpusIndex load_index(const std::filesystem::path& directory) {
    const auto meta_path = directory / kMetaFile;
    std::ifstream meta(meta_path);
    if (!meta) {
        throw IoError("not an index directory (missing " + meta_path.string()
                      + ")");
    }

    CorpusIndex index;
    bool version_seen = false;
    std::string line;
    while (std::getline(meta, line)) {
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2) throw IoError("corrupt meta.tsv line: " + line);
        if (fields[0] == "version") {
            if (fields[1] != CorpusIndex::kFormatVersion) {
                throw IoError("index version mismatch: have " + fields[1]
                              + ", expected " + CorpusIndex::kFormatVersion);
            }
            version_seen = true;
        } else if (fields[0] == "word_count") {
            index.word_count_ = parse_u64(fields[1], "meta.tsv word_count");
        } else {
            throw IoError("corrupt meta.tsv: unknown key '" + fields[0] + "'");
        }
    }
    if (!version_seen) throw IoError("corrupt meta.tsv: missing version");

    const uint32_t bound = static_cast<uint32_t>(index.word_count_) + 1;

    std::ifstream postings(directory / kPostingsFile);
    if (!postings) throw IoError("missing postings.tsv in " + directory.string());
    while (std::getline(postings, line)) {
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 2 || fields[0].empty()) {
            throw IoError("corrupt postings.tsv line: " + line);
        }
        std::vector<uint32_t>& positions = index.postings_[fields[0]];
        std::istringstream nums(fields[1]);
        std::string num;
        while (nums >> num) {
            uint64_t p = parse_u64(num, "postings.tsv position");
            if (p < 1 || p >= bound) {
                throw IoError("postings.tsv position out of range: " + num);
            }
            if (!positions.empty() && positions.back() >= p) {
                throw IoError("corrupt postings.tsv: positions of '" + fields[0]
                              + "' not strictly increasing");
            }
            positions.push_back(static_cast<uint32_t>(p));
        }
        if (positions.empty()) {
            throw IoError("corrupt postings.tsv: token '" + fields[0]
                          + "' has no positions");
        }
    }

    // Position density: the postings must cover 1..n, each position once.
    {
        std::vector<bool> seen(index.word_count_ + 1, false);
        uint64_t total = 0;
        for (const auto& [token, positions] : index.postings_) {
            for (uint32_t p : positions) {
                if (seen[p]) {
                    throw IoError("corrupt postings.tsv: duplicate position "
                                  + std::to_string(p));
                }
                seen[p] = true;
                ++total;
            }
        }
        if (total != index.word_count_) {
            throw IoError("corrupt postings.tsv: " + std::to_string(total)
                          + " positions for word_count "
                          + std::to_string(index.word_count_));
        }
    }

    std::ifstream elements(directory / kElementsFile);
    if (!elements) throw IoError("missing elements.tsv in " + directory.string());
    while (std::getline(elements, line)) {
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3 || fields[0].empty()) {
            throw IoError("corrupt elements.tsv line: " + line);
        }
        uint64_t start = parse_u64(fields[1], "elements.tsv start");
        uint64_t end = parse_u64(fields[2], "elements.tsv end");
        if (start < 1 || start >= end || end > bound) {
            throw IoError("elements.tsv extent out of range: " + line);
        }
        index.elements_[fields[0]].push_back(
            {static_cast<uint32_t>(start), static_cast<uint32_t>(end)});
    }

    const auto stored_dir = directory / kStoredDir;
    if (std::filesystem::is_directory(stored_dir)) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(stored_dir)) {
            if (entry.path().extension() == ".tsv") files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            index.register_stored_set(file.stem().string(),
                                      load_stored_set_tsv(file));
        }
    }
    return index;
}

RegionSet load_stored_set_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stored-set file: " + path.string());
    std::vector<Region> regions;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_tabs(line);
        if (fields.size() != 3) {
            throw IoError(path.string() + ":" + std::to_string(lineno)
                          + ": expected start<TAB>end<TAB>score");
        }
        Region r;
        r.start = static_cast<uint32_t>(
            parse_u64(fields[0], path.string() + " start"));
        r.end = static_cast<uint32_t>(parse_u64(fields[1], path.string() + " end"));
        r.score = parse_double_strict(fields[2], path.string() + " score");
        validate_region(r);
        regions.push_back(r);
    }
    return RegionSet::canonical(std::move(regions));
}

}  // namespace regionlm
