#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace regionlm {

/// Word-constituent test shared by the indexer and the query lexer.
/// ASCII letters and digits form words; bytes >= 0x80 (multi-byte UTF-8) are
/// kept verbatim so non-ASCII text stays intact; everything else separates.
inline bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')
        || (c >= '0' && c <= '9') || c >= 0x80;
}

inline char normalize_word_byte(unsigned char c) {
    if (c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
    return static_cast<char>(c);
}

/// Lowercases a token with the same byte-level rule the indexer applies.
std::string normalize_token(std::string_view raw);

/// Splits plain text into tokens: maximal runs of word bytes, lowercased.
std::vector<std::string> tokenize(std::string_view text);

/// Shortest decimal form that round-trips to the same double ("0.2", not
/// "0.200000000000000011...").
std::string format_double_shortest(double value);

/// Fixed 9-significant-digit form used for ranked output.
std::string format_double_sig9(double value);

/// Strict double parse of a full string; throws ValidationError otherwise.
double parse_double_strict(std::string_view text, const std::string& what);

}  // namespace regionlm
