#include "regionlm/text_util.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

#include "regionlm/errors.hpp"

namespace regionlm {

std::string normalize_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (unsigned char c : raw) out.push_back(normalize_word_byte(c));
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            current.push_back(normalize_word_byte(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string format_double_shortest(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_double_sig9(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

double parse_double_strict(std::string_view text, const std::string& what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        throw ValidationError(what + ": not a number: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace regionlm
