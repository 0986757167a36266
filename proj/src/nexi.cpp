#include "regionlm/nexi.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "regionlm/errors.hpp"
#include "regionlm/text_util.hpp"

namespace regionlm {

namespace {

struct AboutPredicate {
    // Empty inner_tags means the predicate target is "." (the step itself);
    // otherwise it is the ".//tag" / ".//(a|b)" alternatives.
    std::vector<std::string> inner_tags;
    std::vector<std::string> words;
};

struct Step {
    std::string tag;
    std::optional<AboutPredicate> predicate;
};

class NexiParser {
  public:
    explicit NexiParser(std::string_view text) : text_(text) {}

    std::vector<Step> parse() {
        std::vector<Step> steps;
        skip_space();
        while (pos_ < text_.size()) {
            steps.push_back(parse_step());
            skip_space();
        }
        if (steps.empty()) fail("empty NEXI query");
        if (steps.size() > 2) {
            fail("unsupported construct: paths with more than two steps");
        }
        return steps;
    }

  private:
    [[noreturn]] void fail(const std::string& message) const {
        throw QuerySyntaxError("NEXI: " + message, pos_ + 1);
    }

    void skip_space() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(std::string_view literal) {
        if (text_.substr(pos_, literal.size()) == literal) {
            pos_ += literal.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view literal, const std::string& what) {
        if (!consume(literal)) fail("expected " + what);
    }

    std::string parse_name() {
        size_t start = pos_;
        while (pos_ < text_.size()) {
            unsigned char c = static_cast<unsigned char>(text_[pos_]);
            if (std::isalnum(c) || c == '_' || c == '-' || c == '.') {
                // '.' only continues a name if not starting "..." / ".//"
                if (c == '.' && text_.substr(pos_, 3) == ".//") break;
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    Step parse_step() {
        expect("//", "descendant step '//'");
        Step step;
        step.tag = parse_name();
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '[') {
            step.predicate = parse_predicate();
        }
        if (pos_ < text_.size() && text_[pos_] == '[') {
            fail("unsupported construct: multiple predicates on one step");
        }
        return step;
    }

    AboutPredicate parse_predicate() {
        expect("[", "'['");
        skip_space();
        if (!consume("about(")) {
            fail("unsupported construct: only about(...) predicates are supported");
        }
        AboutPredicate pred;
        skip_space();
        if (consume(".//")) {
            skip_space();
            if (consume("(")) {
                while (true) {
                    skip_space();
                    pred.inner_tags.push_back(parse_name());
                    skip_space();
                    if (consume("|")) continue;
                    expect(")", "')' closing the tag alternatives");
                    break;
                }
            } else {
                pred.inner_tags.push_back(parse_name());
            }
        } else if (consume(".")) {
            // target is the step element itself
        } else {
            fail("unsupported construct: about() target must be '.' or './/tag'");
        }
        skip_space();
        expect(",", "',' before the about() terms");

        // Everything up to the closing ')' is the term list. Phrase quotes
        // and +/- qualifiers have no region translation here, so they are
        // rejected instead of being stripped silently.
        size_t close = text_.find(')', pos_);
        if (close == std::string_view::npos) fail("expected ')' closing about()");
        std::string_view segment = text_.substr(pos_, close - pos_);
        for (unsigned char c : segment) {
            if (!is_word_byte(c) && !std::isspace(c)) {
                fail(std::string("unsupported construct: '") + static_cast<char>(c)
                     + "' in about() terms");
            }
        }
        pred.words = tokenize(segment);
        if (pred.words.empty()) fail("about() has no terms");
        pos_ = close + 1;
        skip_space();
        expect("]", "']' closing the predicate");
        return pred;
    }

    std::string_view text_;
    size_t pos_ = 0;
};

// The filter expression of one step: the about() words become a CONTAINING
// chain over the predicate target, nested left to right; a ".//" target is
// then required to sit inside the step element.
ExprPtr filtered_step(const Step& step) {
    ExprPtr element = make_element(step.tag);
    if (!step.predicate) return element;

    const AboutPredicate& pred = *step.predicate;
    ExprPtr base;
    if (pred.inner_tags.empty()) {
        base = element;
    } else {
        for (const std::string& tag : pred.inner_tags) {
            ExprPtr e = make_element(tag);
            base = base ? make_or(std::move(base), std::move(e)) : std::move(e);
        }
    }
    ExprPtr chain = std::move(base);
    for (const std::string& word : pred.words) {
        chain = make_containing(std::move(chain), make_word(word));
    }
    if (pred.inner_tags.empty()) return chain;
    return make_containing(std::move(element), std::move(chain));
}

}  // namespace

ExprPtr translate_nexi(std::string_view query) {
    std::vector<Step> steps = NexiParser(query).parse();
    if (steps.size() == 1) return filtered_step(steps[0]);
    return make_contained_by(filtered_step(steps[1]), filtered_step(steps[0]));
}

}  // namespace regionlm
