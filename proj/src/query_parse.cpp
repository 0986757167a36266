#include <cctype>
#include <charconv>
#include <optional>
#include <utility>

#include "regionlm/errors.hpp"
#include "regionlm/query.hpp"
#include "regionlm/text_util.hpp"

namespace regionlm {

ExprPtr make_word(std::string token) {
    if (token.empty()) throw ValidationError("empty word token");
    return std::make_shared<QueryExpr>(QueryExpr{WordLeaf{std::move(token)}});
}

ExprPtr make_element(std::string tag) {
    if (tag.empty()) throw ValidationError("empty element tag");
    return std::make_shared<QueryExpr>(QueryExpr{ElementLeaf{std::move(tag)}});
}

ExprPtr make_stored(std::string name) {
    if (name.empty()) throw ValidationError("empty stored-set name");
    return std::make_shared<QueryExpr>(QueryExpr{StoredSetLeaf{std::move(name)}});
}

ExprPtr make_scale(double factor, ExprPtr child) {
    if (!(factor > 0.0)) {
        throw ValidationError("SCALE factor must be > 0, got "
                              + format_double_shortest(factor));
    }
    return std::make_shared<QueryExpr>(
        QueryExpr{ScaleNode{factor, std::move(child)}});
}

ExprPtr make_containing(ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<QueryExpr>(
        QueryExpr{ContainingNode{std::move(lhs), std::move(rhs)}});
}

ExprPtr make_contained_by(ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<QueryExpr>(
        QueryExpr{ContainedByNode{std::move(lhs), std::move(rhs)}});
}

ExprPtr make_and(ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<QueryExpr>(
        QueryExpr{AndNode{std::move(lhs), std::move(rhs)}});
}

ExprPtr make_or(ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<QueryExpr>(
        QueryExpr{OrNode{std::move(lhs), std::move(rhs)}});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& lhs) -> bool {
            using T = std::decay_t<decltype(lhs)>;
            const auto& rhs = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, WordLeaf>) {
                return lhs.token == rhs.token;
            } else if constexpr (std::is_same_v<T, ElementLeaf>) {
                return lhs.tag == rhs.tag;
            } else if constexpr (std::is_same_v<T, StoredSetLeaf>) {
                return lhs.name == rhs.name;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return lhs.factor == rhs.factor
                    && expr_equal(lhs.child, rhs.child);
            } else {
                return expr_equal(lhs.lhs, rhs.lhs) && expr_equal(lhs.rhs, rhs.rhs);
            }
        },
        a->node);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
    Word,
    Number,
    Element,
    Stored,
    LParen,
    RParen,
    KwContaining,
    KwContainedBy,
    KwScale,
    KwAnd,
    KwOr,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;    // word (normalized), element tag, or stored name
    double number = 0.0; // valid for Tok::Number
    size_t offset = 0;   // 0-based byte offset into the query
};

const char* token_name(Tok t) {
    switch (t) {
        case Tok::Word: return "word";
        case Tok::Number: return "number";
        case Tok::Element: return "element";
        case Tok::Stored: return "stored set";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::KwContaining: return "CONTAINING";
        case Tok::KwContainedBy: return "CONTAINED_BY";
        case Tok::KwScale: return "SCALE";
        case Tok::KwAnd: return "AND";
        case Tok::KwOr: return "OR";
        case Tok::End: return "end of query";
    }
    return "?";
}

bool is_ident_byte(unsigned char c) { return is_word_byte(c) || c == '_'; }

std::string upper_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::optional<Tok> keyword(std::string_view ident) {
    std::string up = upper_ascii(ident);
    if (up == "CONTAINING") return Tok::KwContaining;
    if (up == "CONTAINED_BY") return Tok::KwContainedBy;
    if (up == "SCALE") return Tok::KwScale;
    if (up == "AND") return Tok::KwAnd;
    if (up == "OR") return Tok::KwOr;
    return std::nullopt;
}

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& message, size_t offset) const {
        throw QuerySyntaxError(message, offset + 1);
    }

  private:
    void advance() {
        while (pos_ < text_.size()
               && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        current_ = Token{};
        current_.offset = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            return;
        }
        unsigned char c = static_cast<unsigned char>(text_[pos_]);
        switch (c) {
            case '(': current_.kind = Tok::LParen; ++pos_; return;
            case ')': current_.kind = Tok::RParen; ++pos_; return;
            case '<': lex_element(); return;
            case '$': lex_stored(); return;
            default: break;
        }
        if (std::isdigit(c)) {
            if (lex_number()) return;
        }
        if (is_ident_byte(c)) {
            lex_word();
            return;
        }
        fail(std::string("unexpected character '") + static_cast<char>(c) + "'",
             pos_);
    }

    void lex_element() {
        size_t start = pos_++;
        size_t name_start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '>'
               && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ >= text_.size() || text_[pos_] != '>' || pos_ == name_start) {
            fail("malformed element: expected <name>", start);
        }
        current_.kind = Tok::Element;
        current_.text = std::string(text_.substr(name_start, pos_ - name_start));
        ++pos_;  // consume '>'
    }

    void lex_stored() {
        size_t start = pos_++;
        size_t name_start = pos_;
        if (pos_ >= text_.size()
            || !(std::isalpha(static_cast<unsigned char>(text_[pos_]))
                 || text_[pos_] == '_')) {
            fail("malformed stored-set reference: expected $name", start);
        }
        while (pos_ < text_.size()
               && (std::isalnum(static_cast<unsigned char>(text_[pos_]))
                   || text_[pos_] == '_')) {
            ++pos_;
        }
        current_.kind = Tok::Stored;
        current_.text = std::string(text_.substr(name_start, pos_ - name_start));
    }

    // Accepts digits ('.' digits)? ([eE] [+-]? digits)? as a number provided
    // it is not glued onto further identifier bytes ("12abc" is a word).
    bool lex_number() {
        size_t p = pos_;
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        if (p < text_.size() && text_[p] == '.') {
            size_t q = p + 1;
            while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
            if (q == p + 1) return false;  // "12." — not a number form we accept
            p = q;
        }
        if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
            size_t q = p + 1;
            if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
            size_t digits = q;
            while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
            if (q > digits) p = q;
        }
        if (p < text_.size() && is_ident_byte(static_cast<unsigned char>(text_[p]))) {
            return false;
        }
        std::string_view lexeme = text_.substr(pos_, p - pos_);
        double value = 0.0;
        auto res = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
        if (res.ec != std::errc() || res.ptr != lexeme.data() + lexeme.size()) {
            fail("malformed number '" + std::string(lexeme) + "'", pos_);
        }
        current_.kind = Tok::Number;
        current_.text = normalize_token(lexeme);
        current_.number = value;
        pos_ = p;
        return true;
    }

    void lex_word() {
        size_t start = pos_;
        while (pos_ < text_.size()
               && is_ident_byte(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        std::string_view raw = text_.substr(start, pos_ - start);
        if (auto kw = keyword(raw)) {
            current_.kind = *kw;
            return;
        }
        current_.kind = Tok::Word;
        current_.text = normalize_token(raw);
    }

    std::string_view text_;
    size_t pos_ = 0;
    Token current_;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
  public:
    explicit Parser(std::string_view text) : lex_(text) {}

    ExprPtr parse() {
        ExprPtr e = parse_or();
        if (lex_.peek().kind != Tok::End) {
            lex_.fail(std::string("unexpected ") + token_name(lex_.peek().kind)
                          + " after complete query",
                      lex_.peek().offset);
        }
        return e;
    }

  private:
    ExprPtr parse_or() {
        ExprPtr e = parse_and();
        while (lex_.peek().kind == Tok::KwOr) {
            lex_.take();
            e = make_or(std::move(e), parse_and());
        }
        return e;
    }

    ExprPtr parse_and() {
        ExprPtr e = parse_cont();
        while (lex_.peek().kind == Tok::KwAnd) {
            lex_.take();
            e = make_and(std::move(e), parse_cont());
        }
        return e;
    }

    ExprPtr parse_cont() {
        ExprPtr e = parse_unary();
        while (lex_.peek().kind == Tok::KwContaining
               || lex_.peek().kind == Tok::KwContainedBy) {
            Tok op = lex_.take().kind;
            ExprPtr rhs = parse_unary();
            e = op == Tok::KwContaining
                    ? make_containing(std::move(e), std::move(rhs))
                    : make_contained_by(std::move(e), std::move(rhs));
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (lex_.peek().kind == Tok::Number) {
            Token num = lex_.take();
            if (lex_.peek().kind == Tok::KwScale) {
                lex_.take();
                if (!(num.number > 0.0)) {
                    lex_.fail("SCALE factor must be > 0", num.offset);
                }
                return make_scale(num.number, parse_unary());
            }
            // Bare number: a corpus word that happens to look numeric.
            return make_word(num.text);
        }
        return parse_atom();
    }

    ExprPtr parse_atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Word: return make_word(t.text);
            case Tok::Element: return make_element(t.text);
            case Tok::Stored: return make_stored(t.text);
            case Tok::LParen: {
                ExprPtr e = parse_or();
                if (lex_.peek().kind != Tok::RParen) {
                    lex_.fail(std::string("expected ')', found ")
                                  + token_name(lex_.peek().kind),
                              lex_.peek().offset);
                }
                lex_.take();
                return e;
            }
            default:
                lex_.fail(std::string("expected a word, <element>, $set or '(', found ")
                              + token_name(t.kind),
                          t.offset);
        }
    }

    Lexer lex_;
};

std::string render(const ExprPtr& expr, bool top_level);

std::string render_binary(const ExprPtr& lhs, const char* op, const ExprPtr& rhs,
                          bool top_level) {
    std::string body = render(lhs, false) + " " + op + " " + render(rhs, false);
    return top_level ? body : "(" + body + ")";
}

std::string render(const ExprPtr& expr, bool top_level) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, WordLeaf>) {
                return node.token;
            } else if constexpr (std::is_same_v<T, ElementLeaf>) {
                return "<" + node.tag + ">";
            } else if constexpr (std::is_same_v<T, StoredSetLeaf>) {
                return "$" + node.name;
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                std::string body = format_double_shortest(node.factor)
                                 + " SCALE " + render(node.child, false);
                return top_level ? body : "(" + body + ")";
            } else if constexpr (std::is_same_v<T, ContainingNode>) {
                return render_binary(node.lhs, "CONTAINING", node.rhs, top_level);
            } else if constexpr (std::is_same_v<T, ContainedByNode>) {
                return render_binary(node.lhs, "CONTAINED_BY", node.rhs, top_level);
            } else if constexpr (std::is_same_v<T, AndNode>) {
                return render_binary(node.lhs, "AND", node.rhs, top_level);
            } else {
                return render_binary(node.lhs, "OR", node.rhs, top_level);
            }
        },
        expr->node);
}

}  // namespace

ExprPtr parse_query(std::string_view text) { return Parser(text).parse(); }

std::string to_query_string(const ExprPtr& expr) { return render(expr, true); }

}  // namespace regionlm
