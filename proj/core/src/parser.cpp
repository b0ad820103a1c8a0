#include "pdga/parser.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "pdga/errors.hpp"

namespace pdga {
namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, lbracket, rbracket, lbrace, rbrace,
                 comma, equals, arrow, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::number: return "number";
        case Tok::ident: return "identifier";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::slash: return "'/'";
        case Tok::caret: return "'^'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::lbracket: return "'['";
        case Tok::rbracket: return "']'";
        case Tok::lbrace: return "'{'";
        case Tok::rbrace: return "'}'";
        case Tok::comma: return "','";
        case Tok::equals: return "'='";
        case Tok::arrow: return "'->'";
        case Tok::end: return "end of input";
    }
    return "token";
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

    Token expect(Tok kind) {
        if (current_.kind != kind)
            throw ParseError(std::string("expected ") + describe(kind) + ", found " + describe(current_.kind),
                             current_.offset);
        return take();
    }

    bool accept(Tok kind) {
        if (current_.kind != kind) return false;
        advance();
        return true;
    }

private:
    void advance() {
        skip_space();
        std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            current_ = {Tok::end, "", text_.size()};
            return;
        }
        char c = text_[pos_];
        auto uc = static_cast<unsigned char>(c);
        if (std::isdigit(uc)) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            current_ = {Tok::number, std::string(text_.substr(start, pos_ - start)), start};
            return;
        }
        if (std::isalpha(uc) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            current_ = {Tok::ident, std::string(text_.substr(start, pos_ - start)), start};
            return;
        }
        ++pos_;
        Tok kind;
        switch (c) {
            case '+': kind = Tok::plus; break;
            case '-':
                if (pos_ < text_.size() && text_[pos_] == '>') {
                    ++pos_;
                    kind = Tok::arrow;
                } else {
                    kind = Tok::minus;
                }
                break;
            case '*': kind = Tok::star; break;
            case '/': kind = Tok::slash; break;
            case '^': kind = Tok::caret; break;
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            case '[': kind = Tok::lbracket; break;
            case ']': kind = Tok::rbracket; break;
            case '{': kind = Tok::lbrace; break;
            case '}': kind = Tok::rbrace; break;
            case ',': kind = Tok::comma; break;
            case '=': kind = Tok::equals; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        current_ = {kind, std::string(text_.substr(start, pos_ - start)), start};
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_{Tok::end, "", 0};
};

class ExprParser {
public:
    ExprParser(Lexer& lex, const Ring& ring) : lex_(lex), ring_(ring) {}

    Polynomial expression() {
        Polynomial acc = term();
        for (;;) {
            if (lex_.accept(Tok::plus)) {
                acc += term();
            } else if (lex_.accept(Tok::minus)) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

private:
    Polynomial term() {
        Polynomial acc = unary();
        for (;;) {
            if (lex_.accept(Tok::star)) {
                acc = acc * unary();
            } else if (lex_.peek().kind == Tok::slash) {
                auto at = lex_.take().offset;
                Polynomial d = unary();
                if (!d.is_constant() || d.is_zero())
                    throw ParseError("division is only allowed by nonzero constants", at);
                acc *= Rational(1) / d.constant_term();
            } else {
                return acc;
            }
        }
    }

    Polynomial unary() {
        if (lex_.accept(Tok::minus)) return -unary();
        if (lex_.accept(Tok::plus)) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (!lex_.accept(Tok::caret)) return base;
        if (lex_.peek().kind == Tok::minus) throw ParseError("negative exponent", lex_.peek().offset);
        auto tok = lex_.expect(Tok::number);
        if (tok.text.size() > 6) throw ParseError("exponent too large", tok.offset);
        return base.pow(std::stol(tok.text));
    }

    Polynomial atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::number: {
                auto tok = lex_.take();
                return Polynomial::constant(ring_, Rational(Integer(tok.text)));
            }
            case Tok::ident: {
                auto tok = lex_.take();
                auto idx = ring_->index_of(tok.text);
                if (!idx) throw UnknownVariable(tok.text, tok.offset);
                return Polynomial::variable(ring_, *idx);
            }
            case Tok::lparen: {
                lex_.take();
                Polynomial inner = expression();
                lex_.expect(Tok::rparen);
                return inner;
            }
            default:
                throw ParseError(std::string("expected operand, found ") + describe(t.kind), t.offset);
        }
    }

    Lexer& lex_;
    const Ring& ring_;
};

void append_rational(std::ostringstream& os, const Rational& c) { os << c.get_str(); }

std::size_t variable_ref(Lexer& lex, const Ring& ring) {
    auto tok = lex.expect(Tok::ident);
    auto idx = ring->index_of(tok.text);
    if (!idx) throw UnknownVariable(tok.text, tok.offset);
    return *idx;
}

std::vector<Polynomial> parse_assignment_block(Lexer& lex, const Ring& ring) {
    lex.expect(Tok::lbrace);
    std::vector<std::optional<Polynomial>> images(ring->size());
    do {
        auto at = lex.peek().offset;
        auto var = variable_ref(lex, ring);
        if (images[var]) throw ParseError("variable '" + ring->name(var) + "' assigned twice", at);
        lex.expect(Tok::arrow);
        images[var] = ExprParser(lex, ring).expression();
    } while (lex.accept(Tok::comma));
    auto close = lex.expect(Tok::rbrace);
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!images[i]) throw ParseError("variable '" + ring->name(i) + "' has no image", close.offset);
        out.push_back(std::move(*images[i]));
    }
    return out;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
    Lexer lex(text);
    Polynomial p = ExprParser(lex, ring).expression();
    if (lex.peek().kind != Tok::end)
        throw ParseError(std::string("unexpected ") + describe(lex.peek().kind), lex.peek().offset);
    return p;
}

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    const auto& ring = *p.ring();
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coefficient;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (c != 1 || t.monomial.is_one()) {
            append_rational(os, c);
            wrote = true;
        }
        for (std::size_t i = 0; i < ring.size(); ++i) {
            auto e = t.monomial[i];
            if (e == 0) continue;
            if (wrote) os << "*";
            os << ring.name(i);
            if (e > 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

Declarations parse_declarations(std::string_view text) {
    Lexer lex(text);
    Declarations decls;
    std::set<std::string> names_seen;
    auto fresh_decl_name = [&](const std::string& kind) {
        auto tok = lex.expect(Tok::ident);
        if (!names_seen.insert(kind + ":" + tok.text).second)
            throw ParseError(kind + " '" + tok.text + "' declared twice", tok.offset);
        return tok.text;
    };
    while (lex.peek().kind != Tok::end) {
        auto kw = lex.expect(Tok::ident);
        if (kw.text == "ring") {
            if (decls.ring) throw ParseError("only one ring declaration is allowed", kw.offset);
            auto field = lex.expect(Tok::ident);
            if (field.text != "Q") throw ParseError("only the coefficient field Q is supported", field.offset);
            lex.expect(Tok::lbracket);
            std::vector<std::string> names;
            std::set<std::string> seen;
            do {
                auto v = lex.expect(Tok::ident);
                if (!seen.insert(v.text).second) throw ParseError("duplicate variable '" + v.text + "'", v.offset);
                names.push_back(v.text);
            } while (lex.accept(Tok::comma));
            lex.expect(Tok::rbracket);
            decls.ring = VariableRing::make(std::move(names));
            continue;
        }
        if (!decls.ring) throw ParseError("the ring must be declared first", kw.offset);
        const Ring& ring = decls.ring;
        if (kw.text == "ideal") {
            auto name = fresh_decl_name("ideal");
            lex.expect(Tok::equals);
            lex.expect(Tok::lbrace);
            std::vector<Polynomial> gens;
            // `{}` is the zero ideal.
            if (!lex.accept(Tok::rbrace)) {
                do {
                    gens.push_back(ExprParser(lex, ring).expression());
                } while (lex.accept(Tok::comma));
                lex.expect(Tok::rbrace);
            }
            decls.ideals.emplace(name, std::move(gens));
        } else if (kw.text == "derivation") {
            auto name = fresh_decl_name("derivation");
            lex.expect(Tok::equals);
            decls.derivations.emplace(name, parse_assignment_block(lex, ring));
        } else if (kw.text == "section") {
            auto name = fresh_decl_name("section");
            lex.expect(Tok::equals);
            decls.sections.emplace(name, parse_assignment_block(lex, ring));
        } else if (kw.text == "poisson") {
            auto name = fresh_decl_name("poisson");
            lex.expect(Tok::equals);
            lex.expect(Tok::lbrace);
            std::map<std::pair<std::size_t, std::size_t>, Polynomial> entries;
            // `{}` is the zero bracket.
            if (!lex.accept(Tok::rbrace)) {
                do {
                    auto at = lex.expect(Tok::lbracket).offset;
                    auto i = variable_ref(lex, ring);
                    lex.expect(Tok::comma);
                    auto j = variable_ref(lex, ring);
                    lex.expect(Tok::rbracket);
                    lex.expect(Tok::equals);
                    Polynomial value = ExprParser(lex, ring).expression();
                    if (i == j) {
                        if (!value.is_zero()) throw ParseError("diagonal bracket entries must be 0", at);
                        continue;
                    }
                    auto key = i < j ? std::pair{i, j} : std::pair{j, i};
                    if (i > j) value = -value;
                    if (!entries.emplace(key, std::move(value)).second)
                        throw ParseError("bracket pair assigned twice", at);
                } while (lex.accept(Tok::comma));
                lex.expect(Tok::rbrace);
            }
            decls.poisson.emplace(name, std::move(entries));
        } else {
            throw ParseError("unknown declaration '" + kw.text + "'", kw.offset);
        }
    }
    if (!decls.ring) throw ParseError("missing ring declaration", text.size());
    return decls;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace pdga
