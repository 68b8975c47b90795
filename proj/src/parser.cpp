#include "pqc/syntax.hpp"

#include <cctype>
#include <set>
#include <variant>

namespace pqc {

namespace {

using namespace ast;

struct Token {
    enum class Kind { Ident, Number, Label, GateRef, String, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    SourceLoc loc;
};

const std::set<std::string, std::less<>> kKeywords = {
    "let", "in", "return", "force", "lift", "box", "apply", "ifz", "then", "else",
    "inputs", "gates", "Qubit", "Bit", "Nat", "Circ", "I",
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip();
            Token t;
            t.loc = {line_, col_};
            if (pos_ >= text_.size()) {
                out.push_back(t);
                return out;
            }
            lex(t);
            out.push_back(std::move(t));
        }
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("ParseError", msg + " at " + to_string(SourceLoc{line_, col_}), {line_, col_});
    }

    bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            const unsigned char c = static_cast<unsigned char>(text_[pos_++]);
            if (c == '\n') {
                ++line_;
                col_ = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++col_;
            }
        }
    }

    void skip() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            } else if (starts_with("--")) {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string digits() {
        std::string s;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            s += text_[pos_];
            advance();
        }
        return s;
    }

    std::string identifier() {
        std::string s;
        while (pos_ < text_.size() && ident_char(text_[pos_])) {
            s += text_[pos_];
            advance();
        }
        return s;
    }

    void lex(Token& t) {
        const char c = text_[pos_];
        if (ident_start(c)) {
            t.kind = Token::Kind::Ident;
            t.text = identifier();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::Number;
            t.text = digits();
        } else if (c == '#') {
            advance();
            t.kind = Token::Kind::Label;
            t.text = digits();
            if (t.text.empty()) fail("expected digits after '#'");
        } else if (c == '@') {
            advance();
            t.kind = Token::Kind::GateRef;
            if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected a gate name after '@'");
            t.text = identifier();
        } else if (c == '"') {
            advance();
            t.kind = Token::Kind::String;
            while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
                t.text += text_[pos_];
                advance();
            }
            if (pos_ >= text_.size() || text_[pos_] != '"') fail("unterminated string");
            advance();
        } else if (starts_with("-o")) {
            symbol(t, "-o", 2);
        } else if (starts_with("\xE2\x8A\xB8")) {
            symbol(t, "-o", 3);
        } else if (starts_with("\xE2\x8A\x97")) {
            symbol(t, "*", 3);
        } else if (starts_with("\xCE\xBB")) {
            symbol(t, "\\", 2);
        } else if (std::string_view("()[],;:.=\\*!").find(c) != std::string_view::npos) {
            symbol(t, std::string(1, c), 1);
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }

    void symbol(Token& t, std::string text, std::size_t width) {
        t.kind = Token::Kind::Symbol;
        t.text = std::move(text);
        advance(width);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

using TermOrValue = std::variant<TermPtr, ValuePtr>;

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

    Program program() {
        Program p;
        for (;;) {
            if (is_keyword("inputs")) {
                next();
                inputs(p.inputs);
            } else if (is_keyword("gates")) {
                next();
                if (peek().kind != Token::Kind::String) fail("expected a quoted path");
                p.gates_path = next().text;
                expect(";");
            } else {
                break;
            }
        }
        p.main = term();
        expect_end();
        return p;
    }

    TermPtr whole_term() {
        TermPtr t = term();
        expect_end();
        return t;
    }

    ValuePtr whole_value() {
        ValuePtr v = value();
        expect_end();
        return v;
    }

    TypePtr whole_type() {
        TypePtr t = type();
        expect_end();
        return t;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }

    Token next() {
        Token t = peek();
        if (pos_ < tokens_.size() - 1) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, std::string code = "ParseError") const {
        const Token& t = peek();
        const std::string near = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(std::move(code), msg + " near " + near + " at " + to_string(t.loc), t.loc);
    }

    bool is_symbol(std::string_view s) const {
        return peek().kind == Token::Kind::Symbol && peek().text == s;
    }

    bool is_keyword(std::string_view s) const {
        return peek().kind == Token::Kind::Ident && peek().text == s;
    }

    void expect(std::string_view s) {
        if (!is_symbol(s)) fail("expected '" + std::string(s) + "'");
        next();
    }

    void expect_keyword(std::string_view s) {
        if (!is_keyword(s)) fail("expected '" + std::string(s) + "'");
        next();
    }

    void expect_end() {
        if (peek().kind != Token::Kind::End) fail("unexpected trailing input");
    }

    std::string binder() {
        if (peek().kind != Token::Kind::Ident || kKeywords.count(peek().text))
            fail("expected a variable name");
        return next().text;
    }

    std::uint64_t number() {
        if (peek().kind != Token::Kind::Number) fail("expected a number");
        try {
            return std::stoull(next().text);
        } catch (const std::out_of_range&) {
            fail("number out of range");
        }
    }

    void inputs(LabelContext& ctx) {
        for (;;) {
            if (peek().kind != Token::Kind::Label) fail("expected a label");
            const SourceLoc loc = peek().loc;
            const Label l{std::stoull(next().text)};
            expect(":");
            if (peek().kind != Token::Kind::Ident) fail("expected Qubit or Bit");
            auto w = parse_wire_type(next().text);
            if (!w) fail("expected Qubit or Bit");
            if (ctx.index_of(l)) throw ParseError("ParseError", "label " + to_string(l) + " declared twice", loc);
            ctx.push_back(l, *w);
            if (is_symbol(";")) {
                next();
                return;
            }
            expect(",");
        }
    }

    // Types.

    TypePtr type() {
        TypePtr left = tensor();
        if (!is_symbol("-o")) return left;
        next();
        BundleType captured = BundleType::unit();
        std::optional<std::uint64_t> literal;
        if (is_symbol("[")) {
            next();
            if (is_symbol(";")) {
                next();
                literal = number();
            } else {
                captured = bundle(type());
                if (is_symbol(";")) {
                    next();
                    literal = number();
                }
            }
            expect("]");
        }
        TypePtr right = type();
        return arrow_type(std::move(left), std::move(right), std::move(captured), literal);
    }

    TypePtr tensor() {
        TypePtr left = prefix();
        if (!is_symbol("*")) return left;
        next();
        return tensor_type(std::move(left), tensor());
    }

    std::optional<std::uint64_t> annotation() {
        if (!is_symbol("[")) return std::nullopt;
        next();
        std::uint64_t n = number();
        expect("]");
        return n;
    }

    TypePtr prefix() {
        if (is_symbol("!")) {
            next();
            auto literal = annotation();
            return bang_type(prefix(), literal);
        }
        if (is_symbol("(")) {
            next();
            TypePtr t = type();
            expect(")");
            return t;
        }
        if (peek().kind == Token::Kind::Number) {
            if (peek().text != "1") fail("expected a type");
            next();
            return unit_type();
        }
        if (peek().kind != Token::Kind::Ident) fail("expected a type");
        const std::string name = next().text;
        if (name == "Qubit") return wire_type(WireType::Qubit);
        if (name == "Bit") return wire_type(WireType::Bit);
        if (name == "Nat") return nat_type();
        if (name == "I") return bundle_unit_type();
        if (name == "Circ") {
            auto literal = annotation();
            expect("(");
            BundleType in = bundle(type());
            expect(",");
            BundleType out = bundle(type());
            expect(")");
            return circ_type(std::move(in), std::move(out), literal);
        }
        --pos_;
        fail("expected a type");
    }

    BundleType bundle(const TypePtr& t) {
        auto b = to_bundle(*t);
        if (!b) fail("expected a wire bundle type");
        return *b;
    }

    // Terms and values.

    bool starts_operand() const {
        const Token& t = peek();
        switch (t.kind) {
        case Token::Kind::Number:
        case Token::Kind::Label:
        case Token::Kind::GateRef: return true;
        case Token::Kind::Ident: return !kKeywords.count(t.text) || t.text == "lift";
        case Token::Kind::Symbol: return t.text == "(" || t.text == "*" || t.text == "\\";
        default: return false;
        }
    }

    bool starts_term_keyword() const {
        return is_keyword("let") || is_keyword("ifz") || is_keyword("force") || is_keyword("box") ||
               is_keyword("apply") || is_keyword("return");
    }

    TermPtr term() {
        const SourceLoc loc = peek().loc;
        TermOrValue tv = term_or_value();
        if (auto* v = std::get_if<ValuePtr>(&tv)) {
            (void)v;
            throw ParseError("ParseError", "expected a term, found a value (use 'return') at " + to_string(loc), loc);
        }
        return std::get<TermPtr>(tv);
    }

    TermOrValue term_or_value() {
        if (starts_term_keyword()) return keyword_term();
        const SourceLoc loc = peek().loc;
        TermOrValue head = operand();
        if (!starts_operand()) return head;
        ValuePtr fn = as_value(head, loc);
        const SourceLoc arg_loc = peek().loc;
        ValuePtr arg = as_value(operand(), arg_loc);
        if (starts_operand()) fail("application takes exactly one argument; bind intermediate results with let");
        return make_term(AppTerm{std::move(fn), std::move(arg)}, loc);
    }

    ValuePtr as_value(const TermOrValue& tv, SourceLoc loc) {
        if (const auto* v = std::get_if<ValuePtr>(&tv)) return *v;
        throw ParseError("NotAValue", "a value is required here, found a computation at " + to_string(loc), loc);
    }

    ValuePtr value() {
        const SourceLoc loc = peek().loc;
        return as_value(operand(), loc);
    }

    TermPtr keyword_term() {
        const SourceLoc loc = peek().loc;
        const std::string kw = next().text;
        if (kw == "let") {
            if (is_symbol("(")) {
                next();
                std::vector<std::string> names{binder()};
                while (is_symbol(",")) {
                    next();
                    names.push_back(binder());
                }
                expect(")");
                if (names.size() < 2) fail("tuple patterns bind at least two names");
                expect("=");
                TermOrValue bound = term_or_value();
                expect_keyword("in");
                TermPtr body = term();
                LetTupleTerm t{std::move(names), nullptr, nullptr, std::move(body)};
                if (auto* m = std::get_if<TermPtr>(&bound)) t.bound_term = *m;
                else t.bound_value = std::get<ValuePtr>(bound);
                return make_term(std::move(t), loc);
            }
            std::string name = binder();
            expect("=");
            TermPtr bound = term();
            expect_keyword("in");
            TermPtr body = term();
            return make_term(LetTerm{std::move(name), std::move(bound), std::move(body)}, loc);
        }
        if (kw == "ifz") {
            ValuePtr cond = value();
            expect_keyword("then");
            TermPtr a = term();
            expect_keyword("else");
            TermPtr b = term();
            return make_term(IfzTerm{std::move(cond), std::move(a), std::move(b)}, loc);
        }
        if (kw == "force") return make_term(ForceTerm{value()}, loc);
        if (kw == "return") return make_term(ReturnTerm{value()}, loc);
        if (kw == "box") {
            expect("[");
            BundleType t = bundle(type());
            expect("]");
            return make_term(BoxTerm{std::move(t), value()}, loc);
        }
        // apply
        expect("(");
        ValuePtr c = value();
        expect(",");
        ValuePtr w = value();
        expect(")");
        return make_term(ApplyTerm{std::move(c), std::move(w)}, loc);
    }

    TermOrValue operand() {
        const SourceLoc loc = peek().loc;
        const Token& t = peek();
        if (t.kind == Token::Kind::Number) return make_value(NatValue{number()}, loc);
        if (t.kind == Token::Kind::Label) return make_value(LabelValue{Label{std::stoull(next().text)}}, loc);
        if (t.kind == Token::Kind::GateRef) return make_value(GateRefValue{next().text}, loc);
        if (is_symbol("*")) {
            next();
            return make_value(UnitValue{}, loc);
        }
        if (is_symbol("\\")) {
            next();
            std::string param = binder();
            expect(":");
            TypePtr ty = type();
            expect(".");
            TermPtr body = term();
            return make_value(LambdaValue{std::move(param), std::move(ty), std::move(body)}, loc);
        }
        if (is_keyword("lift")) {
            next();
            return make_value(LiftValue{term()}, loc);
        }
        if (is_symbol("(")) {
            next();
            TermOrValue first = term_or_value();
            if (is_symbol(")")) {
                next();
                return first;
            }
            if (!is_symbol(",")) fail("expected ',' or ')'");
            std::vector<ValuePtr> items{as_value(first, loc)};
            while (is_symbol(",")) {
                next();
                const SourceLoc item_loc = peek().loc;
                items.push_back(as_value(term_or_value(), item_loc));
            }
            expect(")");
            if (items.size() == 2) return make_value(PairValue{items[0], items[1]}, loc);
            return make_value(TupleValue{std::move(items)}, loc);
        }
        if (t.kind == Token::Kind::Ident && !kKeywords.count(t.text)) return make_value(VarValue{next().text}, loc);
        fail("expected a value");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

ast::Program parse_program(std::string_view text) {
    return Parser(text).program();
}

ast::TermPtr parse_term(std::string_view text) {
    return Parser(text).whole_term();
}

ast::ValuePtr parse_value(std::string_view text) {
    return Parser(text).whole_value();
}

ast::TypePtr parse_type(std::string_view text) {
    return Parser(text).whole_type();
}

} // namespace pqc
