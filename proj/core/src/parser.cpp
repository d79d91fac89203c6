#include "ebs/parser.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "ebs/error.hpp"

namespace ebs {

std::optional<std::string> Problem::directive(std::string_view key) const {
    for (const auto& d : directives)
        if (d.key == key) return d.value;
    return std::nullopt;
}

const Formula& Problem::sentence() const {
    if (!formula) throw PreconditionError("problem has no formula");
    return *formula;
}

namespace {

enum class Tok { End, Ident, Int, LParen, RParen, Comma, Semi, Dot, Slash, Bang, Amp, Bar, Arrow, DArrow, Eq, Neq, At };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"forall", "exists", "vocab", "const", "true", "false"};
    return k;
}

class Parser {
public:
    Parser(std::string_view src, Vocabulary vocab, std::vector<std::string> declared)
        : src_(src), vocab_(std::move(vocab)), declared_(declared.begin(), declared.end()) {
        problem_.declared_free = std::move(declared);
    }

    Problem parse_file() {
        for (;;) {
            Token t = peek();
            if (t.kind == Tok::End) break;
            if (t.kind == Tok::At) {
                directive();
            } else if (t.kind == Tok::Ident && t.text == "vocab") {
                next();
                vocab_line();
            } else if (t.kind == Tok::Ident && t.text == "const") {
                next();
                const_line();
            } else {
                if (problem_.formula) fail("only one formula per problem", t);
                problem_.vocabulary = vocab_;
                Formula f = iff();
                problem_.formula = f;
                Token end = peek();
                if (end.kind == Tok::Semi) next();
                else if (end.kind != Tok::End && end.kind != Tok::At) fail("expected ';' after formula", end);
            }
        }
        problem_.vocabulary = vocab_;
        validate_directives();
        return std::move(problem_);
    }

    Formula parse_single() {
        Formula f = iff();
        Token t = peek();
        if (t.kind == Tok::Semi) {
            next();
            t = peek();
        }
        if (t.kind != Tok::End) fail("unexpected trailing input", t);
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw ParseError(msg, at.line, at.col); }

    // ---- lexing
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    Token lex() {
        skip_space();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        auto two = [&](char d) { return pos_ + 1 < src_.size() && src_[pos_ + 1] == d; };
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
            t.kind = Tok::Int;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        auto single = [&](Tok k, int len) {
            t.kind = k;
            t.text = std::string(src_.substr(pos_, len));
            for (int i = 0; i < len; ++i) advance();
            return t;
        };
        switch (c) {
            case '(': return single(Tok::LParen, 1);
            case ')': return single(Tok::RParen, 1);
            case ',': return single(Tok::Comma, 1);
            case ';': return single(Tok::Semi, 1);
            case '.': return single(Tok::Dot, 1);
            case '/': return single(Tok::Slash, 1);
            case '&': return single(Tok::Amp, 1);
            case '|': return single(Tok::Bar, 1);
            case '=': return single(Tok::Eq, 1);
            case '@': return single(Tok::At, 1);
            case '!': return two('=') ? single(Tok::Neq, 2) : single(Tok::Bang, 1);
            case '-':
                if (two('>')) return single(Tok::Arrow, 2);
                break;
            case '<':
                if (pos_ + 2 < src_.size() && src_[pos_ + 1] == '-' && src_[pos_ + 2] == '>')
                    return single(Tok::DArrow, 3);
                break;
            default: break;
        }
        fail(std::string("unexpected character '") + c + "'", t);
    }

    Token peek() {
        if (!lookahead_) lookahead_ = lex();
        return *lookahead_;
    }

    Token next() {
        Token t = peek();
        lookahead_.reset();
        return t;
    }

    Token expect(Tok k, const char* what) {
        Token t = next();
        if (t.kind != k) fail(std::string("expected ") + what, t);
        return t;
    }

    Token expect_ident(const char* what) {
        Token t = next();
        if (t.kind != Tok::Ident || keywords().count(t.text)) fail(std::string("expected ") + what, t);
        return t;
    }

    // ---- header statements
    void vocab_line() {
        if (peek().kind == Tok::Semi) {
            next();
            return;
        }
        for (;;) {
            Token name = expect_ident("predicate name");
            expect(Tok::Slash, "'/'");
            Token ar = expect(Tok::Int, "arity");
            try {
                vocab_.add_predicate(name.text, std::stoi(ar.text));
            } catch (const Error& e) {
                fail(e.what(), name);
            }
            Token t = next();
            if (t.kind == Tok::Semi) return;
            if (t.kind != Tok::Comma) fail("expected ',' or ';'", t);
        }
    }

    void const_line() {
        if (peek().kind == Tok::Semi) {
            next();
            return;
        }
        for (;;) {
            Token name = expect_ident("constant name");
            try {
                vocab_.add_constant(name.text);
            } catch (const Error& e) {
                fail(e.what(), name);
            }
            Token t = next();
            if (t.kind == Tok::Semi) return;
            if (t.kind != Tok::Comma) fail("expected ',' or ';'", t);
        }
    }

    void directive() {
        Token at = next();
        if (lookahead_) fail("internal lexer state", at);
        if (pos_ >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_])))
            fail("expected directive name after '@'", at);
        Token key = next();
        if (key.kind != Tok::Ident) fail("expected directive name", key);
        // Raw text up to ';', minus comments.
        std::string raw;
        for (;;) {
            if (pos_ >= src_.size()) fail("unterminated directive @" + key.text, key);
            char c = src_[pos_];
            if (c == ';') {
                advance();
                break;
            }
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            raw.push_back(c == '\r' || c == '\n' || c == '\t' ? ' ' : c);
            advance();
        }
        std::size_t b = raw.find_first_not_of(' ');
        std::size_t e = raw.find_last_not_of(' ');
        std::string value = b == std::string::npos ? std::string() : raw.substr(b, e - b + 1);
        if (key.text == "free") {
            if (problem_.formula) fail("@free must precede the formula", key);
            for (const auto& n : parse_name_list(value)) {
                if (vocab_.has_constant(n) || vocab_.has_predicate(n)) fail("@free names a declared symbol " + n, key);
                if (declared_.insert(n).second) problem_.declared_free.push_back(n);
            }
            return;
        }
        directive_pos_.push_back(key);
        problem_.directives.push_back({key.text, value});
    }

    void validate_directives() {
        for (std::size_t i = 0; i < problem_.directives.size(); ++i) {
            const auto& d = problem_.directives[i];
            const Token& at = directive_pos_[i];
            if (d.key == "sigma") {
                std::vector<std::string> names;
                try {
                    names = parse_name_list(d.value);
                } catch (const Error& e) {
                    fail(e.what(), at);
                }
                for (const auto& n : names)
                    if (!vocab_.has_predicate(n)) fail("@sigma names undeclared predicate " + n, at);
            } else if (d.key == "bound") {
                bool ok = !d.value.empty();
                for (char c : d.value) ok = ok && std::isdigit(static_cast<unsigned char>(c));
                if (!ok) fail("@bound expects a nonnegative integer", at);
            } else if (d.key == "noeq") {
                if (problem_.formula && mentions_equality(*problem_.formula))
                    fail("@noeq: formula uses equality", at);
            } else if (d.key == "statevars") {
                try {
                    parse_name_list(d.value);
                } catch (const Error& e) {
                    fail(e.what(), at);
                }
            }
        }
    }

    // ---- formulas
    Formula iff() {
        Formula lhs = imp();
        while (peek().kind == Tok::DArrow) {
            next();
            Formula rhs = imp();
            lhs = Formula::iff(lhs, rhs);
        }
        return lhs;
    }

    Formula imp() {
        Formula lhs = disj();
        if (peek().kind == Tok::Arrow) {
            next();
            return Formula::implies(lhs, imp());
        }
        return lhs;
    }

    Formula disj() {
        std::vector<Formula> kids{conj()};
        while (peek().kind == Tok::Bar) {
            next();
            kids.push_back(conj());
        }
        return Formula::disj(std::move(kids));
    }

    Formula conj() {
        std::vector<Formula> kids{unary()};
        while (peek().kind == Tok::Amp) {
            next();
            kids.push_back(unary());
        }
        return Formula::conj(std::move(kids));
    }

    Formula unary() {
        Token t = peek();
        if (t.kind == Tok::Bang) {
            next();
            return Formula::negate(unary());
        }
        if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
            next();
            Quantifier q = t.text == "forall" ? Quantifier::Forall : Quantifier::Exists;
            std::vector<std::string> vars;
            do {
                Token v = expect_ident("variable");
                if (vocab_.has_constant(v.text) || vocab_.has_predicate(v.text))
                    fail("cannot quantify over declared symbol " + v.text, v);
                vars.push_back(v.text);
            } while (peek().kind == Tok::Ident);
            expect(Tok::Dot, "'.' after quantified variables");
            for (const auto& v : vars) bound_.push_back(v);
            Formula body = iff();
            for (std::size_t i = 0; i < vars.size(); ++i) bound_.pop_back();
            for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::quantified(q, *it, body);
            return body;
        }
        return primary();
    }

    Term term_of(const Token& t) {
        if (t.kind != Tok::Ident || keywords().count(t.text)) fail("expected term", t);
        if (vocab_.has_constant(t.text)) return Term::constant(t.text);
        if (vocab_.has_predicate(t.text)) fail("predicate " + t.text + " used as a term", t);
        bool is_bound = false;
        for (const auto& b : bound_) is_bound = is_bound || b == t.text;
        if (!is_bound && !declared_.count(t.text))
            fail("unbound variable " + t.text + " (declare it with @free)", t);
        return Term::var(t.text);
    }

    Formula equality_tail(const Term& lhs) {
        Token op = next();
        Token r = next();
        Term rhs = term_of(r);
        Formula eq = Formula::equal(lhs, rhs);
        return op.kind == Tok::Neq ? Formula::negate(eq) : eq;
    }

    Formula primary() {
        Token t = next();
        if (t.kind == Tok::LParen) {
            Formula f = iff();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind != Tok::Ident) fail("expected formula", t);
        if (t.text == "true") return Formula::top();
        if (t.text == "false") return Formula::bottom();
        if (keywords().count(t.text)) fail("unexpected keyword " + t.text, t);
        Tok after = peek().kind;
        if (after == Tok::Eq || after == Tok::Neq) return equality_tail(term_of(t));
        auto ar = vocab_.arity(t.text);
        if (!ar) {
            if (vocab_.has_constant(t.text) || after != Tok::LParen) fail("expected '=' after term " + t.text, t);
            fail("undeclared predicate " + t.text, t);
        }
        std::vector<Token> arg_tokens;
        if (after == Tok::LParen) {
            next();
            if (peek().kind != Tok::RParen) {
                for (;;) {
                    arg_tokens.push_back(next());
                    Token sep = next();
                    if (sep.kind == Tok::RParen) break;
                    if (sep.kind != Tok::Comma) fail("expected ',' or ')'", sep);
                }
            } else {
                next();
            }
        }
        if (static_cast<int>(arg_tokens.size()) != *ar)
            fail("predicate " + t.text + " expects " + std::to_string(*ar) + " arguments, got " +
                     std::to_string(arg_tokens.size()),
                 t);
        std::vector<Term> args;
        for (const auto& a : arg_tokens) args.push_back(term_of(a));
        return Formula::atom(t.text, std::move(args));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::optional<Token> lookahead_;
    Vocabulary vocab_;
    std::set<std::string> declared_;
    std::vector<std::string> bound_;
    Problem problem_;
    std::vector<Token> directive_pos_;
};

}  // namespace

Problem parse_problem(std::string_view text) {
    Parser p(text, Vocabulary{}, {});
    return p.parse_file();
}

Formula parse_formula(std::string_view text, const Vocabulary& vocab, const std::vector<std::string>& declared_free) {
    Parser p(text, vocab, declared_free);
    return p.parse_single();
}

std::vector<std::string> parse_name_list(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&](bool final) {
        std::size_t b = cur.find_first_not_of(" \t");
        std::size_t e = cur.find_last_not_of(" \t");
        std::string name = b == std::string::npos ? std::string() : cur.substr(b, e - b + 1);
        if (name.empty()) {
            if (!final || !out.empty()) throw PreconditionError("empty name in list '" + std::string(text) + "'");
        } else {
            bool ok = std::isalpha(static_cast<unsigned char>(name[0]));
            for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
            if (!ok) throw PreconditionError("invalid identifier '" + name + "'");
            out.push_back(name);
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush(false);
        else cur.push_back(c);
    }
    flush(true);
    return out;
}

std::string render_vocabulary(const Vocabulary& v) {
    std::ostringstream os;
    if (!v.predicates().empty()) {
        os << "vocab ";
        for (std::size_t i = 0; i < v.predicates().size(); ++i) {
            if (i) os << ", ";
            os << v.predicates()[i].name << '/' << v.predicates()[i].arity;
        }
        os << ";\n";
    }
    if (!v.constants().empty()) {
        os << "const ";
        for (std::size_t i = 0; i < v.constants().size(); ++i) {
            if (i) os << ", ";
            os << v.constants()[i];
        }
        os << ";\n";
    }
    return os.str();
}

std::string render(const Problem& p) {
    std::ostringstream os;
    os << render_vocabulary(p.vocabulary);
    if (!p.declared_free.empty()) {
        os << "@free ";
        for (std::size_t i = 0; i < p.declared_free.size(); ++i) {
            if (i) os << ", ";
            os << p.declared_free[i];
        }
        os << ";\n";
    }
    for (const auto& d : p.directives) {
        os << '@' << d.key;
        if (!d.value.empty()) os << ' ' << d.value;
        os << ";\n";
    }
    if (p.formula) os << format_formula(*p.formula) << ";\n";
    return os.str();
}

}  // namespace ebs
