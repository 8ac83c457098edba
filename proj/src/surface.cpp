#include "comet/surface.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace comet {

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Ident, Int, Decimal, Fraction, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Span span;
    bool adjacent = false;  // no whitespace before this token
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    bool space = true;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k && i < src.size(); ++j, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            space = true;
            continue;
        }
        if (src.compare(i, 2, "--") == 0) {
            while (i < src.size() && src[i] != '\n') advance(1);
            space = true;
            continue;
        }
        Token t;
        t.span = {line, col};
        t.adjacent = !space;
        space = false;
        std::size_t start = i;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            if (j < src.size() && src[j] == '?') {
                auto word = src.substr(i, j - i);
                if (word == "inl" || word == "inr") ++j;
            }
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (digit(c)) {
            std::size_t j = i;
            while (j < src.size() && digit(src[j])) ++j;
            t.kind = Tok::Int;
            if (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
                ++j;
                while (j < src.size() && digit(src[j])) ++j;
                t.kind = Tok::Decimal;
            } else if (j + 1 < src.size() && src[j] == '/' && digit(src[j + 1])) {
                ++j;
                while (j < src.size() && digit(src[j])) ++j;
                t.kind = Tok::Fraction;
            }
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else {
            static const char* multi[] = {"(x)", "(+)", ">>=", "->", "<-"};
            t.kind = Tok::Sym;
            for (const char* m : multi) {
                if (src.compare(i, std::char_traits<char>::length(m), m) == 0) {
                    t.text = m;
                    break;
                }
            }
            // f(x) and assert[p](x) are applications, not the tensor operator
            if (t.text == "(x)" && t.adjacent && !out.empty() &&
                (out.back().kind == Tok::Ident || out.back().text == "]"))
                t.text.clear();
            if (t.text.empty()) {
                static const std::string single = "()[]<>,:;=|^&*\\.@+";
                if (single.find(c) == std::string::npos)
                    throw ParseError(t.span, std::string("unexpected character '") + c + "'");
                t.text = std::string(1, c);
            }
            advance(t.text.size());
        }
        (void)start;
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.span = {line, col};
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string> kKeywords = {
    "type", "def", "query", "do", "case", "of", "in", "let", "measure", "if", "then", "else", "return", "fail",
    "norm", "assert", "instr", "inl", "inr", "lft", "rgt", "fst", "snd", "top", "bot", "magic", "dom", "ker",
    "inl?", "inr?", "rhd", "nabla", "index", "test", "as", "with"};

const std::set<std::string> kPrefix = {"inl", "inr", "magic", "lft", "rgt", "norm", "return",
                                       "dom", "ker", "inl?", "inr?", "fst", "snd"};

SurfaceTerm mk(SNode n) { return std::make_shared<const SNode>(std::move(n)); }

class Parser {
public:
    Parser(std::string_view src, std::vector<EnumRef> enums) : toks_(lex(src)) {
        for (auto& e : enums) enums_[e->name] = e;
    }

    SurfaceProgram program() {
        SurfaceProgram p;
        while (!at_end()) {
            const Token& t = peek();
            if (is_word("type")) {
                p.enums.push_back(enum_decl());
            } else if (is_word("def")) {
                p.defs.push_back(def());
            } else if (is_word("query")) {
                p.queries.push_back(query());
            } else {
                throw ParseError(t.span, "expected 'type', 'def' or 'query', found '" + t.text + "'");
            }
        }
        return p;
    }

    SurfaceTerm whole_expression() {
        auto e = expr();
        if (!at_end()) throw ParseError(peek().span, "unexpected '" + peek().text + "' after expression");
        return e;
    }

    Type whole_type() {
        auto t = type();
        if (!at_end()) throw ParseError(peek().span, "unexpected '" + peek().text + "' after type");
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, EnumRef> enums_;
    bool allow_bar_ = true;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::End; }
    bool is_sym(const std::string& s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
    bool is_word(const std::string& s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == s;
    }
    Token next() {
        Token t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool accept_sym(const std::string& s) {
        if (!is_sym(s)) return false;
        next();
        return true;
    }
    bool accept_word(const std::string& s) {
        if (!is_word(s)) return false;
        next();
        return true;
    }
    Token expect_sym(const std::string& s) {
        if (!is_sym(s)) throw ParseError(peek().span, "expected '" + s + "', found " + describe(peek()));
        return next();
    }
    Token expect_word(const std::string& s) {
        if (!is_word(s)) throw ParseError(peek().span, "expected '" + s + "', found " + describe(peek()));
        return next();
    }
    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    }
    std::string ident() {
        if (peek().kind != Tok::Ident || kKeywords.count(peek().text))
            throw ParseError(peek().span, "expected an identifier, found " + describe(peek()));
        return next().text;
    }
    std::size_t integer() {
        if (peek().kind != Tok::Int) throw ParseError(peek().span, "expected an integer, found " + describe(peek()));
        Token t = next();
        try {
            return std::stoul(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.span, "integer out of range: " + t.text);
        }
    }

    // Items

    EnumRef enum_decl() {
        Span sp = expect_word("type").span;
        auto decl = std::make_shared<EnumDecl>();
        decl->name = ident();
        expect_sym("=");
        do {
            Token t = peek();
            std::string c = ident();
            if (decl->index_of(c)) throw ParseError(t.span, "duplicate constructor " + c);
            decl->constructors.push_back(c);
        } while (accept_sym("|"));
        if (enums_.count(decl->name)) throw ParseError(sp, "enum " + decl->name + " declared twice");
        enums_[decl->name] = decl;
        return decl;
    }

    SurfaceDef def() {
        SurfaceDef d;
        d.span = expect_word("def").span;
        d.name = ident();
        if (accept_sym("(")) {
            do {
                std::string x = ident();
                expect_sym(":");
                d.params.emplace_back(x, type());
            } while (accept_sym(","));
            expect_sym(")");
        }
        expect_sym(":");
        d.type = type();
        expect_sym("=");
        d.body = expr();
        return d;
    }

    Query query() {
        Query q;
        q.span = expect_word("query").span;
        if (accept_word("eval")) {
            q.kind = Query::Kind::Eval;
            q.state = ident();
            return q;
        }
        if (accept_word("infer")) {
            q.kind = Query::Kind::Infer;
        } else if (accept_word("validity")) {
            q.kind = Query::Kind::Validity;
        } else {
            throw ParseError(peek().span, "expected 'eval', 'infer' or 'validity'");
        }
        q.state = ident();
        expect_word("given");
        q.pred = ident();
        if (q.kind == Query::Kind::Infer && accept_word("marginal")) {
            Token t = peek();
            std::size_t m = integer();
            if (m != 1 && m != 2) throw ParseError(t.span, "marginal must be 1 or 2");
            q.marginal = static_cast<int>(m);
        }
        return q;
    }

    // Types: + and (x) are right-associative; (x) binds tighter.

    Type type() {
        Type l = tensor_type();
        if (accept_sym("+")) return Type::sum(l, type());
        return l;
    }

    Type tensor_type() {
        Type l = atom_type();
        if (accept_sym("(x)")) return Type::tensor(l, tensor_type());
        return l;
    }

    Type atom_type() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            std::size_t n = integer();
            if (accept_sym("*")) return Type::copower(n, atom_type());
            return Type::n(n);
        }
        if (accept_sym("(")) {
            Type inner = type();
            expect_sym(")");
            return inner;
        }
        if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
            std::string name = next().text;
            auto it = enums_.find(name);
            return it == enums_.end() ? Type::unresolved(name) : Type::constant(it->second);
        }
        throw ParseError(t.span, "expected a type, found " + describe(t));
    }

    // Expressions

    SurfaceTerm expr() {
        SurfaceTerm e = bind_expr();
        while (allow_bar_ && is_sym("|")) {
            Span sp = next().span;
            SNode n;
            n.kind = SKind::Condition;
            n.span = sp;
            n.kids = {e};
            n.pred = pred();
            e = mk(std::move(n));
        }
        return e;
    }

    SurfaceTerm bind_expr() {
        SurfaceTerm e = ovee_expr();
        while (is_sym(">>=")) {
            Span sp = next().span;
            SNode n;
            n.kind = SKind::Bind;
            n.span = sp;
            n.kids = {e};
            n.pred = pred();
            e = mk(std::move(n));
        }
        return e;
    }

    SurfaceTerm binary(SKind k, Span sp, SurfaceTerm l, SurfaceTerm r) {
        SNode n;
        n.kind = k;
        n.span = sp;
        n.kids = {std::move(l), std::move(r)};
        return mk(std::move(n));
    }

    SurfaceTerm ovee_expr() {
        SurfaceTerm e = tensor_expr();
        while (is_sym("(+)")) {
            Span sp = next().span;
            e = binary(SKind::Ovee, sp, e, tensor_expr());
        }
        return e;
    }

    SurfaceTerm tensor_expr() {
        SurfaceTerm e = and_expr();
        if (is_sym("(x)")) {
            Span sp = next().span;
            return binary(SKind::Pair, sp, e, tensor_expr());
        }
        return e;
    }

    SurfaceTerm and_expr() {
        SurfaceTerm e = prefix();
        while (is_sym("&")) {
            Span sp = next().span;
            e = binary(SKind::And, sp, e, prefix());
        }
        return e;
    }

    SurfaceTerm postfix() {
        SurfaceTerm e = atom();
        while (is_sym("^")) {
            SNode n;
            n.kind = SKind::Ortho;
            n.span = next().span;
            n.kids = {e};
            e = mk(std::move(n));
        }
        return e;
    }

    SurfaceTerm prefix() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && kPrefix.count(t.text)) {
            SNode n;
            n.kind = SKind::Prefix;
            n.span = t.span;
            n.op = next().text;
            if ((n.op == "inl" || n.op == "inr" || n.op == "magic") && accept_sym("[")) {
                n.type = type();
                expect_sym("]");
            }
            n.kids = {prefix()};
            return mk(std::move(n));
        }
        return postfix();
    }

    SurfaceTerm paren_arg() {
        if (is_sym("(x)")) {
            SNode n;
            n.kind = SKind::Var;
            n.span = next().span;
            n.name = "x";
            return mk(std::move(n));
        }
        expect_sym("(");
        bool saved = allow_bar_;
        allow_bar_ = true;
        auto e = expr();
        allow_bar_ = saved;
        expect_sym(")");
        return e;
    }

    std::string binder() {
        if (peek().kind == Tok::Ident && peek().text == "_") {
            next();
            return "_";
        }
        return ident();
    }

    SPred pred() {
        SPred p;
        p.span = peek().span;
        if (accept_sym("\\")) {
            p.kind = SPred::Kind::Lambda;
            p.binders.push_back(binder());
            if (accept_sym("(x)")) p.binders.push_back(binder());
            expect_sym(".");
            p.body = expr();
            return p;
        }
        if (peek().kind == Tok::Ident && !kKeywords.count(peek().text) && !(is_sym("(", 1) && peek(1).adjacent)) {
            p.kind = SPred::Kind::Name;
            p.name = next().text;
            return p;
        }
        p.kind = SPred::Kind::Expr;
        p.body = prefix();
        return p;
    }

    SurfaceTerm scalar_atom(const Token& t) {
        SNode n;
        n.kind = SKind::Scalar;
        n.span = t.span;
        try {
            n.scalar = Scalar::parse(t.text);
        } catch (const std::exception& e) {
            throw ParseError(t.span, std::string("bad scalar literal: ") + e.what());
        }
        if (t.kind == Tok::Fraction && t.text.rfind("1/", 0) == 0) {
            std::string den = t.text.substr(2);
            if (den.size() < 19 && std::stoull(den) >= 2) {
                n.op = "1/n";
                n.n = std::stoull(den);
            }
        }
        return mk(std::move(n));
    }

    SurfaceTerm atom() {
        Token t = peek();
        switch (t.kind) {
        case Tok::End: throw ParseError(t.span, "unexpected end of input");
        case Tok::Int: {
            if (is_sym("@", 1)) {
                SNode n;
                n.kind = SKind::Numeral;
                n.span = t.span;
                n.i = integer();
                next();
                n.n = integer();
                if (n.i == 0 || n.i > n.n) throw ParseError(t.span, "numeral index out of range");
                return mk(std::move(n));
            }
            next();
            return scalar_atom(t);
        }
        case Tok::Decimal:
        case Tok::Fraction: next(); return scalar_atom(t);
        case Tok::Sym: return symbol_atom();
        case Tok::Ident: break;
        }
        const std::string& w = t.text;
        if (w == "let") return let_form();
        if (w == "do") return do_form();
        if (w == "case") return case_form();
        if (w == "if") return if_form();
        if (w == "measure") return measure_form();
        if (w == "fail" || w == "top" || w == "bot") {
            next();
            SNode n;
            n.kind = w == "fail" ? SKind::Fail : (w == "top" ? SKind::Top : SKind::Bot);
            n.span = t.span;
            return mk(std::move(n));
        }
        if (w == "assert" || w == "instr") {
            next();
            SNode n;
            n.kind = w == "assert" ? SKind::Assert : SKind::Instr;
            n.span = t.span;
            expect_sym("[");
            bool saved = allow_bar_;
            allow_bar_ = true;
            n.pred = pred();
            allow_bar_ = saved;
            expect_sym("]");
            n.kids = {paren_arg()};
            return mk(std::move(n));
        }
        if (w == "rhd" || w == "nabla" || w == "index" || w == "in" || w == "test") {
            next();
            SNode n;
            n.kind = SKind::Indexed;
            n.span = t.span;
            n.op = w;
            expect_sym("[");
            n.n = integer();
            if (w == "rhd" || w == "in" || w == "test") {
                expect_sym(":");
                do {
                    Token it = peek();
                    std::size_t i = integer();
                    if (i == 0 || i > n.n) throw ParseError(it.span, "index out of range 1.." + std::to_string(n.n));
                    n.indices.push_back(i);
                } while (w == "rhd" && accept_sym(","));
            }
            expect_sym("]");
            n.kids = {paren_arg()};
            return mk(std::move(n));
        }
        if (kKeywords.count(w)) throw ParseError(t.span, "unexpected keyword '" + w + "'");
        next();
        if (is_sym("(") && peek().adjacent) {
            next();
            SNode n;
            n.kind = SKind::Call;
            n.span = t.span;
            n.name = w;
            bool saved = allow_bar_;
            allow_bar_ = true;
            do {
                n.kids.push_back(expr());
            } while (accept_sym(","));
            allow_bar_ = saved;
            expect_sym(")");
            return mk(std::move(n));
        }
        SNode n;
        n.kind = SKind::Var;
        n.span = t.span;
        n.name = w;
        return mk(std::move(n));
    }

    SurfaceTerm symbol_atom() {
        Token t = peek();
        if (t.text == "*") {
            next();
            SNode n;
            n.kind = SKind::Star;
            n.span = t.span;
            return mk(std::move(n));
        }
        if (t.text == "(x)") {
            next();
            SNode n;
            n.kind = SKind::Var;
            n.span = t.span;
            n.name = "x";
            return mk(std::move(n));
        }
        if (t.text == "<") {
            next();
            SNode n;
            n.kind = SKind::Inlr;
            n.span = t.span;
            bool saved = allow_bar_;
            allow_bar_ = true;
            auto s = expr();
            expect_sym(",");
            auto u = expr();
            allow_bar_ = saved;
            expect_sym(">");
            n.kids = {s, u};
            return mk(std::move(n));
        }
        if (t.text == "(") {
            next();
            bool saved = allow_bar_;
            allow_bar_ = true;
            auto e = expr();
            allow_bar_ = saved;
            if (accept_sym(":")) {
                SNode n;
                n.kind = SKind::Ascribe;
                n.span = t.span;
                n.type = type();
                n.kids = {e};
                e = mk(std::move(n));
            }
            expect_sym(")");
            return e;
        }
        throw ParseError(t.span, "unexpected '" + t.text + "'");
    }

    // Binding forms extend as far to the right as possible.

    SurfaceTerm let_form() {
        Span sp = expect_word("let").span;
        std::string x = ident();
        SNode n;
        n.span = sp;
        n.name = x;
        if (is_sym("(") && peek().adjacent) {
            next();
            n.kind = SKind::LetFun;
            do {
                n.names.push_back(binder());
            } while (accept_sym(","));
            expect_sym(")");
        } else if (accept_sym("(x)")) {
            n.kind = SKind::LetPair;
            n.name2 = binder();
        } else {
            n.kind = SKind::Let;
        }
        expect_sym("=");
        bool saved = allow_bar_;
        allow_bar_ = true;
        auto s = expr();
        allow_bar_ = saved;
        expect_word("in");
        n.kids = {s, expr()};
        return mk(std::move(n));
    }

    SurfaceTerm do_form() {
        SNode n;
        n.kind = SKind::Do;
        n.span = expect_word("do").span;
        n.name = binder();
        expect_sym("<-");
        bool saved = allow_bar_;
        allow_bar_ = true;
        auto s = expr();
        allow_bar_ = saved;
        expect_sym(";");
        n.kids = {s, expr()};
        return mk(std::move(n));
    }

    SurfaceTerm arm_body() {
        bool saved = allow_bar_;
        allow_bar_ = false;
        auto e = expr();
        allow_bar_ = saved;
        return e;
    }

    SurfaceTerm case_form() {
        Span sp = expect_word("case").span;
        bool saved = allow_bar_;
        allow_bar_ = true;
        auto r = expr();
        allow_bar_ = saved;
        expect_word("of");
        if (is_word("inl")) {
            SNode n;
            n.kind = SKind::Case;
            n.span = sp;
            next();
            n.name = binder();
            expect_sym("->");
            auto s = arm_body();
            expect_sym("|");
            expect_word("inr");
            n.name2 = binder();
            expect_sym("->");
            n.kids = {r, s, arm_body()};
            return mk(std::move(n));
        }
        SNode n;
        n.kind = SKind::EnumCase;
        n.span = sp;
        n.kids = {r};
        do {
            n.names.push_back(ident());
            expect_sym("->");
            n.kids.push_back(arm_body());
        } while (accept_sym("|"));
        return mk(std::move(n));
    }

    SurfaceTerm if_form() {
        SNode n;
        n.kind = SKind::If;
        n.span = expect_word("if").span;
        bool saved = allow_bar_;
        allow_bar_ = true;
        auto c = expr();
        expect_word("then");
        auto s = expr();
        allow_bar_ = saved;
        expect_word("else");
        n.kids = {c, s, expr()};
        return mk(std::move(n));
    }

    SurfaceTerm measure_form() {
        SNode n;
        n.kind = SKind::Measure;
        n.span = expect_word("measure").span;
        bool saved = allow_bar_;
        allow_bar_ = false;
        auto first = expr();
        if (accept_word("as")) {
            n.name = binder();
            expect_word("with");
            n.kids.push_back(first);
            first = expr();
        } else {
            n.kids.push_back(nullptr);
        }
        allow_bar_ = saved;
        expect_sym("->");
        n.kids.push_back(first);
        n.kids.push_back(arm_body());
        while (accept_sym("|")) {
            allow_bar_ = false;
            auto p = expr();
            allow_bar_ = saved;
            expect_sym("->");
            n.kids.push_back(p);
            n.kids.push_back(arm_body());
        }
        return mk(std::move(n));
    }
};

}  // namespace

SurfaceProgram parse(std::string_view source) { return Parser(source, {}).program(); }

SurfaceTerm parse_expression(std::string_view source, const std::vector<EnumRef>& enums) {
    return Parser(source, enums).whole_expression();
}

Type parse_type(std::string_view source, const std::vector<EnumRef>& enums) {
    return Parser(source, enums).whole_type();
}

std::string Query::to_string() const {
    switch (kind) {
    case Kind::Eval: return "eval " + state;
    case Kind::Validity: return "validity " + state + " given " + pred;
    case Kind::Infer: {
        std::string s = "infer " + state + " given " + pred;
        if (marginal) s += " marginal " + std::to_string(marginal);
        return s;
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Programs

namespace {

Type bundle(const Context& params) {
    if (params.empty()) return Type::one();
    const auto& e = params.entries();
    Type acc = e.back().second;
    for (std::size_t i = e.size() - 1; i-- > 0;) acc = Type::tensor(e[i].second, acc);
    return acc;
}

}  // namespace

Type Definition::domain() const { return bundle(params); }

const Definition* Program::find(const std::string& name) const {
    for (const auto& d : defs)
        if (d.name == name) return &d;
    return nullptr;
}

Predicate predicate_of(const Definition& def) {
    Predicate p;
    p.domain = def.domain();
    if (def.params.empty()) {
        p.var = "_";
        p.body = def.body;
    } else if (def.params.size() == 1) {
        p.var = def.params.entries()[0].first;
        p.body = def.body;
    } else {
        std::set<std::string> names;
        for (const auto& [x, t] : def.params.entries()) names.insert(x);
        build::Packing pk = build::pack(def.params, names, free_vars(def.body));
        p.var = pk.bound;
        p.body = pk.unpack(def.body);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Elaboration

namespace {

struct Macro {
    std::string name;
    std::vector<std::string> params;
    SurfaceTerm body;
    // scope at the definition site
    Context ctx;
    std::vector<std::pair<std::string, std::string>> names;
    std::size_t visible_macros;
};

class Elaborator {
public:
    Elaborator(const Program* prog, const Context& ctx) : prog_(prog), ctx_(ctx) {
        for (const auto& [x, t] : ctx.entries()) names_.emplace_back(x, x);
        if (prog) {
            for (const auto& e : prog->enums) {
                enums_[e->name] = e;
                for (std::size_t i = 0; i < e->constructors.size(); ++i) ctors_[e->constructors[i]] = {e, i};
            }
        }
    }

    Term elab(const SurfaceTerm& s, const std::optional<Type>& expected) {
        Term t = elab_inner(s, expected);
        return t.span().known() ? t : t.at(s->span);
    }

private:
    const Program* prog_;
    Context ctx_;
    std::vector<std::pair<std::string, std::string>> names_;  // user name -> core name
    std::vector<Macro> macros_;
    std::map<std::string, EnumRef> enums_;
    std::map<std::string, std::pair<EnumRef, std::size_t>> ctors_;
    std::size_t vacuous_ = 0;
    const Constructions& cons_ = Constructions::standard();

    // Scoped binding of a user name to a core variable.
    class Binding {
    public:
        Binding(Elaborator& e, const std::string& user, const Type& ty) : e_(e) {
            saved_ctx_ = e.ctx_;
            saved_names_ = e.names_.size();
            core_ = e.core_name(user);
            Context next;
            for (const auto& [n, t] : e.ctx_.entries())
                if (n != core_) next.add(n, t);
            next.add(core_, ty);
            e.ctx_ = std::move(next);
            e.names_.emplace_back(user, core_);
        }
        ~Binding() {
            e_.ctx_ = std::move(saved_ctx_);
            e_.names_.resize(saved_names_);
        }
        Binding(const Binding&) = delete;
        Binding& operator=(const Binding&) = delete;
        const std::string& name() const { return core_; }

    private:
        Elaborator& e_;
        Context saved_ctx_;
        std::size_t saved_names_;
        std::string core_;
    };

    std::string core_name(const std::string& user) {
        if (user == "_") return "_" + std::to_string(++vacuous_);
        std::set<std::string> taken;
        for (const auto& [n, t] : ctx_.entries()) taken.insert(n);
        if (!taken.count(user)) return user;
        return fresh_name(user, taken);
    }

    std::string vacuous() { return "_" + std::to_string(++vacuous_); }

    [[noreturn]] void fail(const SurfaceTerm& s, const std::string& msg) const { throw ElaborationError(s->span, msg); }

    Type type_of(const Term& t, const Span& sp) const {
        try {
            return synthesize_type(ctx_, t);
        } catch (const std::invalid_argument& e) {
            throw TypeError(TypeErrorKind::Mismatch, "", e.what(), ctx_.to_string(), sp);
        }
    }

    static std::optional<Type> partial_of(const std::optional<Type>& t) {
        if (!t) return std::nullopt;
        return Type::partial(*t);
    }
    static std::optional<Type> left_if_partial(const std::optional<Type>& t) {
        if (t && t->is_partial()) return t->left();
        return std::nullopt;
    }

    // Elaborates alternatives that must share a type; without an expected
    // type, the first one that elaborates on its own fixes it.
    std::vector<Term> branches(const std::vector<std::function<Term(const std::optional<Type>&)>>& alts,
                               std::optional<Type> expected, const Span& sp) {
        std::vector<std::optional<Term>> out(alts.size());
        if (!expected) {
            std::optional<ElaborationError> first_error;
            for (std::size_t i = 0; i < alts.size() && !expected; ++i) {
                try {
                    out[i] = alts[i](std::nullopt);
                    expected = result_type_;
                } catch (const ElaborationError& e) {
                    if (!first_error) first_error = e;
                }
            }
            if (!expected) throw *first_error;
        }
        std::vector<Term> terms;
        for (std::size_t i = 0; i < alts.size(); ++i) {
            if (!out[i]) out[i] = alts[i](expected);
            terms.push_back(*out[i]);
        }
        (void)sp;
        result_type_ = *expected;
        return terms;
    }

    // Type of the term most recently produced by a branch alternative.
    Type result_type_;

    Term with_type(Term t, const Span& sp) {
        result_type_ = type_of(t, sp);
        return t;
    }

    std::pair<std::size_t, Type> copower_parts(const Term& t, std::size_t n, const SurfaceTerm& s) {
        Type ty = type_of(t, s->span);
        Type a = n == 1 ? ty : (ty.is_sum() ? ty.left() : ty);
        if (n == 0 || !ty.is_copower_of(n, a))
            throw TypeError(TypeErrorKind::Mismatch, "", "expected a term of type " + std::to_string(n) + "·A, got " +
                                                            ty.to_string(), ctx_.to_string(), s->span);
        return {n, a};
    }

    // A predicate or function on `domain`: returns the bound variable and body.
    std::pair<std::string, Term> resolve(const SPred& p, const Type& domain, const std::optional<Type>& expected) {
        switch (p.kind) {
        case SPred::Kind::Name: {
            if (const Macro* m = find_macro(p.name)) {
                if (m->params.empty()) break;
                return expand_macro_on(*m, domain, expected, p.span);
            }
            if (lookup_var(p.name)) break;
            const Definition* d = prog_ ? prog_->find(p.name) : nullptr;
            if (!d) throw TypeError(TypeErrorKind::UnboundVar, "Tvar", "unknown predicate " + p.name, ctx_.to_string(), p.span);
            if (d->closed()) break;
            if (d->domain() != domain)
                throw TypeError(TypeErrorKind::Mismatch, "", p.name + " is a predicate on " + d->domain().to_string() +
                                                                 ", applied to " + domain.to_string(),
                                ctx_.to_string(), p.span);
            Predicate pr = predicate_of(*d);
            return {pr.var, pr.body};
        }
        case SPred::Kind::Lambda: {
            if (p.binders.size() == 1) {
                Binding b(*this, p.binders[0], domain);
                Term body = elab(p.body, expected);
                return {b.name(), body};
            }
            if (!domain.is_tensor())
                throw TypeError(TypeErrorKind::Mismatch, "", "tensor pattern applied to " + domain.to_string(),
                                ctx_.to_string(), p.span);
            std::string z;
            Term body;
            {
                Binding bx(*this, p.binders[0], domain.left());
                Binding by(*this, p.binders[1], domain.right());
                body = elab(p.body, expected);
                std::set<std::string> avoid = free_vars(body);
                for (const auto& [n, t] : ctx_.entries()) avoid.insert(n);
                z = fresh_name("z", avoid);
                body = Term::let_pair(bx.name(), by.name(), Term::var(z), body);
            }
            return {z, body};
        }
        case SPred::Kind::Expr: break;
        }
        SurfaceTerm body = p.body;
        if (!body) {
            SNode n;
            n.kind = SKind::Var;
            n.name = p.name;
            n.span = p.span;
            body = mk(std::move(n));
        }
        return {vacuous(), elab(body, expected)};
    }

    const Macro* find_macro(const std::string& name) const {
        for (auto it = macros_.rbegin(); it != macros_.rend(); ++it)
            if (it->name == name) return &*it;
        return nullptr;
    }

    std::optional<std::string> lookup_var(const std::string& user) const {
        for (auto it = names_.rbegin(); it != names_.rend(); ++it)
            if (it->first == user) return it->second;
        return std::nullopt;
    }

    // Elaborates a macro body at its definition scope with parameters of the given types.
    template <typename F>
    auto at_macro_scope(const Macro& m, F&& f) {
        Context saved_ctx = ctx_;
        auto saved_names = names_;
        auto saved_macros = macros_;
        ctx_ = m.ctx;
        names_ = m.names;
        macros_.resize(m.visible_macros);
        struct Restore {
            Elaborator& e;
            Context c;
            std::vector<std::pair<std::string, std::string>> n;
            std::vector<Macro> m;
            ~Restore() {
                e.ctx_ = std::move(c);
                e.names_ = std::move(n);
                e.macros_ = std::move(m);
            }
        } restore{*this, std::move(saved_ctx), std::move(saved_names), std::move(saved_macros)};
        return f();
    }

    std::pair<std::string, Term> expand_macro_on(const Macro m, const Type& domain, const std::optional<Type>& expected,
                                                 const Span& sp) {
        std::vector<Type> types;
        Type rest = domain;
        for (std::size_t i = 0; i + 1 < m.params.size(); ++i) {
            if (!rest.is_tensor())
                throw TypeError(TypeErrorKind::Mismatch, "", m.name + " takes " + std::to_string(m.params.size()) +
                                                                 " arguments, applied to " + domain.to_string(),
                                ctx_.to_string(), sp);
            types.push_back(rest.left());
            rest = rest.right();
        }
        types.push_back(rest);
        return at_macro_scope(m, [&]() -> std::pair<std::string, Term> {
            std::vector<std::unique_ptr<Binding>> bs;
            for (std::size_t i = 0; i < m.params.size(); ++i)
                bs.push_back(std::make_unique<Binding>(*this, m.params[i], types[i]));
            Term body = elab(m.body, expected);
            if (bs.size() == 1) return {bs[0]->name(), body};
            Context params;
            std::set<std::string> names;
            for (std::size_t i = 0; i < bs.size(); ++i) {
                params.add(bs[i]->name(), types[i]);
                names.insert(bs[i]->name());
            }
            std::set<std::string> avoid = free_vars(body);
            for (const auto& [n, t] : ctx_.entries()) avoid.insert(n);
            build::Packing pk = build::pack(params, names, avoid);
            while (bs.size()) bs.pop_back();
            return {pk.bound, pk.unpack(body)};
        });
    }

    Term call(const SurfaceTerm& s, const std::optional<Type>& expected) {
        if (const Macro* found = find_macro(s->name)) {
            Macro m = *found;
            if (m.params.size() != s->kids.size())
                fail(s, m.name + " expects " + std::to_string(m.params.size()) + " arguments");
            std::vector<Term> args;
            std::vector<Type> types;
            for (const auto& a : s->kids) {
                args.push_back(elab(a, std::nullopt));
                types.push_back(type_of(args.back(), a->span));
            }
            std::vector<std::string> cores;
            Term body = at_macro_scope(m, [&]() {
                std::vector<std::unique_ptr<Binding>> bs;
                for (std::size_t i = 0; i < m.params.size(); ++i) {
                    bs.push_back(std::make_unique<Binding>(*this, m.params[i], types[i]));
                    cores.push_back(bs.back()->name());
                }
                Term b = elab(m.body, expected);
                while (bs.size()) bs.pop_back();
                return b;
            });
            std::vector<std::pair<std::string, Term>> subst;
            for (std::size_t i = 0; i < args.size(); ++i) subst.emplace_back(cores[i], args[i]);
            return substitute(body, subst);
        }
        const Definition* d = prog_ ? prog_->find(s->name) : nullptr;
        if (!d) throw TypeError(TypeErrorKind::UnboundVar, "Tvar", "unknown function " + s->name, ctx_.to_string(), s->span);
        if (d->params.size() != s->kids.size())
            fail(s, s->name + " expects " + std::to_string(d->params.size()) + " arguments, got " +
                        std::to_string(s->kids.size()));
        std::vector<std::pair<std::string, Term>> subst;
        for (std::size_t i = 0; i < s->kids.size(); ++i) {
            const auto& [x, ty] = d->params.entries()[i];
            subst.emplace_back(x, elab(s->kids[i], ty));
        }
        return substitute(d->body, subst);
    }

    void require_test(const std::string& x, const Type& a, const std::vector<Term>& ps, const SurfaceTerm& s) {
        Context c{{x, a}};
        for (const auto& env : enumerate_envs(c)) {
            Rational total(0);
            for (const auto& p : ps) {
                try {
                    total += eval(c, p, env).weight(Value::top());
                } catch (const EvalError& e) {
                    fail(s, std::string("measure predicate is not well-formed: ") + e.what());
                }
            }
            if (total != 1)
                fail(s, "measure predicates are not an n-test: they sum to " + total.get_str() + " at " +
                            env_to_string(env));
        }
    }

    Term measure(const SurfaceTerm& s, const std::optional<Type>& expected) {
        std::size_t arms = (s->kids.size() - 1) / 2;
        auto arm_alternatives = [&](auto&& around) {
            std::vector<std::function<Term(const std::optional<Type>&)>> alts;
            for (std::size_t i = 0; i < arms; ++i)
                alts.push_back([&, i](const std::optional<Type>& exp) {
                    return around([&] { return with_type(elab(s->kids[2 + 2 * i], exp), s->kids[2 + 2 * i]->span); });
                });
            return alts;
        };
        if (s->kids[0]) {
            Term subject = elab(s->kids[0], std::nullopt);
            Type a = type_of(subject, s->kids[0]->span);
            std::vector<Term> ps;
            std::string x;
            {
                Binding b(*this, s->name, a);
                x = b.name();
                for (std::size_t i = 0; i < arms; ++i) ps.push_back(elab(s->kids[1 + 2 * i], Type::two()));
            }
            require_test(x, a, ps, s);
            auto around = [&](auto&& f) {
                Binding b(*this, s->name, a);
                Term t = f();
                if (b.name() != x) t = substitute(t, b.name(), Term::var(x));
                return t;
            };
            std::vector<Term> ts = branches(arm_alternatives(around), expected, s->span);
            return build::measure(subject, x, ps, ts);
        }
        std::vector<Term> ps;
        std::set<std::string> used;
        for (std::size_t i = 0; i < arms; ++i) {
            ps.push_back(elab(s->kids[1 + 2 * i], Type::two()));
            auto fv = free_vars(ps.back());
            used.insert(fv.begin(), fv.end());
        }
        auto identity = [](auto&& f) { return f(); };
        std::vector<Term> ts = branches(arm_alternatives(identity), expected, s->span);
        std::set<std::string> avoid = used;
        for (const auto& t : ts) {
            auto fv = free_vars(t);
            avoid.insert(fv.begin(), fv.end());
        }
        build::Packing pk = build::pack(ctx_, used, avoid);
        for (auto& p : ps) p = pk.unpack(p);
        for (auto& t : ts) t = pk.unpack(t);
        require_test(pk.bound, pk.type, ps, s);
        return build::measure(pk.tuple(), pk.bound, ps, ts);
    }

    Term elab_inner(const SurfaceTerm& s, const std::optional<Type>& expected) {
        const auto& k = s->kids;
        switch (s->kind) {
        case SKind::Var: {
            if (auto core = lookup_var(s->name)) return Term::var(*core);
            if (const Macro* m = find_macro(s->name)) {
                if (m->params.empty()) fail(s, "internal: nullary macro");
                fail(s, s->name + " is a function and needs arguments");
            }
            if (auto it = ctors_.find(s->name); it != ctors_.end())
                return Term::enum_con(it->second.first, it->second.second);
            if (const Definition* d = prog_ ? prog_->find(s->name) : nullptr) {
                if (!d->closed()) fail(s, s->name + " takes arguments");
                return d->body;
            }
            throw TypeError(TypeErrorKind::UnboundVar, "Tvar", "unbound variable " + s->name, ctx_.to_string(), s->span);
        }
        case SKind::Call: return call(s, expected);
        case SKind::Star: return Term::star();
        case SKind::Top: return build::top();
        case SKind::Bot: return build::bot();
        case SKind::Fail:
            if (!expected || !expected->is_sum())
                fail(s, "cannot infer the type of fail; add an annotation such as (fail : A + 1)");
            return Term::inr(Term::star(), expected->left());
        case SKind::Scalar:
            if (s->op == "1/n") return Term::one_over(s->n);
            return Term::literal(s->scalar);
        case SKind::Numeral: return build::numeral(s->i, s->n);
        case SKind::Pair: {
            std::optional<Type> l, r;
            if (expected && expected->is_tensor()) {
                l = expected->left();
                r = expected->right();
            }
            return Term::pair(elab(k[0], l), elab(k[1], r));
        }
        case SKind::Ovee: {
            auto ts = branches({[&](const std::optional<Type>& e) { return with_type(elab(k[0], e), k[0]->span); },
                                [&](const std::optional<Type>& e) { return with_type(elab(k[1], e), k[1]->span); }},
                               expected, s->span);
            return Term::ovee(ts[0], ts[1]);
        }
        case SKind::And: {
            Term p = elab(k[0], Type::two()), q = elab(k[1], Type::two());
            return cons_.seq_product(ctx_, p, q);
        }
        case SKind::Ortho: return build::ortho(elab(k[0], Type::two()));
        case SKind::Prefix: return prefix(s, expected);
        case SKind::Inlr: {
            std::optional<Type> l, r;
            if (expected && expected->is_sum()) {
                l = Type::partial(expected->left());
                r = Type::partial(expected->right());
            }
            return Term::inlr(elab(k[0], l), elab(k[1], r));
        }
        case SKind::Assert:
        case SKind::Instr: {
            Term t = elab(k[0], std::nullopt);
            Type a = type_of(t, k[0]->span);
            if (s->kind == SKind::Assert) {
                auto [x, p] = resolve(*s->pred, a, Type::two());
                return build::assert_(x, p, t, a);
            }
            auto [x, p] = resolve(*s->pred, a, std::nullopt);
            return Term::instr(x, p, t);
        }
        case SKind::Indexed: {
            Term t = elab(k[0], std::nullopt);
            if (s->op == "in") return build::injection(s->indices[0], s->n, t, type_of(t, k[0]->span));
            auto [n, a] = copower_parts(t, s->n, k[0]);
            if (s->op == "nabla") return build::nabla(t, n);
            if (s->op == "index") return build::index(t, n);
            if (s->op == "test") return build::in_test(s->indices[0], n, t);
            return build::rhd(t, n, std::set<std::size_t>(s->indices.begin(), s->indices.end()), a);
        }
        case SKind::Let: {
            Term bound = elab(k[0], std::nullopt);
            Type a = type_of(bound, k[0]->span);
            Binding b(*this, s->name, a);
            Term body = elab(k[1], expected);
            return substitute(body, b.name(), bound);
        }
        case SKind::LetFun: {
            Macro m{s->name, s->names, k[0], ctx_, names_, macros_.size()};
            macros_.push_back(std::move(m));
            struct Pop {
                std::vector<Macro>& ms;
                ~Pop() { ms.pop_back(); }
            } pop{macros_};
            return elab(k[1], expected);
        }
        case SKind::LetPair: {
            Term bound = elab(k[0], std::nullopt);
            Type a = type_of(bound, k[0]->span);
            if (!a.is_tensor())
                throw TypeError(TypeErrorKind::Mismatch, "Tlett", "let-pair of type " + a.to_string(), ctx_.to_string(), s->span);
            Binding bx(*this, s->name, a.left());
            Binding by(*this, s->name2, a.right());
            return Term::let_pair(bx.name(), by.name(), bound, elab(k[1], expected));
        }
        case SKind::Do: {
            Term bound = elab(k[0], std::nullopt);
            Type a = type_of(bound, k[0]->span);
            if (!a.is_partial())
                throw TypeError(TypeErrorKind::Mismatch, "Tcase", "do expects a partial computation A + 1, got " + a.to_string(),
                                ctx_.to_string(), k[0]->span);
            Binding b(*this, s->name, a.left());
            Term body = elab(k[1], expected);
            Type bt = type_of(body, k[1]->span);
            if (!bt.is_partial())
                throw TypeError(TypeErrorKind::Mismatch, "Tcase", "the body of do must have type B + 1, got " + bt.to_string(),
                                ctx_.to_string(), k[1]->span);
            return build::do_bind(b.name(), bound, body, bt.left());
        }
        case SKind::Bind: {
            Term bound = elab(k[0], std::nullopt);
            Type a = type_of(bound, k[0]->span);
            if (!a.is_partial())
                throw TypeError(TypeErrorKind::Mismatch, "Tcase", ">>= expects a partial computation A + 1, got " + a.to_string(),
                                ctx_.to_string(), k[0]->span);
            auto [x, body] = resolve(*s->pred, a.left(), expected);
            Type bt;
            {
                Binding b(*this, x, a.left());
                bt = type_of(body, s->span);
            }
            if (!bt.is_partial())
                throw TypeError(TypeErrorKind::Mismatch, "Tcase", "the right side of >>= must return B + 1, got " + bt.to_string(),
                                ctx_.to_string(), s->span);
            return build::do_bind(x, bound, body, bt.left());
        }
        case SKind::Case: {
            Term r = elab(k[0], std::nullopt);
            Type a = type_of(r, k[0]->span);
            if (!a.is_sum())
                throw TypeError(TypeErrorKind::Mismatch, "Tcase", "case on type " + a.to_string(), ctx_.to_string(), k[0]->span);
            std::string x, y;
            auto ts = branches(
                {[&](const std::optional<Type>& e) {
                     Binding b(*this, s->name, a.left());
                     x = b.name();
                     return with_type(elab(k[1], e), k[1]->span);
                 },
                 [&](const std::optional<Type>& e) {
                     Binding b(*this, s->name2, a.right());
                     y = b.name();
                     return with_type(elab(k[2], e), k[2]->span);
                 }},
                expected, s->span);
            return Term::case_of(r, x, ts[0], y, ts[1]);
        }
        case SKind::EnumCase: {
            Term r = elab(k[0], std::nullopt);
            Type a = type_of(r, k[0]->span);
            if (a.kind() != TypeKind::Const || !a.decl())
                throw TypeError(TypeErrorKind::Mismatch, "Tcase", "constructor case on type " + a.to_string(),
                                ctx_.to_string(), k[0]->span);
            const auto& decl = a.decl();
            std::vector<std::size_t> order(decl->constructors.size(), SIZE_MAX);
            for (std::size_t i = 0; i < s->names.size(); ++i) {
                auto idx = decl->index_of(s->names[i]);
                if (!idx) fail(s, s->names[i] + " is not a constructor of " + decl->name);
                if (order[*idx] != SIZE_MAX) fail(s, "constructor " + s->names[i] + " has two arms");
                order[*idx] = i;
            }
            for (std::size_t j = 0; j < order.size(); ++j)
                if (order[j] == SIZE_MAX) fail(s, "missing arm for constructor " + decl->constructors[j]);
            std::vector<std::function<Term(const std::optional<Type>&)>> alts;
            for (std::size_t j = 0; j < order.size(); ++j)
                alts.push_back([&, j](const std::optional<Type>& e) {
                    return with_type(elab(k[1 + order[j]], e), k[1 + order[j]]->span);
                });
            return Term::enum_case(decl, r, branches(alts, expected, s->span));
        }
        case SKind::If: {
            Term c = elab(k[0], std::nullopt);
            Type a = type_of(c, k[0]->span);
            if (!a.is_sum())
                throw TypeError(TypeErrorKind::Mismatch, "Tcase", "if on type " + a.to_string(), ctx_.to_string(), k[0]->span);
            auto ts = branches({[&](const std::optional<Type>& e) { return with_type(elab(k[1], e), k[1]->span); },
                                [&](const std::optional<Type>& e) { return with_type(elab(k[2], e), k[2]->span); }},
                               expected, s->span);
            return Term::case_of(c, vacuous(), ts[0], vacuous(), ts[1]);
        }
        case SKind::Measure: return measure(s, expected);
        case SKind::Condition: {
            Term t = elab(k[0], std::nullopt);
            Type a = type_of(t, k[0]->span);
            auto [x, p] = resolve(*s->pred, a, Type::two());
            return build::condition(x, p, t, a);
        }
        case SKind::Ascribe: {
            validate_type(*s->type, s->span);
            Term t = elab(k[0], *s->type);
            Type got = type_of(t, s->span);
            if (got != *s->type)
                throw TypeError(TypeErrorKind::Mismatch, "", "expected " + s->type->to_string() + ", got " + got.to_string(),
                                ctx_.to_string(), s->span);
            return t;
        }
        }
        fail(s, "unsupported form");
    }

    Term prefix(const SurfaceTerm& s, const std::optional<Type>& expected) {
        const std::string& op = s->op;
        const SurfaceTerm& e = s->kids[0];
        if (op == "inl" || op == "inr") {
            bool left = op == "inl";
            std::optional<Type> other = s->type;
            std::optional<Type> mine;
            if (expected && expected->is_sum()) {
                mine = left ? expected->left() : expected->right();
                if (!other) other = left ? expected->right() : expected->left();
            }
            if (!other) fail(s, "cannot infer the other summand of " + op + "; write " + op + "[A] t");
            validate_type(*other, s->span);
            Term t = elab(e, mine);
            return left ? Term::inl(t, *other) : Term::inr(t, *other);
        }
        if (op == "magic") {
            std::optional<Type> target = s->type ? s->type : expected;
            if (!target) fail(s, "cannot infer the target of magic; write magic[A] t");
            validate_type(*target, s->span);
            return Term::magic(elab(e, Type::zero()), *target);
        }
        if (op == "return") return build::ret(elab(e, left_if_partial(expected)));
        if (op == "norm") return Term::norm(elab(e, partial_of(expected)));
        if (op == "lft" || op == "rgt") {
            Term t = elab(e, std::nullopt);
            Type a = type_of(t, e->span);
            if (!a.is_sum())
                throw TypeError(TypeErrorKind::Mismatch, "Tleft", op + " of type " + a.to_string(), ctx_.to_string(), e->span);
            return op == "lft" ? Term::lft(t) : build::rgt(t, a.left(), a.right());
        }
        Term t = elab(e, std::nullopt);
        if (op == "dom" || op == "inl?") return build::inl_test(t);
        if (op == "ker" || op == "inr?") return build::inr_test(t);
        if (op == "fst") return build::proj1(t);
        if (op == "snd") return build::proj2(t);
        fail(s, "unknown operator " + op);
    }
};

}  // namespace

Term elaborate(const SurfaceTerm& t, const Context& ctx, const Program* prog, const std::optional<Type>& expected) {
    for (const auto& [x, ty] : ctx.entries()) validate_type(ty, t->span);
    return Elaborator(prog, ctx).elab(t, expected);
}

Program elaborate(const SurfaceProgram& sp) {
    Program prog;
    prog.enums = sp.enums;
    std::set<std::string> names;
    for (const auto& e : sp.enums) {
        if (e->constructors.empty()) throw TypeError(TypeErrorKind::EmptyEnum, "", "enum " + e->name + " is empty");
        for (const auto& c : e->constructors)
            if (!names.insert(c).second) throw ElaborationError({}, "constructor " + c + " declared twice");
    }
    for (const auto& sd : sp.defs) {
        if (!names.insert(sd.name).second) throw ElaborationError(sd.span, "name " + sd.name + " defined twice");
        Definition d;
        d.name = sd.name;
        d.span = sd.span;
        d.type = sd.type;
        for (const auto& [x, ty] : sd.params) {
            validate_type(ty, sd.span);
            if (d.params.contains(x)) throw ElaborationError(sd.span, "parameter " + x + " repeated in " + sd.name);
            d.params.add(x, ty);
        }
        validate_type(sd.type, sd.span);
        d.body = elaborate(sd.body, d.params, &prog, sd.type);
        CheckResult r = check_term(d.params, d.body);
        if (r.type != d.type)
            throw TypeError(TypeErrorKind::Mismatch, "", sd.name + " is declared " + d.type.to_string() +
                                                             " but its body has type " + r.type.to_string(),
                            d.params.to_string(), sd.span);
        d.judgements = std::move(r.judgements);
        d.warnings = std::move(r.warnings);
        prog.defs.push_back(std::move(d));
    }
    for (const auto& q : sp.queries) {
        if (!prog.find(q.state)) throw ElaborationError(q.span, "query refers to unknown definition " + q.state);
        if (q.kind != Query::Kind::Eval && !prog.find(q.pred))
            throw ElaborationError(q.span, "query refers to unknown predicate " + q.pred);
    }
    prog.queries = sp.queries;
    return prog;
}

Program load_program(std::string_view source) { return elaborate(parse(source)); }

Term compile_expression(std::string_view source, const Context& ctx, const Program* prog) {
    SurfaceTerm s = parse_expression(source, prog ? prog->enums : std::vector<EnumRef>{});
    Term t = elaborate(s, ctx, prog);
    check_term(ctx, t);
    return t;
}

std::string print(const Term& t) { return t.to_string(); }

// ---------------------------------------------------------------------------
// Surface printing

namespace {

std::string print_pred(const SPred& p);

std::string print_surface(const SurfaceTerm& s) {
    if (!s) return "";
    const auto& k = s->kids;
    auto p = [](const SurfaceTerm& t) { return print_surface(t); };
    switch (s->kind) {
    case SKind::Var: return s->name;
    case SKind::Call: {
        std::string out = s->name + "(";
        for (std::size_t i = 0; i < k.size(); ++i) out += (i ? ", " : "") + p(k[i]);
        return out + ")";
    }
    case SKind::Star: return "*";
    case SKind::Top: return "top";
    case SKind::Bot: return "bot";
    case SKind::Fail: return "fail";
    case SKind::Scalar: return s->op == "1/n" ? "1/" + std::to_string(s->n) : s->scalar.to_string();
    case SKind::Numeral: return std::to_string(s->i) + "@" + std::to_string(s->n);
    case SKind::Pair: return "(" + p(k[0]) + " (x) " + p(k[1]) + ")";
    case SKind::Ovee: return "(" + p(k[0]) + " (+) " + p(k[1]) + ")";
    case SKind::And: return "(" + p(k[0]) + " & " + p(k[1]) + ")";
    case SKind::Ortho: return "(" + p(k[0]) + ")^";
    case SKind::Prefix: {
        std::string ann = s->type ? "[" + s->type->to_string() + "]" : "";
        return "(" + s->op + ann + " " + p(k[0]) + ")";
    }
    case SKind::Inlr: return "<" + p(k[0]) + ", " + p(k[1]) + ">";
    case SKind::Assert: return "assert[" + print_pred(*s->pred) + "](" + p(k[0]) + ")";
    case SKind::Instr: return "instr[" + print_pred(*s->pred) + "](" + p(k[0]) + ")";
    case SKind::Indexed: {
        std::string out = s->op + "[" + std::to_string(s->n);
        for (std::size_t i = 0; i < s->indices.size(); ++i)
            out += (i ? ", " : ": ") + std::to_string(s->indices[i]);
        return out + "](" + p(k[0]) + ")";
    }
    case SKind::Let: return "(let " + s->name + " = " + p(k[0]) + " in " + p(k[1]) + ")";
    case SKind::LetFun: {
        std::string out = "(let " + s->name + "(";
        for (std::size_t i = 0; i < s->names.size(); ++i) out += (i ? ", " : "") + s->names[i];
        return out + ") = " + p(k[0]) + " in " + p(k[1]) + ")";
    }
    case SKind::LetPair: return "(let " + s->name + " (x) " + s->name2 + " = " + p(k[0]) + " in " + p(k[1]) + ")";
    case SKind::Do: return "(do " + s->name + " <- " + p(k[0]) + "; " + p(k[1]) + ")";
    case SKind::Bind: return "(" + p(k[0]) + " >>= " + print_pred(*s->pred) + ")";
    case SKind::Case:
        return "(case " + p(k[0]) + " of inl " + s->name + " -> " + p(k[1]) + " | inr " + s->name2 + " -> " + p(k[2]) + ")";
    case SKind::EnumCase: {
        std::string out = "(case " + p(k[0]) + " of ";
        for (std::size_t i = 0; i < s->names.size(); ++i) out += (i ? " | " : "") + s->names[i] + " -> " + p(k[i + 1]);
        return out + ")";
    }
    case SKind::If: return "(if " + p(k[0]) + " then " + p(k[1]) + " else " + p(k[2]) + ")";
    case SKind::Measure: {
        std::string out = "(measure ";
        if (k[0]) out += p(k[0]) + " as " + s->name + " with ";
        for (std::size_t i = 1; i + 1 < k.size(); i += 2) out += (i > 1 ? " | " : "") + p(k[i]) + " -> " + p(k[i + 1]);
        return out + ")";
    }
    case SKind::Condition: return "(" + p(k[0]) + " | " + print_pred(*s->pred) + ")";
    case SKind::Ascribe: return "(" + p(k[0]) + " : " + s->type->to_string() + ")";
    }
    return "?";
}

std::string print_pred(const SPred& p) {
    switch (p.kind) {
    case SPred::Kind::Name: return p.name;
    case SPred::Kind::Lambda: {
        std::string b = p.binders[0];
        if (p.binders.size() == 2) b += " (x) " + p.binders[1];
        return "\\" + b + ". " + print_surface(p.body);
    }
    case SPred::Kind::Expr: return print_surface(p.body);
    }
    return "?";
}

}  // namespace

std::string print(const SurfaceTerm& t) { return print_surface(t); }

}  // namespace comet
