// dsl.hpp
// A small declarative script language for ring/bundle/cycle constructions
// and intersection queries. Statement-terminated, brace-delimited, LL(1):
//
//   ring P2 { gen h:1; rel h^3 = 0; dim 2; }
//   space P = projbundle(P2; c1 = -h, c2 = (n-1)*h^2);
//   space GL = product(G, L);
//   class eps = P : 2*h;
//   integrate(P; zeta * h^2);
//   table(); betti(3); det(); det(3);
//   assert integrate(P; eps^2 * h) == 0;
//
// `n` is a reserved parameter symbol; `#` starts a line comment. Every
// parse/eval error carries a position. Assertion failures are reported in
// the output, not fatal.
#ifndef CHOW_DSL_HPP
#define CHOW_DSL_HPP

#include "chow/pipeline.hpp"
#include "chow/series.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace chow::dsl {

struct Pos {
    int line = 1;
    int col = 1;
};

struct Diagnostic {
    std::string message;
    int line = 0;
    int col = 0;
    std::string snippet;
};

struct DslError : error {
    Diagnostic diag;
    DslError(Diagnostic d)
        : error(d.message + " at " + std::to_string(d.line) + ":" +
                std::to_string(d.col) + (d.snippet.empty() ? "" : " near '" + d.snippet + "'")),
          diag(std::move(d)) {}
};

// ---------------------------------------------------------------- lexing

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    Pos pos;
};

class Lexer {
public:
    explicit Lexer(std::string src) : src_(std::move(src)) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_.pos = pos_;
        if (i_ >= src_.size()) {
            tok_ = {Token::Kind::End, "", pos_};
            return;
        }
        char c = src_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
                ++j;
            tok_ = {Token::Kind::Ident, src_.substr(i_, j - i_), pos_};
            bump(j - i_);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j])))
                ++j;
            tok_ = {Token::Kind::Int, src_.substr(i_, j - i_), pos_};
            bump(j - i_);
            return;
        }
        if (c == '=' && i_ + 1 < src_.size() && src_[i_ + 1] == '=') {
            tok_ = {Token::Kind::Punct, "==", pos_};
            bump(2);
            return;
        }
        static const std::string punct = "{}();:,=+-*^";
        if (punct.find(c) != std::string::npos) {
            tok_ = {Token::Kind::Punct, std::string(1, c), pos_};
            bump(1);
            return;
        }
        throw DslError({"unexpected character", pos_.line, pos_.col, std::string(1, c)});
    }

    void skip_ws() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') bump(1);
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump(1);
            } else {
                break;
            }
        }
    }

    void bump(size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (src_[i_] == '\n') {
                ++pos_.line;
                pos_.col = 1;
            } else {
                ++pos_.col;
            }
            ++i_;
        }
    }

    std::string src_;
    size_t i_ = 0;
    Pos pos_;
    Token tok_;
};

// ------------------------------------------------------------------- AST

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Int, Name, Neg, Add, Sub, Mul, Pow, Integrate };
    Kind kind;
    Pos pos;
    Integer value;      // Int
    std::string name;   // Name; for Integrate: the space name
    ExprPtr a, b;

    static ExprPtr lit(Integer v, Pos p) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Int;
        e->value = std::move(v);
        e->pos = p;
        return e;
    }
};

inline bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
    if (!x || !y) return !x && !y;
    if (x->kind != y->kind) return false;
    if (x->value != y->value || x->name != y->name) return false;
    return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
}

struct GenDecl {
    std::string name;
    int degree = 1;
};

struct RelDecl {
    ExprPtr lhs, rhs;
};

struct Stmt {
    enum class Kind { Ring, Space, Class, Query, Assert };
    enum class SpaceKind { Product, ProjBundle };
    enum class QueryKind { Integrate, Table, Betti, Det };

    Kind kind{};
    Pos pos;
    std::string name;            // ring/space/class name
    std::vector<GenDecl> gens;   // ring
    std::vector<RelDecl> rels;   // ring
    int dim = 0;                 // ring
    SpaceKind space_kind{};      // space
    std::string arg1, arg2;      // space args; Query Integrate space name
    ExprPtr c1, c2;              // projbundle
    ExprPtr expr;                // class body / integrate body
    QueryKind query_kind{};      // query
    std::optional<long long> iarg; // betti(N), table(N)/table(), det(N)/det()
    ExprPtr lhs, rhs;            // assert
};

struct Script {
    std::vector<Stmt> stmts;
};

inline bool stmt_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.name != b.name || a.dim != b.dim ||
        a.arg1 != b.arg1 || a.arg2 != b.arg2 || a.iarg != b.iarg)
        return false;
    if (a.kind == Stmt::Kind::Space && a.space_kind != b.space_kind) return false;
    if (a.kind == Stmt::Kind::Query && a.query_kind != b.query_kind) return false;
    if (a.gens.size() != b.gens.size() || a.rels.size() != b.rels.size()) return false;
    for (size_t i = 0; i < a.gens.size(); ++i)
        if (a.gens[i].name != b.gens[i].name || a.gens[i].degree != b.gens[i].degree)
            return false;
    for (size_t i = 0; i < a.rels.size(); ++i)
        if (!expr_equal(a.rels[i].lhs, b.rels[i].lhs) ||
            !expr_equal(a.rels[i].rhs, b.rels[i].rhs))
            return false;
    return expr_equal(a.c1, b.c1) && expr_equal(a.c2, b.c2) &&
           expr_equal(a.expr, b.expr) && expr_equal(a.lhs, b.lhs) &&
           expr_equal(a.rhs, b.rhs);
}

inline bool script_equal(const Script& a, const Script& b) {
    if (a.stmts.size() != b.stmts.size()) return false;
    for (size_t i = 0; i < a.stmts.size(); ++i)
        if (!stmt_equal(a.stmts[i], b.stmts[i])) return false;
    return true;
}

// ---------------------------------------------------------------- parsing

class Parser {
public:
    explicit Parser(std::string src) : lex_(std::move(src)) {}

    Script parse_script() {
        Script s;
        while (lex_.peek().kind != Token::Kind::End) s.stmts.push_back(parse_stmt());
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& msg, const Token& t) {
        throw DslError({msg, t.pos.line, t.pos.col, t.text});
    }

    Token expect_punct(const std::string& p) {
        Token t = lex_.next();
        if (t.kind != Token::Kind::Punct || t.text != p)
            fail("expected '" + p + "'", t);
        return t;
    }
    std::string expect_ident() {
        Token t = lex_.next();
        if (t.kind != Token::Kind::Ident) fail("expected identifier", t);
        return t.text;
    }
    std::string expect_keyword(const std::string& kw) {
        Token t = lex_.next();
        if (t.kind != Token::Kind::Ident || t.text != kw)
            fail("expected '" + kw + "'", t);
        return t.text;
    }
    long long expect_int() {
        Token t = lex_.next();
        if (t.kind != Token::Kind::Int) fail("expected integer", t);
        return std::stoll(t.text);
    }
    bool peek_is(const std::string& text) const {
        return lex_.peek().text == text;
    }

    Stmt parse_stmt() {
        Token t = lex_.peek();
        if (t.kind != Token::Kind::Ident) fail("expected statement", t);
        if (t.text == "ring") return parse_ring();
        if (t.text == "space") return parse_space();
        if (t.text == "class") return parse_class();
        if (t.text == "assert") return parse_assert();
        if (t.text == "integrate" || t.text == "table" || t.text == "betti" ||
            t.text == "det")
            return parse_query();
        fail("unknown statement", t);
    }

    Stmt parse_ring() {
        Stmt s;
        s.kind = Stmt::Kind::Ring;
        s.pos = lex_.peek().pos;
        expect_keyword("ring");
        s.name = expect_ident();
        check_name(s.name);
        expect_punct("{");
        while (peek_is("gen")) {
            lex_.next();
            GenDecl g;
            g.name = expect_ident();
            check_name(g.name);
            expect_punct(":");
            g.degree = static_cast<int>(expect_int());
            expect_punct(";");
            s.gens.push_back(std::move(g));
        }
        if (s.gens.empty()) fail("ring needs at least one 'gen'", lex_.peek());
        while (peek_is("rel")) {
            lex_.next();
            RelDecl r;
            r.lhs = parse_expr();
            expect_punct("=");
            r.rhs = parse_expr();
            expect_punct(";");
            s.rels.push_back(std::move(r));
        }
        expect_keyword("dim");
        s.dim = static_cast<int>(expect_int());
        expect_punct(";");
        expect_punct("}");
        return s;
    }

    Stmt parse_space() {
        Stmt s;
        s.kind = Stmt::Kind::Space;
        s.pos = lex_.peek().pos;
        expect_keyword("space");
        s.name = expect_ident();
        check_name(s.name);
        expect_punct("=");
        Token kindTok = lex_.next();
        if (kindTok.text == "product") {
            s.space_kind = Stmt::SpaceKind::Product;
            expect_punct("(");
            s.arg1 = expect_ident();
            expect_punct(",");
            s.arg2 = expect_ident();
            expect_punct(")");
        } else if (kindTok.text == "projbundle") {
            s.space_kind = Stmt::SpaceKind::ProjBundle;
            expect_punct("(");
            s.arg1 = expect_ident();
            expect_punct(";");
            expect_keyword("c1");
            expect_punct("=");
            s.c1 = parse_expr();
            expect_punct(",");
            expect_keyword("c2");
            expect_punct("=");
            s.c2 = parse_expr();
            expect_punct(")");
        } else {
            fail("expected 'product' or 'projbundle'", kindTok);
        }
        expect_punct(";");
        return s;
    }

    Stmt parse_class() {
        Stmt s;
        s.kind = Stmt::Kind::Class;
        s.pos = lex_.peek().pos;
        expect_keyword("class");
        s.name = expect_ident();
        check_name(s.name);
        expect_punct("=");
        s.arg1 = expect_ident();
        expect_punct(":");
        s.expr = parse_expr();
        expect_punct(";");
        return s;
    }

    Stmt parse_assert() {
        Stmt s;
        s.kind = Stmt::Kind::Assert;
        s.pos = lex_.peek().pos;
        expect_keyword("assert");
        s.lhs = parse_expr();
        expect_punct("==");
        s.rhs = parse_expr();
        expect_punct(";");
        return s;
    }

    Stmt parse_query() {
        Stmt s;
        s.kind = Stmt::Kind::Query;
        s.pos = lex_.peek().pos;
        Token kw = lex_.next();
        expect_punct("(");
        if (kw.text == "integrate") {
            s.query_kind = Stmt::QueryKind::Integrate;
            s.arg1 = expect_ident();
            expect_punct(";");
            s.expr = parse_expr();
        } else {
            if (kw.text == "table")
                s.query_kind = Stmt::QueryKind::Table;
            else if (kw.text == "betti")
                s.query_kind = Stmt::QueryKind::Betti;
            else
                s.query_kind = Stmt::QueryKind::Det;
            if (!peek_is(")")) s.iarg = expect_int();
            if (s.query_kind == Stmt::QueryKind::Betti && !s.iarg)
                fail("betti needs an argument", lex_.peek());
        }
        expect_punct(")");
        expect_punct(";");
        return s;
    }

    void check_name(const std::string& name) {
        static const std::set<std::string> reserved = {
            "ring", "space",      "class",  "gen",   "rel",  "dim",
            "n",    "projbundle", "product", "assert", "integrate",
            "table", "betti",     "det",    "c1",    "c2"};
        if (reserved.count(name))
            throw DslError({"reserved word used as a name", lex_.peek().pos.line,
                            lex_.peek().pos.col, name});
    }

    // expr := term (('+'|'-') term)*
    // term := factor ('*' factor)*
    // factor := '-' factor | atom ('^' INT)?
    // atom := INT | NAME | '(' expr ')' | 'integrate' '(' NAME ';' expr ')'
    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        while (peek_is("+") || peek_is("-")) {
            Token op = lex_.next();
            auto r = std::make_shared<Expr>();
            r->kind = op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
            r->pos = op.pos;
            r->a = e;
            r->b = parse_term();
            e = r;
        }
        return e;
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        while (peek_is("*")) {
            Token op = lex_.next();
            auto r = std::make_shared<Expr>();
            r->kind = Expr::Kind::Mul;
            r->pos = op.pos;
            r->a = e;
            r->b = parse_factor();
            e = r;
        }
        return e;
    }

    ExprPtr parse_factor() {
        if (peek_is("-")) {
            Token op = lex_.next();
            auto r = std::make_shared<Expr>();
            r->kind = Expr::Kind::Neg;
            r->pos = op.pos;
            r->a = parse_factor();
            return r;
        }
        ExprPtr e = parse_atom();
        if (peek_is("^")) {
            Token op = lex_.next();
            auto r = std::make_shared<Expr>();
            r->kind = Expr::Kind::Pow;
            r->pos = op.pos;
            r->a = e;
            r->b = Expr::lit(Integer(expect_int()), op.pos);
            e = r;
        }
        return e;
    }

    ExprPtr parse_atom() {
        Token t = lex_.next();
        if (t.kind == Token::Kind::Int) return Expr::lit(Integer(t.text), t.pos);
        if (t.kind == Token::Kind::Ident) {
            if (t.text == "integrate") {
                auto r = std::make_shared<Expr>();
                r->kind = Expr::Kind::Integrate;
                r->pos = t.pos;
                expect_punct("(");
                r->name = expect_ident();
                expect_punct(";");
                r->a = parse_expr();
                expect_punct(")");
                return r;
            }
            auto r = std::make_shared<Expr>();
            r->kind = Expr::Kind::Name;
            r->pos = t.pos;
            r->name = t.text;
            return r;
        }
        if (t.text == "(") {
            ExprPtr e = parse_expr();
            expect_punct(")");
            return e;
        }
        fail("expected expression", t);
    }

    Lexer lex_;
};

inline Script parse(const std::string& text) { return Parser(text).parse_script(); }

// --------------------------------------------------------------- printing

inline int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

inline std::string print(const ExprPtr& e) {
    auto wrap = [](const ExprPtr& child, int parent_prec, bool strict) {
        std::string s = print(child);
        if (precedence(child->kind) < parent_prec + (strict ? 1 : 0))
            return "(" + s + ")";
        return s;
    };
    switch (e->kind) {
        case Expr::Kind::Int: return e->value.str();
        case Expr::Kind::Name: return e->name;
        case Expr::Kind::Neg: return "-" + wrap(e->a, 3, false);
        case Expr::Kind::Add: return wrap(e->a, 1, false) + "+" + wrap(e->b, 1, true);
        case Expr::Kind::Sub: return wrap(e->a, 1, false) + "-" + wrap(e->b, 1, true);
        case Expr::Kind::Mul: return wrap(e->a, 2, false) + "*" + wrap(e->b, 2, true);
        case Expr::Kind::Pow: return wrap(e->a, 4, true) + "^" + print(e->b);
        case Expr::Kind::Integrate:
            return "integrate(" + e->name + "; " + print(e->a) + ")";
    }
    return "";
}

inline std::string print(const Stmt& s) {
    std::ostringstream os;
    switch (s.kind) {
        case Stmt::Kind::Ring: {
            os << "ring " << s.name << " { ";
            for (const auto& g : s.gens)
                os << "gen " << g.name << ":" << g.degree << "; ";
            for (const auto& r : s.rels)
                os << "rel " << print(r.lhs) << " = " << print(r.rhs) << "; ";
            os << "dim " << s.dim << "; }";
            break;
        }
        case Stmt::Kind::Space:
            os << "space " << s.name << " = ";
            if (s.space_kind == Stmt::SpaceKind::Product)
                os << "product(" << s.arg1 << ", " << s.arg2 << ")";
            else
                os << "projbundle(" << s.arg1 << "; c1 = " << print(s.c1)
                   << ", c2 = " << print(s.c2) << ")";
            os << ";";
            break;
        case Stmt::Kind::Class:
            os << "class " << s.name << " = " << s.arg1 << " : " << print(s.expr)
               << ";";
            break;
        case Stmt::Kind::Query:
            switch (s.query_kind) {
                case Stmt::QueryKind::Integrate:
                    os << "integrate(" << s.arg1 << "; " << print(s.expr) << ");";
                    break;
                case Stmt::QueryKind::Table:
                    os << "table(" << (s.iarg ? std::to_string(*s.iarg) : "") << ");";
                    break;
                case Stmt::QueryKind::Betti:
                    os << "betti(" << *s.iarg << ");";
                    break;
                case Stmt::QueryKind::Det:
                    os << "det(" << (s.iarg ? std::to_string(*s.iarg) : "") << ");";
                    break;
            }
            break;
        case Stmt::Kind::Assert:
            os << "assert " << print(s.lhs) << " == " << print(s.rhs) << ";";
            break;
    }
    return os.str();
}

inline std::string print(const Script& s) {
    std::string out;
    for (const auto& st : s.stmts) out += print(st) + "\n";
    return out;
}

// -------------------------------------------------------------- evaluation

// A value is either a scalar polynomial in the parameters or an element of
// a declared space.
struct Value {
    std::optional<ParamPoly> poly;
    std::optional<RingElement> elem;

    bool is_poly() const { return poly.has_value(); }
    std::string str() const { return is_poly() ? poly->str() : elem->str(); }
};

struct EvalResult {
    std::string output;
    int assert_failures = 0;
};

class Evaluator {
public:
    explicit Evaluator(Params params = {"n"}) : params_(std::move(params)) {}

    EvalResult run(const Script& script) {
        EvalResult res;
        std::ostringstream out;
        for (const auto& s : script.stmts) exec(s, out, res.assert_failures);
        res.output = out.str();
        return res;
    }

private:
    [[noreturn]] void fail(const std::string& msg, Pos pos,
                           const std::string& snippet = "") {
        throw DslError({msg, pos.line, pos.col, snippet});
    }

    void bind(const std::string& name, Pos pos) {
        if (!bound_.insert(name).second)
            fail("name bound twice: " + name, pos, name);
    }

    void exec(const Stmt& s, std::ostringstream& out, int& failures) {
        switch (s.kind) {
            case Stmt::Kind::Ring: exec_ring(s); break;
            case Stmt::Kind::Space: exec_space(s); break;
            case Stmt::Kind::Class: {
                bind(s.name, s.pos);
                RingPtr ring = lookup_space(s.arg1, s.pos);
                RingElement e = as_elem(eval(s.expr, ring), ring, s.pos);
                classes_[s.name] = e;
                break;
            }
            case Stmt::Kind::Query: exec_query(s, out); break;
            case Stmt::Kind::Assert: {
                Value l = eval(s.lhs, nullptr);
                Value r = eval(s.rhs, nullptr);
                if (values_equal(l, r, s.pos)) {
                    out << "assert ok: " << print(s.lhs) << " == " << print(s.rhs)
                        << "\n";
                } else {
                    out << "assert FAILED: " << print(s.lhs) << " == "
                        << print(s.rhs) << "  [" << l.str() << " != " << r.str()
                        << "]\n";
                    ++failures;
                }
                break;
            }
        }
    }

    void exec_ring(const Stmt& s) {
        bind(s.name, s.pos);
        std::vector<Generator> gens;
        for (const auto& g : s.gens) {
            if (g.degree <= 0) fail("generator degree must be positive", s.pos, g.name);
            gens.push_back({g.name, g.degree});
        }
        std::vector<Relation> rels;
        for (const auto& r : s.rels) {
            auto lhs = eval_free(r.lhs, gens);
            auto rhs = eval_free(r.rhs, gens);
            if (lhs.size() != 1 ||
                lhs.begin()->second != ParamPoly::constant(params_, Rational(1)))
                fail("relation lead must be a single monic monomial", r.lhs->pos);
            Relation rel;
            rel.lead = lhs.begin()->first;
            for (auto& [m, c] : rhs) rel.rhs.emplace_back(m, std::move(c));
            rels.push_back(std::move(rel));
        }
        spaces_[s.name] = GradedRing::make(params_, std::move(gens), std::move(rels),
                                           s.dim);
    }

    void exec_space(const Stmt& s) {
        bind(s.name, s.pos);
        if (s.space_kind == Stmt::SpaceKind::Product) {
            spaces_[s.name] = GradedRing::product(lookup_space(s.arg1, s.pos),
                                                  lookup_space(s.arg2, s.pos));
        } else {
            RingPtr base = lookup_space(s.arg1, s.pos);
            RingElement c1 = as_elem(eval(s.c1, base), base, s.pos);
            RingElement c2 = as_elem(eval(s.c2, base), base, s.pos);
            spaces_[s.name] = GradedRing::projective_bundle(base, c1, c2);
        }
    }

    void exec_query(const Stmt& s, std::ostringstream& out) {
        switch (s.query_kind) {
            case Stmt::QueryKind::Integrate: {
                RingPtr ring = lookup_space(s.arg1, s.pos);
                RingElement e = as_elem(eval(s.expr, ring), ring, s.pos);
                out << "integrate(" << s.arg1 << "): " << ring->integrate(e).str()
                    << "\n";
                break;
            }
            case Stmt::QueryKind::Table: {
                auto table = pipeline().intersection_table();
                for (size_t i = 0; i < 6; ++i) {
                    out << IntersectionTable::row_names()[i] << ":";
                    for (size_t j = 0; j < 6; ++j) {
                        if (s.iarg) {
                            std::map<std::string, Rational> b{
                                {"n", Rational(*s.iarg)}};
                            out << " " << table.entries[i][j].eval(b).str();
                        } else {
                            out << " " << table.entries[i][j].str();
                        }
                    }
                    out << "\n";
                }
                break;
            }
            case Stmt::QueryKind::Betti: {
                if (*s.iarg < 1) fail("betti needs n >= 1", s.pos);
                PoincareData p = poincare(static_cast<int>(*s.iarg));
                out << "betti " << p.n << ":";
                for (const auto& b : p.betti) out << " " << b.str();
                out << "\n";
                break;
            }
            case Stmt::QueryKind::Det: {
                if (s.iarg) {
                    out << "det(" << *s.iarg << "): "
                        << pipeline().basis_determinant_at(static_cast<int>(*s.iarg)).str()
                        << "\n";
                } else {
                    out << "det: " << pipeline().basis_determinant_symbolic().str()
                        << "\n";
                }
                break;
            }
        }
    }

    RingPtr lookup_space(const std::string& name, Pos pos) {
        auto it = spaces_.find(name);
        if (it == spaces_.end()) fail("undeclared space: " + name, pos, name);
        return it->second;
    }

    RingElement as_elem(const Value& v, const RingPtr& ring, Pos pos) {
        if (v.is_poly()) return ring->scalar(*v.poly);
        if (v.elem->ring() != ring) fail("class belongs to a different space", pos);
        return *v.elem;
    }

    bool values_equal(const Value& a, const Value& b, Pos pos) {
        if (a.is_poly() && b.is_poly()) return *a.poly == *b.poly;
        if (!a.is_poly() && !b.is_poly()) {
            if (a.elem->ring() != b.elem->ring())
                fail("comparing elements of different spaces", pos);
            return *a.elem == *b.elem;
        }
        const RingElement& e = a.is_poly() ? *b.elem : *a.elem;
        const ParamPoly& p = a.is_poly() ? *a.poly : *b.poly;
        return e == e.ring()->scalar(p);
    }

    // Free evaluation over a generator list (no relations yet), used for
    // ring declarations.
    using FreeTerms = std::map<Monomial, ParamPoly, MonoLess>;

    FreeTerms eval_free(const ExprPtr& e, const std::vector<Generator>& gens) {
        switch (e->kind) {
            case Expr::Kind::Int: {
                FreeTerms t;
                ParamPoly c = ParamPoly::constant(params_, Rational(e->value));
                if (!c.is_zero()) t[Monomial(gens.size(), 0)] = c;
                return t;
            }
            case Expr::Kind::Name: {
                if (e->name == "n") {
                    FreeTerms t;
                    t[Monomial(gens.size(), 0)] = ParamPoly::variable(params_, "n");
                    return t;
                }
                for (size_t i = 0; i < gens.size(); ++i)
                    if (gens[i].name == e->name) {
                        FreeTerms t;
                        Monomial m(gens.size(), 0);
                        m[i] = 1;
                        t[m] = ParamPoly::constant(params_, Rational(1));
                        return t;
                    }
                fail("unknown name in relation: " + e->name, e->pos, e->name);
            }
            case Expr::Kind::Neg: {
                FreeTerms t = eval_free(e->a, gens);
                for (auto& [m, c] : t) c = -c;
                return t;
            }
            case Expr::Kind::Add:
            case Expr::Kind::Sub: {
                FreeTerms t = eval_free(e->a, gens);
                FreeTerms u = eval_free(e->b, gens);
                for (auto& [m, c] : u) {
                    ParamPoly d = e->kind == Expr::Kind::Add ? c : -c;
                    auto it = t.find(m);
                    if (it == t.end()) {
                        if (!d.is_zero()) t[m] = d;
                    } else {
                        it->second += d;
                        if (it->second.is_zero()) t.erase(it);
                    }
                }
                return t;
            }
            case Expr::Kind::Mul: {
                FreeTerms ta = eval_free(e->a, gens);
                FreeTerms tb = eval_free(e->b, gens);
                FreeTerms r;
                for (const auto& [ma, ca] : ta)
                    for (const auto& [mb, cb] : tb) {
                        Monomial m(ma.size());
                        for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                        ParamPoly c = ca * cb;
                        auto it = r.find(m);
                        if (it == r.end()) {
                            if (!c.is_zero()) r[m] = std::move(c);
                        } else {
                            it->second += c;
                            if (it->second.is_zero()) r.erase(it);
                        }
                    }
                return r;
            }
            case Expr::Kind::Pow: {
                long long k = static_cast<long long>(e->b->value);
                if (k < 0) fail("negative power", e->pos);
                FreeTerms r;
                r[Monomial(gens.size(), 0)] = ParamPoly::constant(params_, Rational(1));
                FreeTerms base = eval_free(e->a, gens);
                for (long long i = 0; i < k; ++i) {
                    FreeTerms nr;
                    for (const auto& [ma, ca] : r)
                        for (const auto& [mb, cb] : base) {
                            Monomial m(ma.size());
                            for (size_t j = 0; j < m.size(); ++j)
                                m[j] = ma[j] + mb[j];
                            ParamPoly c = ca * cb;
                            auto it = nr.find(m);
                            if (it == nr.end()) {
                                if (!c.is_zero()) nr[m] = std::move(c);
                            } else {
                                it->second += c;
                                if (it->second.is_zero()) nr.erase(it);
                            }
                        }
                    r = std::move(nr);
                }
                return r;
            }
            case Expr::Kind::Integrate:
                fail("integrate not allowed inside a ring declaration", e->pos);
        }
        fail("bad expression", e->pos);
    }

    Value eval(const ExprPtr& e, const RingPtr& ctx) {
        switch (e->kind) {
            case Expr::Kind::Int:
                return {ParamPoly::constant(params_, Rational(e->value)), std::nullopt};
            case Expr::Kind::Name: {
                if (e->name == "n")
                    return {ParamPoly::variable(params_, "n"), std::nullopt};
                if (ctx) {
                    for (const auto& g : ctx->generators())
                        if (g.name == e->name)
                            return {std::nullopt, ctx->gen(e->name)};
                }
                auto it = classes_.find(e->name);
                if (it != classes_.end()) {
                    if (ctx && it->second.ring() != ctx)
                        fail("class " + e->name + " belongs to a different space",
                             e->pos, e->name);
                    return {std::nullopt, it->second};
                }
                fail("undeclared name: " + e->name, e->pos, e->name);
            }
            case Expr::Kind::Neg: {
                Value v = eval(e->a, ctx);
                if (v.is_poly()) return {-*v.poly, std::nullopt};
                return {std::nullopt, -*v.elem};
            }
            case Expr::Kind::Add:
            case Expr::Kind::Sub: {
                Value l = eval(e->a, ctx);
                Value r = eval(e->b, ctx);
                bool sub = e->kind == Expr::Kind::Sub;
                if (l.is_poly() && r.is_poly())
                    return {sub ? *l.poly - *r.poly : *l.poly + *r.poly, std::nullopt};
                RingElement le = to_elem(l, r, e->pos);
                RingElement re = to_elem(r, l, e->pos);
                return {std::nullopt, sub ? le - re : le + re};
            }
            case Expr::Kind::Mul: {
                Value l = eval(e->a, ctx);
                Value r = eval(e->b, ctx);
                if (l.is_poly() && r.is_poly())
                    return {*l.poly * *r.poly, std::nullopt};
                if (l.is_poly()) return {std::nullopt, *r.elem * *l.poly};
                if (r.is_poly()) return {std::nullopt, *l.elem * *r.poly};
                if (l.elem->ring() != r.elem->ring())
                    fail("multiplying elements of different spaces", e->pos);
                return {std::nullopt, *l.elem * *r.elem};
            }
            case Expr::Kind::Pow: {
                Value v = eval(e->a, ctx);
                long long k = static_cast<long long>(e->b->value);
                if (k < 0) fail("negative power", e->pos);
                if (v.is_poly()) {
                    ParamPoly r = ParamPoly::constant(params_, Rational(1));
                    for (long long i = 0; i < k; ++i) r = r * *v.poly;
                    return {r, std::nullopt};
                }
                return {std::nullopt, v.elem->pow(static_cast<int>(k))};
            }
            case Expr::Kind::Integrate: {
                RingPtr ring = lookup_space(e->name, e->pos);
                RingElement body = as_elem(eval(e->a, ring), ring, e->pos);
                return {ring->integrate(body), std::nullopt};
            }
        }
        fail("bad expression", e->pos);
    }

    RingElement to_elem(const Value& v, const Value& other, Pos pos) {
        if (!v.is_poly()) return *v.elem;
        if (other.is_poly()) fail("internal: no ring for coercion", pos);
        return other.elem->ring()->scalar(*v.poly);
    }

    GwPipeline& pipeline() {
        if (!pipeline_) pipeline_.emplace(params_);
        return *pipeline_;
    }

    Params params_;
    std::map<std::string, RingPtr> spaces_;
    std::map<std::string, RingElement> classes_;
    std::set<std::string> bound_;
    std::optional<GwPipeline> pipeline_;
};

inline EvalResult eval(const Script& s) { return Evaluator().run(s); }

} // namespace chow::dsl

#endif
