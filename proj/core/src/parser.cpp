#include "teamlogic/formulas.hpp"

#include <cctype>
#include <functional>

namespace teamlogic {

namespace {

enum class Tok { Ident, Int, LParen, RParen, Comma, Semi, Dot, Amp, Bar, Arrow, Tilde, Eq, Neq, Slash, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> lex(std::string_view s)
{
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text, int c) { out.push_back({k, std::move(text), line, c}); };
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n')
                ++i;
            continue;
        }
        int start_col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            push(Tok::Ident, std::string(s.substr(i, j - i)), start_col);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            push(Tok::Int, std::string(s.substr(i, j - i)), start_col);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        auto two = [&](char next) { return i + 1 < s.size() && s[i + 1] == next; };
        switch (c) {
        case '(': push(Tok::LParen, "(", start_col); break;
        case ')': push(Tok::RParen, ")", start_col); break;
        case ',': push(Tok::Comma, ",", start_col); break;
        case ';': push(Tok::Semi, ";", start_col); break;
        case '.': push(Tok::Dot, ".", start_col); break;
        case '&': push(Tok::Amp, "&", start_col); break;
        case '|': push(Tok::Bar, "|", start_col); break;
        case '~': push(Tok::Tilde, "~", start_col); break;
        case '=': push(Tok::Eq, "=", start_col); break;
        case '/': push(Tok::Slash, "/", start_col); break;
        case '-':
            if (!two('>'))
                throw ParseError("expected '->'", line, start_col);
            push(Tok::Arrow, "->", start_col);
            ++i;
            ++col;
            break;
        case '!':
            if (!two('='))
                throw ParseError("expected '!='", line, start_col);
            push(Tok::Neq, "!=", start_col);
            ++i;
            ++col;
            break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, start_col);
        }
        ++i;
        ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool is_atom_keyword(const std::string& s)
{
    return s == "inc" || s == "exc" || s == "dep" || s == "indep" || s == "ugame";
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts) : toks_(lex(text)), opts_(opts)
    {
        if (opts.vocabulary)
            for (const auto& [n, a] : opts.vocabulary->symbols)
                arities_[n] = a;
    }

    Formula parse_all()
    {
        Formula f = parse_imp();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");
        return f;
    }

    std::map<std::string, int> arities_;
    std::map<std::string, int> used_arities_;

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const ParseOptions& opts_;
    std::vector<std::vector<std::pair<std::string, int>>> so_scopes_;

    const Token& peek(std::size_t ahead = 0) const
    {
        std::size_t p = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[p];
    }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    [[noreturn]] void fail(const std::string& msg, const Token* at = nullptr) const
    {
        const Token& t = at ? *at : peek();
        throw ParseError(msg, t.line, t.col);
    }
    const Token& expect(Tok k, const char* what)
    {
        if (peek().kind != k)
            fail(std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : ", found '" + peek().text + "'"));
        return next();
    }

    std::string identifier(const char* what)
    {
        const Token& t = expect(Tok::Ident, what);
        if (!opts_.allow_reserved && t.text.rfind(kFreshPrefix, 0) == 0)
            fail("identifier " + t.text + " uses the reserved prefix " + kFreshPrefix, &t);
        return t.text;
    }

    std::vector<std::string> terms(Tok stop1, Tok stop2 = Tok::End)
    {
        std::vector<std::string> out{identifier("variable")};
        while (peek().kind == Tok::Comma) {
            next();
            out.push_back(identifier("variable"));
        }
        if (peek().kind != stop1 && peek().kind != stop2)
            fail("expected ',' or end of term list, found '" + peek().text + "'");
        return out;
    }

    void check_arity(const std::string& name, int arity, const Token& at)
    {
        for (auto it = so_scopes_.rbegin(); it != so_scopes_.rend(); ++it)
            for (const auto& [n, a] : *it)
                if (n == name) {
                    if (a != arity)
                        fail("relation " + name + " has arity " + std::to_string(a) + ", used with " +
                                 std::to_string(arity) + " terms",
                             &at);
                    return;
                }
        if (auto it = arities_.find(name); it != arities_.end()) {
            if (it->second != arity)
                fail("relation " + name + " has arity " + std::to_string(it->second) + ", used with " +
                         std::to_string(arity) + " terms",
                     &at);
            return;
        }
        if (auto it = used_arities_.find(name); it != used_arities_.end()) {
            if (it->second != arity)
                fail("relation " + name + " used with arities " + std::to_string(it->second) + " and " +
                         std::to_string(arity),
                     &at);
            return;
        }
        used_arities_[name] = arity;
    }

    Formula parse_imp()
    {
        Formula lhs = parse_or();
        if (peek().kind == Tok::Arrow) {
            const Token& op = next();
            Formula rhs = parse_imp();
            if (!lhs->flat())
                fail("the left side of '->' must be first-order", &op);
            return arrow(lhs, rhs);
        }
        return lhs;
    }

    Formula parse_or()
    {
        Formula f = parse_and();
        while (peek().kind == Tok::Bar) {
            next();
            f = disj(f, parse_and());
        }
        return f;
    }

    Formula parse_and()
    {
        Formula f = parse_unit();
        while (peek().kind == Tok::Amp) {
            next();
            f = conj(f, parse_unit());
        }
        return f;
    }

    bool at_quantifier() const
    {
        const Token& t = peek();
        return t.kind == Tok::Ident && (t.text == "E" || t.text == "A") && peek(1).kind == Tok::Ident;
    }

    bool at_so_block() const
    {
        const Token& t = peek();
        return t.kind == Tok::Ident && t.text == "EX" && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Slash;
    }

    Formula parse_unit()
    {
        const Token& t = peek();
        if (t.kind == Tok::LParen) {
            next();
            Formula f = parse_imp();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Tilde) {
            next();
            const Token& n = peek();
            if (n.kind == Tok::Ident && peek(1).kind == Tok::LParen && !is_atom_keyword(n.text))
                return parse_relational(false);
            if (n.kind == Tok::Ident && (peek(1).kind == Tok::Eq || peek(1).kind == Tok::Neq) && !at_quantifier())
                return parse_equality(false);
            return neg(parse_unit());
        }
        if (at_so_block())
            return parse_so_block();
        if (at_quantifier())
            return parse_quantifier();
        if (t.kind == Tok::Ident) {
            if (peek(1).kind == Tok::LParen) {
                if (is_atom_keyword(t.text))
                    return parse_team_atom();
                return parse_relational(true);
            }
            if (peek(1).kind == Tok::Eq || peek(1).kind == Tok::Neq)
                return parse_equality(true);
            fail("expected '(', '=' or '!=' after '" + t.text + "'", &peek(1));
        }
        fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    Formula parse_quantifier()
    {
        bool ex = next().text == "E";
        std::vector<std::string> vars{identifier("variable")};
        expect(Tok::Dot, "'.' after the quantified variable");
        Formula body = parse_imp();
        return ex ? exists(vars, body) : forall(vars, body);
    }

    Formula parse_so_block()
    {
        const Token& kw = next();
        if (!opts_.allow_so)
            fail("second-order quantifiers are not allowed here", &kw);
        std::vector<std::pair<std::string, int>> decls;
        while (true) {
            std::string name = identifier("relation name");
            expect(Tok::Slash, "'/'");
            const Token& ar = expect(Tok::Int, "arity");
            int a = std::stoi(ar.text);
            if (a < 1)
                fail("arity must be positive", &ar);
            for (const auto& d : decls)
                if (d.first == name)
                    fail("relation " + name + " quantified twice", &ar);
            decls.emplace_back(name, a);
            if (peek().kind != Tok::Comma)
                break;
            next();
        }
        expect(Tok::Dot, "'.' after relation declarations");
        so_scopes_.push_back(decls);
        Formula body = parse_imp();
        so_scopes_.pop_back();
        return so_exists(decls, body);
    }

    Formula parse_relational(bool positive)
    {
        const Token& nt = peek();
        std::string name = identifier("relation name");
        expect(Tok::LParen, "'('");
        auto ts = terms(Tok::RParen);
        next();
        check_arity(name, static_cast<int>(ts.size()), nt);
        return rel(name, ts, positive);
    }

    Formula parse_equality(bool positive)
    {
        std::string a = identifier("variable");
        bool eqop = next().kind == Tok::Eq;
        std::string b = identifier("variable");
        return eq(a, b, positive == eqop);
    }

    Formula parse_team_atom()
    {
        const Token& kw = next();
        expect(Tok::LParen, "'('");
        if (kw.text == "ugame") {
            const Token& kt = expect(Tok::Int, "width");
            int k = std::stoi(kt.text);
            expect(Tok::Semi, "';'");
            auto xs = terms(Tok::RParen);
            next();
            if (k < 1)
                fail("ugame width must be positive", &kt);
            if (static_cast<int>(xs.size()) != k)
                fail("ugame(" + std::to_string(k) + "; ...) needs " + std::to_string(k) + " target variables", &kt);
            return ugame(k, xs);
        }
        auto lhs = terms(Tok::Semi);
        next();
        const Token& rt = peek();
        auto rhs = terms(Tok::RParen);
        next();
        if (kw.text == "dep") {
            if (rhs.size() != 1)
                fail("dep(...; z) takes exactly one determined variable", &rt);
            return dep(lhs, rhs[0]);
        }
        if (kw.text == "indep")
            return indep(lhs, rhs);
        if (lhs.size() != rhs.size())
            fail(kw.text + " atom sides have different lengths (" + std::to_string(lhs.size()) + " vs " +
                     std::to_string(rhs.size()) + ")",
                 &rt);
        return kw.text == "inc" ? inc(lhs, rhs) : exc(lhs, rhs);
    }
};

// Renames binders that shadow an enclosing binder of the same variable.
Formula unshadow(const Formula& f)
{
    std::set<std::string> used = all_variables(f);
    std::function<std::string()> fresh = [&] {
        for (int i = 1;; ++i) {
            std::string c = "v_" + std::to_string(i);
            if (!used.count(c)) {
                used.insert(c);
                return c;
            }
        }
    };
    std::function<Formula(const Formula&, const std::set<std::string>&)> walk =
        [&](const Formula& g, const std::set<std::string>& scope) -> Formula {
        switch (g->kind) {
        case Kind::And:
        case Kind::Or:
            return rebuild(*g, walk(g->a, scope), walk(g->b, scope));
        case Kind::Not:
        case Kind::SOExists:
            return rebuild(*g, walk(g->a, scope), nullptr);
        case Kind::Exists:
        case Kind::Forall: {
            std::string v = g->name;
            Formula body = g->a;
            if (scope.count(v)) {
                std::string nv = fresh();
                body = rename_free(body, {{v, nv}});
                v = nv;
            }
            auto inner = scope;
            inner.insert(v);
            Formula nb = walk(body, inner);
            return g->kind == Kind::Exists ? exists(v, nb) : forall(v, nb);
        }
        default:
            return g;
        }
    };
    return walk(f, {});
}

} // namespace

Formula parse_formula(std::string_view text, const ParseOptions& opts)
{
    Parser p(text, opts);
    return unshadow(p.parse_all());
}

namespace {

bool is_x_literal(const Formula& f, const std::string& X, bool positive)
{
    return f->kind == Kind::Rel && f->name == X && f->positive == positive;
}

void check_so_matrix(const Formula& m)
{
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g->kind == Kind::SOExists)
            throw ParseError("second-order quantifiers may only appear as a prefix or directly under the guard", 1, 1);
        if (g->team_atoms && (g->kind != Kind::And && g->kind != Kind::Or && g->kind != Kind::Not &&
                              g->kind != Kind::Exists && g->kind != Kind::Forall))
            throw ParseError("dependency atoms are not allowed in a second-order matrix", 1, 1);
        if (g->a)
            walk(g->a);
        if (g->b)
            walk(g->b);
    };
    walk(m);
}

} // namespace

SOFormula parse_so_formula(std::string_view text, const std::string& free_relation, std::optional<int> free_arity,
                           const ParseOptions& opts)
{
    ParseOptions o = opts;
    o.allow_so = true;
    Parser p(text, o);
    Formula f = unshadow(p.parse_all());

    SOFormula out;
    out.free_relation = free_relation;

    // ∀x̄ (¬Xx̄ ∨ (Xx̄ ∧ ∃R̄ φ′))
    std::vector<std::string> guard;
    Formula g = f;
    while (g->kind == Kind::Forall) {
        guard.push_back(g->name);
        g = g->a;
    }
    if (!guard.empty() && g->kind == Kind::Or && is_x_literal(g->a, free_relation, false) && g->b->kind == Kind::And &&
        is_x_literal(g->b->a, free_relation, true) && g->b->a->left == g->a->left && g->a->left == guard &&
        g->b->b->kind == Kind::SOExists) {
        out.guard = guard;
        out.quantified = g->b->b->decls;
        out.matrix = g->b->b->a;
    } else if (f->kind == Kind::SOExists) {
        out.quantified = f->decls;
        out.matrix = f->a;
    } else {
        out.matrix = f;
    }
    check_so_matrix(out.matrix);
    try {
        out.matrix = to_nnf(out.matrix);
    } catch (const InvalidInput& e) {
        throw ParseError(e.what(), 1, 1);
    }
    for (const auto& [n, a] : out.quantified)
        if (n == free_relation)
            throw ParseError("the free relation " + free_relation + " cannot be quantified", 1, 1);

    std::optional<int> used;
    if (auto it = p.used_arities_.find(free_relation); it != p.used_arities_.end())
        used = it->second;
    if (auto it = p.arities_.find(free_relation); it != p.arities_.end())
        used = it->second;
    if (free_arity && used && *free_arity != *used)
        throw ParseError("free relation " + free_relation + " is used with arity " + std::to_string(*used) +
                             ", expected " + std::to_string(*free_arity),
                         1, 1);
    out.free_arity = free_arity ? *free_arity : used ? *used : static_cast<int>(std::max<std::size_t>(1, guard.size()));
    if (!out.guard.empty() && static_cast<int>(out.guard.size()) != out.free_arity)
        throw ParseError("guard width differs from the arity of " + free_relation, 1, 1);
    if (!out.matrix->free.empty() && out.guard.empty())
        throw ParseError("second-order formula has free first-order variables", 1, 1);
    return out;
}

std::string print_so(const SOFormula& phi)
{
    auto decls = [&] {
        std::string s = "EX ";
        for (std::size_t i = 0; i < phi.quantified.size(); ++i) {
            if (i)
                s += ", ";
            s += phi.quantified[i].first + "/" + std::to_string(phi.quantified[i].second);
        }
        return s + ". ";
    };
    std::string m = print(phi.matrix);
    bool binary = phi.matrix->kind == Kind::And || phi.matrix->kind == Kind::Or;
    std::string body = phi.quantified.empty() ? m : decls() + (binary ? "(" + m + ")" : m);
    if (phi.guard.empty())
        return body;
    std::string head;
    std::string args;
    for (std::size_t i = 0; i < phi.guard.size(); ++i) {
        head += "A " + phi.guard[i] + ". ";
        args += (i ? ", " : "") + phi.guard[i];
    }
    if (phi.quantified.empty() && binary)
        body = "(" + body + ")";
    return head + "(" + phi.free_relation + "(" + args + ") -> " + body + ")";
}

bool equal(const SOFormula& x, const SOFormula& y)
{
    return x.quantified == y.quantified && x.free_relation == y.free_relation && x.free_arity == y.free_arity &&
           x.guard == y.guard && equal(x.matrix, y.matrix);
}

} // namespace teamlogic
