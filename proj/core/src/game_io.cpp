#include "teamlogic/games.hpp"

#include <cctype>
#include <sstream>

namespace teamlogic {

namespace {

bool bare_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '+' || c == '-' || c == '.' || c == '~' ||
           c == '\'';
}

std::string quote(const std::string& name)
{
    if (!name.empty() && std::all_of(name.begin(), name.end(), bare_char))
        return name;
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

// Tokens of one line: names (bare or quoted) and the punctuation ( , ).
struct LineLexer {
    std::string_view s;
    std::size_t pos = 0;
    int line;
    int col0;

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg, line, col0 + static_cast<int>(pos) + 1);
    }
    void skip()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool done()
    {
        skip();
        return pos >= s.size();
    }
    bool accept(char c)
    {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    std::string name()
    {
        skip();
        if (pos >= s.size())
            fail("expected a vertex name");
        if (s[pos] == '"') {
            std::string out;
            ++pos;
            while (pos < s.size() && s[pos] != '"') {
                if (s[pos] == '\\' && pos + 1 < s.size())
                    ++pos;
                out += s[pos++];
            }
            if (pos >= s.size())
                fail("unterminated quoted name");
            ++pos;
            if (out.empty())
                fail("empty vertex name");
            return out;
        }
        std::size_t start = pos;
        while (pos < s.size() && bare_char(s[pos]))
            ++pos;
        if (pos == start)
            fail(std::string("unexpected character '") + s[pos] + "'");
        return std::string(s.substr(start, pos - start));
    }
};

std::string_view strip_comment(std::string_view line)
{
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '\\' && quoted) {
            ++i;
            continue;
        }
        if (line[i] == '"')
            quoted = !quoted;
        if (line[i] == '#' && !quoted)
            return line.substr(0, i);
    }
    return line;
}

} // namespace

Game parse_game(std::string_view text)
{
    struct Pending {
        std::string key;
        LineLexer lex;
    };
    std::vector<Pending> lines;
    std::set<std::string> seen;
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++lineno;
        std::string_view line = strip_comment(text.substr(start, end - start));
        start = end + 1;
        std::size_t colon = line.find(':');
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos)
            continue;
        if (colon == std::string_view::npos)
            throw ParseError("expected 'KEY: ...'", lineno, static_cast<int>(first) + 1);
        std::string key(line.substr(first, colon - first));
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
            key.pop_back();
        if (key != "V0" && key != "V1" && key != "E" && key != "I" && key != "T" && key != "Eex")
            throw ParseError("unknown section '" + key + "'", lineno, static_cast<int>(first) + 1);
        if (!seen.insert(key).second)
            throw ParseError("duplicate section '" + key + "'", lineno, static_cast<int>(first) + 1);
        lines.push_back({key, LineLexer{line.substr(colon + 1), 0, lineno, static_cast<int>(colon) + 1}});
    }
    Game g;
    for (const char* owner_key : {"V0", "V1"})
        for (auto& p : lines)
            if (p.key == owner_key)
                while (!p.lex.done()) {
                    auto at = p.lex.pos;
                    std::string n = p.lex.name();
                    if (g.find(n)) {
                        p.lex.pos = at;
                        p.lex.fail("vertex " + n + " declared twice");
                    }
                    g.add_vertex(n, owner_key[1] == '0' ? 0 : 1);
                }
    auto vertex = [&](LineLexer& lex) {
        auto at = lex.pos;
        std::string n = lex.name();
        auto v = g.find(n);
        if (!v) {
            lex.pos = at;
            lex.fail("unknown vertex " + n);
        }
        return *v;
    };
    for (auto& p : lines) {
        if (p.key == "E" || p.key == "Eex") {
            while (!p.lex.done()) {
                p.lex.expect('(');
                Vertex a = vertex(p.lex);
                p.lex.expect(',');
                Vertex b = vertex(p.lex);
                p.lex.expect(')');
                if (p.key == "E")
                    g.add_edge(a, b);
                else
                    g.add_exclusion(a, b);
            }
        } else if (p.key == "I" || p.key == "T") {
            while (!p.lex.done()) {
                Vertex v = vertex(p.lex);
                if (p.key == "I")
                    g.add_initial(v);
                else
                    g.add_target(v);
            }
        }
    }
    return g;
}

std::string print_game(const Game& g)
{
    std::ostringstream out;
    for (int owner : {0, 1}) {
        out << "V" << owner << ":";
        for (std::size_t v = 0; v < g.size(); ++v)
            if (g.owner(static_cast<Vertex>(v)) == owner)
                out << " " << quote(g.name(static_cast<Vertex>(v)));
        out << "\n";
    }
    auto pairs = [&](const char* key, const std::set<std::pair<Vertex, Vertex>>& s) {
        out << key << ":";
        for (auto [a, b] : s)
            out << " (" << quote(g.name(a)) << "," << quote(g.name(b)) << ")";
        out << "\n";
    };
    pairs("E", g.edges());
    out << "I:";
    for (Vertex v : g.initial())
        out << " " << quote(g.name(v));
    out << "\nT:";
    for (Vertex v : g.targets())
        out << " " << quote(g.name(v));
    out << "\n";
    pairs("Eex", g.exclusions());
    return out.str();
}

std::string format_vertex_set(const Game& g, const VertexSet& w)
{
    std::string out = "{";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ", ";
        out += quote(g.name(w[i]));
    }
    return out + "}";
}

VertexSet parse_vertex_list(const Game& g, std::string_view text)
{
    LineLexer lex{text, 0, 1, 0};
    std::vector<Vertex> out;
    bool braces = lex.accept('{');
    while (!lex.done()) {
        if (braces && lex.accept('}'))
            break;
        auto at = lex.pos;
        std::string n = lex.name();
        auto v = g.find(n);
        if (!v) {
            lex.pos = at;
            lex.fail("unknown vertex " + n);
        }
        out.push_back(*v);
        lex.accept(',');
    }
    if (!lex.done())
        lex.fail("trailing input after vertex list");
    return make_vertex_set(std::move(out));
}

} // namespace teamlogic
