#include "teamlogic/core.hpp"

#include <cctype>
#include <sstream>

namespace teamlogic {

namespace {

bool is_element_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '+' || c == '-';
}

struct Line {
    int number;
    std::string text;
};

std::vector<Line> content_lines(std::string_view text)
{
    std::vector<Line> out;
    int n = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++n;
        std::string line(text.substr(pos, end - pos));
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c)))
                blank = false;
        if (!blank)
            out.push_back({n, line});
        pos = end + 1;
    }
    return out;
}

// Reads "(a,b) (c,d)" starting at col; names are resolved by the caller.
std::vector<std::vector<std::string>> read_tuples(const std::string& s, std::size_t col, int line)
{
    std::vector<std::vector<std::string>> out;
    std::size_t i = col;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    };
    auto fail = [&](const std::string& msg) { throw ParseError(msg, line, static_cast<int>(i) + 1); };
    while (true) {
        skip();
        if (i >= s.size())
            break;
        if (s[i] != '(')
            fail("expected '('");
        ++i;
        std::vector<std::string> tup;
        while (true) {
            skip();
            std::size_t start = i;
            while (i < s.size() && is_element_char(s[i]))
                ++i;
            if (start == i)
                fail("expected element name");
            tup.push_back(s.substr(start, i - start));
            skip();
            if (i < s.size() && s[i] == ',') {
                ++i;
                continue;
            }
            if (i < s.size() && s[i] == ')') {
                ++i;
                break;
            }
            fail("expected ',' or ')'");
        }
        out.push_back(std::move(tup));
    }
    return out;
}

std::vector<std::string> read_words(const std::string& s, std::size_t col, int line)
{
    std::vector<std::string> out;
    std::size_t i = col;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        std::string w = s.substr(start, i - start);
        for (char c : w)
            if (!is_element_char(c))
                throw ParseError("invalid character in name '" + w + "'", line, static_cast<int>(start) + 1);
        out.push_back(w);
    }
    return out;
}

Tuple resolve(const std::vector<std::string>& names, const Structure& st, int line)
{
    Tuple t;
    for (const auto& n : names) {
        auto e = st.find_element(n);
        if (!e)
            throw ParseError("unknown element " + n, line, 1);
        t.push_back(*e);
    }
    return t;
}

} // namespace

Structure parse_structure(std::string_view text)
{
    auto lines = content_lines(text);
    if (lines.empty())
        throw ParseError("missing 'universe:' line", 1, 1);
    const auto& first = lines.front();
    std::size_t colon = first.text.find(':');
    std::string head = first.text.substr(0, colon == std::string::npos ? 0 : colon);
    while (!head.empty() && std::isspace(static_cast<unsigned char>(head.front())))
        head.erase(head.begin());
    while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back())))
        head.pop_back();
    if (colon == std::string::npos || head != "universe")
        throw ParseError("first line must be 'universe: ...'", first.number, 1);
    auto elems = read_words(first.text, colon + 1, first.number);
    if (elems.empty())
        throw ParseError("universe must be non-empty", first.number, static_cast<int>(colon) + 2);
    Structure st(elems);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& L = lines[li];
        std::size_t c = L.text.find(':');
        if (c == std::string::npos)
            throw ParseError("expected 'NAME: tuples'", L.number, 1);
        std::string name = L.text.substr(0, c);
        std::string clean;
        for (char ch : name)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                clean += ch;
        int declared = 0;
        if (auto slash = clean.find('/'); slash != std::string::npos) {
            try {
                declared = std::stoi(clean.substr(slash + 1));
            } catch (const std::exception&) {
                throw ParseError("bad arity in '" + clean + "'", L.number, 1);
            }
            clean.erase(slash);
        }
        if (clean.empty() || !(std::isalpha(static_cast<unsigned char>(clean[0])) || clean[0] == '_'))
            throw ParseError("bad relation name '" + clean + "'", L.number, 1);
        if (st.relation(clean))
            throw ParseError("relation " + clean + " declared twice", L.number, 1);
        auto tuples = read_tuples(L.text, c + 1, L.number);
        int arity = declared;
        if (arity == 0) {
            if (tuples.empty())
                throw ParseError("cannot infer the arity of empty relation " + clean + " (write " + clean + "/k:)",
                                 L.number, 1);
            arity = static_cast<int>(tuples.front().size());
        }
        if (arity < 1)
            throw ParseError("arity must be positive", L.number, 1);
        Relation rel(arity);
        for (const auto& tn : tuples) {
            if (static_cast<int>(tn.size()) != arity)
                throw ParseError("tuple arity mismatch in relation " + clean, L.number, 1);
            rel.insert(resolve(tn, st, L.number));
        }
        st.set_relation(clean, std::move(rel));
    }
    return st;
}

std::string print_tuple(const Tuple& t, const Structure& st)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ",";
        s += st.name(t[i]);
    }
    return s + ")";
}

std::string print_relation(const Relation& rel, const Structure& st)
{
    std::string s;
    for (const auto& t : rel.tuples()) {
        if (!s.empty())
            s += " ";
        s += print_tuple(t, st);
    }
    return s;
}

std::string print_structure(const Structure& st)
{
    std::ostringstream out;
    out << "universe:";
    for (const auto& e : st.universe())
        out << " " << e;
    out << "\n";
    for (const auto& [name, rel] : st.relations()) {
        out << name;
        if (rel.empty())
            out << "/" << rel.arity();
        out << ":";
        if (!rel.empty())
            out << " " << print_relation(rel, st);
        out << "\n";
    }
    return out.str();
}

Team parse_team(std::string_view text, const Structure& st)
{
    auto lines = content_lines(text);
    if (lines.empty())
        throw ParseError("missing 'vars:' line", 1, 1);
    const auto& first = lines.front();
    std::size_t colon = first.text.find(':');
    std::string head;
    for (char ch : first.text.substr(0, colon == std::string::npos ? 0 : colon))
        if (!std::isspace(static_cast<unsigned char>(ch)))
            head += ch;
    if (colon == std::string::npos || head != "vars")
        throw ParseError("first line must be 'vars: ...'", first.number, 1);
    auto vars = read_words(first.text, colon + 1, first.number);
    for (const auto& v : vars)
        if (!(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
            throw ParseError("bad variable name '" + v + "'", first.number, 1);
    Team team;
    try {
        team = Team(vars);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), first.number, 1);
    }
    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto words = read_words(lines[li].text, 0, lines[li].number);
        if (words.size() != vars.size())
            throw ParseError("row has " + std::to_string(words.size()) + " values, expected " +
                                 std::to_string(vars.size()),
                             lines[li].number, 1);
        team.insert(resolve(words, st, lines[li].number));
    }
    return team;
}

std::string print_team(const Team& team, const Structure& st)
{
    std::ostringstream out;
    out << "vars:";
    for (const auto& v : team.domain())
        out << " " << v;
    out << "\n";
    for (const auto& row : team.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? " " : "") << st.name(row[i]);
        out << "\n";
    }
    return out.str();
}

Relation parse_relation(std::string_view text, const Structure& st, int arity)
{
    Relation rel(arity);
    for (const auto& L : content_lines(text)) {
        for (const auto& tn : read_tuples(L.text, 0, L.number)) {
            if (static_cast<int>(tn.size()) != arity)
                throw ParseError("tuple arity mismatch (expected " + std::to_string(arity) + ")", L.number, 1);
            rel.insert(resolve(tn, st, L.number));
        }
    }
    return rel;
}

} // namespace teamlogic
