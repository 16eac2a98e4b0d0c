#include "teamlogic/cli.hpp"
#include "teamlogic/constructions.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/transforms.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

namespace teamlogic::cli {

namespace {

using Json = nlohmann::ordered_json;

// Parse error in a named input; the message already carries "line:column".
class InputError : public Error {
public:
    InputError(const std::string& source, const ParseError& e)
        : Error(source + ":" + e.what()), line(e.line()), column(e.column())
    {
    }
    int line;
    int column;
};

struct Options {
    std::string structure, team, formula, expr, game, target, relation, cnf, vars, anchor, output;
    std::string method = "search";
    std::string kind;
    std::string suite = "all";
    bool json = false;
    bool witness = false;
    bool expand_dependence = false;
    EvalBudget eval;
    SolveBudget solve;
    VerifyOptions verify;
};

struct Report {
    int code = Success;
    Json json = Json::object();
    std::ostringstream text;
};

template <class F>
auto load(const std::string& source, F&& parse)
{
    try {
        return parse(read_file(source));
    } catch (const ParseError& e) {
        throw InputError(source, e);
    }
}

template <class F>
auto parse_inline(const std::string& label, const std::string& text, F&& parse)
{
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError(label, e);
    }
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

std::string lower(std::string s)
{
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

Structure need_structure(const Options& o)
{
    if (o.structure.empty())
        throw InvalidInput("--structure is required");
    return load(o.structure, [](const std::string& t) { return parse_structure(t); });
}

std::string formula_text(const Options& o, std::string& label)
{
    if (!o.expr.empty()) {
        label = "<expr>";
        return o.expr;
    }
    if (o.formula.empty())
        throw InvalidInput("--formula or --expr is required");
    label = o.formula;
    return read_file(o.formula);
}

Formula need_formula(const Options& o)
{
    std::string label;
    std::string text = formula_text(o, label);
    return parse_inline(label, text, [](const std::string& t) { return parse_formula(t); });
}

SOFormula need_so(const Options& o)
{
    std::string label;
    std::string text = formula_text(o, label);
    return parse_inline(label, text, [](const std::string& t) { return parse_so_formula(t); });
}

Game need_game(const Options& o)
{
    if (o.game.empty())
        throw InvalidInput("--game is required");
    return load(o.game, [](const std::string& t) { return parse_game(t); });
}

std::vector<std::string> need_list(const std::string& text, const char* option)
{
    auto v = split_list(text);
    if (v.empty())
        throw InvalidInput(std::string(option) + " is required");
    return v;
}

// Exact names first; otherwise each name must match exactly one vertex ignoring case.
VertexSet resolve_vertices(const Game& g, const std::string& text)
{
    try {
        return parse_vertex_list(g, text);
    } catch (const ParseError&) {
    }
    std::string stripped;
    for (char c : text)
        if (c != '{' && c != '}')
            stripped += c;
    std::vector<Vertex> out;
    for (const auto& n : split_list(stripped)) {
        if (auto v = g.find(n)) {
            out.push_back(*v);
            continue;
        }
        std::vector<Vertex> hits;
        for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
            if (lower(g.name(v)) == lower(n))
                hits.push_back(v);
        if (hits.size() != 1)
            throw InvalidInput("unknown vertex " + n);
        out.push_back(hits.front());
    }
    return make_vertex_set(std::move(out));
}

Json vertex_names(const Game& g, const VertexSet& w)
{
    Json a = Json::array();
    for (Vertex v : w)
        a.push_back(g.name(v));
    return a;
}

Json team_rows(const Team& t, const Structure& st)
{
    Json rows = Json::array();
    for (const auto& r : t.rows()) {
        Json row = Json::array();
        for (Element e : r)
            row.push_back(st.name(e));
        rows.push_back(row);
    }
    return rows;
}

void emit(const Options& o, Report& r, const std::string& body)
{
    if (o.output.empty()) {
        r.text << body;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f)
        throw InvalidInput("cannot write " + o.output);
    f << body;
    r.text << "wrote " << o.output << "\n";
    r.json["output"] = o.output;
}

void cmd_eval(const Options& o, Report& r)
{
    Structure st = need_structure(o);
    if (o.team.empty())
        throw InvalidInput("--team is required");
    Team t = load(o.team, [&](const std::string& s) { return parse_team(s, st); });
    Formula f = need_formula(o);
    bool sat = eval_team(st, t, f, o.eval);
    r.code = sat ? Success : Negative;
    r.json["satisfied"] = sat;
    r.text << (sat ? "satisfied" : "not satisfied") << "\n";
    if (sat && o.witness) {
        auto lab = find_witness_labelling(st, t, f, o.eval);
        if (lab) {
            Json w = Json::object();
            for (const auto& [id, team] : *lab) {
                w[id] = team_rows(team, st);
                r.text << id << ": " << team.size() << " rows\n";
            }
            r.json["witness"] = w;
        }
    }
}

void cmd_eval_so(const Options& o, Report& r)
{
    Structure st = need_structure(o);
    SOFormula phi = need_so(o);
    Relation rel = parse_inline("--relation", o.relation,
                                [&](const std::string& s) { return parse_relation(s, st, phi.free_arity); });
    bool sat = eval_so(st, rel, phi, o.eval);
    r.code = sat ? Success : Negative;
    r.json["satisfied"] = sat;
    r.text << (sat ? "satisfied" : "not satisfied") << "\n";
}

void cmd_targets(const Options& o, Report& r)
{
    Game g = need_game(o);
    auto all = enumerate_targets(g, o.solve);
    Json list = Json::array();
    for (const auto& t : all) {
        list.push_back(vertex_names(g, t));
        r.text << format_vertex_set(g, t) << "\n";
    }
    r.json["targets"] = list;
    r.text << all.size() << " target sets\n";
}

void cmd_solve(const Options& o, Report& r)
{
    Game g = need_game(o);
    VertexSet x = resolve_vertices(g, o.target);
    for (Vertex v : x)
        if (!g.is_target(v))
            throw InvalidInput(g.name(v) + " is not a target vertex");
    std::optional<Strategy> s;
    if (o.method == "search")
        s = solve_membership(g, x, o.solve);
    else if (o.method == "bruteforce")
        s = solve_membership_bruteforce(g, x, o.solve);
    else
        s = solve_membership_polynomial(g, x);
    r.json["target"] = vertex_names(g, x);
    r.json["winning"] = s.has_value();
    if (!s) {
        r.code = Negative;
        r.text << "no winning strategy with target " << format_vertex_set(g, x) << "\n";
        return;
    }
    r.json["strategy"] = vertex_names(g, s->vertices);
    r.text << "winning strategy: " << format_vertex_set(g, s->vertices) << "\n";
}

void cmd_build_game(const Options& o, Report& r)
{
    Structure st = need_structure(o);
    Game g;
    if (o.kind == "so") {
        g = mc_game_so(st, need_so(o));
    } else if (o.kind == "myopic") {
        g = mc_game_myopic(st, need_so(o));
    } else {
        g = mc_game_exclusion(st, need_formula(o), need_list(o.vars, "--vars"));
    }
    r.json["vertices"] = g.size();
    r.json["edges"] = g.edges().size();
    r.json["targets"] = g.targets().size();
    std::string text = print_game(g);
    if (o.json && o.output.empty())
        r.json["game"] = text;
    else
        emit(o, r, text);
}

void cmd_sat2game(const Options& o, Report& r)
{
    if (o.cnf.empty())
        throw InvalidInput("--cnf is required");
    Cnf cnf = load(o.cnf, [](const std::string& t) { return parse_dimacs(t); });
    Game g = cnf_to_game(cnf);
    r.json["variables"] = cnf.variables;
    r.json["clauses"] = cnf.clauses.size();
    std::string text = print_game(g);
    if (o.json && o.output.empty())
        r.json["game"] = text;
    else
        emit(o, r, text);
}

void cmd_transform(const Options& o, Report& r)
{
    std::string result;
    CheckResult check;
    if (o.kind == "companion-so") {
        SOFormula mu = myopic_companion_so(need_so(o));
        check = check_myopic_so(mu);
        result = print_so(mu);
    } else if (o.kind == "nnf") {
        result = print(to_nnf(need_formula(o)));
    } else {
        Formula f = need_formula(o);
        auto anchor = need_list(o.anchor, "--anchor");
        if (o.kind == "companion-team") {
            CompanionOptions c;
            c.expand_dependence = o.expand_dependence;
            Formula mu = team_myopic_companion(f, anchor, c);
            check = check_x_myopic(mu, anchor);
            result = print(mu);
        } else if (o.kind == "guard") {
            result = print(guard_atoms(f, anchor));
        } else {
            result = print(unguard_atoms(f, anchor));
        }
    }
    r.json["result"] = result;
    if (!check.ok) {
        r.json["check"] = check.diagnostic;
        r.code = Negative;
    }
    emit(o, r, result + "\n");
}

void cmd_check(const Options& o, Report& r)
{
    CheckResult c;
    if (o.kind == "myopic") {
        c = check_myopic_so(need_so(o));
    } else if (o.kind == "x-myopic") {
        c = check_x_myopic(need_formula(o), need_list(o.anchor, "--anchor"));
    } else if (o.kind == "union-game") {
        c = validate_union_game(need_game(o));
    } else {
        Structure st = need_structure(o);
        auto vars = need_list(o.vars, "--vars");
        auto v = check_union_closed_empirical(st, need_formula(o), vars, o.eval);
        r.json["family_size"] = v.family_size;
        c.ok = v.closed;
        if (v.counterexample) {
            c.diagnostic = "counterexample: " + print_team(v.counterexample->first, st) + "and\n" +
                           print_team(v.counterexample->second, st);
            r.json["counterexample"] = {team_rows(v.counterexample->first, st),
                                        team_rows(v.counterexample->second, st)};
        }
    }
    r.code = c.ok ? Success : Negative;
    r.json["ok"] = c.ok;
    if (!c.ok)
        r.json["diagnostic"] = c.diagnostic;
    r.text << (c.ok ? "ok" : "failed") << "\n";
    if (!c.ok && !c.diagnostic.empty())
        r.text << c.diagnostic << "\n";
}

void cmd_verify(const Options& o, Report& r)
{
    std::vector<std::string> names;
    if (o.suite == "all") {
        for (const auto& s : verify_suites())
            names.push_back(s.name);
    } else {
        names = split_list(o.suite);
    }
    Json list = Json::array();
    int passed = 0;
    for (const auto& n : names) {
        SuiteOutcome s = run_suite(n, o.verify);
        passed += s.passed();
        r.text << (s.passed() ? "[PASS] " : "[FAIL] ") << s.info.name << ": " << s.info.theorem
               << "\n       oracle: " << s.info.oracle << "; " << s.cases << " checks, " << s.skipped
               << " skipped\n";
        for (std::size_t i = 0; i < s.failures.size() && i < 5; ++i)
            r.text << "       failure: " << s.failures[i] << "\n";
        list.push_back({{"suite", s.info.name},
                        {"theorem", s.info.theorem},
                        {"oracle", s.info.oracle},
                        {"checks", s.cases},
                        {"skipped", s.skipped},
                        {"passed", s.passed()},
                        {"failures", s.failures}});
    }
    r.text << passed << "/" << names.size() << " suites passed\n";
    r.json["seed"] = o.verify.seed;
    r.json["max_universe"] = o.verify.max_universe;
    r.json["suites"] = list;
    r.code = passed == static_cast<int>(names.size()) ? Success : Negative;
}

void add_budget(CLI::App* app, Options& o)
{
    app->add_option("--max-split-rows", o.eval.max_split_rows, "Largest team split by enumeration")
        ->capture_default_str();
    app->add_option("--max-choice-universe", o.eval.max_choice_universe, "Largest universe for choice search")
        ->capture_default_str();
    app->add_option("--max-steps", o.eval.max_steps, "Evaluation work limit")->capture_default_str();
    app->add_option("--max-team-rows", o.eval.max_team_rows, "Largest A^k when enumerating teams")
        ->capture_default_str();
    app->add_option("--max-bruteforce-vertices", o.solve.max_bruteforce_vertices,
                    "Largest game for brute-force solving")
        ->capture_default_str();
}

void add_formula(CLI::App* app, Options& o)
{
    app->add_option("-f,--formula", o.formula, "Formula file");
    app->add_option("-e,--expr", o.expr, "Formula text");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Team semantics, inclusion-exclusion games and union-closed fragments", "teamlogic"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "Print a JSON report");

    auto* eval = app.add_subcommand("eval", "Evaluate a team formula on a team");
    eval->add_option("-s,--structure", o.structure, "Structure file")->required();
    eval->add_option("-t,--team", o.team, "Team file")->required();
    add_formula(eval, o);
    eval->add_flag("--witness", o.witness, "Print a witness labelling");

    auto* eval_so = app.add_subcommand("eval-so", "Evaluate a second-order formula on a relation");
    eval_so->add_option("-s,--structure", o.structure, "Structure file")->required();
    add_formula(eval_so, o);
    eval_so->add_option("-r,--relation", o.relation, "Tuples of X, e.g. \"(a) (b)\"")->required();

    auto* targets = app.add_subcommand("targets", "List the target family of a game");
    targets->add_option("-g,--game", o.game, "Game file")->required();

    auto* solve = app.add_subcommand("solve", "Find a winning strategy with a given target set");
    solve->add_option("-g,--game", o.game, "Game file")->required();
    solve->add_option("--target", o.target, "Target vertices, e.g. \"t1, t2\"")->required();
    solve->add_option("--method", o.method, "search, bruteforce or polynomial")
        ->check(CLI::IsMember({"search", "bruteforce", "polynomial"}))
        ->capture_default_str();

    auto* build = app.add_subcommand("build-game", "Build a model-checking game");
    build->add_option("kind", o.kind, "so, myopic or exclusion")
        ->required()
        ->check(CLI::IsMember({"so", "myopic", "exclusion"}));
    build->add_option("-s,--structure", o.structure, "Structure file")->required();
    add_formula(build, o);
    build->add_option("--vars", o.vars, "Team domain for exclusion games, e.g. \"x,y\"");
    build->add_option("-o,--output", o.output, "Write the game to a file");

    auto* sat = app.add_subcommand("sat2game", "Reduce a DIMACS CNF to an inclusion-exclusion game");
    sat->add_option("--cnf", o.cnf, "DIMACS file")->required();
    sat->add_option("-o,--output", o.output, "Write the game to a file");

    auto* transform = app.add_subcommand("transform", "Rewrite a formula");
    transform->add_option("kind", o.kind, "companion-so, companion-team, guard, unguard or nnf")
        ->required()
        ->check(CLI::IsMember({"companion-so", "companion-team", "guard", "unguard", "nnf"}));
    add_formula(transform, o);
    transform->add_option("--anchor", o.anchor, "Anchor variables, e.g. \"x\"");
    transform->add_flag("--expand-dependence", o.expand_dependence, "Expand dependence atoms first");
    transform->add_option("-o,--output", o.output, "Write the result to a file");

    auto* check = app.add_subcommand("check", "Classify a formula or game");
    check->add_option("kind", o.kind, "myopic, x-myopic, union-game or union-closed")
        ->required()
        ->check(CLI::IsMember({"myopic", "x-myopic", "union-game", "union-closed"}));
    add_formula(check, o);
    check->add_option("-s,--structure", o.structure, "Structure file");
    check->add_option("-g,--game", o.game, "Game file");
    check->add_option("--anchor", o.anchor, "Anchor variables");
    check->add_option("--vars", o.vars, "Team domain");

    auto* verify = app.add_subcommand("verify", "Replay the theorem suites against brute-force oracles");
    std::vector<std::string> suite_names{"all"};
    for (const auto& s : verify_suites())
        suite_names.push_back(s.name);
    verify->add_option("--suite", o.suite, "Suite name or all")
        ->check(CLI::IsMember(suite_names))
        ->capture_default_str();
    verify->add_option("--max-universe", o.verify.max_universe, "Largest structure size")
        ->check(CLI::Range(1, 4))
        ->capture_default_str();
    verify->add_option("--seed", o.verify.seed, "Seed of the randomized suites")->capture_default_str();

    for (auto* sub : {eval, eval_so, targets, solve, build, check})
        add_budget(sub, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return Usage;
    }

    Report r;
    CLI::App* used = app.get_subcommands().front();
    r.json["command"] = used->get_name();
    if (!o.kind.empty())
        r.json["kind"] = o.kind;
    try {
        if (used == eval)
            cmd_eval(o, r);
        else if (used == eval_so)
            cmd_eval_so(o, r);
        else if (used == targets)
            cmd_targets(o, r);
        else if (used == solve)
            cmd_solve(o, r);
        else if (used == build)
            cmd_build_game(o, r);
        else if (used == sat)
            cmd_sat2game(o, r);
        else if (used == transform)
            cmd_transform(o, r);
        else if (used == check)
            cmd_check(o, r);
        else
            cmd_verify(o, r);
    } catch (const InputError& e) {
        err << "parse error: " << e.what() << "\n";
        return Usage;
    } catch (const ResourceError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return Budget;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return Usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    }
    r.json["exit"] = r.code;
    if (o.json)
        out << r.json.dump(2) << "\n";
    else
        out << r.text.str();
    return r.code;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"teamlogic"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace teamlogic::cli
