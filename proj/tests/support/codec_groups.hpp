#pragma once

#include "teamlogic/constructions.hpp"

#include <algorithm>
#include <random>

namespace codec_groups {

using namespace teamlogic;

using Groups = std::vector<std::pair<std::vector<std::string>, std::vector<Tuple>>>;

// Team over the layout variables (plus extra groups) whose projections are exactly the given value lists.
inline Team assemble(const Groups& groups)
{
    std::vector<std::string> dom;
    std::size_t rows = 0;
    for (const auto& [vars, vals] : groups) {
        dom.insert(dom.end(), vars.begin(), vars.end());
        rows = std::max(rows, vals.size());
    }
    Team t(dom);
    for (std::size_t i = 0; i < rows; ++i) {
        Tuple row;
        for (const auto& [vars, vals] : groups) {
            const Tuple& v = vals[i % vals.size()];
            row.insert(row.end(), v.begin(), v.end());
        }
        t.insert(row);
    }
    return t;
}

inline Groups groups_of(const Team& team, const GameCodecLayout& layout)
{
    Groups out;
    auto add = [&](std::vector<std::string> vars) {
        auto vals = project_team(team, vars).tuples();
        out.emplace_back(vars, std::vector<Tuple>(vals.begin(), vals.end()));
    };
    auto cat = [](std::vector<std::string> a, const std::vector<std::string>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    add(layout[U]);
    add(layout[V0]);
    add(layout[V1]);
    add(cat(layout[Vs], layout[Ws]));
    add(layout[Tt]);
    add(cat(layout[Vex], layout[Wex]));
    add(cat(layout[E1], layout[E2]));
    add(layout[Uc]);
    add(cat(layout[Vc], layout[Wc]));
    add(layout[Tc]);
    add(cat(layout[Vexc], layout[Wexc]));
    add(cat(layout[E1c], layout[E2c]));
    return out;
}

// Random subteam of y that keeps every layout projection of y: a sample, plus a row for each lost value.
inline Team complete_sample(const Team& y, const GameCodecLayout& layout, std::mt19937& rng, double keep)
{
    std::bernoulli_distribution coin(keep);
    Team x(y.domain());
    for (const auto& r : y.rows())
        if (coin(rng))
            x.insert(r);
    for (const auto& [vars, vals] : groups_of(y, layout)) {
        Relation have = project_team(x, vars);
        for (const auto& v : vals) {
            if (have.contains(v))
                continue;
            for (const auto& r : y.rows()) {
                Tuple p;
                for (const auto& var : vars)
                    p.push_back(r[static_cast<std::size_t>(y.index_of(var))]);
                if (p == v) {
                    x.insert(r);
                    break;
                }
            }
        }
    }
    return x;
}

} // namespace codec_groups
