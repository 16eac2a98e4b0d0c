#include "teamlogic/transforms.hpp"

namespace teamlogic {

namespace {

Formula r1(const char* name, const std::string& x)
{
    return rel(name, {x});
}

Formula r2(const char* name, const std::string& x, const std::string& y)
{
    return rel(name, {x, y});
}

// ψ_win(y) with bound variables z, zp.
Formula psi_win_on(const std::string& y)
{
    Formula init = forall("z", arrow(r1("I", "z"), inc({"z"}, {y})));
    Formula choice = conj(r1("V0", y), exists("zp", conj(r2("E", y, "zp"), inc({"zp"}, {"z"}))));
    Formula all = conj(r1("V1", y), forall("zp", arrow(r2("E", y, "zp"), inc({"zp"}, {"z"}))));
    Formula move = exists("z", conj(disj(choice, all), inc({"z"}, {y})));
    Formula excl = forall("z", arrow(disj(r2("Eex", y, "z"), r2("Eex", "z", y)), exc({y}, {"z"})));
    return conj(init, conj(move, excl));
}

} // namespace

Formula template_phi_win()
{
    Formula moves = disj(conj(r1("V0", "v"), exists("w", conj(r2("E", "v", "w"), r1("W", "w")))),
                         conj(r1("V1", "v"), forall("w", arrow(r2("E", "v", "w"), r1("W", "w")))));
    Formula c1 = forall("v", arrow(r1("W", "v"), moves));
    Formula c2 = forall("v", arrow(r1("I", "v"), r1("W", "v")));
    Formula c3 = forall(std::vector<std::string>{"v", "w"},
                        arrow(conj(r1("W", "v"), r1("W", "w")), rel("Eex", {"v", "w"}, false)));
    return conj(c1, conj(c2, c3));
}

Formula template_psi_win()
{
    return psi_win_on("y");
}

Formula template_psi_target()
{
    Formula win = rename_bound_apart(psi_win_on("y"), {"z"});
    Formula body = conj(win, conj(inc({"z"}, {"y"}), arrow(r1("T", "y"), inc({"y"}, {"z"}))));
    return conj(r1("T", "z"), exists("y", body));
}

Formula template_theta_target()
{
    Formula target = rename_bound_apart(template_psi_target(), {"x", "xp"});
    Formula guarded = guard_atoms(rename_free(target, {{"z", "xp"}}), {"x"});
    Formula zeta = conj(inc({"x", "x"}, {"x", "xp"}), guarded);
    return exists("xp", conj(inc({"xp"}, {"x"}), zeta));
}

} // namespace teamlogic
