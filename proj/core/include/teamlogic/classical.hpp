#pragma once

#include "teamlogic/formulas.hpp"

#include <cstdint>

namespace teamlogic {

// Dense truth table of a relation: index of (a1..ak) is a1*m^(k-1) + ... + ak.
// Entries are 0 (false), 1 (true) or 2 (unknown, only for partially chosen relations).
using RelationTable = std::vector<std::uint8_t>;

RelationTable relation_table(const Relation& rel, std::size_t universe_size);

// A first-order formula compiled against a structure. Relation symbols listed in `params`
// are supplied per evaluation instead of being read from the structure.
class CompiledFormula {
public:
    CompiledFormula(const Structure& structure, const Formula& f, const std::vector<std::string>& inputs,
                    const std::vector<std::pair<std::string, int>>& params = {});

    void set_param(std::size_t i, const RelationTable* table) { params_.at(i) = table; }
    std::size_t param_size(std::size_t i) const { return param_sizes_.at(i); }

    bool eval(const Element* inputs) const;
    // Kleene evaluation: 0 false, 1 true, 2 unknown.
    int eval3(const Element* inputs) const;

private:
    struct CNode {
        Kind kind;
        bool positive = true;
        int rel = -1;
        bool param = false;
        std::vector<int> slots;
        int a = -1;
        int b = -1;
        int var = -1;
    };
    std::size_t m_;
    std::vector<CNode> nodes_;
    int root_ = -1;
    std::size_t n_inputs_ = 0;
    std::size_t n_slots_ = 0;
    std::vector<RelationTable> tables_;
    std::vector<const RelationTable*> params_;
    std::vector<std::size_t> param_sizes_;

    int compile(const Formula& f, std::map<std::string, int>& scope, const Structure& st,
                const std::vector<std::pair<std::string, int>>& params, std::map<std::string, int>& rel_index);
    std::size_t code(const CNode& n, const std::vector<Element>& env) const;
    bool ev(int i, std::vector<Element>& env) const;
    int ev3(int i, std::vector<Element>& env) const;
};

} // namespace teamlogic
