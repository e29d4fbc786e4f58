#include "planpred/complexity.hpp"

#include <set>

#include "planpred/errors.hpp"

namespace planpred {

ComplexitySignature complexity_signature(const Task& task) {
    if (task.candidates.empty()) throw DomainError("no goal candidates");

    const std::size_t k = task.candidates.front().required.size();
    for (const GoalProduct& goal : task.candidates) {
        if (goal.required.size() != k) throw DomainError("heterogeneous candidates");
    }

    std::set<PartType> collected;
    for (const PartInstance& part : task.observation.collected) collected.insert(part.type);

    std::set<PartType> open;  // required somewhere, not collected yet
    for (const GoalProduct& goal : task.candidates) {
        for (const auto& [type, color] : goal.required) {
            if (!collected.count(type)) open.insert(type);
        }
    }
    if (open.empty()) throw DomainError("no uncollected required types");

    int c = 0;
    for (PartType type : open) {
        std::set<std::string> colors;
        for (const PartInstance& part : task.grid.parts) {
            if (part.type == type) colors.insert(part.color);
        }
        c = std::max(c, static_cast<int>(colors.size()));
    }

    ComplexitySignature signature;
    signature.k = static_cast<int>(k);
    signature.n = static_cast<int>(collected.size());
    signature.c = c;
    return signature;
}

}  // namespace planpred
