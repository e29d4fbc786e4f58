#include "planpred/gridworld.hpp"

#include <cstdlib>
#include <set>
#include <unordered_set>

#include "planpred/errors.hpp"

namespace planpred {

int priority(PartType type) { return static_cast<int>(type); }

std::string to_token(PartType type) {
    switch (type) {
        case PartType::Square: return "square";
        case PartType::Triangle: return "triangle";
        case PartType::SmallRectangle: return "small_rectangle";
        case PartType::Circle: return "circle";
    }
    return "unknown";
}

PartType part_type_from_token(const std::string& token) {
    if (token == "square") return PartType::Square;
    if (token == "triangle") return PartType::Triangle;
    if (token == "small_rectangle") return PartType::SmallRectangle;
    if (token == "circle") return PartType::Circle;
    throw ParseError("unknown part type token: '" + token + "'");
}

const PartInstance* Grid::part_at(Position p) const {
    for (const auto& part : parts) {
        if (part.pos == p) return &part;
    }
    return nullptr;
}

const PartInstance* Grid::part_by_id(const std::string& id) const {
    for (const auto& part : parts) {
        if (part.id == id) return &part;
    }
    return nullptr;
}

int manhattan_distance(Position a, Position b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

int route_cost(Position start, const std::vector<Position>& waypoints) {
    int total = 0;
    Position at = start;
    for (const auto& w : waypoints) {
        total += manhattan_distance(at, w);
        at = w;
    }
    return total;
}

namespace {

std::string cell_str(Position p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

}  // namespace

std::vector<std::string> validate_grid(const Grid& grid) {
    std::vector<std::string> violations;
    if (grid.width <= 0 || grid.height <= 0) {
        violations.push_back("non-positive grid dimensions " + std::to_string(grid.width) + "x" +
                             std::to_string(grid.height));
        return violations;
    }
    if (!grid.in_bounds(grid.agent_start)) {
        violations.push_back("agent start out of bounds " + cell_str(grid.agent_start));
    }
    std::set<Position> seen_cells;
    std::unordered_set<std::string> seen_ids;
    for (const auto& part : grid.parts) {
        if (!grid.in_bounds(part.pos)) {
            violations.push_back("part '" + part.id + "' out of bounds " + cell_str(part.pos));
        }
        if (!seen_cells.insert(part.pos).second) {
            violations.push_back("duplicate part cell " + cell_str(part.pos));
        }
        if (!seen_ids.insert(part.id).second) {
            violations.push_back("duplicate part id '" + part.id + "'");
        }
        if (part.pos == grid.agent_start) {
            violations.push_back("part '" + part.id + "' on agent start cell " + cell_str(part.pos));
        }
    }
    return violations;
}

std::vector<std::string> validate_path(const Grid& grid, const Path& path) {
    std::vector<std::string> violations;
    if (path.cells.empty()) {
        violations.push_back("empty path");
        return violations;
    }
    if (path.cells.front() != grid.agent_start) {
        violations.push_back("wrong start " + cell_str(path.cells.front()) + ", agent start is " +
                             cell_str(grid.agent_start));
    }
    for (std::size_t i = 0; i < path.cells.size(); ++i) {
        if (!grid.in_bounds(path.cells[i])) {
            violations.push_back("cell out of bounds " + cell_str(path.cells[i]));
        }
        if (i > 0 && manhattan_distance(path.cells[i - 1], path.cells[i]) != 1) {
            violations.push_back("non-adjacent step " + cell_str(path.cells[i - 1]) + " -> " +
                                 cell_str(path.cells[i]));
        }
    }
    return violations;
}

std::vector<PartInstance> collected_along(const Grid& grid, const Path& path) {
    std::vector<PartInstance> collected;
    std::unordered_set<std::string> taken;
    for (const auto& cell : path.cells) {
        const PartInstance* part = grid.part_at(cell);
        if (part != nullptr && taken.insert(part->id).second) {
            collected.push_back(*part);
        }
    }
    return collected;
}

}  // namespace planpred
