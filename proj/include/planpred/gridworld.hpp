#pragma once

#include <string>
#include <vector>

namespace planpred {

// Cell coordinates: x = column, y = row. Valid cells satisfy
// 0 <= x < width and 0 <= y < height of the grid they belong to.
struct Position {
    int x = 0;
    int y = 0;

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

// Part types in fixed collection-priority order. An agent always picks up
// required part types in ascending priority: square first, circle last.
enum class PartType { Square = 0, Triangle = 1, SmallRectangle = 2, Circle = 3 };

inline constexpr int kPartTypeCount = 4;

// Collection priority rank, 0..3.
int priority(PartType type);

// Token forms used by the task file format: "square", "triangle",
// "small_rectangle", "circle".
std::string to_token(PartType type);

// Parses a part-type token; throws ParseError on unknown tokens.
PartType part_type_from_token(const std::string& token);

// A concrete part placed on the grid. Ids are unique per grid; no two
// parts share a cell.
struct PartInstance {
    std::string id;
    PartType type = PartType::Square;
    std::string color;
    Position pos;

    friend bool operator==(const PartInstance&, const PartInstance&) = default;
};

// The world: an open rectangular room with parts and a fixed agent start.
// The start cell never holds a part.
struct Grid {
    int width = 0;
    int height = 0;
    Position agent_start;
    std::vector<PartInstance> parts;

    bool in_bounds(Position p) const {
        return p.x >= 0 && p.x < width && p.y >= 0 && p.y < height;
    }

    // Returns the part occupying the cell, or nullptr.
    const PartInstance* part_at(Position p) const;

    // Returns the part with the given id, or nullptr.
    const PartInstance* part_by_id(const std::string& id) const;

    friend bool operator==(const Grid&, const Grid&) = default;
};

// An agent path: consecutive cells are 4-adjacent, first cell is the path
// origin (the agent start for observations).
struct Path {
    std::vector<Position> cells;

    // Step count, i.e. cells.size() - 1 for a non-empty path.
    int length() const { return cells.empty() ? 0 : static_cast<int>(cells.size()) - 1; }

    friend bool operator==(const Path&, const Path&) = default;
};

// Taxicab distance; the shortest route length between two cells on an
// obstacle-free 4-connected grid.
int manhattan_distance(Position a, Position b);

// Total shortest-route length from start through the waypoints in order.
int route_cost(Position start, const std::vector<Position>& waypoints);

// Structural checks for a grid: bounds, one part per cell, unique ids,
// empty start cell. Returns human-readable violations; empty means ok.
std::vector<std::string> validate_grid(const Grid& grid);

// Checks a path against a grid: non-empty, starts at agent_start, stays in
// bounds, and every step is 4-adjacent.
std::vector<std::string> validate_path(const Grid& grid, const Path& path);

// Parts picked up along a path, ordered by first visit. Entering a part's
// cell collects it; revisits contribute nothing.
std::vector<PartInstance> collected_along(const Grid& grid, const Path& path);

}  // namespace planpred
