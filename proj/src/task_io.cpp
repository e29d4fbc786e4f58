#include "planpred/task_io.hpp"

#include <algorithm>

#include <json.hpp>

#include "planpred/errors.hpp"
#include "planpred/ioutil.hpp"

namespace planpred {

namespace {

using ordered_json = nlohmann::ordered_json;

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& ctx) {
    if (!obj.is_object()) throw ParseError(ctx + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(ctx + ": missing field '" + key + "'");
    return *it;
}

int as_int(const ordered_json& j, const std::string& ctx) {
    if (!j.is_number_integer()) throw ParseError(ctx + ": expected an integer");
    return j.get<int>();
}

std::string as_string(const ordered_json& j, const std::string& ctx) {
    if (!j.is_string()) throw ParseError(ctx + ": expected a string");
    return j.get<std::string>();
}

const ordered_json& as_array(const ordered_json& j, const std::string& ctx) {
    if (!j.is_array()) throw ParseError(ctx + ": expected an array");
    return j;
}

Position parse_position(const ordered_json& j, const std::string& ctx) {
    return {as_int(require(j, "x", ctx), ctx + ".x"), as_int(require(j, "y", ctx), ctx + ".y")};
}

ordered_json position_json(const Position& pos) {
    ordered_json j;
    j["x"] = pos.x;
    j["y"] = pos.y;
    return j;
}

}  // namespace

std::string serialize_task(const Task& task, const TaskMetadata& metadata) {
    ordered_json doc;
    doc["schema_version"] = 1;

    ordered_json grid;
    grid["width"] = task.grid.width;
    grid["height"] = task.grid.height;
    grid["agent_start"] = position_json(task.grid.agent_start);
    grid["parts"] = ordered_json::array();
    for (const PartInstance& part : task.grid.parts) {
        ordered_json p;
        p["id"] = part.id;
        p["type"] = to_token(part.type);
        p["color"] = part.color;
        p["x"] = part.pos.x;
        p["y"] = part.pos.y;
        grid["parts"].push_back(std::move(p));
    }
    doc["grid"] = std::move(grid);

    ordered_json observation;
    observation["path"] = ordered_json::array();
    for (const Position& cell : task.observation.path.cells) {
        observation["path"].push_back(position_json(cell));
    }
    doc["observation"] = std::move(observation);

    doc["candidates"] = ordered_json::array();
    for (const GoalProduct& goal : task.candidates) {
        ordered_json c;
        c["id"] = goal.id;
        c["required"] = ordered_json::array();
        for (const auto& [type, color] : goal.required) {
            ordered_json slot;
            slot["type"] = to_token(type);
            slot["color"] = color;
            c["required"].push_back(std::move(slot));
        }
        doc["candidates"].push_back(std::move(c));
    }

    ordered_json meta;
    if (metadata.id) meta["id"] = *metadata.id;
    if (metadata.signature) {
        ordered_json sig;
        sig["k"] = metadata.signature->k;
        sig["n"] = metadata.signature->n;
        sig["c"] = metadata.signature->c;
        meta["signature"] = std::move(sig);
    }
    if (metadata.seed) meta["seed"] = *metadata.seed;
    if (metadata.attempts) meta["attempts"] = *metadata.attempts;
    if (metadata.true_goal_id) meta["true_goal_id"] = *metadata.true_goal_id;
    if (!meta.empty()) doc["metadata"] = std::move(meta);

    return doc.dump(2) + "\n";
}

TaskFileContents parse_task(const std::string& text, const std::string& fallback_id) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }

    const int version = as_int(require(doc, "schema_version", "task"), "schema_version");
    if (version != 1) throw ParseError("unsupported schema_version " + std::to_string(version));

    TaskFileContents contents;
    Task& task = contents.entry.task;

    const ordered_json& grid = require(doc, "grid", "task");
    task.grid.width = as_int(require(grid, "width", "grid"), "grid.width");
    task.grid.height = as_int(require(grid, "height", "grid"), "grid.height");
    task.grid.agent_start = parse_position(require(grid, "agent_start", "grid"), "grid.agent_start");
    std::size_t part_index = 0;
    for (const ordered_json& p : as_array(require(grid, "parts", "grid"), "grid.parts")) {
        const std::string ctx = "grid.parts[" + std::to_string(part_index++) + "]";
        PartInstance part;
        part.id = as_string(require(p, "id", ctx), ctx + ".id");
        part.type = part_type_from_token(as_string(require(p, "type", ctx), ctx + ".type"));
        part.color = as_string(require(p, "color", ctx), ctx + ".color");
        part.pos = {as_int(require(p, "x", ctx), ctx + ".x"), as_int(require(p, "y", ctx), ctx + ".y")};
        task.grid.parts.push_back(std::move(part));
    }

    Path path;
    std::size_t cell_index = 0;
    const ordered_json& observation = require(doc, "observation", "task");
    for (const ordered_json& cell : as_array(require(observation, "path", "observation"), "observation.path")) {
        path.cells.push_back(parse_position(cell, "observation.path[" + std::to_string(cell_index++) + "]"));
    }
    task.observation = make_observation(task.grid, path);

    std::size_t candidate_index = 0;
    for (const ordered_json& c : as_array(require(doc, "candidates", "task"), "candidates")) {
        const std::string ctx = "candidates[" + std::to_string(candidate_index++) + "]";
        GoalProduct goal;
        goal.id = as_string(require(c, "id", ctx), ctx + ".id");
        std::size_t slot_index = 0;
        for (const ordered_json& slot : as_array(require(c, "required", ctx), ctx + ".required")) {
            const std::string slot_ctx = ctx + ".required[" + std::to_string(slot_index++) + "]";
            goal.required.emplace_back(
                part_type_from_token(as_string(require(slot, "type", slot_ctx), slot_ctx + ".type")),
                as_string(require(slot, "color", slot_ctx), slot_ctx + ".color"));
        }
        normalize_goal(goal);  // canonical slot order; violations surface in validation
        task.candidates.push_back(std::move(goal));
    }

    if (doc.contains("metadata")) {
        const ordered_json& meta = doc["metadata"];
        if (!meta.is_object()) throw ParseError("metadata: expected an object");
        if (meta.contains("id")) contents.metadata.id = as_string(meta["id"], "metadata.id");
        if (meta.contains("signature")) {
            const ordered_json& sig = meta["signature"];
            ComplexitySignature signature;
            signature.k = as_int(require(sig, "k", "metadata.signature"), "metadata.signature.k");
            signature.n = as_int(require(sig, "n", "metadata.signature"), "metadata.signature.n");
            signature.c = as_int(require(sig, "c", "metadata.signature"), "metadata.signature.c");
            contents.metadata.signature = signature;
        }
        if (meta.contains("seed")) {
            if (!meta["seed"].is_number_unsigned() && !meta["seed"].is_number_integer()) {
                throw ParseError("metadata.seed: expected an integer");
            }
            contents.metadata.seed = meta["seed"].get<std::uint64_t>();
        }
        if (meta.contains("attempts")) {
            contents.metadata.attempts = as_int(meta["attempts"], "metadata.attempts");
        }
        if (meta.contains("true_goal_id")) {
            contents.metadata.true_goal_id = as_string(meta["true_goal_id"], "metadata.true_goal_id");
        }
    }

    contents.entry.id = contents.metadata.id.value_or(fallback_id);
    return contents;
}

TaskFileContents read_task_file(const std::filesystem::path& path) {
    try {
        return parse_task(read_text(path), path.stem().string());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_task_file(const std::filesystem::path& path, const Task& task, const TaskMetadata& metadata) {
    write_text_atomic(path, serialize_task(task, metadata));
}

std::vector<TaskEntry> load_task_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw ParseError("task directory '" + dir.string() + "' does not exist");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) throw ParseError("no task files (*.json) in '" + dir.string() + "'");
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });

    std::vector<TaskEntry> tasks;
    tasks.reserve(files.size());
    for (const auto& file : files) tasks.push_back(read_task_file(file).entry);
    return tasks;
}

}  // namespace planpred
