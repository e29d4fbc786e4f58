#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "planpred/complexity.hpp"
#include "planpred/inference.hpp"

namespace planpred {

// Optional bookkeeping block stored alongside a task. The id doubles as the
// join key for participant data; when absent it defaults to the file stem.
struct TaskMetadata {
    std::optional<std::string> id;
    std::optional<ComplexitySignature> signature;
    std::optional<std::uint64_t> seed;
    std::optional<int> attempts;
    std::optional<std::string> true_goal_id;
};

struct TaskFileContents {
    TaskEntry entry;
    TaskMetadata metadata;
};

// JSON layout: schema_version, grid{width,height,agent_start,parts[]},
// observation{path[]}, candidates[], optional metadata{}.
// Serialization is byte-stable: fixed key order, two-space indent.
std::string serialize_task(const Task& task, const TaskMetadata& metadata);

// Parses serialized task text. fallback_id is used when metadata carries no
// id (callers pass the file stem). Throws ParseError naming the bad field.
TaskFileContents parse_task(const std::string& text, const std::string& fallback_id);

TaskFileContents read_task_file(const std::filesystem::path& path);
void write_task_file(const std::filesystem::path& path, const Task& task, const TaskMetadata& metadata);

// All *.json files in the directory, sorted by filename so task order is
// stable. Throws ParseError when the directory is missing or empty.
std::vector<TaskEntry> load_task_dir(const std::filesystem::path& dir);

}  // namespace planpred
