#pragma once

#include <filesystem>
#include <vector>

#include "planpred/analysis.hpp"

namespace planpred {

// CSV with header participant_id,task_id,candidate_id,score,selected
// (one row per rated candidate; selected is 0/1 and set on exactly one row
// per participant-task pair; scores are integers 1-7).
std::string serialize_participants(const std::vector<ParticipantRecord>& records);

// Throws ParseError with the offending line number on malformed input.
// Records come back sorted by (participant_id, task_id).
std::vector<ParticipantRecord> parse_participants(const std::string& text);

std::vector<ParticipantRecord> read_participant_csv(const std::filesystem::path& path);
void write_participant_csv(const std::filesystem::path& path, const std::vector<ParticipantRecord>& records);

}  // namespace planpred
