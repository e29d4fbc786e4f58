#include "planpred/participant_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "planpred/errors.hpp"
#include "planpred/ioutil.hpp"

namespace planpred {

namespace {

constexpr const char* kHeader = "participant_id,task_id,candidate_id,score,selected";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

int parse_bounded_int(const std::string& text, int lo, int hi, const std::string& ctx) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw ParseError(ctx + ": '" + text + "' is not an integer");
    }
    if (used != text.size()) throw ParseError(ctx + ": '" + text + "' is not an integer");
    if (value < lo || value > hi) {
        throw ParseError(ctx + ": " + text + " out of range [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    }
    return value;
}

}  // namespace

std::string serialize_participants(const std::vector<ParticipantRecord>& records) {
    std::ostringstream out;
    out << kHeader << "\n";
    for (const ParticipantRecord& record : records) {
        for (const auto& [candidate_id, score] : record.scores) {
            out << record.participant_id << ',' << record.task_id << ',' << candidate_id << ','
                << score << ',' << (candidate_id == record.selected ? 1 : 0) << "\n";
        }
    }
    return out.str();
}

std::vector<ParticipantRecord> parse_participants(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty participant CSV");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) {
        throw ParseError("line 1: expected header '" + std::string(kHeader) + "'");
    }

    std::map<std::pair<std::string, std::string>, ParticipantRecord> grouped;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string ctx = "line " + std::to_string(line_no);

        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 5) {
            throw ParseError(ctx + ": expected 5 fields, got " + std::to_string(fields.size()));
        }
        const std::string& participant_id = fields[0];
        const std::string& task_id = fields[1];
        const std::string& candidate_id = fields[2];
        if (participant_id.empty() || task_id.empty() || candidate_id.empty()) {
            throw ParseError(ctx + ": empty identifier field");
        }
        const int score = parse_bounded_int(fields[3], 1, 7, ctx + ": score");
        const int selected = parse_bounded_int(fields[4], 0, 1, ctx + ": selected");

        ParticipantRecord& record = grouped[{participant_id, task_id}];
        record.participant_id = participant_id;
        record.task_id = task_id;
        if (!record.scores.emplace(candidate_id, score).second) {
            throw ParseError(ctx + ": duplicate candidate '" + candidate_id + "' for participant '" +
                             participant_id + "' task '" + task_id + "'");
        }
        if (selected == 1) {
            if (!record.selected.empty()) {
                throw ParseError(ctx + ": multiple selected candidates for participant '" +
                                 participant_id + "' task '" + task_id + "'");
            }
            record.selected = candidate_id;
        }
    }

    std::vector<ParticipantRecord> records;
    records.reserve(grouped.size());
    for (auto& [key, record] : grouped) {
        if (record.selected.empty()) {
            throw ParseError("no selected candidate for participant '" + key.first + "' task '" +
                             key.second + "'");
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<ParticipantRecord> read_participant_csv(const std::filesystem::path& path) {
    try {
        return parse_participants(read_text(path));
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_participant_csv(const std::filesystem::path& path, const std::vector<ParticipantRecord>& records) {
    write_text_atomic(path, serialize_participants(records));
}

}  // namespace planpred
