#pragma once

#include <cstdio>
#include <filesystem>
#include <string>

namespace planpred {

// Shortest decimal that round-trips the double exactly; used in CSV output
// so pipelines stay lossless.
std::string format_full(double value);

// Six significant digits for human-facing tables.
std::string format_sig6(double value);

// Whole file as a string. Throws ParseError when unreadable.
std::string read_text(const std::filesystem::path& path);

// Writes via a temp file in the same directory plus rename, so readers
// never observe a half-written file. Throws DomainError on failure.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace planpred
