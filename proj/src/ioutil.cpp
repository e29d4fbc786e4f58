#include "planpred/ioutil.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "planpred/errors.hpp"

namespace planpred {

std::string format_full(double value) {
    // Shortest of %.15g / %.16g / %.17g that parses back to the same bits.
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

std::string format_sig6(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file '" + path.string() + "'");
    std::ostringstream content;
    content << in.rdbuf();
    if (in.bad()) throw ParseError("cannot read file '" + path.string() + "'");
    return content.str();
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot write file '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw DomainError("cannot write file '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DomainError("cannot write file '" + path.string() + "'");
    }
}

}  // namespace planpred
