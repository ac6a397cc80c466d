#include "mowst/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "mowst/error.hpp"

namespace mowst::csv {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == sep) {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path, char sep) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::DataError, "cannot open file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        rows.push_back(split(line, sep));
    }
    return rows;
}

std::string cell(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

double parse_double(const std::string& s, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || (end && *end != '\0') || errno == ERANGE)
        throw Error(ErrorKind::ParseError, "expected a number at " + context + ", got '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || (end && *end != '\0') || errno == ERANGE)
        throw Error(ErrorKind::ParseError, "expected an integer at " + context + ", got '" + s + "'");
    return v;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::DataError, "cannot write file: " + path);
    out << contents;
}

} // namespace mowst::csv
