#include "seqsteer/csv.hpp"

#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace seqsteer::csv {

std::string format(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

double parse_double(const std::string& cell) {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument("not a number: '" + cell + "'");
    return v;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

Document read(std::istream& in) {
    Document doc;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::size_t start = 1;
            while (start < line.size() && line[start] == ' ') ++start;
            doc.comments.push_back(line.substr(start));
            continue;
        }
        if (!have_header) {
            doc.header = split_row(line);
            have_header = true;
        } else {
            doc.rows.push_back(split_row(line));
        }
    }
    return doc;
}

std::string join_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out;
}

}  // namespace seqsteer::csv
