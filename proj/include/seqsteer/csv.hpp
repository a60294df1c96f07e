#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqsteer::csv {

// Numeric cells carry 12 significant digits.
std::string format(double value);

double parse_double(const std::string& cell);

struct Document {
    std::vector<std::string> comments;  // '#' lines, in order, without the marker
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Reads comma-separated content with '#' comment lines; the first
// non-comment line is the header.
Document read(std::istream& in);

std::string join_row(const std::vector<std::string>& cells);

}  // namespace seqsteer::csv
