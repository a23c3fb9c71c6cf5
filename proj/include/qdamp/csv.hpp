// csv.hpp — CSV emission with reproducible 17-significant-digit floats
#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace qdamp::csv {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class Writer {
public:
    Writer(std::ostream& out, const std::string& header) : out_(out) { out_ << header << '\n'; }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

} // namespace qdamp::csv
