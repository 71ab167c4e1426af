#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qdot/cli.hpp"
#include "qdot/errors.hpp"

namespace qdot::cli {

std::string format_full(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string format_2dp(double x)
{
    if (!std::isfinite(x)) {
        return format_full(x);
    }
    const double rounded = std::round(x * 100.0) / 100.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", rounded == 0.0 ? 0.0 : rounded);
    return buf;
}

std::string format_short(double x)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<DotParams> parse_cells(const std::string& text, double s)
{
    std::vector<DotParams> cells;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ';')) {
        if (item.empty()) {
            continue;
        }
        std::istringstream fields(item);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(fields, part, ':')) {
            parts.push_back(part);
        }
        if (parts.size() != 4) {
            throw DomainError("cell '" + item + "' is not of the form m:v:a:b");
        }
        DotParams p;
        try {
            std::size_t used = 0;
            p.m = std::stoi(parts[0], &used);
            if (used != parts[0].size()) {
                throw std::invalid_argument("m");
            }
            p.v = std::stod(parts[1]);
            p.a = std::stod(parts[2]);
            p.b = std::stod(parts[3]);
        } catch (const std::logic_error&) {
            throw DomainError("cell '" + item + "' has a non-numeric field");
        }
        p.s = s;
        p.validate();
        cells.push_back(p);
    }
    if (cells.empty()) {
        throw DomainError("no cells given");
    }
    return cells;
}

std::vector<DotParams> default_oracle_cells(double s)
{
    // both angular indices, both depths, zero and strong field, one blank cell
    std::vector<DotParams> cells{
        {1, 100, 2, 5},  {1, 50, 1, 0},   {1, 50, 2, 2.5},   {1, 100, 1, 4},    {1, 50, 1, 4},
        {-2, 50, 2, 4.5}, {-2, 100, 2, 5}, {-2, 50, 1, 1.5}, {-2, 100, 1, 0.5}, {-2, 100, 2, 6},
    };
    for (auto& c : cells) {
        c.s = s;
    }
    return cells;
}

}  // namespace qdot::cli
