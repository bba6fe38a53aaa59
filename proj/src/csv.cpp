#include "telefid/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "telefid/types.hpp"

namespace telefid {

namespace {

std::string format_optional(const std::optional<double>& v)
{
    return v ? format_number(*v) : std::string();
}

double parse_number(const std::string& field)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &used);
    } catch (const std::exception&) {
        throw ParameterError("malformed CSV number '" + field + "'");
    }
    if (used != field.size()) throw ParameterError("malformed CSV number '" + field + "'");
    return v;
}

std::optional<double> parse_optional(const std::string& field)
{
    if (field.empty()) return std::nullopt;
    return parse_number(field);
}

}  // namespace

std::string format_number(double v)
{
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_row(const ResultRow& row)
{
    std::string s = row.resource;
    for (const std::string& f :
         {format_number(row.r), format_number(row.tau), format_number(row.nth), format_number(row.r2),
          format_optional(row.gain), format_optional(row.delta_opt), format_optional(row.gamma_opt),
          format_optional(row.sigma), format_optional(row.beta_re), format_optional(row.beta_im)}) {
        s += ',';
        s += f;
    }
    s += ',';
    s += row.method;
    s += ',';
    s += format_number(row.fidelity);
    return s;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows)
{
    os << kCsvHeader << '\n';
    for (const auto& row : rows) os << format_row(row) << '\n';
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, rows);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

ResultRow parse_row(const std::string& line)
{
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    f.push_back(cur);
    if (f.size() != 13) throw ParameterError("CSV row has " + std::to_string(f.size()) + " fields, expected 13");
    ResultRow row;
    row.resource = f[0];
    row.r = parse_number(f[1]);
    row.tau = parse_number(f[2]);
    row.nth = parse_number(f[3]);
    row.r2 = parse_number(f[4]);
    row.gain = parse_optional(f[5]);
    row.delta_opt = parse_optional(f[6]);
    row.gamma_opt = parse_optional(f[7]);
    row.sigma = parse_optional(f[8]);
    row.beta_re = parse_optional(f[9]);
    row.beta_im = parse_optional(f[10]);
    row.method = f[11];
    row.fidelity = parse_number(f[12]);
    return row;
}

std::vector<ResultRow> parse_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw ParameterError("missing or unexpected CSV header");
    std::vector<ResultRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        rows.push_back(parse_row(line));
    }
    return rows;
}

}  // namespace telefid
