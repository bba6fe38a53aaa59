#pragma once

// Result rows and their CSV serialization.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace telefid {

inline constexpr const char* kCsvHeader =
    "resource,r,tau,nth,r2,gain,delta_opt,gamma_opt,sigma,beta_re,beta_im,method,fidelity";

struct ResultRow {
    std::string resource;
    double r = 0.0;
    double tau = 0.0;
    double nth = 0.0;
    double r2 = 0.0;
    std::optional<double> gain;
    std::optional<double> delta_opt;
    std::optional<double> gamma_opt;
    std::optional<double> sigma;
    std::optional<double> beta_re;
    std::optional<double> beta_im;
    std::string method;
    double fidelity = 0.0;

    bool operator==(const ResultRow&) const = default;
};

/// %.12g, with -0 printed as 0.
std::string format_number(double v);
std::string format_row(const ResultRow& row);

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
/// Throws IoError if the file cannot be written.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// Inverse of write_csv; throws ParameterError on malformed input.
std::vector<ResultRow> parse_csv(std::istream& is);
ResultRow parse_row(const std::string& line);

}  // namespace telefid
