#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mero/bounds.hpp"

namespace mero::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "mero.result/1";

Json complex_json(cplx z);
Json certificate_json(const ErrorCertificate& c);

// RFC 4180 field quoting
std::string csv_field(const std::string& s);
std::string csv_number(double x);

// "3", "1..5" or "1,2,4"
std::vector<int> parse_int_list(const std::string& s);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mero::cli
