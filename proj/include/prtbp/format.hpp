#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace prtbp {

using Json = nlohmann::ordered_json;

/// Shortest form of 17 significant digits, locale independent ("%.17g" semantics).
std::string format_double(double v);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& s);

/// JSON writer with stable key order and 17-significant-digit numbers; non-finite numbers become null.
std::string dump_json(const Json& j, int indent = 2);

/// Flattens a JSON tree to "key,value" rows with dotted paths.
void write_json_as_csv(std::ostream& os, const Json& j);

} // namespace prtbp
