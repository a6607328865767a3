#include "prtbp/format.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace prtbp {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

void write(std::string& out, const Json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(d * indent), ' ');
    };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            out += Json(it.key()).dump();
            out += indent < 0 ? ":" : ": ";
            write(out, it.value(), indent, depth + 1);
        }
        newline(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            write(out, v, indent, depth + 1);
        }
        newline(depth);
        out += ']';
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_double(v) : "null";
        return;
    }
    default:
        out += j.dump();
    }
}

void flatten(std::ostream& os, const Json& j, const std::string& path) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            flatten(os, it.value(), path.empty() ? it.key() : path + "." + it.key());
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(os, j[i], path + "." + std::to_string(i));
    } else {
        os << csv_escape(path) << ',';
        if (j.is_number_float()) {
            os << format_double(j.get<double>());
        } else if (j.is_string()) {
            os << csv_escape(j.get<std::string>());
        } else if (!j.is_null()) {
            os << j.dump();
        }
        os << '\n';
    }
}

} // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    write(out, j, indent, 0);
    return out;
}

void write_json_as_csv(std::ostream& os, const Json& j) {
    os << "key,value\n";
    flatten(os, j, "");
}

} // namespace prtbp
