#include "udense/jsonout.hpp"

#include <cstdio>

namespace udense {

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump_value(std::string& out, const nlohmann::ordered_json& j) {
    using value_t = nlohmann::ordered_json::value_t;
    switch (j.type()) {
        case value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                append_escaped(out, it.key());
                out += ':';
                dump_value(out, it.value());
            }
            out += '}';
            break;
        }
        case value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                dump_value(out, v);
            }
            out += ']';
            break;
        }
        case value_t::string:
            append_escaped(out, j.get<std::string>());
            break;
        case value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            break;
        case value_t::number_integer:
            out += std::to_string(j.get<std::int64_t>());
            break;
        case value_t::number_unsigned:
            out += std::to_string(j.get<std::uint64_t>());
            break;
        case value_t::number_float: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6f", j.get<double>());
            out += buf;
            break;
        }
        default:
            out += "null";
    }
}

}  // namespace

std::string dump_fixed(const nlohmann::ordered_json& j) {
    std::string out;
    dump_value(out, j);
    out += '\n';
    return out;
}

}  // namespace udense
