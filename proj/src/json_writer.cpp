#include "logdecay/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace logdecay {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string render_scalar(const ordered_json& j) {
    if (j.is_number_float()) {
        const double d = j.get<double>();
        if (!std::isfinite(d)) return "null";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        return buf;
    }
    return j.dump();  // null, bool, integer, string (with escaping)
}

// Arrays whose elements are all scalars (or short scalar arrays) render on a
// single line when they fit; everything else goes multiline.
bool try_inline(const ordered_json& j, std::string& out) {
    if (j.is_object()) return false;
    if (!j.is_array()) {
        out = render_scalar(j);
        return true;
    }
    std::string s = "[";
    bool first = true;
    for (const auto& el : j) {
        std::string piece;
        if (!try_inline(el, piece)) return false;
        if (!first) s += ", ";
        s += piece;
        first = false;
    }
    s += "]";
    if (s.size() > 100) return false;
    out = std::move(s);
    return true;
}

void write_value(std::string& out, const ordered_json& j, int depth) {
    const std::string pad(static_cast<size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<size_t>(depth + 1) * 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad_in;
            out += ordered_json(it.key()).dump();
            out += ": ";
            write_value(out, it.value(), depth + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        std::string inline_form;
        if (try_inline(j, inline_form)) {
            out += inline_form;
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& el : j) {
            if (!first) out += ",\n";
            first = false;
            out += pad_in;
            write_value(out, el, depth + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    out += render_scalar(j);
}

}  // namespace

std::string deterministic_json(const ordered_json& j) {
    std::string out;
    write_value(out, j, 0);
    out += "\n";
    return out;
}

}  // namespace logdecay
