#pragma once

// JSON instance documents. Schema:
//
//   {
//     "kind": "squares" | "halfplanes",
//     "S":      [[x, y], ...],
//     "Sprime": [[x, y], ...],
//     "ranges": squares:    [{"id": 0, "tr": [x, y]}, ...]
//               halfplanes: [{"id": 0, "a": 1, "b": -2, "c": 3}, ...],
//     "seed": 7,          (optional)
//     "metadata": {...}   (optional)
//   }
//
// Coordinates are exact rationals, written as strings ("3", "-1/3", "0.125")
// or JSON integers. Binary floats are rejected. Range ids follow file order;
// an explicit "id" must equal the position.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mmgsc/errors.hpp"
#include "mmgsc/instance.hpp"

namespace mmgsc {

using json = nlohmann::json;

namespace io_detail {

inline std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

inline json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is one past the offending character.
        throw ParseError("", line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
}

inline Scalar scalar_at(const json& v, const std::string& field) {
    if (v.is_number_integer()) {
        return v.is_number_unsigned() ? Scalar(mpz_class(std::to_string(v.get<std::uint64_t>())))
                                      : Scalar(mpz_class(std::to_string(v.get<std::int64_t>())));
    }
    if (v.is_number_float()) throw ParseError(field, 0, "binary floats are not accepted; write the value as a string");
    if (!v.is_string()) throw ParseError(field, 0, "expected a rational string or an integer");
    auto s = try_parse_scalar(v.get<std::string>());
    if (!s) throw ParseError(field, 0, "not a rational number: '" + v.get<std::string>() + "'");
    return *s;
}

inline std::int64_t int_at(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ParseError(field, 0, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw ParseError(field, 0, "integer out of range");
    }
    return v.get<std::int64_t>();
}

inline Point point_at(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 2) throw ParseError(field, 0, "expected a pair [x, y]");
    return {scalar_at(v[0], field + "[0]"), scalar_at(v[1], field + "[1]")};
}

inline std::vector<Point> points_at(const json& doc, const char* key) {
    std::vector<Point> out;
    if (!doc.contains(key)) return out;
    const json& arr = doc.at(key);
    if (!arr.is_array()) throw ParseError(key, 0, "expected an array of points");
    for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(point_at(arr[k], std::string(key) + "[" + std::to_string(k) + "]"));
    return out;
}

inline void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& field) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ParseError(field.empty() ? key : field + "." + key, 0, "unknown field");
        }
    }
}

// Line on which each value starts, keyed by path ("ranges[3].a"). Only run
// on text that already parsed.
class LineLocator {
public:
    explicit LineLocator(std::string_view text) : t_(text) { value(""); }

    std::size_t line(const std::string& path) const {
        auto it = lines_.find(path);
        return it == lines_.end() ? 0 : it->second;
    }

private:
    void ws() {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) {
            if (t_[i_] == '\n') ++line_;
            ++i_;
        }
    }

    std::string str() {
        std::string s;
        for (++i_; i_ < t_.size() && t_[i_] != '"'; ++i_) {
            if (t_[i_] == '\\') s += t_[i_++];
            s += t_[i_];
        }
        ++i_;
        return s;
    }

    void value(const std::string& path) {
        ws();
        if (i_ >= t_.size()) return;
        lines_.emplace(path, line_);
        const char c = t_[i_];
        if (c == '{' || c == '[') {
            ++i_;
            for (std::size_t k = 0;; ++k) {
                ws();
                if (t_[i_] == '}' || t_[i_] == ']') break;
                if (c == '{') {
                    const std::string key = str();
                    ws();
                    ++i_;  // ':'
                    value(path.empty() ? key : path + "." + key);
                } else {
                    value(path + "[" + std::to_string(k) + "]");
                }
                ws();
                if (t_[i_] == ',') ++i_;
            }
            ++i_;
        } else if (c == '"') {
            str();
        } else {
            while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[i_])) && t_[i_] != ',' && t_[i_] != '}' &&
                   t_[i_] != ']') {
                ++i_;
            }
        }
    }

    std::string_view t_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::map<std::string, std::size_t> lines_;
};

inline json point_json(const Point& p) { return json::array({to_string(p.x), to_string(p.y)}); }

}  // namespace io_detail

inline InstanceDoc instance_from_json(const json& doc) {
    using namespace io_detail;
    if (!doc.is_object()) throw ParseError("", 0, "instance must be a JSON object");
    check_keys(doc, {"kind", "S", "Sprime", "ranges", "seed", "metadata"}, "");
    if (!doc.contains("kind") || !doc.at("kind").is_string()) throw ParseError("kind", 0, "missing or not a string");
    InstanceDoc out;
    const auto kind = kind_from_name(doc.at("kind").get<std::string>());
    if (!kind) throw ParseError("kind", 0, "expected 'squares' or 'halfplanes'");
    out.kind = *kind;
    out.s = points_at(doc, "S");
    out.sprime = points_at(doc, "Sprime");
    if (doc.contains("ranges")) {
        const json& arr = doc.at("ranges");
        if (!arr.is_array()) throw ParseError("ranges", 0, "expected an array");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string field = "ranges[" + std::to_string(k) + "]";
            const json& r = arr[k];
            if (!r.is_object()) throw ParseError(field, 0, "expected an object");
            if (r.contains("id") && (!r.at("id").is_number_unsigned() || r.at("id").get<std::uint64_t>() != k)) {
                throw ParseError(field + ".id", 0, "id must equal the position " + std::to_string(k));
            }
            if (out.kind == RangeKind::Squares) {
                check_keys(r, {"id", "tr"}, field);
                if (!r.contains("tr")) throw ParseError(field + ".tr", 0, "missing");
                out.squares.push_back({k, point_at(r.at("tr"), field + ".tr")});
            } else {
                check_keys(r, {"id", "a", "b", "c"}, field);
                for (const char* key : {"a", "b", "c"}) {
                    if (!r.contains(key)) throw ParseError(field + "." + key, 0, "missing");
                }
                Halfplane h{k, int_at(r.at("a"), field + ".a"), int_at(r.at("b"), field + ".b"), int_at(r.at("c"), field + ".c")};
                if (h.a == 0 && h.b == 0) throw ParseError(field, 0, "halfplane " + std::to_string(k) + " has normal (0, 0)");
                out.halfplanes.push_back(h);
            }
        }
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) throw ParseError("seed", 0, "expected a nonnegative integer");
        out.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("metadata")) {
        if (!doc.at("metadata").is_object()) throw ParseError("metadata", 0, "expected an object");
        out.metadata = doc.at("metadata");
    }
    return out;
}

inline InstanceDoc parse_instance(std::string_view text) {
    const json doc = io_detail::parse_json(text);
    try {
        return instance_from_json(doc);
    } catch (const ParseError& e) {
        if (e.line() != 0) throw;
        throw ParseError(e.field(), io_detail::LineLocator(text).line(e.field()), e.message());
    }
}

inline json instance_to_json(const InstanceDoc& d) {
    using namespace io_detail;
    json doc = json::object();
    doc["kind"] = kind_name(d.kind);
    doc["S"] = json::array();
    for (const auto& p : d.s) doc["S"].push_back(point_json(p));
    doc["Sprime"] = json::array();
    for (const auto& p : d.sprime) doc["Sprime"].push_back(point_json(p));
    doc["ranges"] = json::array();
    if (d.kind == RangeKind::Squares) {
        for (const auto& q : d.squares) doc["ranges"].push_back({{"id", q.id}, {"tr", point_json(q.tr)}});
    } else {
        for (const auto& h : d.halfplanes) doc["ranges"].push_back({{"id", h.id}, {"a", h.a}, {"b", h.b}, {"c", h.c}});
    }
    if (d.seed) doc["seed"] = *d.seed;
    if (!d.metadata.empty()) doc["metadata"] = d.metadata;
    return doc;
}

// Canonical text: keys sorted, two-space indent, trailing newline.
inline std::string serialize_instance(const InstanceDoc& d) { return instance_to_json(d).dump(2) + "\n"; }

// Cover ids from a run report, a {"cover": [...]} object or a bare array.
inline std::vector<RangeId> parse_cover(std::string_view text) {
    const json doc = io_detail::parse_json(text);
    const json* arr = &doc;
    if (doc.is_object()) {
        if (!doc.contains("cover")) throw ParseError("cover", 0, "missing");
        arr = &doc.at("cover");
    }
    if (!arr->is_array()) throw ParseError("cover", 0, "expected an array of range ids");
    std::vector<RangeId> ids;
    for (std::size_t k = 0; k < arr->size(); ++k) {
        if (!(*arr)[k].is_number_unsigned()) throw ParseError("cover[" + std::to_string(k) + "]", 0, "expected a range id");
        ids.push_back((*arr)[k].get<std::uint64_t>());
    }
    return ids;
}

}  // namespace mmgsc
