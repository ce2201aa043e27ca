#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmgsc/geometry.hpp"

namespace mmgsc {

enum class RangeKind { Squares, Halfplanes };

inline const char* kind_name(RangeKind k) { return k == RangeKind::Squares ? "squares" : "halfplanes"; }

inline std::optional<RangeKind> kind_from_name(const std::string& s) {
    if (s == "squares") return RangeKind::Squares;
    if (s == "halfplanes") return RangeKind::Halfplanes;
    return std::nullopt;
}

// An instance (S, S', ranges). Only the range list matching `kind` is used;
// ids equal list positions.
struct InstanceDoc {
    RangeKind kind = RangeKind::Squares;
    std::vector<Point> s;
    std::vector<Point> sprime;
    std::vector<UnitSquare> squares;
    std::vector<Halfplane> halfplanes;
    std::optional<std::uint64_t> seed;
    nlohmann::json metadata = nlohmann::json::object();

    std::size_t range_count() const { return kind == RangeKind::Squares ? squares.size() : halfplanes.size(); }

    friend bool operator==(const InstanceDoc&, const InstanceDoc&) = default;
};

}  // namespace mmgsc
