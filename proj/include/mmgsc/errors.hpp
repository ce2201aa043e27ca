#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmgsc {

using RangeId = std::size_t;

// A point of S that no range in the instance contains. The index refers to
// the point list handed to the throwing function.
class Uncoverable : public std::runtime_error {
public:
    explicit Uncoverable(std::size_t point_index)
        : std::runtime_error("point " + std::to_string(point_index) + " is not covered by any range"),
          point_index_(point_index) {}

    std::size_t point_index() const noexcept { return point_index_; }

private:
    std::size_t point_index_;
};

class SquareWithoutCorner : public std::runtime_error {
public:
    explicit SquareWithoutCorner(RangeId id)
        : std::runtime_error("square " + std::to_string(id) + " intersects the cell but contains none of its corners"),
          id_(id) {}

    RangeId id() const noexcept { return id_; }

private:
    RangeId id_;
};

class AnchorOnLine : public std::runtime_error {
public:
    explicit AnchorOnLine(RangeId id)
        : std::runtime_error("anchor lies on the boundary line of halfplane " + std::to_string(id)),
          id_(id) {}

    RangeId id() const noexcept { return id_; }

private:
    RangeId id_;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structured error for instance documents: `field` is a JSON path such as
// "ranges[3].a", `line` is 1-based (0 when the error is not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, std::size_t line, const std::string& message)
        : std::runtime_error(format(field, line, message)), field_(std::move(field)), line_(line), message_(message) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    static std::string format(const std::string& field, std::size_t line, const std::string& message) {
        std::string out = "parse error";
        if (line != 0) out += " at line " + std::to_string(line);
        if (!field.empty()) out += " in " + field;
        return out + ": " + message;
    }

    std::string field_;
    std::size_t line_;
    std::string message_;
};

}  // namespace mmgsc
