#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyspan {

// Malformed carrier/arrow/graph/span text. `position` is a 0-based character
// offset for expression syntax, or a 1-based line number for file formats.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// An arrow body whose domain/codomain do not line up.
class TypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed input that violates a precondition (negative weight, bad source,
// width mismatch, size cap exceeded, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace polyspan
