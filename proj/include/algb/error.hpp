#pragma once

#include <stdexcept>
#include <string>

namespace algb {

// Base for all engine errors. `code` is a stable machine-readable tag used by
// the CLI to pick exit codes and by tests to match error paths.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Syntax error in the polynomial grammar; `pos` is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(std::size_t pos, const std::string& what)
        : Error("parse", what + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

inline Error ring_mismatch(const std::string& where) {
    return Error("ring-mismatch", "ring mismatch in " + where);
}

}  // namespace algb
