#pragma once

#include "inpk/formula.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace inpk {

/// Syntax error with the byte offset where parsing stopped and the tokens
/// that would have been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Parses the concrete syntax
///
///     imp     := or ( "->" imp )?
///     or      := and ( ("|" | "||") and )*
///     and     := prefix ( ("&" | "&&") prefix )*
///     prefix  := ("!" | "~" | "@") prefix | postfix
///     postfix := primary ( "^*" | "^o" )*
///     primary := atom | "(" imp ")"
///
/// with atoms `[a-z][a-z0-9_]*`. `|`, `&`, `||`, `&&` associate to the left,
/// `->` to the right. Derived connectives are expanded while parsing.
Formula parse(std::string_view text);

/// Primitive-only concrete syntax; parse(render(f)) == f.
std::string render(const Formula& f);

/// Concrete syntax that folds expanded derived connectives back into ~, @,
/// |, &, ^* and ^o wherever the shape matches; parse(render_sugared(f)) == f.
/// Much shorter than render() for formulas built from derived connectives.
std::string render_sugared(const Formula& f);

}  // namespace inpk
