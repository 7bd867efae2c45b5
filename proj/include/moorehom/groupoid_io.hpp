#ifndef MOOREHOM_GROUPOID_IO_HPP
#define MOOREHOM_GROUPOID_IO_HPP

#include <stdexcept>
#include <string>

#include "moorehom/groupoid.hpp"

namespace moore {

/// Bad groupoid file or preset string; the message names the line or field.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// `{"arrows": k, "units": [...], "source": [...], "range": [...],
///   "inverse": [...], "compose": [[i, j, k], ...]}`
std::string groupoid_to_json(const FiniteGroupoid& G);
/// Parses and validates; FormatError for syntax/shape problems, GroupoidError
/// for axiom violations.
FiniteGroupoid groupoid_from_json(const std::string& text);

FiniteGroupoid read_groupoid_file(const std::string& path);
void write_groupoid_file(const FiniteGroupoid& G, const std::string& path);

/// `units:k`, `cyclic:m`, `pair:k`, `action:m:p0,p1,...`, `union:a.json,b.json`
/// (union operands may themselves be presets).
FiniteGroupoid make_preset(const std::string& preset);

}  // namespace moore

#endif  // MOOREHOM_GROUPOID_IO_HPP
