#ifndef ULPA_PARSE_HPP
#define ULPA_PARSE_HPP

#include "ulpa/leavitt.hpp"
#include "ulpa/ring.hpp"
#include "ulpa/ultragraph.hpp"

#include <string>
#include <string_view>

namespace ulpa {

// `ultragraph { vertices: v, w; edge e: v -> {v, w}; }`, with `#` comments.
// Throws ParseError with a 1-based location, then any validation error.
RawUltragraph parse_ultragraph_raw(std::string_view text);
Ultragraph parse_ultragraph_dsl(std::string_view text);
std::string print_ultragraph_dsl(const Ultragraph& g);

// Scalars, p({v,w}), p(v), s(e), s*(e), infix + - *, unary minus and parentheses.
// Names are resolved against g and scalars normalized in the ring.
ExprPtr parse_element_expr(const Ultragraph& g, std::string_view text, const Ring& ring = Ring::rationals());
std::string print_expr(const Ultragraph& g, const Expr& expr);

}  // namespace ulpa

#endif  // ULPA_PARSE_HPP
