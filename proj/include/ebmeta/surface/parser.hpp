#pragma once

#include <string>
#include <string_view>

#include "ebmeta/surface/ast.hpp"

namespace ebmeta::surface
{

// Parses and name-checks a `.ebm` model. Throws SourceError with code
// SyntaxError, NameError or KindError.
SourceModel parse( std::string_view text );

// A single expression over existing declarations. With `state_only`, primed
// names and parameters are rejected as in invariants; otherwise they are
// accepted as in actions.
Expr parse_expression( std::string_view text, const std::vector<Declaration>& decls, bool state_only = false );

// Canonical ASCII rendering; parse(print(m)) is the same model.
std::string print( const SourceModel& m );
std::string print( const Expr& e );

} // namespace ebmeta::surface
