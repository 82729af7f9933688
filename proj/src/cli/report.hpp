#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "ebmeta/dynamics.hpp"
#include "ebmeta/model.hpp"
#include "ebmeta/predicate.hpp"

namespace ebmeta::cli
{

using Json = nlohmann::ordered_json;

std::string sha256_hex( const std::string& bytes );

Json value_json( const Value& v );
Json valuation_json( const Universe& u, const Valuation& v );
Json idents_json( const IdentSet& s );

// Text rendering, free set, and per-variable value sets when decomposable.
Json predicate_json( const Predicate& p );
Json states_json( const std::map<std::string, Predicate>& active );

Json violation_json( const Violation& v );
Json warning_json( const StepWarning& w );

} // namespace ebmeta::cli
