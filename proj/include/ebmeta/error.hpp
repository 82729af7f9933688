#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ebmeta/ident.hpp"

namespace ebmeta
{

enum class ErrorCode
{
    CaptureError,
    DomainMismatch,
    NonInjective,
    KindError,
    UnknownIdent,
    DuplicateMachine,
    DuplicateEvent,
    StaticViolation,
    UnknownMachine,
    UnknownEvent,
    InitViolation,
    InactiveMachine,
    NonParamPredicate,
    GuardNotEntailed,
    EmptySuccessor,
    NotActive,
    AlreadyActive,
    TransparencyViolation,
    CrossBlockInvariant,
    CrossBlockEvent,
    OverlappingVars,
    InvalidPlan,
    SyntaxError,
    NameError,
    TypeError,
    DomainTooLarge,
    ScriptError,
    InvalidArgument,
};

std::string_view to_string( ErrorCode code );

struct SourceLocation
{
    int line = 0;
    int column = 0;

    auto operator<=>( const SourceLocation& ) const = default;
};

class Error : public std::runtime_error
{
    ErrorCode _code;

public:
    Error( ErrorCode code, const std::string& message )
            : std::runtime_error{ message }, _code{ code }
    {
    }

    [[nodiscard]] ErrorCode code() const { return _code; }
};

// Errors that come with a concrete state demonstrating the problem.
class WitnessError : public Error
{
    Valuation _witness;

public:
    WitnessError( ErrorCode code, const std::string& message, Valuation witness )
            : Error{ code, message }, _witness{ std::move( witness ) }
    {
    }

    [[nodiscard]] const Valuation& witness() const { return _witness; }
};

class SourceError : public Error
{
    SourceLocation _where;

public:
    SourceError( ErrorCode code, const std::string& message, SourceLocation where )
            : Error{ code, message }, _where{ where }
    {
    }

    [[nodiscard]] SourceLocation where() const { return _where; }
};

} // namespace ebmeta
