#include "ebmeta/ident.hpp"

#include "ebmeta/error.hpp"

namespace ebmeta
{

std::string Ident::str() const
{
    return kind == IdentKind::Prime ? base + "'" : base;
}

Ident prime( const Ident& v )
{
    if ( !v.is_var() )
        throw Error{ ErrorCode::KindError, "cannot prime " + to_string( v.kind ) + " '" + v.str() + "'" };
    return Ident::primed( v.base );
}

Ident unprime( const Ident& v )
{
    if ( !v.is_prime() )
        throw Error{ ErrorCode::KindError, "cannot unprime " + to_string( v.kind ) + " '" + v.str() + "'" };
    return Ident::var( v.base );
}

IdentSet prime_set( const IdentSet& vars )
{
    IdentSet out;
    for ( const auto& v : vars )
        out.insert( prime( v ) );
    return out;
}

IdentSet unprime_set( const IdentSet& primes )
{
    IdentSet out;
    for ( const auto& v : primes )
        out.insert( unprime( v ) );
    return out;
}

std::string to_string( IdentKind kind )
{
    switch ( kind )
    {
    case IdentKind::Var: return "variable";
    case IdentKind::Prime: return "primed variable";
    case IdentKind::Param: return "parameter";
    }
    return "?";
}

std::string to_string( const IdentSet& idents )
{
    std::string out = "{";
    bool first = true;
    for ( const auto& i : idents )
    {
        if ( !first )
            out += ", ";
        first = false;
        out += i.str();
    }
    return out + "}";
}

std::string_view to_string( ErrorCode code )
{
    switch ( code )
    {
    case ErrorCode::CaptureError: return "CaptureError";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NonInjective: return "NonInjective";
    case ErrorCode::KindError: return "KindError";
    case ErrorCode::UnknownIdent: return "UnknownIdent";
    case ErrorCode::DuplicateMachine: return "DuplicateMachine";
    case ErrorCode::DuplicateEvent: return "DuplicateEvent";
    case ErrorCode::StaticViolation: return "StaticViolation";
    case ErrorCode::UnknownMachine: return "UnknownMachine";
    case ErrorCode::UnknownEvent: return "UnknownEvent";
    case ErrorCode::InitViolation: return "InitViolation";
    case ErrorCode::InactiveMachine: return "InactiveMachine";
    case ErrorCode::NonParamPredicate: return "NonParamPredicate";
    case ErrorCode::GuardNotEntailed: return "GuardNotEntailed";
    case ErrorCode::EmptySuccessor: return "EmptySuccessor";
    case ErrorCode::NotActive: return "NotActive";
    case ErrorCode::AlreadyActive: return "AlreadyActive";
    case ErrorCode::TransparencyViolation: return "TransparencyViolation";
    case ErrorCode::CrossBlockInvariant: return "CrossBlockInvariant";
    case ErrorCode::CrossBlockEvent: return "CrossBlockEvent";
    case ErrorCode::OverlappingVars: return "OverlappingVars";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::NameError: return "NameError";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::ScriptError: return "ScriptError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace ebmeta
