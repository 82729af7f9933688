#include "ebmeta/universe.hpp"

#include <algorithm>

namespace ebmeta
{

std::string Value::str() const
{
    switch ( kind )
    {
    case Kind::Bool: return number ? "TRUE" : "FALSE";
    case Kind::Int: return std::to_string( number );
    case Kind::Symbol: return symbol;
    }
    return "?";
}

Domain::Domain( Value::Kind kind, std::vector<Value> values )
        : _kind{ kind }, _values{ std::move( values ) }
{
    if ( _values.empty() )
        throw Error{ ErrorCode::InvalidArgument, "domains must be non-empty" };
}

Domain Domain::boolean()
{
    return Domain{ Value::Kind::Bool, { Value::boolean( false ), Value::boolean( true ) } };
}

Domain Domain::range( std::int64_t low, std::int64_t high )
{
    if ( low > high )
        throw Error{ ErrorCode::InvalidArgument,
                     "empty range " + std::to_string( low ) + ".." + std::to_string( high ) };
    std::vector<Value> values;
    for ( auto n = low; n <= high; ++n )
        values.push_back( Value::integer( n ) );
    return Domain{ Value::Kind::Int, std::move( values ) };
}

Domain Domain::enumeration( const std::vector<std::string>& symbols )
{
    std::vector<Value> values;
    for ( const auto& s : symbols )
    {
        auto v = Value::enumerated( s );
        if ( std::find( values.begin(), values.end(), v ) != values.end() )
            throw Error{ ErrorCode::InvalidArgument, "duplicate enumeration symbol '" + s + "'" };
        values.push_back( std::move( v ) );
    }
    return Domain{ Value::Kind::Symbol, std::move( values ) };
}

std::optional<std::uint32_t> Domain::index_of( const Value& v ) const
{
    auto it = std::find( _values.begin(), _values.end(), v );
    if ( it == _values.end() )
        return std::nullopt;
    return static_cast<std::uint32_t>( it - _values.begin() );
}

void Universe::declare_var( const std::string& name, Domain domain )
{
    if ( !_entries.emplace( name, Entry{ IdentKind::Var, std::move( domain ) } ).second )
        throw Error{ ErrorCode::NameError, "'" + name + "' is declared twice" };
}

void Universe::declare_param( const std::string& name, Domain domain )
{
    if ( !_entries.emplace( name, Entry{ IdentKind::Param, std::move( domain ) } ).second )
        throw Error{ ErrorCode::NameError, "'" + name + "' is declared twice" };
}

bool Universe::knows( const Ident& i ) const
{
    auto it = _entries.find( i.base );
    if ( it == _entries.end() )
        return false;
    if ( i.is_param() )
        return it->second.role == IdentKind::Param;
    return it->second.role == IdentKind::Var;
}

const Domain& Universe::domain_of( const Ident& i ) const
{
    auto it = _entries.find( i.base );
    if ( it == _entries.end() )
        throw Error{ ErrorCode::UnknownIdent, "'" + i.str() + "' is not declared" };
    const auto expected = i.is_param() ? IdentKind::Param : IdentKind::Var;
    if ( it->second.role != expected )
        throw Error{ ErrorCode::KindError,
                     "'" + i.str() + "' is used as a " + to_string( i.kind ) + " but declared as a "
                             + to_string( it->second.role ) };
    return it->second.domain;
}

IdentSet Universe::vars() const
{
    IdentSet out;
    for ( const auto& [name, e] : _entries )
        if ( e.role == IdentKind::Var )
            out.insert( Ident::var( name ) );
    return out;
}

IdentSet Universe::params() const
{
    IdentSet out;
    for ( const auto& [name, e] : _entries )
        if ( e.role == IdentKind::Param )
            out.insert( Ident::param( name ) );
    return out;
}

std::optional<Ident> Universe::lookup( const std::string& name ) const
{
    auto it = _entries.find( name );
    if ( it == _entries.end() )
        return std::nullopt;
    return Ident{ name, it->second.role };
}

std::string to_string( const Universe& u, const Valuation& v )
{
    std::string out;
    for ( const auto& [ident, index] : v )
    {
        if ( !out.empty() )
            out += ", ";
        out += ident.str() + "=" + u.domain_of( ident ).at( index ).str();
    }
    return out;
}

} // namespace ebmeta
