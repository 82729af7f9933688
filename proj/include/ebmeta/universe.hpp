#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ebmeta/error.hpp"
#include "ebmeta/ident.hpp"

namespace ebmeta
{

struct Value
{
    enum class Kind : std::uint8_t
    {
        Bool,
        Int,
        Symbol,
    };

    Kind kind = Kind::Int;
    std::int64_t number = 0; // bool: 0/1
    std::string symbol;

    static Value boolean( bool b ) { return { Kind::Bool, b ? 1 : 0, {} }; }
    static Value integer( std::int64_t n ) { return { Kind::Int, n, {} }; }
    static Value enumerated( std::string s ) { return { Kind::Symbol, 0, std::move( s ) }; }

    // Source spelling; booleans print as TRUE/FALSE.
    [[nodiscard]] std::string str() const;

    auto operator<=>( const Value& ) const = default;
};

// A finite, non-empty, ordered set of values of a single kind. The
// declaration order is the canonical order used everywhere else.
class Domain
{
    Value::Kind _kind = Value::Kind::Bool;
    std::vector<Value> _values;

    Domain( Value::Kind kind, std::vector<Value> values );

public:
    static Domain boolean();
    static Domain range( std::int64_t low, std::int64_t high );
    static Domain enumeration( const std::vector<std::string>& symbols );

    [[nodiscard]] Value::Kind kind() const { return _kind; }
    [[nodiscard]] std::uint32_t size() const { return static_cast<std::uint32_t>( _values.size() ); }
    [[nodiscard]] const Value& at( std::uint32_t index ) const { return _values.at( index ); }
    [[nodiscard]] const std::vector<Value>& values() const { return _values; }
    [[nodiscard]] std::optional<std::uint32_t> index_of( const Value& v ) const;

    bool operator==( const Domain& ) const = default;
};

// Maps every base name to its role (Var or Param) and its domain. A Var's
// prime shares the Var's domain; base names are unique across roles.
class Universe
{
public:
    struct Entry
    {
        IdentKind role;
        Domain domain;
    };

private:
    std::map<std::string, Entry> _entries;

public:
    void declare_var( const std::string& name, Domain domain );
    void declare_param( const std::string& name, Domain domain );

    [[nodiscard]] bool knows( const Ident& i ) const;
    [[nodiscard]] const Domain& domain_of( const Ident& i ) const;
    [[nodiscard]] const std::map<std::string, Entry>& entries() const { return _entries; }

    [[nodiscard]] IdentSet vars() const;
    [[nodiscard]] IdentSet params() const;

    // Resolve a base name to its declared ident (Var or Param).
    [[nodiscard]] std::optional<Ident> lookup( const std::string& name ) const;

    bool operator==( const Universe& ) const = default;
};

using UniversePtr = std::shared_ptr<const Universe>;

// Human-readable `x=1, x'=2` rendering of a valuation.
std::string to_string( const Universe& u, const Valuation& v );

} // namespace ebmeta
