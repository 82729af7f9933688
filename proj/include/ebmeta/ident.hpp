#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace ebmeta
{

// Identifiers are partitioned into machine variables, their primed
// (post-state) images and event parameters.
enum class IdentKind : std::uint8_t
{
    Var,
    Prime,
    Param,
};

struct Ident
{
    std::string base;
    IdentKind kind = IdentKind::Var;

    static Ident var( std::string name ) { return { std::move( name ), IdentKind::Var }; }
    static Ident primed( std::string name ) { return { std::move( name ), IdentKind::Prime }; }
    static Ident param( std::string name ) { return { std::move( name ), IdentKind::Param }; }

    [[nodiscard]] bool is_var() const { return kind == IdentKind::Var; }
    [[nodiscard]] bool is_prime() const { return kind == IdentKind::Prime; }
    [[nodiscard]] bool is_param() const { return kind == IdentKind::Param; }

    // Source spelling: `x`, `x'`, `q`.
    [[nodiscard]] std::string str() const;

    // Canonical order: by base name, then Var < Prime < Param. So x, x', y, y'.
    auto operator<=>( const Ident& ) const = default;
};

using IdentSet = std::set<Ident>;

// A full or partial state: ident -> index into that ident's domain.
using Valuation = std::map<Ident, std::uint32_t>;

// The Next bijection and its inverse. Both throw KindError on the wrong kind.
Ident prime( const Ident& v );
Ident unprime( const Ident& v );
IdentSet prime_set( const IdentSet& vars );
IdentSet unprime_set( const IdentSet& primes );

std::string to_string( IdentKind kind );
std::string to_string( const IdentSet& idents );

} // namespace ebmeta
