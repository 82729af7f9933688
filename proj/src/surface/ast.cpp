#include "ebmeta/surface/ast.hpp"

#include <algorithm>

namespace ebmeta::surface
{

Expr Expr::boolean( bool b, SourceLocation at )
{
    Expr e;
    e.kind = Kind::BoolLit;
    e.truth = b;
    e.where = at;
    return e;
}

Expr Expr::integer( std::int64_t n, SourceLocation at )
{
    Expr e;
    e.kind = Kind::IntLit;
    e.number = n;
    e.where = at;
    return e;
}

Expr Expr::ident( std::string n, bool primed, SourceLocation at )
{
    Expr e;
    e.kind = Kind::Name;
    e.name = std::move( n );
    e.primed = primed;
    e.where = at;
    return e;
}

Expr Expr::unary( Kind k, Expr a, SourceLocation at )
{
    Expr e;
    e.kind = k;
    e.args.push_back( std::move( a ) );
    e.where = at;
    return e;
}

Expr Expr::binary( Kind k, Expr a, Expr b, SourceLocation at )
{
    Expr e;
    e.kind = k;
    e.args.push_back( std::move( a ) );
    e.args.push_back( std::move( b ) );
    e.where = at;
    return e;
}

bool same( const Expr& a, const Expr& b )
{
    if ( a.kind != b.kind || a.truth != b.truth || a.number != b.number || a.name != b.name || a.primed != b.primed
         || a.args.size() != b.args.size() )
        return false;
    for ( std::size_t i = 0; i < a.args.size(); ++i )
        if ( !same( a.args[i], b.args[i] ) )
            return false;
    return true;
}

namespace
{

bool same_opt( const std::optional<Expr>& a, const std::optional<Expr>& b )
{
    if ( a.has_value() != b.has_value() )
        return false;
    return !a || same( *a, *b );
}

bool same_names( const std::vector<NameRef>& a, const std::vector<NameRef>& b )
{
    return std::equal( a.begin(), a.end(), b.begin(), b.end(),
                       []( const auto& x, const auto& y ) { return x.name == y.name; } );
}

} // namespace

bool same( const SourceModel& a, const SourceModel& b )
{
    auto decl_eq = []( const Declaration& x, const Declaration& y ) {
        return x.name == y.name && x.role == y.role && x.domain.kind == y.domain.kind && x.domain.low == y.domain.low
               && x.domain.high == y.domain.high && x.domain.symbols == y.domain.symbols;
    };
    auto event_eq = []( const EventDecl& x, const EventDecl& y ) {
        return x.name == y.name && same_names( x.params, y.params ) && same_opt( x.guard, y.guard )
               && same_opt( x.action, y.action );
    };
    auto machine_eq = [&]( const MachineDecl& x, const MachineDecl& y ) {
        return x.name == y.name && same_names( x.vars, y.vars ) && same_opt( x.invariant, y.invariant )
               && std::equal( x.events.begin(), x.events.end(), y.events.begin(), y.events.end(), event_eq );
    };
    auto init_eq = []( const InitDecl& x, const InitDecl& y ) {
        return x.machine == y.machine && same( x.state, y.state );
    };
    auto split_eq = []( const SplitDecl& x, const SplitDecl& y ) {
        return x.name == y.name && x.source == y.source
               && std::equal( x.blocks.begin(), x.blocks.end(), y.blocks.begin(), y.blocks.end(),
                              []( const auto& p, const auto& q ) {
                                  return p.name == q.name && same_names( p.vars, q.vars );
                              } );
    };
    return std::equal( a.declarations.begin(), a.declarations.end(), b.declarations.begin(), b.declarations.end(),
                       decl_eq )
           && std::equal( a.machines.begin(), a.machines.end(), b.machines.begin(), b.machines.end(), machine_eq )
           && std::equal( a.inits.begin(), a.inits.end(), b.inits.begin(), b.inits.end(), init_eq )
           && std::equal( a.splits.begin(), a.splits.end(), b.splits.begin(), b.splits.end(), split_eq );
}

IdentSet idents_of( const Expr& e, const std::vector<Declaration>& decls )
{
    IdentSet out;
    if ( e.kind == Expr::Kind::Name )
    {
        auto it = std::find_if( decls.begin(), decls.end(), [&]( const auto& d ) { return d.name == e.name; } );
        if ( it != decls.end() )
        {
            if ( it->role == IdentKind::Param )
                out.insert( Ident::param( e.name ) );
            else
                out.insert( e.primed ? Ident::primed( e.name ) : Ident::var( e.name ) );
        }
        return out;
    }
    for ( const auto& a : e.args )
    {
        auto sub = idents_of( a, decls );
        out.insert( sub.begin(), sub.end() );
    }
    return out;
}

} // namespace ebmeta::surface
