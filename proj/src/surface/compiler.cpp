#include "ebmeta/surface/compiler.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace ebmeta::surface
{

namespace
{

Domain to_domain( const DomainDecl& d )
{
    switch ( d.kind )
    {
    case DomainDecl::Kind::Bool: return Domain::boolean();
    case DomainDecl::Kind::Range: return Domain::range( d.low, d.high );
    case DomainDecl::Kind::Enum: return Domain::enumeration( d.symbols );
    }
    throw Error{ ErrorCode::InvalidArgument, "bad domain" };
}

// Result of evaluating a term; `defined` is false after out-of-carrier arithmetic.
struct Term
{
    Value value;
    bool defined = true;
};

enum class Type
{
    Bool,
    Int,
    Symbol,
};

const char* type_name( Type t )
{
    switch ( t )
    {
    case Type::Bool: return "boolean";
    case Type::Int: return "integer";
    case Type::Symbol: return "enumeration";
    }
    return "?";
}

Type type_of_kind( Value::Kind k )
{
    switch ( k )
    {
    case Value::Kind::Bool: return Type::Bool;
    case Value::Kind::Int: return Type::Int;
    case Value::Kind::Symbol: return Type::Symbol;
    }
    return Type::Bool;
}

// Resolves names to slots once, type-checks, then evaluates per valuation.
class Evaluator
{
    const Universe& _u;
    std::vector<Ident> _slots;
    std::vector<const Domain*> _domains;
    std::int64_t _carrier_low = 0;
    std::int64_t _carrier_high = -1;

public:
    Evaluator( const Universe& u, std::vector<Ident> slots ) : _u{ u }, _slots{ std::move( slots ) }
    {
        for ( const auto& i : _slots )
            _domains.push_back( &u.domain_of( i ) );
        bool any = false;
        for ( const auto& [name, entry] : u.entries() )
        {
            if ( entry.domain.kind() != Value::Kind::Int )
                continue;
            const auto lo = entry.domain.at( 0 ).number;
            const auto hi = entry.domain.at( entry.domain.size() - 1 ).number;
            _carrier_low = any ? std::min( _carrier_low, lo ) : lo;
            _carrier_high = any ? std::max( _carrier_high, hi ) : hi;
            any = true;
        }
    }

    Type check( const Expr& e ) const
    {
        using K = Expr::Kind;
        switch ( e.kind )
        {
        case K::BoolLit: return Type::Bool;
        case K::IntLit: return Type::Int;
        case K::Name:
            if ( auto s = slot( e ) )
                return type_of_kind( _domains[*s]->kind() );
            return Type::Symbol;
        case K::Not: expect( e.args[0], Type::Bool ); return Type::Bool;
        case K::And:
        case K::Or:
            expect( e.args[0], Type::Bool );
            expect( e.args[1], Type::Bool );
            return Type::Bool;
        case K::Eq:
        case K::Ne:
        {
            const auto a = check( e.args[0] );
            const auto b = check( e.args[1] );
            if ( a != b )
                throw SourceError{ ErrorCode::TypeError,
                                   std::string{ "cannot compare " } + type_name( a ) + " with " + type_name( b ),
                                   e.where };
            return Type::Bool;
        }
        case K::Lt:
        case K::Le:
        case K::Gt:
        case K::Ge:
            expect( e.args[0], Type::Int );
            expect( e.args[1], Type::Int );
            return Type::Bool;
        case K::Add:
        case K::Sub:
            expect( e.args[0], Type::Int );
            expect( e.args[1], Type::Int );
            return Type::Int;
        case K::Neg: expect( e.args[0], Type::Int ); return Type::Int;
        }
        return Type::Bool;
    }

    bool holds( const Expr& e, const Row& row ) const
    {
        using K = Expr::Kind;
        switch ( e.kind )
        {
        case K::Not: return !holds( e.args[0], row );
        case K::And: return holds( e.args[0], row ) && holds( e.args[1], row );
        case K::Or: return holds( e.args[0], row ) || holds( e.args[1], row );
        case K::Eq:
        case K::Ne:
        case K::Lt:
        case K::Le:
        case K::Gt:
        case K::Ge:
        {
            const auto a = term( e.args[0], row );
            const auto b = term( e.args[1], row );
            if ( !a.defined || !b.defined )
                return false;
            switch ( e.kind )
            {
            case K::Eq: return a.value == b.value;
            case K::Ne: return a.value != b.value;
            case K::Lt: return a.value.number < b.value.number;
            case K::Le: return a.value.number <= b.value.number;
            case K::Gt: return a.value.number > b.value.number;
            default: return a.value.number >= b.value.number;
            }
        }
        default:
        {
            // Boolean-valued leaf used as a formula.
            const auto t = term( e, row );
            return t.defined && t.value.number != 0;
        }
        }
    }

private:
    std::optional<std::size_t> slot( const Expr& e ) const
    {
        for ( std::size_t s = 0; s < _slots.size(); ++s )
        {
            const auto& i = _slots[s];
            if ( i.base == e.name && ( i.is_prime() == e.primed ) )
                return s;
        }
        return std::nullopt;
    }

    void expect( const Expr& e, Type t ) const
    {
        const auto got = check( e );
        if ( got != t )
            throw SourceError{ ErrorCode::TypeError,
                               std::string{ "expected " } + type_name( t ) + ", found " + type_name( got ), e.where };
    }

    Term arith( std::int64_t n, bool defined ) const
    {
        return { Value::integer( n ), defined && n >= _carrier_low && n <= _carrier_high };
    }

    Term term( const Expr& e, const Row& row ) const
    {
        using K = Expr::Kind;
        switch ( e.kind )
        {
        case K::BoolLit: return { Value::boolean( e.truth ) };
        case K::IntLit: return { Value::integer( e.number ) };
        case K::Name:
            if ( auto s = slot( e ) )
                return { _domains[*s]->at( row[*s] ) };
            return { Value::enumerated( e.name ) };
        case K::Neg:
        {
            auto a = term( e.args[0], row );
            return { Value::integer( -a.value.number ), a.defined };
        }
        case K::Add:
        case K::Sub:
        {
            const auto a = term( e.args[0], row );
            const auto b = term( e.args[1], row );
            std::int64_t r = 0;
            const bool overflow = e.kind == K::Add ? __builtin_add_overflow( a.value.number, b.value.number, &r )
                                                   : __builtin_sub_overflow( a.value.number, b.value.number, &r );
            return arith( r, a.defined && b.defined && !overflow );
        }
        default: return { Value::boolean( holds( e, row ) ) };
        }
    }
};

Predicate identity( const UniversePtr& u, const Ident& v )
{
    const auto p = prime( v );
    return Predicate::tabulate( u, { v, p }, [&]( const Valuation& s ) { return s.at( v ) == s.at( p ); } );
}

} // namespace

std::uint64_t cell_budget_from_env()
{
    if ( const char* env = std::getenv( "EBMETA_CELL_BUDGET" ) )
    {
        char* end = nullptr;
        const auto n = std::strtoull( env, &end, 10 );
        if ( end != env && *end == '\0' && n > 0 )
            return n;
    }
    return default_cell_budget;
}

UniversePtr build_universe( const std::vector<Declaration>& decls )
{
    auto u = std::make_shared<Universe>();
    for ( const auto& d : decls )
    {
        try
        {
            if ( d.role == IdentKind::Param )
                u->declare_param( d.name, to_domain( d.domain ) );
            else
                u->declare_var( d.name, to_domain( d.domain ) );
        }
        catch ( const SourceError& )
        {
            throw;
        }
        catch ( const Error& e )
        {
            throw SourceError{ e.code(), e.what(), d.where };
        }
    }
    return u;
}

Predicate compile_expr( const Expr& e, const UniversePtr& u, const std::vector<Declaration>& decls,
                        std::uint64_t cell_budget )
{
    const auto idents = idents_of( e, decls );
    const std::vector<Ident> slots( idents.begin(), idents.end() );
    Evaluator eval{ *u, slots };
    if ( eval.check( e ) != Type::Bool )
        throw SourceError{ ErrorCode::TypeError, "expected a boolean expression", e.where };

    std::uint64_t cells = 1;
    std::vector<std::uint32_t> sizes;
    for ( const auto& i : slots )
    {
        sizes.push_back( u->domain_of( i ).size() );
        if ( cells > cell_budget / sizes.back() + 1 )
            cells = std::numeric_limits<std::uint64_t>::max();
        else
            cells *= sizes.back();
    }
    if ( cells > cell_budget )
        throw SourceError{ ErrorCode::DomainTooLarge,
                           "expression needs more than " + std::to_string( cell_budget ) + " rows", e.where };

    std::vector<Row> rows;
    Row cur( slots.size(), 0 );
    bool done = false;
    while ( !done )
    {
        if ( eval.holds( e, cur ) )
            rows.push_back( cur );
        done = true;
        for ( std::size_t c = cur.size(); c-- > 0; )
        {
            if ( ++cur[c] < sizes[c] )
            {
                done = false;
                break;
            }
            cur[c] = 0;
        }
    }
    return Predicate::from_rows( u, slots, std::move( rows ) );
}

StaticReport CompiledModel::static_report() const
{
    auto report = check_static( project );
    for ( auto& v : report.violations )
    {
        auto it = locations.find( { v.machine, v.event.value_or( "" ), v.rule } );
        if ( it != locations.end() )
            v.where = it->second;
    }
    return report;
}

const SplitPlan& CompiledModel::plan( const std::string& name ) const
{
    for ( const auto& p : plans )
        if ( p.name == name )
            return p;
    throw Error{ ErrorCode::InvalidArgument, "no split plan named '" + name + "'" };
}

CompiledModel compile( const SourceModel& ast, const CompileOptions& options )
{
    const auto u = build_universe( ast.declarations );
    CompiledModel out{ Project{ u }, {}, {}, {} };
    auto expr = [&]( const Expr& e ) { return compile_expr( e, u, ast.declarations, options.cell_budget ); };

    for ( const auto& md : ast.machines )
    {
        Machine m{ md.name, {}, Predicate::truth( u ), {} };
        for ( const auto& v : md.vars )
            m.vars.insert( Ident::var( v.name ) );
        if ( md.invariant )
            m.inv = expr( *md.invariant );
        out.locations[{ md.name, "", rules::inv }] = md.invariant ? md.invariant->where : md.where;

        for ( const auto& ed : md.events )
        {
            EventDef e{ {}, Predicate::truth( u ), Predicate::truth( u ) };
            for ( const auto& q : ed.params )
                e.pars.insert( Ident::param( q.name ) );
            if ( ed.guard )
                e.guard = expr( *ed.guard );
            IdentSet mentioned;
            if ( ed.action )
            {
                e.action = expr( *ed.action );
                mentioned = idents_of( *ed.action, ast.declarations );
            }
            for ( const auto& v : m.vars )
                if ( !mentioned.count( prime( v ) ) )
                    e.action = intersect( e.action, identity( u, v ) );

            out.locations[{ md.name, ed.name, rules::guards }] = ed.guard ? ed.guard->where : ed.where;
            out.locations[{ md.name, ed.name, rules::actions }] = ed.action ? ed.action->where : ed.where;
            if ( !m.events.emplace( ed.name, std::move( e ) ).second )
                throw SourceError{ ErrorCode::DuplicateEvent,
                                   "event '" + ed.name + "' is declared twice in '" + md.name + "'", ed.where };
        }
        try
        {
            out.project = out.project.with( std::move( m ) );
        }
        catch ( const Error& e )
        {
            throw SourceError{ e.code(), e.what(), md.where };
        }
    }

    for ( const auto& i : ast.inits )
    {
        if ( !out.init.emplace( i.machine, expr( i.state ) ).second )
            throw SourceError{ ErrorCode::NameError, "second init for '" + i.machine + "'", i.where };
    }

    for ( const auto& s : ast.splits )
    {
        SplitPlan plan{ s.name, s.source, {} };
        for ( const auto& b : s.blocks )
        {
            SplitBlock block{ b.name, {} };
            for ( const auto& v : b.vars )
                block.vars.insert( Ident::var( v.name ) );
            plan.blocks.push_back( std::move( block ) );
        }
        out.plans.push_back( std::move( plan ) );
    }

    if ( options.check_static )
        if ( auto report = out.static_report(); !report.ok() )
            throw StaticViolationError{ std::move( report ) };
    return out;
}

} // namespace ebmeta::surface
