#include "ebmeta/surface/parser.hpp"

#include <map>
#include <set>

#include "lexer.hpp"

namespace ebmeta::surface
{

namespace
{

const std::set<std::string> keywords = {
    "universe", "var",  "param", "end",  "machine", "variables", "invariant", "event", "any",  "where",
    "then",     "init", "split", "of",   "BOOL",    "enum",      "true",      "false", "TRUE", "FALSE",
};

class Parser
{
    std::vector<Token> _toks;
    std::size_t _pos = 0;

public:
    explicit Parser( std::vector<Token> toks ) : _toks{ std::move( toks ) } {}

    SourceModel model()
    {
        SourceModel m;
        while ( !at( Tok::Eof ) )
        {
            if ( at_keyword( "universe" ) )
                universe( m );
            else if ( at_keyword( "machine" ) )
                m.machines.push_back( machine() );
            else if ( at_keyword( "init" ) )
                m.inits.push_back( init() );
            else if ( at_keyword( "split" ) )
                m.splits.push_back( split() );
            else
                fail( "expected 'universe', 'machine', 'init' or 'split'" );
        }
        return m;
    }

    Expr expression() { return disjunction(); }

    void finish()
    {
        if ( !at( Tok::Eof ) )
            fail( "expected end of expression" );
    }

private:
    const Token& peek( std::size_t ahead = 0 ) const
    {
        return _toks[std::min( _pos + ahead, _toks.size() - 1 )];
    }
    bool at( Tok k ) const { return peek().kind == k; }
    bool at_keyword( std::string_view kw ) const
    {
        return peek().kind == Tok::Name && !peek().primed && peek().text == kw;
    }
    bool at_plain_name( std::size_t ahead = 0 ) const
    {
        const auto& t = peek( ahead );
        return t.kind == Tok::Name && !t.primed && !keywords.count( t.text );
    }

    [[noreturn]] void fail( const std::string& what ) const
    {
        throw SourceError{ ErrorCode::SyntaxError, what + ", found " + describe( peek() ), peek().where };
    }

    Token take() { return _toks[std::min( _pos++, _toks.size() - 1 )]; }

    Token expect( Tok k, const std::string& what )
    {
        if ( !at( k ) )
            fail( "expected " + what );
        return take();
    }

    void keyword( std::string_view kw )
    {
        if ( !at_keyword( kw ) )
            fail( "expected '" + std::string{ kw } + "'" );
        take();
    }

    NameRef name( const std::string& what )
    {
        if ( !at_plain_name() )
            fail( "expected " + what );
        auto t = take();
        return { t.text, t.where };
    }

    // NAME {[','] NAME}; stops before a `NAME :` pair when `stop_at_label`.
    std::vector<NameRef> names( const std::string& what, bool stop_at_label = false )
    {
        std::vector<NameRef> out{ name( what ) };
        while ( true )
        {
            if ( at( Tok::Comma ) )
            {
                take();
                out.push_back( name( what ) );
                continue;
            }
            if ( at_plain_name() && !( stop_at_label && peek( 1 ).kind == Tok::Colon ) )
            {
                out.push_back( name( what ) );
                continue;
            }
            return out;
        }
    }

    std::int64_t signed_int()
    {
        bool negative = false;
        if ( at( Tok::Minus ) )
        {
            take();
            negative = true;
        }
        auto t = expect( Tok::Int, "an integer" );
        return negative ? -t.number : t.number;
    }

    void universe( SourceModel& m )
    {
        keyword( "universe" );
        while ( at_keyword( "var" ) || at_keyword( "param" ) )
        {
            Declaration d;
            d.role = take().text == "var" ? IdentKind::Var : IdentKind::Param;
            auto n = name( "a declared name" );
            d.name = n.name;
            d.where = n.where;
            expect( Tok::Colon, "':'" );
            if ( at_keyword( "BOOL" ) )
            {
                take();
                d.domain.kind = DomainDecl::Kind::Bool;
            }
            else if ( at_keyword( "enum" ) )
            {
                take();
                d.domain.kind = DomainDecl::Kind::Enum;
                expect( Tok::LBrace, "'{'" );
                for ( auto& s : names( "an enumeration symbol" ) )
                    d.domain.symbols.push_back( s.name );
                expect( Tok::RBrace, "'}'" );
            }
            else
            {
                d.domain.kind = DomainDecl::Kind::Range;
                d.domain.low = signed_int();
                expect( Tok::DotDot, "'..'" );
                d.domain.high = signed_int();
            }
            m.declarations.push_back( std::move( d ) );
        }
        keyword( "end" );
    }

    MachineDecl machine()
    {
        MachineDecl m;
        m.where = peek().where;
        keyword( "machine" );
        m.name = name( "a machine name" ).name;
        if ( at_keyword( "variables" ) )
        {
            take();
            m.vars = names( "a variable name" );
        }
        if ( at_keyword( "invariant" ) )
        {
            take();
            m.invariant = expression();
        }
        while ( at_keyword( "event" ) )
            m.events.push_back( event() );
        keyword( "end" );
        return m;
    }

    EventDecl event()
    {
        EventDecl e;
        e.where = peek().where;
        keyword( "event" );
        e.name = name( "an event name" ).name;
        if ( at_keyword( "any" ) )
        {
            take();
            e.params = names( "a parameter name" );
        }
        if ( at_keyword( "where" ) )
        {
            take();
            e.guard = expression();
        }
        if ( at_keyword( "then" ) )
        {
            take();
            e.action = expression();
        }
        keyword( "end" );
        return e;
    }

    InitDecl init()
    {
        const auto where = peek().where;
        keyword( "init" );
        auto m = name( "a machine name" ).name;
        expect( Tok::Colon, "':'" );
        return { std::move( m ), expression(), where };
    }

    SplitDecl split()
    {
        SplitDecl s;
        s.where = peek().where;
        keyword( "split" );
        s.name = name( "a plan name" ).name;
        keyword( "of" );
        s.source = name( "a machine name" ).name;
        while ( at_plain_name() )
        {
            BlockDecl b;
            auto n = name( "a block name" );
            b.name = n.name;
            b.where = n.where;
            expect( Tok::Colon, "':'" );
            b.vars = names( "a variable name", true );
            s.blocks.push_back( std::move( b ) );
        }
        keyword( "end" );
        return s;
    }

    Expr disjunction()
    {
        auto e = conjunction();
        while ( at( Tok::Or ) )
        {
            take();
            auto where = e.where;
            e = Expr::binary( Expr::Kind::Or, std::move( e ), conjunction(), where );
        }
        return e;
    }

    Expr conjunction()
    {
        auto e = negation();
        while ( at( Tok::And ) )
        {
            take();
            auto where = e.where;
            e = Expr::binary( Expr::Kind::And, std::move( e ), negation(), where );
        }
        return e;
    }

    Expr negation()
    {
        if ( at( Tok::Not ) )
        {
            auto where = take().where;
            return Expr::unary( Expr::Kind::Not, negation(), where );
        }
        return comparison();
    }

    Expr comparison()
    {
        auto e = sum();
        static const std::map<Tok, Expr::Kind> relops = {
            { Tok::Eq, Expr::Kind::Eq }, { Tok::Ne, Expr::Kind::Ne }, { Tok::Lt, Expr::Kind::Lt },
            { Tok::Le, Expr::Kind::Le }, { Tok::Gt, Expr::Kind::Gt }, { Tok::Ge, Expr::Kind::Ge },
        };
        if ( auto it = relops.find( peek().kind ); it != relops.end() )
        {
            take();
            auto where = e.where;
            e = Expr::binary( it->second, std::move( e ), sum(), where );
        }
        return e;
    }

    Expr sum()
    {
        auto e = unary();
        while ( at( Tok::Plus ) || at( Tok::Minus ) )
        {
            const auto k = take().kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
            auto where = e.where;
            e = Expr::binary( k, std::move( e ), unary(), where );
        }
        return e;
    }

    Expr unary()
    {
        if ( at( Tok::Minus ) )
        {
            auto where = take().where;
            return Expr::unary( Expr::Kind::Neg, unary(), where );
        }
        return primary();
    }

    Expr primary()
    {
        const auto& t = peek();
        if ( t.kind == Tok::Int )
        {
            auto tok = take();
            return Expr::integer( tok.number, tok.where );
        }
        if ( t.kind == Tok::LParen )
        {
            take();
            auto e = expression();
            expect( Tok::RParen, "')'" );
            return e;
        }
        if ( t.kind == Tok::Name && !t.primed && ( t.text == "true" || t.text == "TRUE" ) )
            return Expr::boolean( true, take().where );
        if ( t.kind == Tok::Name && !t.primed && ( t.text == "false" || t.text == "FALSE" ) )
            return Expr::boolean( false, take().where );
        if ( t.kind == Tok::Name && !keywords.count( t.text ) )
        {
            auto tok = take();
            return Expr::ident( tok.text, tok.primed, tok.where );
        }
        fail( "expected an expression" );
    }
};

// --- name checking ---

enum class Context
{
    Invariant,
    Guard,
    Action,
    Init,
};

class NameChecker
{
    std::map<std::string, IdentKind> _roles;
    std::set<std::string> _symbols;
    std::set<std::string> _machines;

public:
    void check( const SourceModel& m )
    {
        declare( m.declarations );
        for ( const auto& mach : m.machines )
            _machines.insert( mach.name );

        for ( const auto& mach : m.machines )
        {
            for ( const auto& v : mach.vars )
                expect_role( v, IdentKind::Var );
            if ( mach.invariant )
                expr( *mach.invariant, Context::Invariant );
            for ( const auto& e : mach.events )
            {
                for ( const auto& q : e.params )
                    expect_role( q, IdentKind::Param );
                if ( e.guard )
                    expr( *e.guard, Context::Guard );
                if ( e.action )
                    expr( *e.action, Context::Action );
            }
        }
        for ( const auto& i : m.inits )
        {
            if ( !_machines.count( i.machine ) )
                throw SourceError{ ErrorCode::NameError, "init for unknown machine '" + i.machine + "'", i.where };
            expr( i.state, Context::Init );
        }
        for ( const auto& s : m.splits )
        {
            if ( !_machines.count( s.source ) )
                throw SourceError{ ErrorCode::NameError, "split of unknown machine '" + s.source + "'", s.where };
            for ( const auto& b : s.blocks )
                for ( const auto& v : b.vars )
                    expect_role( v, IdentKind::Var );
        }
    }

    void declare( const std::vector<Declaration>& decls )
    {
        for ( const auto& d : decls )
        {
            if ( !_roles.emplace( d.name, d.role ).second )
                throw SourceError{ ErrorCode::NameError, "'" + d.name + "' is declared twice", d.where };
            if ( d.domain.kind == DomainDecl::Kind::Range && d.domain.low > d.domain.high )
                throw SourceError{ ErrorCode::SyntaxError, "empty range for '" + d.name + "'", d.where };
            std::set<std::string> local;
            for ( const auto& s : d.domain.symbols )
            {
                if ( !local.insert( s ).second )
                    throw SourceError{ ErrorCode::NameError, "symbol '" + s + "' repeated in the domain of '"
                                                                     + d.name + "'",
                                       d.where };
                _symbols.insert( s );
            }
        }
        for ( const auto& s : _symbols )
            if ( _roles.count( s ) )
                throw SourceError{ ErrorCode::NameError, "'" + s + "' is both a name and an enumeration symbol",
                                   decls.front().where };
    }

    void expr( const Expr& e, Context ctx )
    {
        if ( e.kind == Expr::Kind::Name )
        {
            auto it = _roles.find( e.name );
            if ( it == _roles.end() )
            {
                if ( !_symbols.count( e.name ) )
                    throw SourceError{ ErrorCode::NameError, "'" + e.name + "' is not declared", e.where };
                if ( e.primed )
                    throw SourceError{ ErrorCode::KindError, "enumeration symbol '" + e.name + "' cannot be primed",
                                       e.where };
                return;
            }
            if ( e.primed && ctx != Context::Action )
                throw SourceError{ ErrorCode::KindError, "primed name " + e.name + "' outside an action", e.where };
            if ( e.primed && it->second != IdentKind::Var )
                throw SourceError{ ErrorCode::KindError, "parameter '" + e.name + "' cannot be primed", e.where };
            if ( it->second == IdentKind::Param && ( ctx == Context::Invariant || ctx == Context::Init ) )
                throw SourceError{ ErrorCode::KindError, "parameter '" + e.name + "' used outside an event",
                                   e.where };
            return;
        }
        for ( const auto& a : e.args )
            expr( a, ctx );
    }

private:
    void expect_role( const NameRef& n, IdentKind role )
    {
        auto it = _roles.find( n.name );
        if ( it == _roles.end() )
            throw SourceError{ ErrorCode::NameError, "'" + n.name + "' is not declared", n.where };
        if ( it->second != role )
            throw SourceError{ ErrorCode::KindError,
                               "'" + n.name + "' is a " + to_string( it->second ) + ", expected a "
                                       + to_string( role ),
                               n.where };
    }
};

} // namespace

SourceModel parse( std::string_view text )
{
    Parser parser{ tokenize( text ) };
    auto m = parser.model();
    NameChecker{}.check( m );
    return m;
}

Expr parse_expression( std::string_view text, const std::vector<Declaration>& decls, bool state_only )
{
    Parser parser{ tokenize( text ) };
    auto e = parser.expression();
    parser.finish();
    NameChecker checker;
    checker.declare( decls );
    checker.expr( e, state_only ? Context::Init : Context::Action );
    return e;
}

} // namespace ebmeta::surface
