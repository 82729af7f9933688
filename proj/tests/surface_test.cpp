#include <cstdlib>
#include <functional>
#include <random>

#include "doctest.h"
#include "eval.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace ebmeta;
using namespace ebmeta::test;
using namespace ebmeta::surface;

namespace
{

const char* universe_text = R"(
universe
  var x : 0..3
  var y : 0..3
  var b : BOOL
  var light : enum { red, green, amber }
  param q : 0..3
end
)";

SourceError source_error( const std::function<void()>& f )
{
    try
    {
        f();
    }
    catch ( const SourceError& e )
    {
        return e;
    }
    FAIL( "expected a SourceError" );
    return SourceError{ ErrorCode::InvalidArgument, "", {} };
}

const std::vector<std::string> corpus_files = {
    "counter.ebm",     "tick.ebm",         "po_pair.ebm",      "paper.ebm",         "equality.ebm",
    "static_inv.ebm",  "static_guard.ebm", "static_action.ebm", "holds.ebm",        "fails.ebm",
    "splits.ebm",      "cross_invariant.ebm", "cross_event.ebm",
};

// Random well-typed expressions over the test universe.
class Generator
{
    std::mt19937_64& _rng;

    unsigned pick( unsigned n ) { return static_cast<unsigned>( _rng() % n ); }

    Expr int_name()
    {
        switch ( pick( 4 ) )
        {
        case 0: return Expr::ident( "x" );
        case 1: return Expr::ident( "y" );
        case 2: return Expr::ident( "x", true );
        default: return Expr::ident( "q" );
        }
    }

public:
    explicit Generator( std::mt19937_64& rng ) : _rng{ rng } {}

    Expr integer( int depth )
    {
        if ( depth <= 0 || pick( 3 ) == 0 )
            return pick( 2 ) ? int_name() : Expr::integer( pick( 5 ) );
        switch ( pick( 3 ) )
        {
        case 0: return Expr::binary( Expr::Kind::Add, integer( depth - 1 ), integer( depth - 1 ) );
        case 1: return Expr::binary( Expr::Kind::Sub, integer( depth - 1 ), integer( depth - 1 ) );
        default: return Expr::unary( Expr::Kind::Neg, integer( depth - 1 ) );
        }
    }

    Expr formula( int depth )
    {
        if ( depth <= 0 || pick( 4 ) == 0 )
        {
            switch ( pick( 5 ) )
            {
            case 0: return Expr::boolean( pick( 2 ) );
            case 1: return Expr::ident( "b", pick( 2 ) );
            case 2:
            {
                static const char* symbols[] = { "red", "green", "amber" };
                return Expr::binary( pick( 2 ) ? Expr::Kind::Eq : Expr::Kind::Ne, Expr::ident( "light", pick( 2 ) ),
                                     Expr::ident( symbols[pick( 3 )] ) );
            }
            default: break;
            }
            static const Expr::Kind relations[] = { Expr::Kind::Eq, Expr::Kind::Ne, Expr::Kind::Lt,
                                                    Expr::Kind::Le, Expr::Kind::Gt, Expr::Kind::Ge };
            return Expr::binary( relations[pick( 6 )], integer( 2 ), integer( 2 ) );
        }
        switch ( pick( 4 ) )
        {
        case 0: return Expr::unary( Expr::Kind::Not, formula( depth - 1 ) );
        case 1: return Expr::binary( Expr::Kind::And, formula( depth - 1 ), formula( depth - 1 ) );
        case 2: return Expr::binary( Expr::Kind::Or, formula( depth - 1 ), formula( depth - 1 ) );
        default:
            return Expr::binary( pick( 2 ) ? Expr::Kind::Eq : Expr::Kind::Ne, formula( depth - 1 ),
                                 formula( depth - 1 ) );
        }
    }
};

Env env_of( const Universe& u, const Valuation& s )
{
    Env env;
    for ( const auto& [i, v] : s )
        env[{ i.base, i.is_prime() }] = u.domain_of( i ).at( v );
    return env;
}

} // namespace

TEST_SUITE( "surface" )
{
    TEST_CASE( "parse: counter model" )
    {
        const auto m = parse( slurp( corpus( "counter.ebm" ) ) );
        REQUIRE( m.declarations.size() == 2 );
        CHECK( m.declarations[0].name == "x" );
        CHECK( m.declarations[0].domain.kind == DomainDecl::Kind::Range );
        CHECK( m.declarations[0].domain.high == 3 );
        REQUIRE( m.machines.size() == 1 );
        CHECK( m.machines[0].name == "Counter" );
        CHECK( m.machines[0].events.size() == 2 );
        CHECK( m.machines[0].events[1].name == "incy" );
        CHECK( m.machines[0].where.line == 7 );
        REQUIRE( m.inits.size() == 1 );
        CHECK( m.inits[0].machine == "Counter" );
        REQUIRE( m.splits.size() == 2 );
        CHECK( m.splits[0].blocks.size() == 2 );
        CHECK( m.splits[1].blocks[0].vars.size() == 2 );
    }

    TEST_CASE( "parse: primed name in a guard is a kind error" )
    {
        const auto e = source_error( [] {
            parse( "universe\n  var x : 0..3\nend\nmachine M\n  variables x\n  event e\n    where x' < 2\n  end\nend\n" );
        } );
        CHECK( e.code() == ErrorCode::KindError );
        CHECK( e.where().line == 7 );
        CHECK( e.where().column == 11 );
    }

    TEST_CASE( "parse: syntax errors carry positions" )
    {
        auto e = source_error( [] { parse( "universe\n  var x : 0..3\nend\nmachine M\n  variables x\n  invariant x <=\nend\n" ); } );
        CHECK( e.code() == ErrorCode::SyntaxError );
        CHECK( e.where().line == 7 );
        CHECK( e.where().column == 1 );

        e = source_error( [] { parse( "universe\n  var x : 0..3 ;\nend\n" ); } );
        CHECK( e.code() == ErrorCode::SyntaxError );
        CHECK( e.where().line == 2 );
        CHECK( e.where().column == 16 );

        e = source_error( [] { parse( "universe\n  var x : 3..0\nend\n" ); } );
        CHECK( e.code() == ErrorCode::SyntaxError );
        CHECK( e.where().line == 2 );

        e = source_error( [] { parse( "machine M\n  variables\n" ); } );
        CHECK( e.code() == ErrorCode::SyntaxError );
    }

    TEST_CASE( "parse: name errors" )
    {
        const auto u = std::string{ universe_text };
        CHECK( source_error( [&] { parse( u + "machine M\n  variables z\nend\n" ); } ).code() == ErrorCode::NameError );
        CHECK( source_error( [&] { parse( u + "machine M\n  variables x\n  invariant z = 0\nend\n" ); } ).code()
               == ErrorCode::NameError );
        CHECK( source_error( [] { parse( "universe\n  var x : 0..1\n  var x : BOOL\nend\n" ); } ).code()
               == ErrorCode::NameError );
        CHECK( source_error( [] { parse( "universe\n  var e : enum { a, a }\nend\n" ); } ).code()
               == ErrorCode::NameError );
        CHECK( source_error( [] { parse( "universe\n  var a : BOOL\n  var e : enum { a }\nend\n" ); } ).code()
               == ErrorCode::NameError );
        CHECK( source_error( [&] { parse( u + "init Nope : x = 0\n" ); } ).code() == ErrorCode::NameError );
        CHECK( source_error( [&] { parse( u + "split S of Nope\n  A : x\nend\n" ); } ).code() == ErrorCode::NameError );
        CHECK( source_error( [&] { parse( u + "machine M\n  variables x, q\nend\n" ); } ).code()
               == ErrorCode::KindError );
        CHECK( source_error( [&] { parse( u + "machine M\n  variables x\n  invariant x = q\nend\n" ); } ).code()
               == ErrorCode::KindError );
        CHECK( source_error( [&] { parse( u + "machine M\n  variables x\n  event e\n    then x' = q'\n  end\nend\n" ); } )
                       .code()
               == ErrorCode::KindError );
    }

    TEST_CASE( "parse_expression" )
    {
        Vocabulary w{ universe_text };
        const auto& d = w.declarations();
        CHECK( same( parse_expression( "x' = q + 1", d ), parse_expression( "(x') = (q + 1)", d ) ) );
        CHECK( source_error( [&] { parse_expression( "x' = 1", d, true ); } ).code() == ErrorCode::KindError );
        CHECK( source_error( [&] { parse_expression( "q = 1", d, true ); } ).code() == ErrorCode::KindError );
        CHECK( source_error( [&] { parse_expression( "x = 1 end", d ); } ).code() == ErrorCode::SyntaxError );
        CHECK( source_error( [&] { parse_expression( "", d ); } ).code() == ErrorCode::SyntaxError );
        CHECK( source_error( [&] { parse_expression( "z = 1", d ); } ).code() == ErrorCode::NameError );
        CHECK( idents_of( parse_expression( "light' = red & x < q", d ), d )
               == IdentSet{ V( "x" ), P( "light" ), Q( "q" ) } );
    }

    TEST_CASE( "operator spellings" )
    {
        Vocabulary w{ universe_text };
        const auto& d = w.declarations();
        const auto ascii = parse_expression( "x <= 2 & !(y != 1) | b", d );
        for ( const char* text : { "x \xE2\x89\xA4 2 \xE2\x88\xA7 \xC2\xAC(y \xE2\x89\xA0 1) \xE2\x88\xA8 b",
                                   "x <= 2 && !(y /= 1) || b", "x <= 2 and not (y != 1) or b" } )
            CHECK( same( parse_expression( text, d ), ascii ) );
        CHECK( same( parse_expression( "x \xE2\x88\x92 1 = 0", d ), parse_expression( "x - 1 = 0", d ) ) );
        CHECK( same( parse_expression( "b = TRUE", d ), parse_expression( "b = true", d ) ) );
        CHECK( same( parse_expression( "x = 1 // trailing\n", d ), parse_expression( "x = 1 # other", d ) ) );
    }

    TEST_CASE( "precedence" )
    {
        Vocabulary w{ universe_text };
        const auto& d = w.declarations();
        CHECK( print( parse_expression( "b | b & !b", d ) ) == "b | b & !b" );
        CHECK( same( parse_expression( "b | b & b", d ), parse_expression( "b | (b & b)", d ) ) );
        CHECK( same( parse_expression( "!x = 1", d ), parse_expression( "!(x = 1)", d ) ) );
        CHECK( same( parse_expression( "x - y - 1 = 0", d ), parse_expression( "(x - y) - 1 = 0", d ) ) );
        CHECK( print( parse_expression( "x - (y - 1) = -(x + 1)", d ) ) == "x - (y - 1) = -(x + 1)" );
        CHECK( print( parse_expression( "!(b & b)", d ) ) == "!(b & b)" );
        CHECK( print( parse_expression( "(x = 1) = (y = 1)", d ) ) == "(x = 1) = (y = 1)" );
    }

    TEST_CASE( "print/parse round trip on the corpus" )
    {
        for ( const auto& f : corpus_files )
        {
            CAPTURE( f );
            const auto m = parse( slurp( corpus( f ) ) );
            const auto text = print( m );
            const auto again = parse( text );
            CHECK( same( m, again ) );
            CHECK( print( again ) == text );
        }
    }

    TEST_CASE( "property: print/parse round trip on random expressions" )
    {
        Vocabulary w{ universe_text };
        std::mt19937_64 rng{ 11 };
        Generator g{ rng };
        for ( int i = 0; i < 500; ++i )
        {
            const auto e = g.formula( 4 );
            const auto text = print( e );
            CAPTURE( text );
            CHECK( same( parse_expression( text, w.declarations() ), e ) );
        }
    }

    TEST_CASE( "property: compiled predicates agree with direct evaluation" )
    {
        Vocabulary w{ universe_text };
        const auto& u = w.universe();
        const auto carrier = carrier_of( w.declarations() );
        std::mt19937_64 rng{ 12 };
        Generator g{ rng };
        int satisfiable = 0;
        int partial = 0;
        for ( int i = 0; i < 300; ++i )
        {
            const auto e = g.formula( 3 );
            CAPTURE( print( e ) );
            const auto p = compile_expr( e, u, w.declarations() );
            const auto scope = idents_of( e, w.declarations() );
            CHECK( oracle::scope_of( p ) == scope );
            std::size_t n = 0;
            for ( const auto& s : oracle::states( *u, scope ) )
            {
                const bool direct = ebmeta::test::formula( e, env_of( *u, s ), carrier );
                CHECK( oracle::member( p, s ) == direct );
                n += direct;
            }
            satisfiable += n > 0;
            partial += n > 0 && n < oracle::states( *u, scope ).size();
        }
        CHECK( satisfiable > 100 );
        CHECK( partial > 100 );
    }

    TEST_CASE( "compile_expr: small examples" )
    {
        Vocabulary w{ universe_text };
        const auto le = w( "x <= 2" );
        CHECK( le.size() == 3 );
        CHECK( le.scope() == std::vector<Ident>{ V( "x" ) } );
        CHECK( w( "true" ) == Predicate::truth( w.universe() ) );
        CHECK( w( "false" ).unsatisfiable() );
        CHECK( w( "light' != light" ).size() == 6 );
        CHECK( equivalent( w( "b" ), w( "b = TRUE" ) ) );
        CHECK( equivalent( w( "!b" ), w( "b = false" ) ) );
    }

    TEST_CASE( "compile_expr: carrier arithmetic" )
    {
        Vocabulary w{ universe_text };
        // 4 is outside the carrier 0..3, so x + 1 is undefined at x = 3.
        CHECK( w( "x + 1 = 4" ).unsatisfiable() );
        CHECK( equivalent( w( "x + 1 > x" ), w( "x <= 2" ) ) );
        CHECK( equivalent( w( "!(x + 1 > x)" ), w( "x = 3" ) ) );
        CHECK( equivalent( w( "x - 1 >= 0" ), w( "x >= 1" ) ) );
        // unary minus is total
        CHECK( equivalent( w( "-x <= 0" ), w( "true" ) ) );
        CHECK( equivalent( w( "-x = -2" ), w( "x = 2" ) ) );
        // x - y is only defined for x >= y, and then x - y - 1 < 0 needs x - y - 1 = -1, outside 0..3
        CHECK( w( "x - y - 1 < 0" ).unsatisfiable() );
        CHECK( equivalent( w( "x - y - 1 >= 0" ), w( "x > y" ) ) );

        Vocabulary wide{ "universe\n  var t : -2..2\n  var n : 0..5\nend\n" };
        CHECK( equivalent( wide( "t - 3 = -2" ), wide( "t = 1" ) ) );
        CHECK( wide( "n + 1 = 6" ).unsatisfiable() );
        CHECK( equivalent( wide( "n - 3 < -2" ), wide( "false" ) ) );
    }

    TEST_CASE( "compile_expr: type errors" )
    {
        Vocabulary w{ universe_text };
        for ( const char* bad : { "x = true", "x + b = 1", "light < red", "x & y", "!x", "-b = 1", "light = 1", "x" } )
        {
            CAPTURE( bad );
            const auto e = source_error( [&] { w( bad ); } );
            CHECK( e.code() == ErrorCode::TypeError );
            CHECK( e.where().line == 1 );
        }
    }

    TEST_CASE( "compile_expr: cell budget" )
    {
        Vocabulary w{ universe_text };
        const auto e = parse_expression( "x = y & x' = y'", w.declarations() );
        CHECK( compile_expr( e, w.universe(), w.declarations(), 256 ).size() == 16 );
        CHECK( source_error( [&] { compile_expr( e, w.universe(), w.declarations(), 255 ); } ).code()
               == ErrorCode::DomainTooLarge );

        ::setenv( "EBMETA_CELL_BUDGET", "10", 1 );
        CHECK( cell_budget_from_env() == 10 );
        ::setenv( "EBMETA_CELL_BUDGET", "0", 1 );
        CHECK( cell_budget_from_env() == default_cell_budget );
        ::setenv( "EBMETA_CELL_BUDGET", "lots", 1 );
        CHECK( cell_budget_from_env() == default_cell_budget );
        ::unsetenv( "EBMETA_CELL_BUDGET" );
        CHECK( cell_budget_from_env() == default_cell_budget );

        CHECK( source_error( [] {
                   CompileOptions o;
                   o.cell_budget = 3;
                   compile( parse( slurp( corpus( "counter.ebm" ) ) ), o );
               } ).code()
               == ErrorCode::DomainTooLarge );
    }

    TEST_CASE( "compile: implicit frame and defaults" )
    {
        Vocabulary w{ "universe\n  var x : 0..3\n  var y : 0..3\nend\n" };
        const auto c = compile_file( "counter.ebm" );
        const auto& m = get_machine( c.project, "Counter" );
        CHECK( equivalent( m.event( "incx" ).action, w( "x' = x + 1 & y' = y" ) ) );
        CHECK( equivalent( m.event( "incy" ).action, w( "y' = y + 1 & x' = x" ) ) );
        CHECK( equivalent( c.init.at( "Counter" ), w( "x = 0 & y = 0" ) ) );
        REQUIRE( c.plans.size() == 2 );
        CHECK( c.plan( "ByVar" ).blocks[1].name == "CounterY" );
        CHECK( c.plan( "Whole" ).source == "Counter" );
        try
        {
            (void)c.plan( "Nope" );
            FAIL( "expected InvalidArgument" );
        }
        catch ( const Error& e )
        {
            CHECK( e.code() == ErrorCode::InvalidArgument );
        }

        const auto bare = compile_text( "universe\n  var x : 0..1\nend\nmachine M\n  variables x\n  event e\n  end\nend\n" );
        const auto& e = get_machine( bare.project, "M" ).event( "e" );
        CHECK( e.guard == Predicate::truth( bare.project.universe() ) );
        Vocabulary bit{ "universe\n  var x : 0..1\nend\n" };
        CHECK( equivalent( e.action, bit( "x' = x" ) ) );
        CHECK( equivalent( get_machine( bare.project, "M" ).inv, bit( "true" ) ) );
    }

    TEST_CASE( "compile: static violations carry locations" )
    {
        try
        {
            compile_file( "static_guard.ebm" );
            FAIL( "expected StaticViolationError" );
        }
        catch ( const StaticViolationError& e )
        {
            REQUIRE( e.report().violations.size() == 1 );
            const auto& v = e.report().violations[0];
            CHECK( v.machine == "Peek" );
            CHECK( v.event == std::optional<std::string>{ "look" } );
            CHECK( v.rule == rules::guards );
            CHECK( v.offending == IdentSet{ V( "y" ) } );
            REQUIRE( v.where );
            CHECK( v.where->line == 9 );
        }
        const auto unchecked = compile_file( "static_guard.ebm", false );
        const auto report = unchecked.static_report();
        REQUIRE( report.violations.size() == 1 );
        CHECK( report.violations[0].where );

        for ( const auto& [file, rule] : std::vector<std::pair<std::string, std::string>>{
                      { "static_inv.ebm", rules::inv }, { "static_action.ebm", rules::actions } } )
        {
            const auto r = compile_file( file, false ).static_report();
            REQUIRE( r.violations.size() == 1 );
            CHECK( r.violations[0].rule == rule );
        }
    }

    TEST_CASE( "compile: duplicate events and inits" )
    {
        const std::string u = "universe\n  var x : 0..1\nend\n";
        auto e = source_error( [&] {
            compile_text( u + "machine M\n  variables x\n  event e\n  end\n  event e\n  end\nend\n" );
        } );
        CHECK( e.code() == ErrorCode::DuplicateEvent );
        CHECK( e.where().line == 8 );
        e = source_error( [&] {
            compile_text( u + "machine M\n  variables x\nend\ninit M : x = 0\ninit M : x = 1\n" );
        } );
        CHECK( e.code() == ErrorCode::NameError );
    }

    TEST_CASE( "compile: every corpus model loads" )
    {
        std::size_t machines = 0;
        for ( const auto& f : corpus_files )
        {
            CAPTURE( f );
            const bool clean = f.rfind( "static_", 0 ) != 0;
            const auto c = compile_file( f, clean );
            machines += c.project.size();
            CHECK( c.static_report().ok() == clean );
        }
        CHECK( machines >= 20 );
    }
}
