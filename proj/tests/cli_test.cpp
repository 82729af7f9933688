#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "ebmeta/cli.hpp"
#include "ebmeta/transform.hpp"
#include "fixtures.hpp"
#include "report.hpp"
#include "schema_check.hpp"

using namespace ebmeta;
using namespace ebmeta::test;
using Json = nlohmann::ordered_json;

namespace
{

struct Run
{
    int exit = -1;
    std::string out;
    std::string err;
    Json report;
};

SchemaCheck& schema()
{
    static SchemaCheck s{ Json::parse( slurp( EBMETA_SCHEMA ) ) };
    return s;
}

// Runs the CLI in process; JSON reports are parsed and schema-checked.
Run invoke( std::vector<std::string> args )
{
    args.insert( args.begin(), "ebmeta" );
    std::vector<const char*> argv;
    for ( const auto& a : args )
        argv.push_back( a.c_str() );
    std::ostringstream out, err;
    Run r;
    r.exit = cli::run( static_cast<int>( argv.size() ), argv.data(), out, err );
    r.out = out.str();
    r.err = err.str();
    const bool text = std::find( args.begin(), args.end(), "text" ) != args.end();
    if ( !text && !r.out.empty() && r.out[0] == '{' )
    {
        r.report = Json::parse( r.out );
        const auto problems = schema().errors( r.report );
        for ( const auto& p : problems )
            MESSAGE( p );
        CHECK( problems.empty() );
        CHECK( r.report["exit_code"] == r.exit );
    }
    return r;
}

std::string in( const std::string& name )
{
    return corpus( name );
}

std::string temp_path( const std::string& name )
{
    return ( std::filesystem::temp_directory_path() / ( "ebmeta_cli_test_" + name ) ).string();
}

} // namespace

TEST_SUITE( "cli" )
{
    TEST_CASE( "report envelope" )
    {
        const auto r = invoke( { "check", in( "counter.ebm" ) } );
        CHECK( r.exit == cli::exit_ok );
        CHECK( r.report["tool"] == "ebmeta" );
        CHECK( r.report["version"] == cli::tool_version );
        CHECK( r.report["command"] == "check" );
        CHECK( r.report["status"] == "ok" );
        CHECK( r.report["error"].is_null() );
        CHECK( r.report["input"]["sha256"] == cli::sha256_hex( slurp( in( "counter.ebm" ) ) ) );
        CHECK( r.report["payload"]["violations"].empty() );
        CHECK( r.report["payload"]["machines"][0]["name"] == "Counter" );
        CHECK( r.err.find( "check: " ) == 0 );
    }

    TEST_CASE( "sha256" )
    {
        CHECK( cli::sha256_hex( "" ) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855" );
        CHECK( cli::sha256_hex( "abc" ) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad" );
    }

    TEST_CASE( "check: each static rule on its own file" )
    {
        for ( const auto& [file, rule] : std::vector<std::pair<std::string, std::string>>{
                      { "static_inv.ebm", rules::inv },
                      { "static_guard.ebm", rules::guards },
                      { "static_action.ebm", rules::actions } } )
        {
            CAPTURE( file );
            const auto r = invoke( { "check", in( file ) } );
            CHECK( r.exit == cli::exit_violation );
            CHECK( r.report["status"] == "violation" );
            const auto& vs = r.report["payload"]["violations"];
            REQUIRE( vs.size() == 1 );
            CHECK( vs[0]["rule"] == rule );
            CHECK( vs[0].contains( "location" ) );
        }
    }

    TEST_CASE( "po: verdicts and counterexamples" )
    {
        auto r = invoke( { "po", in( "holds.ebm" ) } );
        CHECK( r.exit == cli::exit_ok );
        const auto& all = r.report["payload"]["obligations"];
        CHECK( all.size() == 26 );
        for ( const auto& o : all )
        {
            CHECK( o["status"] == "Holds" );
            CHECK( o["counterexample"].is_null() );
        }

        r = invoke( { "po", in( "fails.ebm" ) } );
        CHECK( r.exit == cli::exit_violation );
        int failed = 0;
        for ( const auto& o : r.report["payload"]["obligations"] )
            failed += o["status"] == "Fails";
        CHECK( r.report["payload"]["obligations"].size() == 10 );
        CHECK( failed == 8 );

        r = invoke( { "po", in( "fails.ebm" ), "--machine", "Unguarded", "--event", "inc" } );
        REQUIRE( r.report["payload"]["obligations"].size() == 1 );
        CHECK( r.report["payload"]["obligations"][0]["counterexample"] == Json::parse( R"({"u": 2, "u'": 3})" ) );

        r = invoke( { "po", in( "fails.ebm" ), "--event", "nope" } );
        CHECK( r.exit == cli::exit_error );
        CHECK( r.report["error"]["code"] == "UnknownEvent" );

        r = invoke( { "po", in( "static_guard.ebm" ) } );
        CHECK( r.exit == cli::exit_violation );
        CHECK( r.report["error"]["code"] == "StaticViolation" );
        CHECK( r.report["error"]["violations"].size() == 1 );
    }

    TEST_CASE( "simulate: random and scripted" )
    {
        auto r = invoke( { "simulate", in( "tick.ebm" ), "--steps", "2", "--seed", "1" } );
        CHECK( r.exit == cli::exit_ok );
        const auto& p = r.report["payload"];
        CHECK( p["mode"] == "random" );
        CHECK( p["seed"] == 1 );
        CHECK( p["records"].size() == 2 );
        CHECK( p["outcome"] == "Completed" );
        CHECK( p["step_error"].is_null() );
        CHECK( p["final"]["Counter"]["values"]["x"] == Json::array( { 2 } ) );
        CHECK( p["initial"]["Counter"]["values"]["x"] == Json::array( { 0 } ) );

        r = invoke( { "simulate", in( "tick.ebm" ), "--steps", "5" } );
        CHECK( r.exit == cli::exit_ok );
        CHECK( r.report["payload"]["outcome"] == "Deadlock" );

        r = invoke( { "simulate", in( "tick.ebm" ), "--script", in( "scripts/tick_guard.script" ) } );
        CHECK( r.exit == cli::exit_runtime );
        CHECK( r.report["status"] == "runtime-error" );
        const auto& e = r.report["payload"]["step_error"];
        CHECK( e["code"] == "GuardNotEntailed" );
        CHECK( e["index"] == 2 );
        CHECK( e["witness"] == Json::parse( R"({"x": 2})" ) );

        r = invoke( { "simulate", in( "holds.ebm" ), "--script", in( "scripts/setter.script" ) } );
        CHECK( r.exit == cli::exit_ok );
        CHECK( r.report["payload"]["mode"] == "script" );
        CHECK( r.report["payload"]["records"][0]["params"] == Json::parse( R"({"q": 2})" ) );

        r = invoke( { "simulate", in( "fails.ebm" ), "--steps", "200", "--seed", "3" } );
        CHECK( r.exit == cli::exit_runtime );
        bool warned = false;
        for ( const auto& rec : r.report["payload"]["records"] )
            warned = warned || !rec["warnings"].empty();
        CHECK( warned );
    }

    TEST_CASE( "simulate: script and usage errors" )
    {
        const auto script = temp_path( "bad.script" );
        {
            std::ofstream f{ script };
            f << "# comment\nCounter inc\nCounter inc q\n";
        }
        auto r = invoke( { "simulate", in( "tick.ebm" ), "--script", script } );
        CHECK( r.exit == cli::exit_error );
        CHECK( r.report["error"]["code"] == "ScriptError" );
        CHECK( r.report["error"]["location"]["line"] == 3 );
        std::remove( script.c_str() );

        CHECK( invoke( { "simulate", in( "tick.ebm" ) } ).exit == cli::exit_error );
        CHECK( invoke( { "simulate", in( "tick.ebm" ), "--steps", "1", "--script", script } ).exit == cli::exit_error );
    }

    TEST_CASE( "split: accepted, rejected and differing plans" )
    {
        auto r = invoke( { "split", in( "counter.ebm" ), "--machine", "Counter", "--plan", "ByVar" } );
        CHECK( r.exit == cli::exit_ok );
        const auto& p = r.report["payload"];
        CHECK( p["equivalence"]["equal"] == true );
        CHECK( p["submachines"].size() == 2 );
        CHECK( p["obligations_hold"]["source"] == true );
        CHECK( p["obligations_hold"]["submachines"]["CounterX"] == true );

        for ( const auto& [file, plan, code] : std::vector<std::tuple<std::string, std::string, std::string>>{
                      { "cross_invariant.ebm", "Apart", "CrossBlockInvariant" },
                      { "cross_event.ebm", "Apart", "CrossBlockEvent" } } )
        {
            const auto m = compile_file( file ).plan( plan ).source;
            r = invoke( { "split", in( file ), "--machine", m, "--plan", plan } );
            CHECK( r.exit == cli::exit_violation );
            CHECK( r.report["error"]["code"] == code );
            CHECK( r.report["error"].contains( "blocks" ) );
        }

        r = invoke( { "split", in( "counter.ebm" ), "--machine", "Nope", "--plan", "ByVar" } );
        CHECK( r.exit == cli::exit_error );
        r = invoke( { "split", in( "counter.ebm" ), "--machine", "Counter", "--plan", "Nope" } );
        CHECK( r.exit == cli::exit_error );
    }

    TEST_CASE( "split: emitted submachines round trip" )
    {
        for ( const auto& [file, machine, plan] : std::vector<std::tuple<std::string, std::string, std::string>>{
                      { "counter.ebm", "Counter", "ByVar" }, { "splits.ebm", "Pair", "Halves" } } )
        {
            const auto path = temp_path( plan + ".ebm" );
            const auto r = invoke( { "split", in( file ), "--machine", machine, "--plan", plan, "--emit", path } );
            CHECK( r.exit == cli::exit_ok );
            CHECK( r.report["payload"]["emitted"] == path );

            const auto source = compile_file( file );
            const auto expected = split_submachines( source.project, source.plan( plan ) );
            const auto emitted = compile_text( slurp( path ) );
            CHECK( emitted.project.size() == expected.size() );
            for ( const auto& m : expected )
            {
                const auto& e = get_machine( emitted.project, m.name );
                CHECK( e.vars == m.vars );
                CHECK( equivalent( e.inv, m.inv ) );
                REQUIRE( e.events.size() == m.events.size() );
                for ( const auto& [name, ev] : m.events )
                {
                    CHECK( equivalent( e.event( name ).guard, ev.guard ) );
                    CHECK( equivalent( e.event( name ).action, ev.action ) );
                    CHECK( e.event( name ).pars == ev.pars );
                }
            }
            std::remove( path.c_str() );
        }
    }

    TEST_CASE( "swap-check" )
    {
        auto r = invoke( { "swap-check", in( "counter.ebm" ), "--plan", "ByVar" } );
        CHECK( r.exit == cli::exit_ok );
        CHECK( r.report["payload"]["transparent"] == true );
        CHECK( r.report["payload"]["retire"] == Json::array( { "Counter" } ) );

        r = invoke( { "swap-check", in( "counter.ebm" ), "--plan", "ByVar", "--retire", "Counter", "--activate",
                   "CounterX:x = 0", "--activate", "CounterY:y = 1" } );
        CHECK( r.exit == cli::exit_violation );
        CHECK( r.report["payload"]["transparent"] == false );
        CHECK( r.report["error"]["code"] == "TransparencyViolation" );
        CHECK( r.report["error"]["witness"] == Json::parse( R"({"x": 0, "y": 0})" ) );

        r = invoke( { "swap-check", in( "counter.ebm" ) } );
        CHECK( r.exit == cli::exit_ok );
        CHECK( r.report["payload"]["transparent"] == true );

        r = invoke( { "swap-check", in( "counter.ebm" ), "--retire", "Nope" } );
        CHECK( r.exit == cli::exit_error );
        CHECK( r.report["error"]["code"] == "NotActive" );
    }

    TEST_CASE( "conjuncts" )
    {
        auto r = invoke( { "conjuncts", in( "paper.ebm" ), "--machine", "Paper", "--target", "inv" } );
        CHECK( r.exit == cli::exit_ok );
        const auto& cs = r.report["payload"]["conjuncts"];
        REQUIRE( cs.size() == 2 );
        CHECK( cs[0]["text"] == "p = TRUE" );
        CHECK( cs[1]["text"] == "v = 2" );
        CHECK( cs[0]["free"] == Json::array( { "p" } ) );

        r = invoke( { "conjuncts", in( "counter.ebm" ), "--machine", "Counter", "--target", "action", "--event", "incx" } );
        CHECK( r.exit == cli::exit_ok );
        CHECK( r.report["payload"]["conjuncts"].size() == 2 );

        r = invoke( { "conjuncts", in( "counter.ebm" ), "--machine", "Counter", "--target", "guard" } );
        CHECK( r.exit == cli::exit_error );
        r = invoke( { "conjuncts", in( "counter.ebm" ), "--machine", "Counter", "--target", "nope" } );
        CHECK( r.exit == cli::exit_error );
    }

    TEST_CASE( "errors and usage" )
    {
        auto r = invoke( { "check", in( "no_such_file.ebm" ) } );
        CHECK( r.exit == cli::exit_error );
        CHECK( r.report["input"]["sha256"].is_null() );

        const auto bad = temp_path( "syntax.ebm" );
        {
            std::ofstream f{ bad };
            f << "universe\n  var x : 0..3\nend\nmachine M\n  variables x\n  invariant x <=\nend\n";
        }
        r = invoke( { "check", bad } );
        CHECK( r.exit == cli::exit_error );
        CHECK( r.report["error"]["code"] == "SyntaxError" );
        CHECK( r.report["error"]["location"]["line"] == 7 );
        std::remove( bad.c_str() );

        CHECK( invoke( {} ).exit == cli::exit_error );
        CHECK( invoke( { "frobnicate" } ).exit == cli::exit_error );
        const auto v = invoke( { "--version" } );
        CHECK( v.exit == cli::exit_ok );
        CHECK( v.out.find( cli::tool_version ) != std::string::npos );

        const auto t = invoke( { "--format", "text", "po", in( "po_pair.ebm" ) } );
        CHECK( t.exit == cli::exit_violation );
        CHECK( t.out.find( "po: " ) == 0 );
        CHECK( t.out.find( '{' ) == std::string::npos );
    }

    TEST_CASE( "reports are byte-identical across runs" )
    {
        const std::vector<std::vector<std::string>> commands = {
            { "check", in( "holds.ebm" ) },
            { "po", in( "fails.ebm" ) },
            { "simulate", in( "holds.ebm" ), "--steps", "50", "--seed", "9" },
            { "split", in( "splits.ebm" ), "--machine", "Pair", "--plan", "Halves" },
            { "swap-check", in( "counter.ebm" ), "--plan", "ByVar" },
            { "conjuncts", in( "paper.ebm" ), "--machine", "Paper", "--target", "inv" },
        };
        for ( const auto& c : commands )
        {
            const auto a = invoke( c );
            const auto b = invoke( c );
            CHECK( a.out == b.out );
            CHECK( a.err == b.err );
            CHECK( a.exit == b.exit );
        }
    }
}
