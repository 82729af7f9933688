#include "ebmeta/cli.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ebmeta/dynamics.hpp"
#include "ebmeta/obligations.hpp"
#include "ebmeta/surface/compiler.hpp"
#include "ebmeta/surface/parser.hpp"
#include "ebmeta/transform.hpp"
#include "report.hpp"

namespace ebmeta::cli
{

namespace
{

struct Outcome
{
    int exit = exit_ok;
    Json payload = Json::object();
    Json error = nullptr;
    std::vector<std::string> summary;
};

// Raised by command code for failures that carry their own exit code.
struct Failure
{
    int exit;
    Json error;
    Json payload = Json::object();
};

const char* status_of( int code )
{
    switch ( code )
    {
    case exit_ok: return "ok";
    case exit_violation: return "violation";
    case exit_runtime: return "runtime-error";
    default: return "error";
    }
}

int exit_for( ErrorCode c )
{
    switch ( c )
    {
    case ErrorCode::StaticViolation:
    case ErrorCode::CrossBlockInvariant:
    case ErrorCode::CrossBlockEvent:
    case ErrorCode::InvalidPlan:
    case ErrorCode::OverlappingVars:
    case ErrorCode::TransparencyViolation: return exit_violation;
    case ErrorCode::InitViolation:
    case ErrorCode::InactiveMachine:
    case ErrorCode::NonParamPredicate:
    case ErrorCode::GuardNotEntailed:
    case ErrorCode::EmptySuccessor: return exit_runtime;
    default: return exit_error;
    }
}

Json location_json( SourceLocation w )
{
    return { { "line", w.line }, { "column", w.column } };
}

Json error_json( const Error& e, const Universe* u = nullptr )
{
    Json out{ { "code", std::string{ to_string( e.code() ) } }, { "message", e.what() } };
    if ( auto* s = dynamic_cast<const SourceError*>( &e ) )
        out["location"] = location_json( s->where() );
    if ( auto* w = dynamic_cast<const WitnessError*>( &e ); w && u )
        out["witness"] = valuation_json( *u, w->witness() );
    if ( auto* i = dynamic_cast<const InitViolation*>( &e ) )
    {
        out["machine"] = i->machine();
        out["rule"] = i->rule();
    }
    if ( auto* c = dynamic_cast<const CrossBlockError*>( &e ) )
    {
        out["event"] = c->event().empty() ? Json( nullptr ) : Json( c->event() );
        out["conjunct"] = c->conjunct().empty() ? Json( nullptr ) : Json( c->conjunct() );
        out["blocks"] = c->blocks();
    }
    if ( auto* v = dynamic_cast<const StaticViolationError*>( &e ) )
    {
        Json vs = Json::array();
        for ( const auto& x : v->report().violations )
            vs.push_back( violation_json( x ) );
        out["violations"] = std::move( vs );
    }
    return out;
}

std::string where_prefix( const std::string& path, const std::optional<SourceLocation>& w )
{
    if ( !w )
        return path + ": ";
    return path + ":" + std::to_string( w->line ) + ":" + std::to_string( w->column ) + ": ";
}

std::string read_file( const std::string& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw Error{ ErrorCode::InvalidArgument, "cannot read '" + path + "'" };
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded
{
    surface::SourceModel ast;
    surface::CompiledModel model;
};

Loaded load( const std::string& text, bool check_static )
{
    auto ast = surface::parse( text );
    surface::CompileOptions options;
    options.cell_budget = surface::cell_budget_from_env();
    options.check_static = check_static;
    auto model = surface::compile( ast, options );
    return { std::move( ast ), std::move( model ) };
}

Json machine_json( const Machine& m )
{
    Json events = Json::array();
    for ( const auto& [name, e] : m.events )
        events.push_back( { { "name", name },
                            { "params", idents_json( e.pars ) },
                            { "guard", to_text( e.guard ) },
                            { "action", to_text( e.action ) } } );
    return { { "name", m.name },
             { "variables", idents_json( m.vars ) },
             { "invariant", to_text( m.inv ) },
             { "events", std::move( events ) } };
}

std::string names_text( const IdentSet& s )
{
    std::string out;
    for ( const auto& i : s )
        out += ( out.empty() ? "" : ", " ) + i.base;
    return out;
}

// --- check ---

Outcome cmd_check( const std::string& path, const std::string& text )
{
    const auto loaded = load( text, false );
    const auto report = loaded.model.static_report();
    Outcome o;
    Json machines = Json::array();
    for ( const auto& [name, m] : loaded.model.project.machines() )
    {
        Json events = Json::array();
        for ( const auto& [e, _] : m.events )
            events.push_back( e );
        machines.push_back( { { "name", name }, { "variables", idents_json( m.vars ) }, { "events", events } } );
    }
    Json violations = Json::array();
    for ( const auto& v : report.violations )
    {
        violations.push_back( violation_json( v ) );
        o.summary.push_back( where_prefix( path, v.where ) + v.rule + " in " + v.machine
                             + ( v.event ? "." + *v.event : "" ) + ": " + to_string( v.offending )
                             + " not visible" );
    }
    o.payload = { { "machines", std::move( machines ) }, { "violations", std::move( violations ) } };
    o.summary.push_back( std::to_string( loaded.model.project.size() ) + " machine(s), "
                         + std::to_string( report.violations.size() ) + " violation(s)" );
    o.exit = report.ok() ? exit_ok : exit_violation;
    return o;
}

// --- po ---

Outcome cmd_po( const std::string& text, const std::string& machine, const std::string& event )
{
    const auto loaded = load( text, true );
    const auto& project = loaded.model.project;
    std::vector<ObligationResult> results;
    if ( !machine.empty() )
    {
        const auto& m = get_machine( project, machine );
        if ( !event.empty() )
            results.push_back( po_inv_preservation( m, event ) );
        else
            for ( const auto& [e, _] : m.events )
                results.push_back( po_inv_preservation( m, e ) );
    }
    else
    {
        for ( auto& r : po_all( project ) )
            if ( event.empty() || r.event == event )
                results.push_back( std::move( r ) );
        if ( !event.empty() && results.empty() )
            throw Error{ ErrorCode::UnknownEvent, "no machine has an event '" + event + "'" };
    }

    Outcome o;
    Json obligations = Json::array();
    std::size_t failed = 0;
    for ( const auto& r : results )
    {
        Json cex = r.counterexample ? valuation_json( *project.universe(), *r.counterexample ) : Json( nullptr );
        obligations.push_back(
            { { "machine", r.machine }, { "event", r.event }, { "status", to_string( r.status ) }, { "counterexample", cex } } );
        std::string line = r.machine + "." + r.event + ": " + to_string( r.status );
        if ( r.counterexample )
            line += " (" + to_string( *project.universe(), *r.counterexample ) + ")";
        o.summary.push_back( line );
        failed += r.status == ObligationStatus::Fails;
    }
    o.payload = { { "obligations", std::move( obligations ) } };
    o.summary.push_back( std::to_string( results.size() ) + " obligation(s), " + std::to_string( failed ) + " failed" );
    o.exit = failed ? exit_violation : exit_ok;
    return o;
}

// --- simulate ---

std::uint32_t parse_value( const Domain& d, const std::string& s )
{
    std::optional<Value> v;
    switch ( d.kind() )
    {
    case Value::Kind::Bool:
        if ( s == "TRUE" || s == "true" )
            v = Value::boolean( true );
        else if ( s == "FALSE" || s == "false" )
            v = Value::boolean( false );
        break;
    case Value::Kind::Int:
    {
        std::int64_t n = 0;
        const auto* end = s.data() + s.size();
        if ( auto [p, ec] = std::from_chars( s.data(), end, n ); ec == std::errc{} && p == end )
            v = Value::integer( n );
        break;
    }
    case Value::Kind::Symbol: v = Value::enumerated( s ); break;
    }
    std::optional<std::uint32_t> index;
    if ( v )
        index = d.index_of( *v );
    if ( !index )
        throw Error{ ErrorCode::ScriptError, "'" + s + "' is not in the domain" };
    return *index;
}

// One step per line: `<machine> <event> [param=value ...]`; `#` starts a comment.
std::vector<ScriptStep> parse_script( const std::string& text, const Universe& u )
{
    std::vector<ScriptStep> out;
    std::istringstream in{ text };
    std::string line;
    for ( int number = 1; std::getline( in, line ); ++number )
    {
        if ( auto hash = line.find( '#' ); hash != std::string::npos )
            line.erase( hash );
        std::istringstream words{ line };
        std::vector<std::string> w{ std::istream_iterator<std::string>{ words }, {} };
        if ( w.empty() )
            continue;
        auto fail = [&]( const std::string& msg ) {
            throw SourceError{ ErrorCode::ScriptError, msg, { number, 1 } };
        };
        if ( w.size() < 2 )
            fail( "expected '<machine> <event> [param=value ...]'" );
        ScriptStep s{ w[0], w[1], {} };
        for ( std::size_t i = 2; i < w.size(); ++i )
        {
            const auto eq = w[i].find( '=' );
            if ( eq == std::string::npos || eq == 0 )
                fail( "expected param=value, found '" + w[i] + "'" );
            const auto name = w[i].substr( 0, eq );
            const auto ident = u.lookup( name );
            if ( !ident || !ident->is_param() )
                fail( "'" + name + "' is not a parameter" );
            if ( s.params.count( *ident ) )
                fail( "parameter '" + name + "' given twice" );
            try
            {
                s.params[*ident] = parse_value( u.domain_of( *ident ), w[i].substr( eq + 1 ) );
            }
            catch ( const Error& e )
            {
                fail( e.what() );
            }
        }
        out.push_back( std::move( s ) );
    }
    return out;
}

struct SimulateOptions
{
    std::size_t steps = 0;
    bool random = false;
    std::uint64_t seed = 0;
    std::string script;
};

Outcome cmd_simulate( const std::string& text, const SimulateOptions& opt )
{
    const auto loaded = load( text, true );
    const auto project = std::make_shared<const Project>( loaded.model.project );
    const auto& u = *project->universe();
    std::vector<ScriptStep> script;
    if ( !opt.random )
        script = parse_script( read_file( opt.script ), u );

    RunState initial;
    try
    {
        initial = init_run( project, loaded.model.init );
    }
    catch ( const InitViolation& e )
    {
        throw Failure{ exit_runtime, error_json( e, &u ) };
    }

    const auto trace = opt.random ? run_random( initial, opt.seed, opt.steps ) : run_script( initial, script );

    Outcome o;
    Json records = Json::array();
    for ( const auto& r : trace.records )
    {
        Json warnings = Json::array();
        for ( const auto& w : r.warnings )
        {
            warnings.push_back( warning_json( w ) );
            o.summary.push_back( "step " + std::to_string( r.index ) + ": warning " + w.rule + " on " + w.machine + ": "
                                 + w.message );
        }
        records.push_back( { { "index", r.index },
                             { "machine", r.machine },
                             { "event", r.event },
                             { "params", valuation_json( u, r.params ) },
                             { "states", states_json( r.snapshot ) },
                             { "warnings", std::move( warnings ) } } );
    }
    Json error = nullptr;
    if ( trace.outcome == TraceOutcome::StepError )
    {
        error = { { "code", std::string{ to_string( *trace.error ) } },
                  { "index", trace.error_index },
                  { "message", trace.message },
                  { "witness", trace.witness ? valuation_json( u, *trace.witness ) : Json( nullptr ) } };
        o.summary.push_back( "step " + std::to_string( trace.error_index ) + ": "
                             + std::string{ to_string( *trace.error ) } + ": " + trace.message );
    }

    o.payload = { { "mode", opt.random ? "random" : "script" } };
    if ( opt.random )
    {
        o.payload["seed"] = opt.seed;
        o.payload["steps"] = opt.steps;
    }
    o.payload["initial"] = states_json( initial.active );
    o.payload["records"] = std::move( records );
    o.payload["outcome"] = to_string( trace.outcome );
    o.payload["step_error"] = std::move( error );
    o.payload["final"] = states_json( trace.final_state.active );

    for ( const auto& [name, state] : trace.final_state.active )
        o.summary.push_back( name + ": " + to_text( state ) );
    o.summary.push_back( std::to_string( trace.records.size() ) + " step(s), " + to_string( trace.outcome ) );
    o.exit = trace.outcome == TraceOutcome::StepError || trace.has_warnings() ? exit_runtime : exit_ok;
    return o;
}

// --- split ---

std::string emit_ebm( const surface::SourceModel& ast, const std::vector<Machine>& subs )
{
    surface::SourceModel header;
    header.declarations = ast.declarations;
    std::ostringstream out;
    out << surface::print( header );
    for ( const auto& m : subs )
    {
        out << "\nmachine " << m.name << "\n";
        if ( !m.vars.empty() )
            out << "  variables " << names_text( m.vars ) << "\n";
        if ( const auto inv = to_text( m.inv ); inv != "true" )
            out << "  invariant " << inv << "\n";
        for ( const auto& [name, e] : m.events )
        {
            out << "  event " << name << "\n";
            if ( !e.pars.empty() )
                out << "    any " << names_text( e.pars ) << "\n";
            if ( const auto guard = to_text( e.guard ); guard != "true" )
                out << "    where " << guard << "\n";
            // Unconstrained primes are spelled out so the implicit frame does not pin them.
            std::string action = to_text( e.action );
            const auto free = free_idents( e.action );
            for ( const auto& v : m.vars )
                if ( !free.count( prime( v ) ) )
                    action += " & " + v.base + "' = " + v.base + "'";
            out << "    then " << action << "\n";
            out << "  end\n";
        }
        out << "end\n";
    }
    return out.str();
}

Json transition_json( const Universe& u, const TransitionWitness& t )
{
    return { { "event", t.event },
             { "state", valuation_json( u, t.state ) },
             { "params", valuation_json( u, t.params ) },
             { "next", valuation_json( u, t.next ) },
             { "side", t.in_source ? "source" : "composition" } };
}

Outcome cmd_split( const std::string& text, const std::string& machine, const std::string& plan_name,
                   const std::string& emit )
{
    const auto loaded = load( text, true );
    const auto& project = loaded.model.project;
    const auto& u = *project.universe();
    const auto& plan = loaded.model.plan( plan_name );
    if ( plan.source != machine )
        throw Error{ ErrorCode::InvalidArgument,
                     "plan '" + plan.name + "' splits '" + plan.source + "', not '" + machine + "'" };
    const auto& source = get_machine( project, machine );

    Json plan_json{ { "name", plan.name }, { "source", plan.source }, { "blocks", Json::array() } };
    for ( const auto& b : plan.blocks )
        plan_json["blocks"].push_back( { { "name", b.name }, { "variables", idents_json( b.vars ) } } );

    std::vector<Machine> subs;
    try
    {
        subs = split_submachines( project, plan );
    }
    catch ( const Error& e )
    {
        if ( e.code() == ErrorCode::UnknownMachine )
            throw;
        throw Failure{ exit_violation, error_json( e, &u ), { { "plan", plan_json } } };
    }

    const auto eq = check_split_equivalence( source, subs );

    Outcome o;
    Json submachines = Json::array();
    for ( const auto& m : subs )
        submachines.push_back( machine_json( m ) );

    auto all_hold = [&]( const Machine& m ) {
        for ( const auto& [e, _] : m.events )
            if ( po_inv_preservation( m, e ).status == ObligationStatus::Fails )
                return false;
        return true;
    };
    Json transfer{ { "source", all_hold( source ) }, { "submachines", Json::object() } };
    for ( const auto& m : subs )
        transfer["submachines"][m.name] = all_hold( m );

    Json equivalence{ { "equal", eq.equal },
                      { "difference", eq.equal ? Json( nullptr ) : Json( eq.difference ) },
                      { "detail", eq.detail },
                      { "state_witness", eq.state_witness ? valuation_json( u, *eq.state_witness ) : Json( nullptr ) },
                      { "transition", eq.transition ? transition_json( u, *eq.transition ) : Json( nullptr ) } };

    o.payload = { { "plan", std::move( plan_json ) },
                  { "submachines", std::move( submachines ) },
                  { "equivalence", std::move( equivalence ) },
                  { "obligations_hold", std::move( transfer ) } };
    if ( !emit.empty() )
    {
        std::ofstream out{ emit, std::ios::binary };
        out << emit_ebm( loaded.ast, subs );
        if ( !out )
            throw Error{ ErrorCode::InvalidArgument, "cannot write '" + emit + "'" };
        o.payload["emitted"] = emit;
    }
    o.summary.push_back( machine + " split by " + plan.name + " into " + std::to_string( subs.size() )
                         + " submachine(s): " + ( eq.equal ? "Equal" : "Differs (" + eq.detail + ")" ) );
    o.exit = eq.equal ? exit_ok : exit_violation;
    return o;
}

// --- swap-check ---

Outcome cmd_swap_check( const std::string& text, const std::vector<std::string>& retire_names,
                        const std::vector<std::string>& activate_specs, const std::string& plan_name )
{
    const auto loaded = load( text, true );
    auto project = loaded.model.project;
    std::set<std::string> retire{ retire_names.begin(), retire_names.end() };
    std::vector<std::pair<std::string, std::optional<std::string>>> activations;
    for ( const auto& spec : activate_specs )
    {
        const auto colon = spec.find( ':' );
        if ( colon == std::string::npos )
            activations.emplace_back( spec, std::nullopt );
        else
            activations.emplace_back( spec.substr( 0, colon ), spec.substr( colon + 1 ) );
    }

    if ( !plan_name.empty() )
    {
        const auto& plan = loaded.model.plan( plan_name );
        try
        {
            project = split_machine( project, plan );
        }
        catch ( const Error& e )
        {
            if ( e.code() == ErrorCode::UnknownMachine )
                throw;
            throw Failure{ exit_violation, error_json( e, project.universe().get() ) };
        }
        if ( retire.empty() && activations.empty() )
        {
            retire.insert( plan.source );
            for ( const auto& b : plan.blocks )
                activations.emplace_back( b.name, std::nullopt );
        }
    }

    const auto ptr = std::make_shared<const Project>( project );
    const auto& u = *ptr->universe();
    RunState rs;
    try
    {
        rs = init_run( ptr, loaded.model.init );
    }
    catch ( const InitViolation& e )
    {
        throw Failure{ exit_runtime, error_json( e, &u ) };
    }

    std::vector<Predicate> retired;
    for ( const auto& r : retire )
    {
        if ( !rs.is_active( r ) )
            throw Error{ ErrorCode::NotActive, "machine '" + r + "' is not active" };
        retired.push_back( rs.active.at( r ) );
    }
    const auto before = intersect_all( ptr->universe(), retired );

    std::map<std::string, Predicate> activate;
    for ( const auto& [name, expr] : activations )
    {
        const auto& m = get_machine( *ptr, name );
        Predicate state = proj( m.vars, before );
        if ( expr )
        {
            const auto e = surface::parse_expression( *expr, loaded.ast.declarations, true );
            state = surface::compile_expr( e, ptr->universe(), loaded.ast.declarations,
                                           surface::cell_budget_from_env() );
        }
        if ( !activate.emplace( name, state ).second )
            throw Error{ ErrorCode::InvalidArgument, "machine '" + name + "' activated twice" };
    }
    std::vector<Predicate> fresh;
    for ( const auto& [_, p] : activate )
        fresh.push_back( p );
    const auto after = intersect_all( ptr->universe(), fresh );

    Outcome o;
    Json activated = Json::object();
    for ( const auto& [name, p] : activate )
        activated[name] = predicate_json( p );
    o.payload = { { "retire", Json( std::vector<std::string>{ retire.begin(), retire.end() } ) },
                  { "activate", std::move( activated ) },
                  { "retired_conjunction", predicate_json( before ) },
                  { "activated_conjunction", predicate_json( after ) } };
    try
    {
        const auto next = replace_active( rs, retire, activate );
        o.payload["transparent"] = true;
        o.payload["witness"] = nullptr;
        o.payload["active"] = states_json( next.active );
        o.summary.push_back( "swap is transparent" );
    }
    catch ( const Error& e )
    {
        if ( e.code() != ErrorCode::TransparencyViolation && e.code() != ErrorCode::InitViolation )
            throw;
        o.payload["transparent"] = false;
        auto* w = dynamic_cast<const WitnessError*>( &e );
        o.payload["witness"] = w ? valuation_json( u, w->witness() ) : Json( nullptr );
        o.error = error_json( e, &u );
        o.summary.push_back( std::string{ to_string( e.code() ) } + ": " + e.what() );
        o.exit = exit_violation;
    }
    return o;
}

// --- conjuncts ---

Outcome cmd_conjuncts( const std::string& text, const std::string& machine, const std::string& target,
                       const std::string& event )
{
    const auto loaded = load( text, false );
    const auto& m = get_machine( loaded.model.project, machine );
    if ( target != "inv" && event.empty() )
        throw Error{ ErrorCode::InvalidArgument, "--target " + target + " needs --event" };
    const Predicate& p = target == "inv" ? m.inv : target == "guard" ? m.event( event ).guard : m.event( event ).action;

    Outcome o;
    Json parts = Json::array();
    const auto cs = conjuncts( p );
    for ( const auto& c : cs )
    {
        parts.push_back( { { "text", to_text( c ) }, { "free", idents_json( free_idents( c ) ) } } );
        o.summary.push_back( to_text( c ) + "    free " + to_string( free_idents( c ) ) );
    }
    o.payload = { { "machine", machine },
                  { "target", target },
                  { "event", target == "inv" ? Json( nullptr ) : Json( event ) },
                  { "predicate", { { "text", to_text( p ) }, { "free", idents_json( free_idents( p ) ) } } },
                  { "conjuncts", std::move( parts ) } };
    o.summary.push_back( std::to_string( cs.size() ) + " conjunct(s)" );
    return o;
}

} // namespace

int run( int argc, const char* const* argv, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Executable Event-B meta-framework: static checks, proof obligations, simulation and splitting",
                  "ebmeta" };
    app.require_subcommand( 1 );
    app.fallthrough();
    app.set_version_flag( "--version", tool_version );
    std::string format = "json";
    app.add_option( "--format", format, "Report format" )->check( CLI::IsMember( { "json", "text" } ) );

    std::string file;
    auto add_file = [&]( CLI::App* sub ) { sub->add_option( "file", file, "Input .ebm model" )->required(); };

    auto* check = app.add_subcommand( "check", "Check the visibility constraints of every machine" );
    add_file( check );

    std::string machine, event;
    auto* po = app.add_subcommand( "po", "Discharge invariant-preservation obligations" );
    add_file( po );
    po->add_option( "--machine", machine, "Only this machine" );
    po->add_option( "--event", event, "Only this event" );

    SimulateOptions sim;
    auto* simulate = app.add_subcommand( "simulate", "Run a random or scripted trace from the init states" );
    add_file( simulate );
    auto* steps_opt = simulate->add_option( "--steps", sim.steps, "Number of random steps" );
    auto* seed_opt = simulate->add_option( "--seed", sim.seed, "64-bit seed for mt19937_64" );
    auto* script_opt = simulate->add_option( "--script", sim.script, "Script file, one '<machine> <event> [p=v ...]' per line" );
    steps_opt->excludes( script_opt );
    seed_opt->excludes( script_opt );

    std::string plan, emit;
    auto* split = app.add_subcommand( "split", "Split a machine by a plan and check the composition" );
    add_file( split );
    split->add_option( "--machine", machine, "Machine to split" )->required();
    split->add_option( "--plan", plan, "Split plan declared in the file" )->required();
    split->add_option( "--emit", emit, "Write the submachines to this .ebm file" );

    std::vector<std::string> retire, activate;
    auto* swap = app.add_subcommand( "swap-check", "Check the transparency of a hot replacement" );
    add_file( swap );
    swap->add_option( "--retire", retire, "Active machine to retire (repeatable)" )->allow_extra_args( false );
    swap->add_option( "--activate", activate, "Machine to activate, as NAME or NAME:EXPR (repeatable)" )
        ->allow_extra_args( false );
    swap->add_option( "--plan", plan, "Split by this plan first; alone, swaps its source for its blocks" );

    std::string target;
    auto* conj = app.add_subcommand( "conjuncts", "Print the finest conjunctive decomposition" );
    add_file( conj );
    conj->add_option( "--machine", machine, "Machine" )->required();
    conj->add_option( "--target", target, "inv, guard or action" )
        ->required()
        ->check( CLI::IsMember( { "inv", "guard", "action" } ) );
    conj->add_option( "--event", event, "Event, for guard and action" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        return app.exit( e, out, err ) == 0 ? exit_ok : exit_error;
    }
    if ( simulate->parsed() && !script_opt->count() && !steps_opt->count() )
    {
        err << "simulate: one of --steps or --script is required\n";
        return exit_error;
    }
    sim.random = !script_opt->count();

    auto* command = app.get_subcommands().front();
    const std::string name = command->get_name();
    Json report{ { "tool", "ebmeta" }, { "version", tool_version }, { "command", name } };

    Outcome o;
    std::string text;
    try
    {
        text = read_file( file );
        report["input"] = { { "path", file }, { "sha256", sha256_hex( text ) } };
        if ( command == check )
            o = cmd_check( file, text );
        else if ( command == po )
            o = cmd_po( text, machine, event );
        else if ( command == simulate )
            o = cmd_simulate( text, sim );
        else if ( command == split )
            o = cmd_split( text, machine, plan, emit );
        else if ( command == swap )
            o = cmd_swap_check( text, retire, activate, plan );
        else
            o = cmd_conjuncts( text, machine, target, event );
    }
    catch ( const Failure& f )
    {
        o = {};
        o.exit = f.exit;
        o.error = f.error;
        o.payload = f.payload;
        o.summary.push_back( f.error["code"].get<std::string>() + ": " + f.error["message"].get<std::string>() );
    }
    catch ( const Error& e )
    {
        o = {};
        o.exit = exit_for( e.code() );
        o.error = error_json( e );
        std::optional<SourceLocation> where;
        if ( auto* s = dynamic_cast<const SourceError*>( &e ) )
            where = s->where();
        if ( auto* v = dynamic_cast<const StaticViolationError*>( &e ) )
            for ( const auto& x : v->report().violations )
                o.summary.push_back( where_prefix( file, x.where ) + x.rule + " in " + x.machine
                                     + ( x.event ? "." + *x.event : "" ) + ": " + to_string( x.offending )
                                     + " not visible" );
        o.summary.push_back( where_prefix( file, where ) + std::string{ to_string( e.code() ) } + ": " + e.what() );
    }
    if ( !report.contains( "input" ) )
        report["input"] = { { "path", file }, { "sha256", nullptr } };
    report["status"] = status_of( o.exit );
    report["exit_code"] = o.exit;
    report["payload"] = std::move( o.payload );
    report["error"] = std::move( o.error );

    auto& summary = format == "text" ? out : err;
    for ( const auto& line : o.summary )
        summary << name << ": " << line << "\n";
    if ( format == "json" )
        out << report.dump( 2 ) << "\n";
    return o.exit;
}

} // namespace ebmeta::cli
