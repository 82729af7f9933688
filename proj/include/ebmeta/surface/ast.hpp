#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebmeta/error.hpp"
#include "ebmeta/ident.hpp"

namespace ebmeta::surface
{

struct Expr
{
    enum class Kind
    {
        BoolLit,
        IntLit,
        Name, // variable, parameter or enumeration symbol; `primed` for v'
        Not,
        And,
        Or,
        Eq,
        Ne,
        Lt,
        Le,
        Gt,
        Ge,
        Add,
        Sub,
        Neg,
    };

    Kind kind = Kind::BoolLit;
    bool truth = false;
    std::int64_t number = 0;
    std::string name;
    bool primed = false;
    std::vector<Expr> args;
    SourceLocation where;

    static Expr boolean( bool b, SourceLocation at = {} );
    static Expr integer( std::int64_t n, SourceLocation at = {} );
    static Expr ident( std::string n, bool primed = false, SourceLocation at = {} );
    static Expr unary( Kind k, Expr a, SourceLocation at = {} );
    static Expr binary( Kind k, Expr a, Expr b, SourceLocation at = {} );
};

struct DomainDecl
{
    enum class Kind
    {
        Bool,
        Range,
        Enum,
    };

    Kind kind = Kind::Bool;
    std::int64_t low = 0;
    std::int64_t high = 0;
    std::vector<std::string> symbols;
};

struct Declaration
{
    std::string name;
    IdentKind role = IdentKind::Var; // Var or Param
    DomainDecl domain;
    SourceLocation where;
};

struct NameRef
{
    std::string name;
    SourceLocation where;
};

struct EventDecl
{
    std::string name;
    std::vector<NameRef> params;
    std::optional<Expr> guard;
    std::optional<Expr> action;
    SourceLocation where;
};

struct MachineDecl
{
    std::string name;
    std::vector<NameRef> vars;
    std::optional<Expr> invariant;
    std::vector<EventDecl> events;
    SourceLocation where;
};

struct InitDecl
{
    std::string machine;
    Expr state;
    SourceLocation where;
};

struct BlockDecl
{
    std::string name;
    std::vector<NameRef> vars;
    SourceLocation where;
};

struct SplitDecl
{
    std::string name;
    std::string source;
    std::vector<BlockDecl> blocks;
    SourceLocation where;
};

struct SourceModel
{
    std::vector<Declaration> declarations;
    std::vector<MachineDecl> machines;
    std::vector<InitDecl> inits;
    std::vector<SplitDecl> splits;
};

// Structural equality ignoring source locations.
bool same( const Expr& a, const Expr& b );
bool same( const SourceModel& a, const SourceModel& b );

// Syntactic identifier set of an expression, resolved against the
// declarations; enumeration symbols are not identifiers.
IdentSet idents_of( const Expr& e, const std::vector<Declaration>& decls );

} // namespace ebmeta::surface
