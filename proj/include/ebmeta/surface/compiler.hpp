#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ebmeta/model.hpp"
#include "ebmeta/surface/ast.hpp"
#include "ebmeta/transform.hpp"

namespace ebmeta::surface
{

inline constexpr std::uint64_t default_cell_budget = 1'000'000;

// EBMETA_CELL_BUDGET when set to a positive integer, default_cell_budget otherwise.
std::uint64_t cell_budget_from_env();

struct CompileOptions
{
    std::uint64_t cell_budget = default_cell_budget;
    // Throw StaticViolationError when the project is not well formed.
    bool check_static = true;
};

struct CompiledModel
{
    Project project;
    std::map<std::string, Predicate> init;
    std::vector<SplitPlan> plans;
    // (machine, event or "", rule) -> location of the offending expression.
    std::map<std::tuple<std::string, std::string, std::string>, SourceLocation> locations;

    // check_static with source locations attached.
    [[nodiscard]] StaticReport static_report() const;
    [[nodiscard]] const SplitPlan& plan( const std::string& name ) const;
};

UniversePtr build_universe( const std::vector<Declaration>& decls );

// Enumerates every valuation of the expression's syntactic identifiers and
// keeps the satisfying ones. An arithmetic `+`/`-` whose result leaves the
// integer carrier (the hull of all integer domains) is undefined and makes
// the enclosing comparison false. Throws SourceError (TypeError,
// DomainTooLarge).
Predicate compile_expr( const Expr& e, const UniversePtr& u, const std::vector<Declaration>& decls,
                        std::uint64_t cell_budget = default_cell_budget );

// Actions get an implicit `v' = v` for every machine variable whose primed
// form does not occur in the action text.
CompiledModel compile( const SourceModel& ast, const CompileOptions& options = {} );

} // namespace ebmeta::surface
