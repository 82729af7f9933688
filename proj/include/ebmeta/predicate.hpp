#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ebmeta/ident.hpp"
#include "ebmeta/universe.hpp"

namespace ebmeta
{

using Row = std::vector<std::uint32_t>;

// A set of states, stored as a table over a finite scope. The reading is
// cylindrical: a full state belongs to the predicate iff its restriction to
// the scope is one of the rows. Empty scope with one (empty) row is True;
// no rows at all is False, whatever the scope.
//
// Invariants: scope strictly increasing in Ident order; rows sorted, unique,
// each of scope length, every entry inside its column's domain.
class Predicate
{
    UniversePtr _universe;
    std::vector<Ident> _scope;
    std::vector<Row> _rows;

    struct Trusted
    {
    };
    Predicate( UniversePtr u, std::vector<Ident> scope, std::vector<Row> rows, Trusted );

public:
    // Normalizes column order and row order; validates domains.
    static Predicate from_rows( UniversePtr u, std::vector<Ident> scope, std::vector<Row> rows );
    static Predicate truth( UniversePtr u );
    static Predicate falsity( UniversePtr u );
    static Predicate full( UniversePtr u, const IdentSet& scope );
    static Predicate point( UniversePtr u, const Valuation& state );
    // Keeps every valuation of `scope` accepted by `test`.
    static Predicate tabulate( UniversePtr u, const IdentSet& scope,
                               const std::function<bool( const Valuation& )>& test );

    [[nodiscard]] const UniversePtr& universe() const { return _universe; }
    [[nodiscard]] const std::vector<Ident>& scope() const { return _scope; }
    [[nodiscard]] IdentSet scope_set() const { return { _scope.begin(), _scope.end() }; }
    [[nodiscard]] const std::vector<Row>& rows() const { return _rows; }
    [[nodiscard]] std::size_t size() const { return _rows.size(); }
    [[nodiscard]] bool unsatisfiable() const { return _rows.empty(); }

    [[nodiscard]] std::optional<std::size_t> column( const Ident& i ) const;
    [[nodiscard]] Valuation valuation( std::size_t row ) const;

    // `state` must bind at least every scope ident.
    [[nodiscard]] bool contains( const Valuation& state ) const;

    // Structural identity (same scope, same rows). Use equivalent() for
    // semantic equality.
    bool operator==( const Predicate& other ) const
    {
        return _scope == other._scope && _rows == other._rows;
    }
};

// Partial renaming of identifiers.
using Renaming = std::map<Ident, Ident>;

// Minimal dependence set: the scope idents whose value can change membership.
IdentSet free_idents( const Predicate& p );

// Renames free occurrences along `r`. Idents of scope(p) that are not free
// are dropped first, so only free(p) is subject to the preconditions.
// Throws CaptureError, NonInjective or DomainMismatch.
Predicate subst( const Renaming& r, const Predicate& p );

// Existential quantification of every scope ident outside `keep`.
Predicate proj( const IdentSet& keep, const Predicate& p );

// Natural join; the set intersection of both cylinders.
Predicate intersect( const Predicate& p, const Predicate& q );
Predicate intersect_all( const UniversePtr& u, const std::vector<Predicate>& ps );

// Cylinder extension of p to a superset of its scope.
Predicate extend( const Predicate& p, const IdentSet& scope );

// Complement relative to the full table over scope(p).
Predicate complement( const Predicate& p );

// proj(free(p), p): the same set of states over the smallest scope.
Predicate minimize( const Predicate& p );

bool entails( const Predicate& p, const Predicate& q );
// Smallest state over scope(p) u scope(q) in p but not in q.
std::optional<Valuation> entailment_witness( const Predicate& p, const Predicate& q );

bool equivalent( const Predicate& p, const Predicate& q );
// Smallest state over scope(p) u scope(q) in exactly one of p and q.
std::optional<Valuation> difference_witness( const Predicate& p, const Predicate& q );

// Finest partition of free(p) into blocks B1..Bk with p equal to the
// intersection of proj(Bi, p). Blocks are ordered by their least ident.
// Empty when free(p) is empty.
std::vector<IdentSet> conjunct_blocks( const Predicate& p );

// {proj(Bi, p)} over conjunct_blocks(p), or {p} when free(p) is empty.
std::vector<Predicate> conjuncts( const Predicate& p );

// True iff every block of the finest decomposition is a singleton.
bool decomposable( const Predicate& p );

// p equals the intersection of its projections on `blocks`, which must
// partition free(p).
bool lossless( const Predicate& p, const std::vector<IdentSet>& blocks );

// Renders p as an expression in the surface syntax: a conjunction over its
// finest conjuncts, each written as a disjunction of its rows.
std::string to_text( const Predicate& p );

} // namespace ebmeta
