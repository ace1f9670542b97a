#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stablecat/field.hpp"

namespace stablecat {

/// A finite-dimensional associative unital F_p-algebra given by structure
/// constants. All catalog algebras are local, so projective = free holds for
/// their finitely generated modules.
struct Algebra {
    enum class Family { LocalSqZero, CyclicGroup, TruncPoly };

    PrimeField field;
    std::size_t dim = 0;
    std::vector<std::string> basis_labels;
    /// e_i * e_j = sum_k structure[(i*dim+j)*dim+k] e_k
    std::vector<std::int64_t> structure;
    std::size_t unit_index = 0;
    /// Basis indices of a distinguished generating set (unit excluded).
    std::vector<std::size_t> generators;
    std::vector<std::string> generator_labels;
    /// basis_words[b] spells e_b as an ordered product of generators
    /// (empty word = unit). Every catalog basis element is such a word.
    std::vector<std::vector<std::size_t>> basis_words;
    /// Columns span the Jacobson radical.
    FieldMatrix radical_basis;
    bool commutative = false;
    Family family;
    std::string spec_string;

    Algebra(PrimeField f, FieldMatrix rad) : field(f), radical_basis(std::move(rad)) {}

    std::int64_t c(std::size_t i, std::size_t j, std::size_t k) const {
        return structure[(i * dim + j) * dim + k];
    }

    /// Matrix of left multiplication by e_i.
    FieldMatrix left_mult(std::size_t i) const;
    /// Matrix of right multiplication by e_j.
    FieldMatrix right_mult(std::size_t j) const;
    /// Left multiplication by an arbitrary element (basis coordinates).
    FieldMatrix left_mult_element(const std::vector<std::int64_t>& coords) const;

    std::size_t generator_index(const std::string& label) const;

    /// Verifies associativity, the unit law, and that radical_basis spans a
    /// nilpotent two-sided ideal of codimension 1 (all catalog algebras are
    /// local). Throws invariant_error on failure.
    void verify() const;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// F_p[x_1..x_n] / (all products x_i x_j); local with square-zero radical.
AlgebraPtr mk_local_sq_zero(std::size_t n, std::int64_t p);
/// Group algebra F_p[Z/m]; requires m to be a power of p (local case).
AlgebraPtr mk_cyclic_group_algebra(std::int64_t m, std::int64_t p);
/// Truncated polynomial algebra F_p[x]/(x^e), e >= 1.
AlgebraPtr mk_trunc_poly(std::size_t e, std::int64_t p);

/// Parses "local_sq_zero(n,p)" | "cyclic_group(m,p)" | "trunc_poly(e,p)";
/// whitespace-insensitive. Throws invariant_error on malformed input.
AlgebraPtr parse_ring_spec(const std::string& spec);

/// True when the regular module is self-injective (checked directly).
bool is_quasi_frobenius(const AlgebraPtr& a);

/// Same algebra instance, or structurally identical catalog algebras.
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace stablecat
