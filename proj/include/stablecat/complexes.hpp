#pragma once

#include <optional>

#include "stablecat/modrep.hpp"

namespace stablecat {

/// A labeled direct summand of a complex term (a contiguous coordinate
/// block, closed under the action).
struct Summand {
    std::string label;
    std::size_t dim;
};

/// A chain complex supported on the finite degree window [lo, hi], with
/// differentials lowering degree. The window is a finite observation of a
/// potentially unbounded object: exactness-style verdicts are only asserted
/// at interior degrees lo < n < hi, while hom/extension computations treat
/// the complex as literally zero outside the window.
struct WindowedComplex {
    AlgebraPtr algebra;
    Side side = Side::Left;
    int lo = 0;
    int hi = 0;
    std::vector<Module> terms;    ///< terms[n - lo]
    std::vector<Morphism> diffs;  ///< diffs[n - lo - 1] = d_n : X_n -> X_{n-1}
    /// Optional per-degree decomposition into labeled summands.
    std::optional<std::vector<std::vector<Summand>>> tags;

    const Module& term(int n) const;
    /// d_n for lo < n <= hi.
    const Morphism& diff(int n) const;
    bool in_window(int n) const { return n >= lo && n <= hi; }
    std::size_t length() const { return static_cast<std::size_t>(hi - lo); }

    /// Checks shapes, d∘d = 0, and tag consistency. Throws invariant_error.
    void verify() const;
};

WindowedComplex make_complex(AlgebraPtr algebra, Side side, int lo, std::vector<Module> terms,
                             std::vector<Morphism> diffs);

/// S^n(M): M concentrated in degree n.
WindowedComplex sphere(const Module& m, int n, int lo, int hi);
/// D^n(M): M in degrees n and n-1 with identity differential.
WindowedComplex disk(const Module& m, int n, int lo, int hi);

/// Degree shift: (shift(X,s))_n = X_{n-s}, with differentials scaled by
/// (-1)^s.
WindowedComplex shift(const WindowedComplex& x, int s);

struct HomologyResult {
    std::size_t dim;
    Module module;
};

/// Homology at an interior degree (lo < n < hi); boundary degrees are not
/// assertable on a window.
HomologyResult homology_at(const WindowedComplex& x, int n);

/// A homology class witness: a cycle not a boundary, in X_n coordinates
/// (canonical: first canonical kernel basis vector outside the boundary
/// space). nullopt when homology vanishes.
std::optional<std::vector<std::int64_t>> homology_witness(const WindowedComplex& x, int n);

struct ExactnessFailure {
    int degree;
    std::vector<std::int64_t> witness;
};

/// First interior degree with nonvanishing homology, if any.
std::optional<ExactnessFailure> first_interior_failure(const WindowedComplex& x);

/// A bounded complex of plain F_p vector spaces (used for hom complexes and
/// tensored complexes). Degrees outside [lo, hi] are zero.
struct VectorComplex {
    PrimeField field{2};
    int lo = 0;
    int hi = 0;
    std::vector<std::size_t> dims;    ///< dims[n - lo]
    std::vector<FieldMatrix> diffs;   ///< diffs[n - lo - 1] = d_n

    std::size_t dim(int n) const;
    const FieldMatrix& diff(int n) const;
    void verify() const;

    /// Honest homology (zero outside the window), defined for every n.
    std::size_t homology_dim(int n) const;
    std::optional<std::vector<std::int64_t>> homology_witness(int n) const;
    /// First interior failure (lo < n < hi).
    std::optional<ExactnessFailure> first_interior_failure() const;
};

/// The hom complex of two windowed complexes, with degree-n term
/// (+)_k Hom(X_k, Y_{k+n}) and differential
/// (delta_n f)_k = d_{k+n} f_k - (-1)^n f_{k-1} d_k.
struct HomComplex {
    struct Block {
        int source_degree;             ///< k
        std::vector<Morphism> basis;   ///< basis of Hom(X_k, Y_{k+n})
    };
    VectorComplex complex;
    std::vector<std::vector<Block>> blocks;  ///< per hom degree n - lo
};

HomComplex hom_complex(const WindowedComplex& x, const WindowedComplex& y);

/// The complex A (x)_R C for a right module A and a complex of left modules
/// C (or symmetrically C (x)_R B when C is a complex of right modules).
VectorComplex tensored_vector_complex(const Module& a, const WindowedComplex& c);

/// A degree-zero chain map between complexes over one ring and side.
/// Components outside the window overlap are zero.
struct ChainMap {
    WindowedComplex source;
    WindowedComplex target;
    int lo = 0;                          ///< first stored component degree
    std::vector<FieldMatrix> components; ///< components[k - lo] : X_k -> Y_k

    FieldMatrix component(int k) const;  ///< zero-shaped outside storage
    void verify() const;
};

/// Deterministic basis of the space of chain maps X -> Y.
std::vector<ChainMap> chain_map_space(const WindowedComplex& x, const WindowedComplex& y);

/// Whether f is chain homotopic to zero via module homotopies.
bool null_homotopic(const ChainMap& f);

/// dim (chain maps X -> Y modulo chain homotopy).
std::size_t chain_homotopy_classes_dim(const WindowedComplex& x, const WindowedComplex& y);

/// A degreewise split extension 0 -> sub -> total -> quot -> 0 of complexes,
/// in block coordinates (sub first).
struct Extension {
    WindowedComplex total;
    WindowedComplex sub;
    WindowedComplex quot;
};

/// The extension of X by shift(Z,-1) glued along a chain map f : X -> Z.
Extension extension_from_chain_map(const ChainMap& f);

/// Structural check of the block form of an extension.
bool is_degreewise_split_extension(const Extension& e);

/// Whether the extension splits in the category of complexes (a chain-map
/// section of the quotient projection exists).
bool is_split_extension(const Extension& e);

/// dim of the space of extension classes of X by shift(Z,-1) realized by
/// chain maps X -> Z, computed through the gluing obstruction (independent
/// of chain_homotopy_classes_dim).
std::size_t extension_classes_dim(const WindowedComplex& x, const WindowedComplex& z);

/// Per-degree tag selection (ascending tag indices, one list per degree).
using Selection = std::vector<std::vector<std::size_t>>;

Selection empty_selection(const WindowedComplex& x);
Selection full_selection(const WindowedComplex& x);
bool selection_eq(const Selection& a, const Selection& b);

/// Tags a complex whose terms are standard free modules with one tag per
/// regular-module copy. Throws when a term is not in standard free form.
WindowedComplex auto_free_tags(const WindowedComplex& x);

/// The tag-indexed subcomplex spanned by a downward-closed selection
/// (terms are the selected blocks, differential restricted).
WindowedComplex subcomplex_from_selection(const WindowedComplex& x, const Selection& sel);

/// The subquotient on a relatively closed selection: blocks in sel, with
/// the (sel x sel) corner of the differential.
WindowedComplex subquotient_from_selection(const WindowedComplex& x, const Selection& sel);

/// Smallest downward-closed selection containing seed: whenever a selected
/// summand's image meets a lower summand, that summand is selected too.
Selection covering_closure(const WindowedComplex& x, const Selection& seed);

/// covering_closure materialized as a subcomplex.
WindowedComplex covering_subcomplex(const WindowedComplex& x, const Selection& seed);

/// Grows the covering closure of seed until the selected subcomplex is
/// interior-exact, alternating downward closure with greedy kernel repairs
/// (first failing degree, first-tag-index tie-breaking). Requires x itself
/// interior-exact.
Selection exact_covering_selection(const WindowedComplex& x, const Selection& seed);
WindowedComplex exact_covering_subcomplex(const WindowedComplex& x, const Selection& seed);

struct Filtration {
    /// Strictly increasing cumulative selections; the last one is full.
    std::vector<Selection> cumulative;
};

/// Filters a rank-1-tagged complex of frees P into layers whose tensored
/// complexes A (x) layer and A (x) (layer quotient) are interior-exact.
/// Requires A (x) P interior-exact.
Filtration filtration_by_small(const WindowedComplex& p, const Module& a);

}  // namespace stablecat
