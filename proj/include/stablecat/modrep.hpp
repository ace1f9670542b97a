#pragma once

#include <string>
#include <vector>

#include "stablecat/algebra.hpp"

namespace stablecat {

enum class Side { Left, Right };

inline Side flip(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
std::string side_name(Side s);
Side side_from_name(const std::string& name);

/// A finite-dimensional module presented by one action matrix per algebra
/// generator (columns = coordinates of images of basis vectors). The induced
/// action of every algebra basis element is derived once at construction and
/// checked against the structure constants.
class Module {
  public:
    Module(AlgebraPtr algebra, Side side, std::vector<FieldMatrix> gen_action);

    const AlgebraPtr& algebra() const { return algebra_; }
    Side side() const { return side_; }
    std::size_t dim() const { return dim_; }
    const std::vector<FieldMatrix>& gen_action() const { return gen_action_; }
    const FieldMatrix& basis_action(std::size_t b) const { return basis_action_[b]; }
    /// Action of an arbitrary algebra element given by basis coordinates.
    FieldMatrix action_of(const std::vector<std::int64_t>& coords) const;

    bool operator==(const Module& other) const;

  private:
    AlgebraPtr algebra_;
    Side side_;
    std::size_t dim_;
    std::vector<FieldMatrix> gen_action_;
    std::vector<FieldMatrix> basis_action_;
};

/// A module homomorphism; matrix maps source coordinates to target
/// coordinates and intertwines all generator actions.
struct Morphism {
    Module source;
    Module target;
    FieldMatrix matrix;

    Morphism(Module src, Module tgt, FieldMatrix m, bool verify = true);
};

Morphism compose(const Morphism& g, const Morphism& f);  ///< g after f
Morphism zero_morphism(const Module& src, const Module& tgt);
Morphism identity_morphism(const Module& m);

/// The regular module: the algebra acting on itself from the given side.
Module regular_module(const AlgebraPtr& a, Side side);
/// Direct sum of n copies of the regular module.
Module free_module(const AlgebraPtr& a, Side side, std::size_t n);
/// The simple module k = R / rad R; catalog algebras are local so this is
/// the unique simple.
Module simple_module(const AlgebraPtr& a, Side side);
Module zero_module(const AlgebraPtr& a, Side side);

/// Builtin module table for the CLI: "k", "R", "J" (= dual of the regular
/// module on the other side), "m" (= radical of the regular module).
Module builtin_module(const AlgebraPtr& a, Side side, const std::string& name);

/// Deterministic basis of Hom(M, N) as a module-morphism list.
std::vector<Morphism> hom_space(const Module& m, const Module& n);

/// Coordinates of a morphism matrix in a hom-space basis.
std::vector<std::int64_t> hom_coords(const std::vector<Morphism>& basis, const FieldMatrix& f);

struct SubmoduleResult {
    Module module;
    Morphism inclusion;
};

struct QuotientResult {
    Module module;
    Morphism projection;
};

/// Canonical submodule on a spanning set of column vectors (must be closed
/// under the action). Equal spans give identical results.
SubmoduleResult submodule_from_columns(const Module& m, const FieldMatrix& cols);

/// Canonical quotient by a submodule given as a spanning column set.
QuotientResult quotient_by_columns(const Module& m, const FieldMatrix& cols);

SubmoduleResult kernel(const Morphism& f);
SubmoduleResult image(const Morphism& f);
QuotientResult cokernel(const Morphism& f);

Module direct_sum(const std::vector<Module>& parts);

/// Linear dual with side flipped; generator matrices are transposed.
Module dual(const Module& m);
/// Contravariant dual of a morphism: dual(f) : dual(target) -> dual(source).
Morphism dual(const Morphism& f);

/// The tensor product M (x)_R N of a right module with a left module, as a
/// quotient of the vector-space tensor product (Kronecker coordinates).
struct TensorSpace {
    std::size_t dim;
    FieldMatrix projection;  ///< (dim) x (dim M * dim N)
    FieldMatrix section;     ///< (dim M * dim N) x (dim)
};
TensorSpace tensor_over_R(const Module& m_right, const Module& n_left);

/// Induced map f (x) id : M (x) N -> M' (x) N.
FieldMatrix tensor_map_right(const TensorSpace& src, const TensorSpace& dst,
                             const Morphism& f, const Module& n);
/// Induced map id (x) g : M (x) N -> M (x) N'.
FieldMatrix tensor_map_left(const TensorSpace& src, const TensorSpace& dst,
                            const Module& m, const Morphism& g);

SubmoduleResult radical_submodule(const Module& m);
SubmoduleResult socle(const Module& m);
QuotientResult top(const Module& m);

struct CoverResult {
    Module cover;
    Morphism epi;
};
struct HullResult {
    Module hull;
    Morphism mono;
};

/// Projective cover (catalog algebras are local, so covers are free of rank
/// dim top(M)); the kernel lies inside the radical of the cover.
CoverResult projective_cover(const Module& m);
/// Injective hull via duality: dual of the projective cover of the dual.
/// The image contains the socle of the hull (essentiality).
HullResult injective_hull(const Module& m);

bool is_projective(const Module& m);
bool is_injective(const Module& m);
/// Finite modules over the catalog algebras are flat iff projective.
bool is_flat(const Module& m);

}  // namespace stablecat
