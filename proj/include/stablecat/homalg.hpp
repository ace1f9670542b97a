#pragma once

#include "stablecat/modrep.hpp"

namespace stablecat {

/// A finite minimal resolution segment. For the projective direction,
/// maps[0] : terms[0] -> base is the augmentation and maps[i] : terms[i] ->
/// terms[i-1]. For the injective direction, maps[0] : base -> terms[0] is
/// the coaugmentation and maps[i] : terms[i-1] -> terms[i].
struct Resolution {
    enum class Direction { Projective, Injective };
    Module base;
    Direction direction;
    std::vector<Module> terms;
    std::vector<Morphism> maps;
    bool minimal = true;

    /// Checks exactness at every computed joint. Throws internal_error.
    void verify() const;
};

/// Minimal projective resolution of length len (terms P_0..P_len) built by
/// iterated projective covers.
Resolution projective_resolution(const Module& m, std::size_t len);

/// Minimal injective coresolution of length len (terms E_0..E_len) built by
/// iterated injective hulls.
Resolution injective_coresolution(const Module& m, std::size_t len);

/// i-th syzygy (kernel along the minimal projective resolution); syzygy(m,0)
/// returns m itself.
Module syzygy(const Module& m, std::size_t i);
/// i-th cosyzygy (cokernel along the minimal injective coresolution).
Module cosyzygy(const Module& m, std::size_t i);

struct ExtResult {
    std::size_t dim;
    /// Representative cocycles: morphisms P_n -> N spanning Ext modulo
    /// coboundaries (empty matrices when dim is 0).
    std::vector<Morphism> representatives;
};

/// dim Ext^n(M, N) via Hom(-, N) on the minimal projective resolution of M.
ExtResult ext(const Module& m, const Module& n, std::size_t degree);

struct TorResult {
    std::size_t dim;
    /// Representative cycle vectors in the coordinates of P_n (x) N.
    std::vector<std::vector<std::int64_t>> representatives;
};

/// dim Tor_n(M, N) for a right module M and left module N, via the minimal
/// projective resolution of M.
TorResult tor(const Module& m_right, const Module& n_left, std::size_t degree);

struct GrowthRow {
    std::size_t n;       ///< number of square-zero generators
    std::size_t mu1;     ///< minimal generators of the first syzygy of k
    std::size_t mu2;     ///< minimal generators of the second syzygy of k
};

/// Measures minimal-generator growth of syzygies of k over
/// local_sq_zero(n,p); the counts grow geometrically in n.
std::vector<GrowthRow> fp_growth_probe(std::int64_t p, const std::vector<std::size_t>& ns);

}  // namespace stablecat
