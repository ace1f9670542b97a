#include "stablecat/homalg.hpp"

namespace stablecat {

void Resolution::verify() const {
    if (terms.size() != maps.size()) throw internal_error("resolution shape mismatch");
    if (direction == Direction::Projective) {
        if (!maps.empty() && rank(maps[0].matrix) != base.dim())
            throw internal_error("augmentation not surjective");
        for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
            RowSpace ker_i = RowSpace::from_cols(kernel_basis(maps[i].matrix));
            RowSpace im_next = RowSpace::from_cols(maps[i + 1].matrix);
            if (!(ker_i == im_next)) throw internal_error("resolution not exact at a joint");
        }
    } else {
        if (!maps.empty() && rank(maps[0].matrix) != base.dim())
            throw internal_error("coaugmentation not injective");
        for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
            RowSpace im_i = RowSpace::from_cols(maps[i].matrix);
            RowSpace ker_next = RowSpace::from_cols(kernel_basis(maps[i + 1].matrix));
            if (!(im_i == ker_next)) throw internal_error("coresolution not exact at a joint");
        }
    }
}

Resolution projective_resolution(const Module& m, std::size_t len) {
    Resolution res{m, Resolution::Direction::Projective, {}, {}, true};
    Module cur = m;
    Morphism prev_incl = identity_morphism(m);  // placeholder until step 1
    for (std::size_t i = 0; i <= len; ++i) {
        CoverResult cov = projective_cover(cur);
        res.terms.push_back(cov.cover);
        if (i == 0)
            res.maps.push_back(cov.epi);
        else
            res.maps.push_back(compose(prev_incl, cov.epi));
        SubmoduleResult ker = kernel(cov.epi);
        cur = ker.module;
        prev_incl = ker.inclusion;
    }
    res.verify();
    return res;
}

Resolution injective_coresolution(const Module& m, std::size_t len) {
    Resolution res{m, Resolution::Direction::Injective, {}, {}, true};
    Module cur = m;
    Morphism prev_proj = identity_morphism(m);
    for (std::size_t i = 0; i <= len; ++i) {
        HullResult hull = injective_hull(cur);
        res.terms.push_back(hull.hull);
        if (i == 0)
            res.maps.push_back(hull.mono);
        else
            res.maps.push_back(compose(hull.mono, prev_proj));
        QuotientResult coker = cokernel(hull.mono);
        cur = coker.module;
        prev_proj = coker.projection;
    }
    res.verify();
    return res;
}

Module syzygy(const Module& m, std::size_t i) {
    Module cur = m;
    for (std::size_t s = 0; s < i; ++s) cur = kernel(projective_cover(cur).epi).module;
    return cur;
}

Module cosyzygy(const Module& m, std::size_t i) {
    Module cur = m;
    for (std::size_t s = 0; s < i; ++s) cur = cokernel(injective_hull(cur).mono).module;
    return cur;
}

namespace {

/// Matrix of "precompose with d" : Hom(P_{i-1}, N) -> Hom(P_i, N) in the
/// deterministic hom-space bases.
FieldMatrix precompose_matrix(const std::vector<Morphism>& from_basis,
                              const std::vector<Morphism>& to_basis, const Morphism& d,
                              PrimeField f) {
    FieldMatrix m(f, to_basis.size(), from_basis.size());
    for (std::size_t j = 0; j < from_basis.size(); ++j) {
        FieldMatrix comp = mul(from_basis[j].matrix, d.matrix);
        auto coords = hom_coords(to_basis, comp);
        for (std::size_t i = 0; i < coords.size(); ++i) m.set(i, j, coords[i]);
    }
    return m;
}

/// Picks kernel columns spanning a complement of a boundary space (greedy,
/// first-column-first, deterministic).
std::vector<std::size_t> homology_rep_columns(const FieldMatrix& cycles, RowSpace boundaries) {
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < cycles.cols(); ++j) {
        if (!boundaries.contains_col(cycles.col(j))) {
            chosen.push_back(j);
            boundaries =
                RowSpace::sum(boundaries, RowSpace::from_cols(cycles.select_cols({j})));
        }
    }
    return chosen;
}

}  // namespace

ExtResult ext(const Module& m, const Module& n, std::size_t degree) {
    Resolution res = projective_resolution(m, degree + 1);
    const PrimeField& f = m.algebra()->field;
    std::vector<Morphism> h_n = hom_space(res.terms[degree], n);
    std::vector<Morphism> h_next = hom_space(res.terms[degree + 1], n);
    FieldMatrix d_out = precompose_matrix(h_n, h_next, res.maps[degree + 1], f);
    FieldMatrix cycles = kernel_basis(d_out);
    RowSpace boundaries = RowSpace::zero(f, h_n.size());
    if (degree > 0) {
        std::vector<Morphism> h_prev = hom_space(res.terms[degree - 1], n);
        FieldMatrix d_in = precompose_matrix(h_prev, h_n, res.maps[degree], f);
        boundaries = RowSpace::from_cols(d_in);
    }
    auto reps_cols = homology_rep_columns(cycles, boundaries);
    ExtResult out;
    out.dim = RowSpace::sum(boundaries, RowSpace::from_cols(cycles)).dim() - boundaries.dim();
    for (std::size_t j : reps_cols) {
        FieldMatrix mat(f, n.dim(), res.terms[degree].dim());
        for (std::size_t b = 0; b < h_n.size(); ++b) {
            std::int64_t c = cycles.at(b, j);
            if (c != 0) mat = add(mat, scale(c, h_n[b].matrix));
        }
        out.representatives.emplace_back(res.terms[degree], n, mat, false);
    }
    if (out.dim != reps_cols.size()) throw internal_error("ext representative count mismatch");
    return out;
}

TorResult tor(const Module& m_right, const Module& n_left, std::size_t degree) {
    if (m_right.side() != Side::Right || n_left.side() != Side::Left)
        throw invariant_error("tor takes a right module and a left module");
    Resolution res = projective_resolution(m_right, degree + 1);
    const PrimeField& f = m_right.algebra()->field;
    std::vector<TensorSpace> t;
    for (const auto& p : res.terms) t.push_back(tensor_over_R(p, n_left));
    TorResult out;
    if (degree == 0) {
        FieldMatrix t1 = tensor_map_right(t[1], t[0], res.maps[1], n_left);
        RowSpace im = RowSpace::from_cols(t1);
        out.dim = t[0].dim - im.dim();
        FieldMatrix id = FieldMatrix::identity(f, t[0].dim);
        auto reps = homology_rep_columns(id, im);
        for (auto j : reps) out.representatives.push_back(id.col(j));
        return out;
    }
    FieldMatrix d_n = tensor_map_right(t[degree], t[degree - 1], res.maps[degree], n_left);
    FieldMatrix d_next = tensor_map_right(t[degree + 1], t[degree], res.maps[degree + 1], n_left);
    FieldMatrix cycles = kernel_basis(d_n);
    RowSpace boundaries = RowSpace::from_cols(d_next);
    auto reps = homology_rep_columns(cycles, boundaries);
    out.dim = RowSpace::sum(boundaries, RowSpace::from_cols(cycles)).dim() - boundaries.dim();
    for (auto j : reps) out.representatives.push_back(cycles.col(j));
    if (out.dim != reps.size()) throw internal_error("tor representative count mismatch");
    return out;
}

std::vector<GrowthRow> fp_growth_probe(std::int64_t p, const std::vector<std::size_t>& ns) {
    std::vector<GrowthRow> rows;
    for (std::size_t n : ns) {
        auto a = mk_local_sq_zero(n, p);
        Module k = simple_module(a, Side::Left);
        Module o1 = syzygy(k, 1);
        Module o2 = syzygy(k, 2);
        rows.push_back(GrowthRow{n, top(o1).module.dim(), top(o2).module.dim()});
    }
    return rows;
}

}  // namespace stablecat
