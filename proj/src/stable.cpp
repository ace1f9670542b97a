#include "stablecat/stable.hpp"

#include <string>
#include <utility>

#include "stablecat/common.hpp"

namespace stablecat {

namespace {

/// Stacks the matrices of a hom-space basis side by side into one map
/// (+) source_i -> target; an empty basis gives a (dim target) x 0 matrix.
FieldMatrix paste_columns(const PrimeField& f, std::size_t target_dim,
                          const std::vector<Morphism>& basis) {
    std::size_t src_dim = basis.empty() ? 0 : basis[0].matrix.cols();
    FieldMatrix out(f, target_dim, src_dim * basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t r = 0; r < target_dim; ++r)
            for (std::size_t c = 0; c < src_dim; ++c)
                out.set(r, b * src_dim + c, basis[b].matrix.at(r, c));
    return out;
}

/// Whether every map J -> target(phi) factors through phi.
bool hom_from_j_surjective(const Module& j, const Morphism& phi) {
    std::vector<Morphism> to_target = hom_space(j, phi.target);
    if (to_target.empty()) return true;
    std::vector<Morphism> to_source = hom_space(j, phi.source);
    FieldMatrix rows(j.algebra()->field, to_source.size(), to_target.size());
    for (std::size_t g = 0; g < to_source.size(); ++g) {
        std::vector<std::int64_t> coords =
            hom_coords(to_target, compose(phi, to_source[g]).matrix);
        for (std::size_t c = 0; c < coords.size(); ++c) rows.set(g, c, coords[c]);
    }
    return rank(rows) == to_target.size();
}

void require_same_ambient(const Module& m, const Module& n, const char* what) {
    if (!same_algebra(m.algebra(), n.algebra()) || m.side() != n.side())
        throw precondition_error(std::string(what) + " requires modules over one algebra and side");
}

}  // namespace

AcyclicityReport classify_inj_complex(const WindowedComplex& x, const std::string& id) {
    x.verify();
    for (const Module& t : x.terms)
        if (!is_injective(t))
            throw precondition_error("classify_inj_complex requires every term to be injective");

    AcyclicityReport rep;
    rep.complex_id = id;
    rep.lo = x.lo;
    rep.hi = x.hi;
    rep.injective_case = true;

    std::optional<ExactnessFailure> exact_fail = first_interior_failure(x);
    rep.exact_interior = !exact_fail.has_value();
    if (exact_fail)
        rep.witnesses.push_back({"exact_interior", exact_fail->degree, exact_fail->witness});

    Module j = builtin_module(x.algebra, x.side, "J");
    HomComplex hc = hom_complex(sphere(j, 0, 0, 0), x);
    std::optional<ExactnessFailure> inj_fail = hc.complex.first_interior_failure();
    rep.inj_acyclic = !inj_fail.has_value();
    if (inj_fail) {
        rep.witnesses.push_back({"inj_acyclic", inj_fail->degree, inj_fail->witness});
        rep.witnesses.push_back({"ac_acyclic", inj_fail->degree, inj_fail->witness});
    }
    rep.ac_acyclic = *rep.inj_acyclic;
    rep.collapse_notes.push_back(
        "ac_acyclic computed as inj_acyclic: the two notions coincide over a Noetherian algebra");

    rep.totally_acyclic = rep.exact_interior && rep.ac_acyclic;
    return rep;
}

AcyclicityReport classify_proj_complex(const WindowedComplex& c, const std::string& id) {
    c.verify();
    for (const Module& t : c.terms)
        if (!is_projective(t))
            throw precondition_error("classify_proj_complex requires every term to be projective");

    AcyclicityReport rep;
    rep.complex_id = id;
    rep.lo = c.lo;
    rep.hi = c.hi;
    rep.injective_case = false;

    std::optional<ExactnessFailure> exact_fail = first_interior_failure(c);
    rep.exact_interior = !exact_fail.has_value();
    if (exact_fail)
        rep.witnesses.push_back({"exact_interior", exact_fail->degree, exact_fail->witness});

    Module j_op = builtin_module(c.algebra, flip(c.side), "J");
    VectorComplex tensored = tensored_vector_complex(j_op, c);
    std::optional<ExactnessFailure> ac_fail = tensored.first_interior_failure();
    rep.ac_acyclic = !ac_fail.has_value();
    if (ac_fail) rep.witnesses.push_back({"ac_acyclic", ac_fail->degree, ac_fail->witness});

    Module r = regular_module(c.algebra, c.side);
    HomComplex hc = hom_complex(c, sphere(r, 0, 0, 0));
    std::optional<ExactnessFailure> firm_fail = hc.complex.first_interior_failure();
    rep.firmly_acyclic = !firm_fail.has_value();
    if (firm_fail)
        rep.witnesses.push_back({"firmly_acyclic", -firm_fail->degree, firm_fail->witness});

    if (rep.ac_acyclic != *rep.firmly_acyclic)
        throw internal_error(
            "cross-check failed: the tensor and hom acyclicity tests disagree on a complex of "
            "projectives");
    rep.collapse_notes.push_back(
        "ac_acyclic (tensor test) and firmly_acyclic (hom test) computed independently; verdicts "
        "agree");

    rep.totally_acyclic = rep.exact_interior && *rep.firmly_acyclic;
    return rep;
}

DualityPairReport duality_pair_check(const WindowedComplex& c,
                                     const std::vector<std::pair<std::string, Module>>& catalog) {
    c.verify();
    DualityPairReport rep;
    for (const auto& [label, m] : catalog) {
        if (!same_algebra(m.algebra(), c.algebra) || m.side() != flip(c.side))
            throw precondition_error(
                "duality_pair_check requires modules on the side opposite the complex");
        VectorComplex tensored = tensored_vector_complex(m, c);
        bool tensor_exact = !tensored.first_interior_failure().has_value();
        HomComplex hc = hom_complex(c, sphere(dual(m), 0, 0, 0));
        bool hom_exact = !hc.complex.first_interior_failure().has_value();
        bool agree = tensor_exact == hom_exact;
        rep.rows.push_back({label, tensor_exact, hom_exact, agree});
        rep.all_agree = rep.all_agree && agree;
    }
    return rep;
}

StableHomResult hom_modulo_postfactor(const Module& m, const Module& n, const Morphism& f) {
    require_same_ambient(m, n, "hom_modulo_postfactor");
    if (!(f.target == n))
        throw precondition_error("hom_modulo_postfactor requires a map landing in the target");
    std::vector<Morphism> basis = hom_space(m, n);
    if (basis.empty()) return {0, {}};
    std::vector<Morphism> lifts = hom_space(m, f.source);
    FieldMatrix rows(m.algebra()->field, lifts.size(), basis.size());
    for (std::size_t g = 0; g < lifts.size(); ++g) {
        std::vector<std::int64_t> coords = hom_coords(basis, compose(f, lifts[g]).matrix);
        for (std::size_t c = 0; c < coords.size(); ++c) rows.set(g, c, coords[c]);
    }
    RowSpace factored = RowSpace::from_rows(rows);
    StableHomResult out;
    for (std::size_t i : factored.free_coordinates()) out.reps.push_back(basis[i]);
    out.dim = out.reps.size();
    return out;
}

StableHomResult hom_modulo_prefactor(const Module& m, const Module& n, const Morphism& f) {
    require_same_ambient(m, n, "hom_modulo_prefactor");
    if (!(f.source == m))
        throw precondition_error("hom_modulo_prefactor requires a map out of the source");
    std::vector<Morphism> basis = hom_space(m, n);
    if (basis.empty()) return {0, {}};
    std::vector<Morphism> descents = hom_space(f.target, n);
    FieldMatrix rows(m.algebra()->field, descents.size(), basis.size());
    for (std::size_t h = 0; h < descents.size(); ++h) {
        std::vector<std::int64_t> coords = hom_coords(basis, compose(descents[h], f).matrix);
        for (std::size_t c = 0; c < coords.size(); ++c) rows.set(h, c, coords[c]);
    }
    RowSpace factored = RowSpace::from_rows(rows);
    StableHomResult out;
    for (std::size_t i : factored.free_coordinates()) out.reps.push_back(basis[i]);
    out.dim = out.reps.size();
    return out;
}

StableHomResult stable_hom_proj(const Module& m, const Module& n) {
    require_same_ambient(m, n, "stable_hom_proj");
    CoverResult cover = projective_cover(n);
    return hom_modulo_postfactor(m, n, cover.epi);
}

StableHomResult stable_hom_inj(const Module& m, const Module& n) {
    require_same_ambient(m, n, "stable_hom_inj");
    HullResult hull = injective_hull(m);
    return hom_modulo_prefactor(m, n, hull.mono);
}

namespace {

AlgebraPtr cyclic_group_of(std::int64_t p, int e) {
    if (e < 1) throw precondition_error("Tate cohomology requires e >= 1");
    std::int64_t order = 1;
    for (int i = 0; i < e; ++i) {
        order *= p;
        if (order > 4096) throw precondition_error("group order exceeds the supported scale");
    }
    return mk_cyclic_group_algebra(order, p);
}

}  // namespace

TateResult tate_cohomology(std::int64_t p, int e, int n_lo, int n_hi) {
    if (n_lo > n_hi) throw precondition_error("Tate cohomology requires an ordered degree range");
    AlgebraPtr a = cyclic_group_of(p, e);
    std::size_t order = a->dim;
    std::size_t gen = a->generators[0];

    std::vector<std::int64_t> u_coords(order, 0);
    u_coords[gen] = 1;
    u_coords[a->unit_index] = a->field.reduce(-1);
    std::vector<std::int64_t> norm_coords(order, 1);
    FieldMatrix mult_u = a->left_mult_element(u_coords);
    FieldMatrix mult_norm = a->left_mult_element(norm_coords);

    Module r = regular_module(a, Side::Left);
    int wlo = n_lo - 2, whi = n_hi + 2;
    std::vector<Module> terms(static_cast<std::size_t>(whi - wlo) + 1, r);
    std::vector<Morphism> diffs;
    for (int n = wlo + 1; n <= whi; ++n)
        diffs.emplace_back(r, r, n % 2 != 0 ? mult_u : mult_norm);
    WindowedComplex resolution = make_complex(a, Side::Left, wlo, std::move(terms), std::move(diffs));

    Module k = simple_module(a, Side::Left);
    HomComplex hc = hom_complex(resolution, sphere(k, 0, 0, 0));

    TateResult out;
    out.lo = n_lo;
    out.hi = n_hi;
    for (int n = n_lo; n <= n_hi; ++n) out.dims.push_back(hc.complex.homology_dim(-n));
    return out;
}

std::size_t tate_via_stable_hom(std::int64_t p, int e, int n) {
    AlgebraPtr a = cyclic_group_of(p, e);
    Module k = simple_module(a, Side::Left);
    Module shifted = n >= 0 ? cosyzygy(k, static_cast<std::size_t>(n))
                            : syzygy(k, static_cast<std::size_t>(-n));
    return stable_hom_inj(shifted, k).dim;
}

std::string trilean_name(Trilean t) {
    switch (t) {
        case Trilean::Yes: return "yes";
        case Trilean::No: return "no";
        default: return "unknown";
    }
}

GorensteinVerdict is_gorenstein_ac_injective(const Module& m, int depth) {
    if (depth < 0) throw precondition_error("search depth must be nonnegative");
    AlgebraPtr a = m.algebra();
    if (is_injective(m))
        return {Trilean::Yes, 0, "injective modules are cycles of contractible complexes"};
    if (is_quasi_frobenius(a))
        return {Trilean::Yes, 0, "over a quasi-Frobenius algebra every module qualifies"};
    if (a->family == Algebra::Family::LocalSqZero && a->generators.size() == 2)
        return {Trilean::No, 0,
                "over the two-generator square-zero algebra only injective modules qualify"};

    Module j = builtin_module(a, m.side(), "J");
    // The right half of a witness complex is a Hom(J,-)-exact injective
    // coresolution, so Ext^i(J, M) must vanish.
    for (int i = 1; i <= depth; ++i)
        if (ext(j, m, static_cast<std::size_t>(i)).dim != 0)
            return {Trilean::No, i,
                    "Ext^" + std::to_string(i) +
                        "(J, M) is nonzero, so no Hom(J,-)-exact coresolution exists"};

    // Leftward extension search: an epi from a sum of copies of J onto the
    // current target, kernel becoming the next target.
    Module cur = m;
    for (int step = 1; step <= depth; ++step) {
        std::vector<Morphism> basis = hom_space(j, cur);
        FieldMatrix phi_mat = paste_columns(a->field, cur.dim(), basis);
        if (rank(phi_mat) < cur.dim()) {
            if (step == 1)
                return {Trilean::No, step, "no epimorphism from an injective module onto it exists"};
            return {Trilean::Unknown, step,
                    "the canonical search step lost surjectivity; inconclusive"};
        }
        if (basis.size() * j.dim() > 4096)
            return {Trilean::Unknown, step, "search target grew beyond the supported scale"};
        std::vector<Module> copies(basis.size(), j);
        Morphism phi(direct_sum(copies), cur, phi_mat);
        if (!hom_from_j_surjective(j, phi))
            return {Trilean::Unknown, step,
                    "the canonical epimorphism is not Hom(J,-)-exact; inconclusive"};
        Module ker = kernel(phi).module;
        if (is_injective(ker))
            return {Trilean::Yes, step, "the search reached an injective kernel and closes contractibly"};
        cur = ker;
    }
    return {Trilean::Unknown, depth, "bounded search exhausted"};
}

GorensteinVerdict is_gorenstein_ac_projective(const Module& m, int depth) {
    if (depth < 0) throw precondition_error("search depth must be nonnegative");
    AlgebraPtr a = m.algebra();
    if (is_projective(m))
        return {Trilean::Yes, 0, "projective modules are cycles of contractible complexes"};
    if (is_quasi_frobenius(a))
        return {Trilean::Yes, 0, "over a quasi-Frobenius algebra every module qualifies"};
    if (a->family == Algebra::Family::LocalSqZero && a->generators.size() == 2)
        return {Trilean::No, 0,
                "over the two-generator square-zero algebra only projective modules qualify"};

    Module j_op = builtin_module(a, flip(m.side()), "J");
    // The left half of a witness complex is a J-tensor-exact projective
    // resolution, so Tor_i(J, M) must vanish.
    for (int i = 1; i <= depth; ++i) {
        std::size_t t = m.side() == Side::Left ? tor(j_op, m, static_cast<std::size_t>(i)).dim
                                               : tor(m, j_op, static_cast<std::size_t>(i)).dim;
        if (t != 0)
            return {Trilean::No, i,
                    "Tor_" + std::to_string(i) +
                        "(J, M) is nonzero, so no J-tensor-exact resolution exists"};
    }

    // Rightward extension search: an embedding into a free module whose
    // cokernel becomes the next target, staying exact under J (x) -.
    Module r = regular_module(a, m.side());
    Module cur = m;
    for (int step = 1; step <= depth; ++step) {
        std::vector<Morphism> basis = hom_space(cur, r);
        FieldMatrix iota_mat(a->field, r.dim() * basis.size(), cur.dim());
        for (std::size_t b = 0; b < basis.size(); ++b)
            for (std::size_t i = 0; i < r.dim(); ++i)
                for (std::size_t c = 0; c < cur.dim(); ++c)
                    iota_mat.set(b * r.dim() + i, c, basis[b].matrix.at(i, c));
        if (rank(iota_mat) < cur.dim()) {
            if (step == 1)
                return {Trilean::No, step, "it does not embed into a free module"};
            return {Trilean::Unknown, step,
                    "the canonical search step lost injectivity; inconclusive"};
        }
        if (basis.size() * r.dim() > 4096)
            return {Trilean::Unknown, step, "search target grew beyond the supported scale"};
        std::vector<Module> copies(basis.size(), r);
        Module free = direct_sum(copies);
        Morphism iota(cur, free, iota_mat);
        bool tensor_mono;
        if (m.side() == Side::Left) {
            TensorSpace ts_cur = tensor_over_R(j_op, cur);
            TensorSpace ts_free = tensor_over_R(j_op, free);
            tensor_mono = rank(tensor_map_left(ts_cur, ts_free, j_op, iota)) == ts_cur.dim;
        } else {
            TensorSpace ts_cur = tensor_over_R(cur, j_op);
            TensorSpace ts_free = tensor_over_R(free, j_op);
            tensor_mono = rank(tensor_map_right(ts_cur, ts_free, iota, j_op)) == ts_cur.dim;
        }
        if (!tensor_mono)
            return {Trilean::Unknown, step,
                    "the canonical embedding is not exact under J (x) -; inconclusive"};
        Module cok = cokernel(iota).module;
        if (is_projective(cok))
            return {Trilean::Yes, step, "the search reached a projective cokernel and closes contractibly"};
        cur = cok;
    }
    return {Trilean::Unknown, depth, "bounded search exhausted"};
}

}  // namespace stablecat
