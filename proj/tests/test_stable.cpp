#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablecat/common.hpp"
#include "stablecat/counterexamples.hpp"
#include "stablecat/stable.hpp"

using namespace stablecat;

namespace {

bool vec_is_zero(const std::vector<std::int64_t>& v) {
    for (std::int64_t x : v)
        if (x != 0) return false;
    return true;
}

/// Epi R^{dim N} -> N sending the unit of copy i to the i-th basis vector.
Morphism free_epi_onto(const Module& n) {
    const AlgebraPtr& a = n.algebra();
    std::size_t rd = a->dim;
    FieldMatrix mat(a->field, n.dim(), n.dim() * rd);
    for (std::size_t i = 0; i < n.dim(); ++i)
        for (std::size_t b = 0; b < rd; ++b) {
            std::vector<std::int64_t> col = n.basis_action(b).col(i);
            for (std::size_t r = 0; r < n.dim(); ++r) mat.set(r, i * rd + b, col[r]);
        }
    return Morphism(free_module(a, n.side(), n.dim()), n, mat);
}

const VerdictWitness* find_witness(const AcyclicityReport& rep, const std::string& verdict) {
    for (const VerdictWitness& w : rep.witnesses)
        if (w.verdict == verdict) return &w;
    return nullptr;
}

}  // namespace

TEST_CASE("contractible disks pass every verdict") {
    AlgebraPtr a = mk_local_sq_zero(2, 2);
    Module j = builtin_module(a, Side::Left, "J");
    Module r = regular_module(a, Side::Left);

    AcyclicityReport inj = classify_inj_complex(disk(j, 1, -2, 3), "disk-J");
    CHECK(inj.injective_case);
    CHECK(inj.exact_interior);
    CHECK(*inj.inj_acyclic);
    CHECK(inj.ac_acyclic);
    CHECK(inj.totally_acyclic);
    CHECK(inj.witnesses.empty());
    CHECK_FALSE(inj.collapse_notes.empty());

    AcyclicityReport proj = classify_proj_complex(disk(r, 0, -3, 2), "disk-R");
    CHECK_FALSE(proj.injective_case);
    CHECK(proj.exact_interior);
    CHECK(proj.ac_acyclic);
    CHECK(*proj.firmly_acyclic);
    CHECK(proj.totally_acyclic);
    CHECK(proj.witnesses.empty());
}

TEST_CASE("term preconditions are enforced") {
    AlgebraPtr a = mk_local_sq_zero(2, 2);
    Module k = simple_module(a, Side::Left);
    CHECK_THROWS_AS(classify_inj_complex(sphere(k, 0, -1, 1)), precondition_error);
    CHECK_THROWS_AS(classify_proj_complex(sphere(k, 0, -1, 1)), precondition_error);
}

TEST_CASE("exact injective complex that is not totally acyclic") {
    WindowedComplex x = build_counterexample({CounterexampleKind::InjX, 2, 3, 1});
    AcyclicityReport rep = classify_inj_complex(x, "inj-x");
    CHECK(rep.exact_interior);
    CHECK_FALSE(*rep.inj_acyclic);
    CHECK_FALSE(rep.ac_acyclic);
    CHECK_FALSE(rep.totally_acyclic);

    const VerdictWitness* w = find_witness(rep, "inj_acyclic");
    REQUIRE(w != nullptr);
    CHECK(w->degree == 1);
    const VerdictWitness* wac = find_witness(rep, "ac_acyclic");
    REQUIRE(wac != nullptr);
    CHECK(wac->degree == w->degree);
    CHECK(wac->vec == w->vec);

    // Re-verify the witness against the raw hom-complex matrices: it must be
    // a cycle and must not be a boundary.
    Module j = builtin_module(x.algebra, x.side, "J");
    HomComplex hc = hom_complex(sphere(j, 0, 0, 0), x);
    CHECK(vec_is_zero(mat_apply(hc.complex.diff(w->degree), w->vec)));
    FieldMatrix target = col_vector(x.algebra->field, w->vec);
    CHECK_FALSE(solve(hc.complex.diff(w->degree + 1), target).has_value());
}

TEST_CASE("totally inexact-at-interior injective complex that is inj-acyclic") {
    WindowedComplex x = build_counterexample({CounterexampleKind::InjY, 2, 3, 1});
    AcyclicityReport rep = classify_inj_complex(x, "inj-y");
    CHECK_FALSE(rep.exact_interior);
    CHECK(*rep.inj_acyclic);
    CHECK(rep.ac_acyclic);
    CHECK_FALSE(rep.totally_acyclic);

    const VerdictWitness* w = find_witness(rep, "exact_interior");
    REQUIRE(w != nullptr);
    CHECK(w->degree == 1);
    CHECK(w->vec == std::vector<std::int64_t>{1, 0, 0, 0, 1, 0});
    CHECK(find_witness(rep, "inj_acyclic") == nullptr);
}

TEST_CASE("exact projective complex that is neither ac- nor firmly acyclic") {
    WindowedComplex c = build_counterexample({CounterexampleKind::ProjX, 2, 3, 1});
    AcyclicityReport rep = classify_proj_complex(c, "proj-x");
    CHECK(rep.exact_interior);
    CHECK_FALSE(rep.ac_acyclic);
    CHECK_FALSE(*rep.firmly_acyclic);
    CHECK_FALSE(rep.totally_acyclic);

    const VerdictWitness* w = find_witness(rep, "ac_acyclic");
    REQUIRE(w != nullptr);
    CHECK(w->degree > c.lo);
    CHECK(w->degree < c.hi);
    Module j_op = builtin_module(c.algebra, flip(c.side), "J");
    VectorComplex tensored = tensored_vector_complex(j_op, c);
    CHECK(vec_is_zero(mat_apply(tensored.diff(w->degree), w->vec)));
    FieldMatrix target = col_vector(c.algebra->field, w->vec);
    CHECK_FALSE(solve(tensored.diff(w->degree + 1), target).has_value());

    const VerdictWitness* wf = find_witness(rep, "firmly_acyclic");
    REQUIRE(wf != nullptr);
    CHECK(wf->degree > c.lo);
    CHECK(wf->degree < c.hi);
}

TEST_CASE("inexact projective complex that is ac- and firmly acyclic") {
    WindowedComplex c = build_counterexample({CounterexampleKind::ProjY, 2, 3, 1});
    AcyclicityReport rep = classify_proj_complex(c, "proj-y");
    CHECK_FALSE(rep.exact_interior);
    CHECK(rep.ac_acyclic);
    CHECK(*rep.firmly_acyclic);
    CHECK_FALSE(rep.totally_acyclic);

    const VerdictWitness* w = find_witness(rep, "exact_interior");
    REQUIRE(w != nullptr);
    CHECK(w->degree == 1);
    CHECK(find_witness(rep, "ac_acyclic") == nullptr);
    CHECK(find_witness(rep, "firmly_acyclic") == nullptr);
}

TEST_CASE("tensor and hom acyclicity verdicts agree across the catalog") {
    for (std::int64_t p : {2, 3}) {
        for (CounterexampleKind kind : {CounterexampleKind::ProjX, CounterexampleKind::ProjY}) {
            WindowedComplex c = build_counterexample({kind, p, 3, 1});
            AcyclicityReport rep = classify_proj_complex(c);
            CHECK(rep.ac_acyclic == *rep.firmly_acyclic);
        }
    }
}

TEST_CASE("module-by-module duality pairs agree") {
    AlgebraPtr a = mk_local_sq_zero(2, 2);
    std::vector<std::pair<std::string, Module>> catalog = {
        {"k", simple_module(a, Side::Right)},
        {"R", regular_module(a, Side::Right)},
        {"J", builtin_module(a, Side::Right, "J")},
    };

    WindowedComplex cx = build_counterexample({CounterexampleKind::ProjX, 2, 3, 1});
    DualityPairReport rx = duality_pair_check(cx, catalog);
    REQUIRE(rx.rows.size() == 3);
    CHECK(rx.all_agree);
    CHECK_FALSE(rx.rows[0].tensor_exact);  // k kills every differential
    CHECK(rx.rows[1].tensor_exact);        // R (x) C recovers C
    CHECK_FALSE(rx.rows[2].tensor_exact);  // J detects the failure
    for (const DualityPairRow& row : rx.rows) {
        CHECK(row.agree);
        CHECK(row.tensor_exact == row.hom_exact);
    }

    WindowedComplex cy = build_counterexample({CounterexampleKind::ProjY, 2, 3, 1});
    DualityPairReport ry = duality_pair_check(cy, catalog);
    CHECK(ry.all_agree);
    CHECK_FALSE(ry.rows[0].tensor_exact);
    CHECK_FALSE(ry.rows[1].tensor_exact);  // R (x) C recovers the inexact C
    CHECK(ry.rows[2].tensor_exact);

    std::vector<std::pair<std::string, Module>> wrong_side = {
        {"k", simple_module(a, Side::Left)}};
    CHECK_THROWS_AS(duality_pair_check(cx, wrong_side), precondition_error);
}

TEST_CASE("stable hom through projective covers") {
    for (AlgebraPtr a : {mk_cyclic_group_algebra(2, 2), mk_local_sq_zero(2, 2)}) {
        Module k = simple_module(a, Side::Left);
        Module r = regular_module(a, Side::Left);
        StableHomResult kk = stable_hom_proj(k, k);
        CHECK(kk.dim == 1);
        REQUIRE(kk.reps.size() == 1);
        CHECK_FALSE(kk.reps[0].matrix.is_zero());

        // Maps out of a projective always factor through the cover.
        CHECK(stable_hom_proj(r, k).dim == 0);
        // Maps into a projective always factor through its (trivial) cover.
        CHECK(stable_hom_proj(k, r).dim == 0);
    }
}

TEST_CASE("stable hom through injective hulls") {
    AlgebraPtr a = mk_local_sq_zero(2, 2);
    Module k = simple_module(a, Side::Left);
    Module j = builtin_module(a, Side::Left, "J");
    CHECK(stable_hom_inj(k, k).dim == 1);
    CHECK(stable_hom_inj(j, k).dim == 0);  // maps out of an injective die
    CHECK(stable_hom_inj(k, j).dim == 0);  // maps into an injective extend

    AlgebraPtr g = mk_cyclic_group_algebra(2, 2);
    Module kg = simple_module(g, Side::Left);
    CHECK(stable_hom_inj(kg, kg).dim == 1);
}

TEST_CASE("projective-cover quotient is independent of the chosen epi") {
    AlgebraPtr a = mk_local_sq_zero(2, 2);
    Module k = simple_module(a, Side::Left);
    Module j = builtin_module(a, Side::Left, "J");
    Module m = builtin_module(a, Side::Left, "m");
    std::vector<std::pair<Module, Module>> pairs = {{k, k}, {k, j}, {j, k}, {m, m}, {m, k}};
    for (const auto& [src, tgt] : pairs) {
        StableHomResult canonical = stable_hom_proj(src, tgt);
        StableHomResult via_free = hom_modulo_postfactor(src, tgt, free_epi_onto(tgt));
        CHECK(canonical.dim == via_free.dim);
    }
}

TEST_CASE("stable homs agree through covers and hulls over quasi-Frobenius algebras") {
    AlgebraPtr a = mk_cyclic_group_algebra(4, 2);
    Module k = simple_module(a, Side::Left);
    Module m = builtin_module(a, Side::Left, "m");
    std::vector<std::pair<Module, Module>> pairs = {{k, k}, {m, k}, {k, m}, {m, m}};
    for (const auto& [src, tgt] : pairs)
        CHECK(stable_hom_proj(src, tgt).dim == stable_hom_inj(src, tgt).dim);
}

TEST_CASE("Tate cohomology of cyclic p-groups is one-dimensional in every degree") {
    TateResult t2 = tate_cohomology(2, 1, -4, 4);
    REQUIRE(t2.dims.size() == 9);
    for (std::size_t d : t2.dims) CHECK(d == 1);

    TateResult t5 = tate_cohomology(5, 1, -3, 3);
    for (std::size_t d : t5.dims) CHECK(d == 1);

    TateResult t4 = tate_cohomology(2, 2, -4, 4);
    for (std::size_t d : t4.dims) CHECK(d == 1);

    // 2-periodicity of the complete resolution is visible in the dims.
    for (std::size_t i = 0; i + 2 < t2.dims.size(); ++i) CHECK(t2.dims[i] == t2.dims[i + 2]);

    CHECK_THROWS_AS(tate_cohomology(2, 0, 0, 0), precondition_error);
    CHECK_THROWS_AS(tate_cohomology(2, 1, 3, 1), precondition_error);
}

TEST_CASE("the stable-hom path reproduces Tate dimensions") {
    for (int n = -2; n <= 2; ++n) {
        CHECK(tate_via_stable_hom(2, 1, n) == 1);
        CHECK(tate_via_stable_hom(5, 1, n) == 1);
        CHECK(tate_via_stable_hom(2, 2, n) == 1);
    }
}

TEST_CASE("Gorenstein detectors: class rules") {
    AlgebraPtr qf = mk_cyclic_group_algebra(2, 2);
    Module kq = simple_module(qf, Side::Left);
    GorensteinVerdict v = is_gorenstein_ac_injective(kq, 3);
    CHECK(v.value == Trilean::Yes);
    CHECK(v.depth_used == 0);
    CHECK(is_gorenstein_ac_projective(kq, 3).value == Trilean::Yes);

    AlgebraPtr qf5 = mk_cyclic_group_algebra(5, 5);
    CHECK(is_gorenstein_ac_injective(simple_module(qf5, Side::Left), 2).value == Trilean::Yes);

    AlgebraPtr a = mk_local_sq_zero(2, 2);
    Module k = simple_module(a, Side::Left);
    Module r = regular_module(a, Side::Left);
    Module j = builtin_module(a, Side::Left, "J");
    CHECK(is_gorenstein_ac_injective(j, 3).value == Trilean::Yes);   // injective module
    CHECK(is_gorenstein_ac_projective(r, 3).value == Trilean::Yes);  // projective module
    CHECK(is_gorenstein_ac_injective(k, 3).value == Trilean::No);
    CHECK(is_gorenstein_ac_projective(k, 3).value == Trilean::No);
    CHECK(is_gorenstein_ac_injective(r, 3).value == Trilean::No);
    CHECK(is_gorenstein_ac_projective(j, 3).value == Trilean::No);

    CHECK_THROWS_AS(is_gorenstein_ac_injective(k, -1), precondition_error);
}

TEST_CASE("Gorenstein detectors: bounded search stays honest off the classified families") {
    AlgebraPtr a = mk_local_sq_zero(3, 2);
    Module k = simple_module(a, Side::Left);
    GorensteinVerdict inj = is_gorenstein_ac_injective(k, 2);
    CHECK(inj.value != Trilean::Yes);
    CHECK_FALSE(inj.reason.empty());
    GorensteinVerdict proj = is_gorenstein_ac_projective(k, 2);
    CHECK(proj.value != Trilean::Yes);
    CHECK_FALSE(proj.reason.empty());

    // Injective and projective modules stay classified even here.
    CHECK(is_gorenstein_ac_injective(builtin_module(a, Side::Left, "J"), 2).value == Trilean::Yes);
    CHECK(is_gorenstein_ac_projective(regular_module(a, Side::Left), 2).value == Trilean::Yes);
}

TEST_CASE("trilean names") {
    CHECK(trilean_name(Trilean::Yes) == "yes");
    CHECK(trilean_name(Trilean::No) == "no");
    CHECK(trilean_name(Trilean::Unknown) == "unknown");
}
