#include "stablecat/counterexamples.hpp"

namespace stablecat {

namespace {

// Unit matrix entry e_{r,c} in a dim x dim block.
FieldMatrix unit_entry(PrimeField f, std::size_t dim, std::size_t r, std::size_t c) {
    FieldMatrix m(f, dim, dim);
    m.set(r, c, 1);
    return m;
}

void paste_block(FieldMatrix& dst, std::size_t copy_r, std::size_t copy_c,
                 const FieldMatrix& block) {
    std::size_t d = block.rows();
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            if (block.at(r, c) != 0) dst.set(copy_r * d + r, copy_c * d + c, block.at(r, c));
}

}  // namespace

CounterexampleKind counterexample_kind_from_name(const std::string& name) {
    if (name == "inj-exact-not-total" || name == "inj_X") return CounterexampleKind::InjX;
    if (name == "inj-acyclic-not-exact" || name == "inj_Y") return CounterexampleKind::InjY;
    if (name == "proj-exact-not-firm" || name == "proj_X") return CounterexampleKind::ProjX;
    if (name == "proj-firm-not-exact" || name == "proj_Y") return CounterexampleKind::ProjY;
    throw invariant_error("unknown counterexample kind: " + name);
}

std::string counterexample_kind_name(CounterexampleKind kind) {
    switch (kind) {
        case CounterexampleKind::InjX: return "inj-exact-not-total";
        case CounterexampleKind::InjY: return "inj-acyclic-not-exact";
        case CounterexampleKind::ProjX: return "proj-exact-not-firm";
        case CounterexampleKind::ProjY: return "proj-firm-not-exact";
    }
    throw internal_error("unhandled counterexample kind");
}

Module j_module(const AlgebraPtr& a) {
    if (a->family != Algebra::Family::LocalSqZero || a->dim != 3)
        throw precondition_error("j_module needs local_sq_zero(2,p)");
    PrimeField f = a->field;
    // Ordered basis (alpha, beta, gamma); x sends beta to gamma and y sends
    // alpha to gamma.
    FieldMatrix x_act = unit_entry(f, 3, 2, 1);
    FieldMatrix y_act = unit_entry(f, 3, 2, 0);
    return Module(a, Side::Left, {x_act, y_act});
}

std::vector<std::size_t> counterexample_ranks(const CounterexampleSpec& spec) {
    if (spec.depth < 3) throw precondition_error("counterexample depth must be at least 3");
    if (spec.base < 1) throw precondition_error("counterexample base must be at least 1");
    bool doubling =
        spec.kind == CounterexampleKind::InjX || spec.kind == CounterexampleKind::ProjY;
    std::vector<std::size_t> ranks;
    for (int n = 0; n <= spec.depth; ++n) {
        int exponent = doubling ? spec.depth - n : n;
        ranks.push_back(static_cast<std::size_t>(spec.base) << exponent);
    }
    return ranks;
}

WindowedComplex build_counterexample(const CounterexampleSpec& spec) {
    std::vector<std::size_t> ranks = counterexample_ranks(spec);
    AlgebraPtr a = mk_local_sq_zero(2, spec.p);
    PrimeField f = a->field;
    bool injective_kind =
        spec.kind == CounterexampleKind::InjX || spec.kind == CounterexampleKind::InjY;

    Module piece = injective_kind ? j_module(a) : regular_module(a, Side::Left);
    std::size_t pd = piece.dim();

    std::vector<Module> terms;
    for (std::size_t r : ranks) terms.push_back(direct_sum(std::vector<Module>(r, piece)));

    std::size_t xg = a->generators[a->generator_index("x")];
    std::size_t yg = a->generators[a->generator_index("y")];
    FieldMatrix e_ga = unit_entry(f, 3, 2, 0);  // gamma <- alpha
    FieldMatrix e_gb = unit_entry(f, 3, 2, 1);  // gamma <- beta
    FieldMatrix lx = a->left_mult(xg);
    FieldMatrix ly = a->left_mult(yg);

    std::vector<Morphism> diffs;
    for (int n = 1; n <= spec.depth; ++n) {
        std::size_t src = ranks[static_cast<std::size_t>(n)];
        std::size_t tgt = ranks[static_cast<std::size_t>(n - 1)];
        FieldMatrix d(f, tgt * pd, src * pd);
        switch (spec.kind) {
            case CounterexampleKind::InjX:
                // d(alpha_i) = gamma_{2i-1}, d(beta_i) = gamma_{2i}.
                for (std::size_t i = 1; i <= src; ++i) {
                    paste_block(d, 2 * i - 2, i - 1, e_ga);
                    paste_block(d, 2 * i - 1, i - 1, e_gb);
                }
                break;
            case CounterexampleKind::InjY:
                // d(alpha_{2i-1}) = gamma_i = d(beta_{2i}).
                for (std::size_t i = 1; i <= tgt; ++i) {
                    paste_block(d, i - 1, 2 * i - 2, e_ga);
                    paste_block(d, i - 1, 2 * i - 1, e_gb);
                }
                break;
            case CounterexampleKind::ProjX:
                // d(1_{2i-1}) = x_i, d(1_{2i}) = y_i.
                for (std::size_t i = 1; i <= tgt; ++i) {
                    paste_block(d, i - 1, 2 * i - 2, lx);
                    paste_block(d, i - 1, 2 * i - 1, ly);
                }
                break;
            case CounterexampleKind::ProjY:
                // d(1_i) = x_{2i} + y_{2i-1}.
                for (std::size_t i = 1; i <= src; ++i) {
                    paste_block(d, 2 * i - 1, i - 1, lx);
                    paste_block(d, 2 * i - 2, i - 1, ly);
                }
                break;
        }
        diffs.push_back(Morphism(terms[static_cast<std::size_t>(n)],
                                 terms[static_cast<std::size_t>(n - 1)], std::move(d)));
    }

    WindowedComplex x = make_complex(a, Side::Left, 0, std::move(terms), std::move(diffs));
    std::vector<std::vector<Summand>> tags;
    std::string stem = injective_kind ? "J" : "R";
    for (std::size_t n = 0; n < ranks.size(); ++n) {
        std::vector<Summand> degree_tags;
        for (std::size_t i = 1; i <= ranks[n]; ++i)
            degree_tags.push_back(Summand{stem + std::to_string(i), pd});
        tags.push_back(std::move(degree_tags));
    }
    x.tags = std::move(tags);
    x.verify();
    return x;
}

HomComplex hom_J_report(const CounterexampleSpec& spec) {
    if (spec.kind != CounterexampleKind::InjX && spec.kind != CounterexampleKind::InjY)
        throw precondition_error("hom_J_report needs an injective-kind counterexample");
    WindowedComplex x = build_counterexample(spec);
    Module j = j_module(x.algebra);
    return hom_complex(sphere(j, 0, 0, 0), x);
}

}  // namespace stablecat
