#include "stablecat/modrep.hpp"

#include <algorithm>

namespace stablecat {

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

Side side_from_name(const std::string& name) {
    if (name == "left") return Side::Left;
    if (name == "right") return Side::Right;
    throw invariant_error("side must be \"left\" or \"right\": " + name);
}

Module::Module(AlgebraPtr algebra, Side side, std::vector<FieldMatrix> gen_action)
    : algebra_(std::move(algebra)), side_(side), gen_action_(std::move(gen_action)) {
    const Algebra& a = *algebra_;
    if (gen_action_.size() != a.generators.size())
        throw invariant_error("need one action matrix per generator");
    dim_ = gen_action_.empty() ? 0 : gen_action_[0].rows();
    if (gen_action_.empty())
        throw invariant_error("catalog algebras always have generators");
    for (const auto& g : gen_action_) {
        if (g.field() != a.field) throw invariant_error("action matrix over wrong field");
        if (g.rows() != dim_ || g.cols() != dim_)
            throw invariant_error("action matrices must be square of equal size");
    }
    // Induced action of every basis element, from its generator word.
    FieldMatrix id = FieldMatrix::identity(a.field, dim_);
    basis_action_.reserve(a.dim);
    for (std::size_t b = 0; b < a.dim; ++b) {
        FieldMatrix m = id;
        const auto& word = a.basis_words[b];
        if (side_ == Side::Left) {
            for (std::size_t gi : word) m = mul(m, gen_action_[gi]);
        } else {
            for (std::size_t gi : word) m = mul(gen_action_[gi], m);
        }
        basis_action_.push_back(std::move(m));
    }
    // The induced action must realize the structure constants.
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) {
            FieldMatrix want(a.field, dim_, dim_);
            for (std::size_t k = 0; k < a.dim; ++k) {
                std::int64_t cijk = a.c(i, j, k);
                if (cijk != 0) want = add(want, scale(cijk, basis_action_[k]));
            }
            FieldMatrix got = side_ == Side::Left
                                  ? mul(basis_action_[i], basis_action_[j])
                                  : mul(basis_action_[j], basis_action_[i]);
            if (got != want) throw invariant_error("generator actions violate algebra relations");
        }
}

FieldMatrix Module::action_of(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != algebra_->dim) throw invariant_error("element coordinate size mismatch");
    FieldMatrix m(algebra_->field, dim_, dim_);
    for (std::size_t b = 0; b < algebra_->dim; ++b) {
        std::int64_t c = algebra_->field.reduce(coords[b]);
        if (c != 0) m = add(m, scale(c, basis_action_[b]));
    }
    return m;
}

bool Module::operator==(const Module& other) const {
    return algebra_->spec_string == other.algebra_->spec_string && side_ == other.side_ &&
           dim_ == other.dim_ && gen_action_ == other.gen_action_;
}

Morphism::Morphism(Module src, Module tgt, FieldMatrix m, bool verify)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim())
        throw invariant_error("morphism matrix shape mismatch");
    if (source.algebra()->spec_string != target.algebra()->spec_string ||
        source.side() != target.side())
        throw invariant_error("morphism endpoints over different rings or sides");
    if (verify) {
        for (std::size_t g = 0; g < source.gen_action().size(); ++g)
            if (mul(matrix, source.gen_action()[g]) != mul(target.gen_action()[g], matrix))
                throw invariant_error("matrix does not intertwine the actions");
    }
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (!(f.target == g.source)) throw invariant_error("composition endpoint mismatch");
    return Morphism(f.source, g.target, mul(g.matrix, f.matrix), false);
}

Morphism zero_morphism(const Module& src, const Module& tgt) {
    return Morphism(src, tgt, FieldMatrix(src.algebra()->field, tgt.dim(), src.dim()), false);
}

Morphism identity_morphism(const Module& m) {
    return Morphism(m, m, FieldMatrix::identity(m.algebra()->field, m.dim()), false);
}

Module regular_module(const AlgebraPtr& a, Side side) {
    std::vector<FieldMatrix> action;
    for (std::size_t gi : a->generators)
        action.push_back(side == Side::Left ? a->left_mult(gi) : a->right_mult(gi));
    return Module(a, side, std::move(action));
}

Module free_module(const AlgebraPtr& a, Side side, std::size_t n) {
    if (n == 0) return zero_module(a, side);
    return direct_sum(std::vector<Module>(n, regular_module(a, side)));
}

Module simple_module(const AlgebraPtr& a, Side side) {
    // A / rad(A): one-dimensional since the catalog algebras are local.
    return top(regular_module(a, side)).module;
}

Module zero_module(const AlgebraPtr& a, Side side) {
    std::vector<FieldMatrix> action(a->generators.size(), FieldMatrix(a->field, 0, 0));
    return Module(a, side, std::move(action));
}

Module builtin_module(const AlgebraPtr& a, Side side, const std::string& name) {
    if (name == "k") return simple_module(a, side);
    if (name == "R") return regular_module(a, side);
    if (name == "J") return dual(regular_module(a, flip(side)));
    if (name == "m") return radical_submodule(regular_module(a, side)).module;
    throw invariant_error("unknown builtin module: " + name);
}

std::vector<Morphism> hom_space(const Module& m, const Module& n) {
    if (m.algebra()->spec_string != n.algebra()->spec_string || m.side() != n.side())
        throw invariant_error("hom_space needs modules over one ring and side");
    const PrimeField& f = m.algebra()->field;
    std::size_t vars = m.dim() * n.dim();
    FieldMatrix system(f, 0, vars);
    FieldMatrix im = FieldMatrix::identity(f, m.dim());
    FieldMatrix in = FieldMatrix::identity(f, n.dim());
    for (std::size_t g = 0; g < m.gen_action().size(); ++g) {
        // vec(T rho_M(g)) = kron(rho_M(g)^T, I) vec(T);  vec(rho_N(g) T) = kron(I, rho_N(g)) vec(T)
        FieldMatrix eq = sub(kron(m.gen_action()[g].transpose(), in), kron(im, n.gen_action()[g]));
        system = vstack(system, eq);
    }
    FieldMatrix basis = kernel_basis(system);
    std::vector<Morphism> out;
    out.reserve(basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) {
        FieldMatrix v(f, vars, 1);
        for (std::size_t i = 0; i < vars; ++i) v.set(i, 0, basis.at(i, j));
        out.emplace_back(m, n, unvec_columns(v, n.dim(), m.dim()), false);
    }
    return out;
}

std::vector<std::int64_t> hom_coords(const std::vector<Morphism>& basis, const FieldMatrix& f) {
    if (basis.empty()) {
        if (!f.is_zero()) throw internal_error("morphism outside empty hom space");
        return {};
    }
    FieldMatrix cols(f.field(), f.rows() * f.cols(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        FieldMatrix v = vec_columns(basis[j].matrix);
        for (std::size_t i = 0; i < v.rows(); ++i) cols.set(i, j, v.at(i, 0));
    }
    auto x = solve(cols, vec_columns(f));
    if (!x) throw internal_error("morphism outside hom space span");
    return x->col(0);
}

SubmoduleResult submodule_from_columns(const Module& m, const FieldMatrix& cols) {
    RowSpace span = RowSpace::from_cols(cols);
    FieldMatrix incl = span.basis_columns();
    std::vector<FieldMatrix> action;
    for (std::size_t g = 0; g < m.gen_action().size(); ++g) {
        FieldMatrix moved = mul(m.gen_action()[g], incl);
        auto coords = solve(incl, moved);
        if (!coords) throw invariant_error("column span is not action-closed");
        action.push_back(*coords);
    }
    Module sub(m.algebra(), m.side(), std::move(action));
    return SubmoduleResult{sub, Morphism(sub, m, incl)};
}

QuotientResult quotient_by_columns(const Module& m, const FieldMatrix& cols) {
    RowSpace span = RowSpace::from_cols(cols);
    for (std::size_t g = 0; g < m.gen_action().size(); ++g)
        if (!span.contains_all_cols(mul(m.gen_action()[g], span.basis_columns())))
            throw invariant_error("column span is not action-closed");
    FieldMatrix proj = span.quotient_projection();
    FieldMatrix sec = span.quotient_section();
    std::vector<FieldMatrix> action;
    for (std::size_t g = 0; g < m.gen_action().size(); ++g)
        action.push_back(mul(proj, mul(m.gen_action()[g], sec)));
    Module quot(m.algebra(), m.side(), std::move(action));
    return QuotientResult{quot, Morphism(m, quot, proj)};
}

SubmoduleResult kernel(const Morphism& f) {
    return submodule_from_columns(f.source, kernel_basis(f.matrix));
}

SubmoduleResult image(const Morphism& f) { return submodule_from_columns(f.target, f.matrix); }

QuotientResult cokernel(const Morphism& f) { return quotient_by_columns(f.target, f.matrix); }

Module direct_sum(const std::vector<Module>& parts) {
    if (parts.empty()) throw invariant_error("direct_sum needs at least one part");
    const AlgebraPtr& a = parts[0].algebra();
    Side side = parts[0].side();
    std::size_t total = 0;
    for (const auto& p : parts) {
        if (p.algebra()->spec_string != a->spec_string || p.side() != side)
            throw invariant_error("direct_sum parts over different rings or sides");
        total += p.dim();
    }
    std::vector<FieldMatrix> action;
    for (std::size_t g = 0; g < a->generators.size(); ++g) {
        FieldMatrix m(a->field, total, total);
        std::size_t off = 0;
        for (const auto& p : parts) {
            const FieldMatrix& pg = p.gen_action()[g];
            for (std::size_t i = 0; i < p.dim(); ++i)
                for (std::size_t j = 0; j < p.dim(); ++j) m.set(off + i, off + j, pg.at(i, j));
            off += p.dim();
        }
        action.push_back(std::move(m));
    }
    return Module(a, side, std::move(action));
}

Module dual(const Module& m) {
    std::vector<FieldMatrix> action;
    for (const auto& g : m.gen_action()) action.push_back(g.transpose());
    return Module(m.algebra(), flip(m.side()), std::move(action));
}

Morphism dual(const Morphism& f) {
    return Morphism(dual(f.target), dual(f.source), f.matrix.transpose(), false);
}

TensorSpace tensor_over_R(const Module& m_right, const Module& n_left) {
    if (m_right.side() != Side::Right || n_left.side() != Side::Left)
        throw invariant_error("tensor_over_R takes a right module and a left module");
    if (m_right.algebra()->spec_string != n_left.algebra()->spec_string)
        throw invariant_error("tensor factors over different rings");
    const PrimeField& f = m_right.algebra()->field;
    std::size_t mn = m_right.dim() * n_left.dim();
    FieldMatrix relations(f, mn, 0);
    FieldMatrix im = FieldMatrix::identity(f, m_right.dim());
    FieldMatrix in = FieldMatrix::identity(f, n_left.dim());
    for (std::size_t g = 0; g < m_right.gen_action().size(); ++g) {
        FieldMatrix d = sub(kron(m_right.gen_action()[g], in), kron(im, n_left.gen_action()[g]));
        relations = hstack(relations, d);
    }
    RowSpace span = RowSpace::from_cols(relations);
    return TensorSpace{mn - span.dim(), span.quotient_projection(), span.quotient_section()};
}

FieldMatrix tensor_map_right(const TensorSpace& src, const TensorSpace& dst,
                             const Morphism& f, const Module& n) {
    FieldMatrix big = kron(f.matrix, FieldMatrix::identity(n.algebra()->field, n.dim()));
    return mul(dst.projection, mul(big, src.section));
}

FieldMatrix tensor_map_left(const TensorSpace& src, const TensorSpace& dst,
                            const Module& m, const Morphism& g) {
    FieldMatrix big = kron(FieldMatrix::identity(m.algebra()->field, m.dim()), g.matrix);
    return mul(dst.projection, mul(big, src.section));
}

namespace {

/// Columns spanning rad(A) . M (left) or M . rad(A) (right).
FieldMatrix radical_span_columns(const Module& m) {
    const AlgebraPtr& a = m.algebra();
    FieldMatrix span(a->field, m.dim(), 0);
    for (std::size_t c = 0; c < a->radical_basis.cols(); ++c)
        span = hstack(span, m.action_of(a->radical_basis.col(c)));
    return span;
}

}  // namespace

SubmoduleResult radical_submodule(const Module& m) {
    return submodule_from_columns(m, radical_span_columns(m));
}

SubmoduleResult socle(const Module& m) {
    const AlgebraPtr& a = m.algebra();
    FieldMatrix stacked(a->field, 0, m.dim());
    for (std::size_t c = 0; c < a->radical_basis.cols(); ++c)
        stacked = vstack(stacked, m.action_of(a->radical_basis.col(c)));
    return submodule_from_columns(m, kernel_basis(stacked));
}

QuotientResult top(const Module& m) { return quotient_by_columns(m, radical_span_columns(m)); }

CoverResult projective_cover(const Module& m) {
    const AlgebraPtr& a = m.algebra();
    QuotientResult t = top(m);
    std::size_t rank_p = t.module.dim();
    // Lift the canonical quotient basis of top(M) back to M.
    RowSpace rad_span = RowSpace::from_cols(radical_span_columns(m));
    FieldMatrix lifts = rad_span.quotient_section();  // m.dim() x rank_p
    Module cover = free_module(a, m.side(), rank_p);
    FieldMatrix epi(a->field, m.dim(), rank_p * a->dim);
    for (std::size_t i = 0; i < rank_p; ++i)
        for (std::size_t b = 0; b < a->dim; ++b) {
            auto col = mat_apply(m.basis_action(b), lifts.col(i));
            for (std::size_t r = 0; r < m.dim(); ++r) epi.set(r, i * a->dim + b, col[r]);
        }
    Morphism phi(cover, m, epi);
    if (rank(phi.matrix) != m.dim()) throw internal_error("projective cover not surjective");
    // Minimality: the kernel must sit inside rad(P).
    RowSpace rad_p = RowSpace::from_cols(radical_span_columns(cover));
    if (!rad_p.contains_all_cols(kernel_basis(phi.matrix)))
        throw internal_error("projective cover not minimal");
    return CoverResult{cover, phi};
}

HullResult injective_hull(const Module& m) {
    CoverResult c = projective_cover(dual(m));
    Module hull = dual(c.cover);
    Morphism mono(m, hull, c.epi.matrix.transpose());
    if (rank(mono.matrix) != m.dim()) throw internal_error("injective hull map not injective");
    // Essentiality: a submodule of an Artinian module is essential iff it
    // contains the socle.
    RowSpace im = RowSpace::from_cols(mono.matrix);
    if (!im.contains_all_cols(socle(hull).inclusion.matrix))
        throw internal_error("injective hull not essential");
    return HullResult{hull, mono};
}

bool is_projective(const Module& m) { return projective_cover(m).cover.dim() == m.dim(); }

bool is_injective(const Module& m) { return is_projective(dual(m)); }

bool is_flat(const Module& m) { return is_projective(m); }

bool is_quasi_frobenius(const AlgebraPtr& a) {
    return is_injective(regular_module(a, Side::Left)) &&
           is_injective(regular_module(a, Side::Right));
}

}  // namespace stablecat
