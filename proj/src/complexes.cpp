#include "stablecat/complexes.hpp"

#include <algorithm>
#include <functional>

namespace stablecat {

namespace {

std::size_t term_dim(const WindowedComplex& x, int n) {
    return x.in_window(n) ? x.term(n).dim() : 0;
}

FieldMatrix zero_matrix(PrimeField f, std::size_t rows, std::size_t cols) {
    return FieldMatrix(f, rows, cols);
}

void paste_block(FieldMatrix& dst, std::size_t r0, std::size_t c0, const FieldMatrix& src) {
    for (std::size_t r = 0; r < src.rows(); ++r)
        for (std::size_t c = 0; c < src.cols(); ++c)
            if (src.at(r, c) != 0) dst.set(r0 + r, c0 + c, src.at(r, c));
}

FieldMatrix block_of(const FieldMatrix& m, std::size_t r0, std::size_t rows, std::size_t c0,
                     std::size_t cols) {
    FieldMatrix out(m.field(), rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.set(r, c, m.at(r0 + r, c0 + c));
    return out;
}

}  // namespace

const Module& WindowedComplex::term(int n) const {
    if (!in_window(n)) throw precondition_error("complex degree outside window");
    return terms[static_cast<std::size_t>(n - lo)];
}

const Morphism& WindowedComplex::diff(int n) const {
    if (n <= lo || n > hi) throw precondition_error("complex has no differential at this degree");
    return diffs[static_cast<std::size_t>(n - lo - 1)];
}

void WindowedComplex::verify() const {
    if (!algebra) throw invariant_error("complex has no algebra");
    if (lo > hi) throw invariant_error("complex window is empty");
    if (terms.size() != length() + 1) throw invariant_error("complex term count mismatch");
    if (diffs.size() != length()) throw invariant_error("complex differential count mismatch");
    for (const Module& t : terms) {
        if (!same_algebra(t.algebra(), algebra) || t.side() != side)
            throw invariant_error("complex term over a different algebra or side");
    }
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (!(diffs[i].source == terms[i + 1]) || !(diffs[i].target == terms[i]))
            throw invariant_error("complex differential endpoints mismatch");
    }
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        if (!mul(diffs[i].matrix, diffs[i + 1].matrix).is_zero())
            throw invariant_error("complex differentials do not compose to zero");
    }
    if (tags) {
        if (tags->size() != terms.size()) throw invariant_error("tag list size mismatch");
        for (std::size_t d = 0; d < terms.size(); ++d) {
            std::size_t total = 0;
            for (const Summand& s : (*tags)[d]) total += s.dim;
            if (total != terms[d].dim())
                throw invariant_error("summand tags do not add up to the term dimension");
            // Each tag block must be closed under the action.
            std::vector<std::size_t> block_of_coord(terms[d].dim());
            std::size_t off = 0;
            for (std::size_t b = 0; b < (*tags)[d].size(); ++b) {
                for (std::size_t j = 0; j < (*tags)[d][b].dim; ++j) block_of_coord[off + j] = b;
                off += (*tags)[d][b].dim;
            }
            for (const FieldMatrix& g : terms[d].gen_action()) {
                for (std::size_t r = 0; r < g.rows(); ++r)
                    for (std::size_t c = 0; c < g.cols(); ++c)
                        if (g.at(r, c) != 0 && block_of_coord[r] != block_of_coord[c])
                            throw invariant_error("summand tags are not action-closed");
            }
        }
    }
}

WindowedComplex make_complex(AlgebraPtr algebra, Side side, int lo, std::vector<Module> terms,
                             std::vector<Morphism> diffs) {
    WindowedComplex x;
    x.algebra = std::move(algebra);
    x.side = side;
    x.lo = lo;
    x.hi = lo + static_cast<int>(terms.size()) - 1;
    x.terms = std::move(terms);
    x.diffs = std::move(diffs);
    x.verify();
    return x;
}

WindowedComplex sphere(const Module& m, int n, int lo, int hi) {
    if (n < lo || n > hi) throw precondition_error("sphere degree outside window");
    std::vector<Module> terms;
    std::vector<Morphism> diffs;
    for (int d = lo; d <= hi; ++d)
        terms.push_back(d == n ? m : zero_module(m.algebra(), m.side()));
    for (int d = lo + 1; d <= hi; ++d)
        diffs.push_back(zero_morphism(terms[static_cast<std::size_t>(d - lo)],
                                      terms[static_cast<std::size_t>(d - lo - 1)]));
    return make_complex(m.algebra(), m.side(), lo, std::move(terms), std::move(diffs));
}

WindowedComplex disk(const Module& m, int n, int lo, int hi) {
    if (n - 1 < lo || n > hi) throw precondition_error("disk degrees outside window");
    std::vector<Module> terms;
    for (int d = lo; d <= hi; ++d)
        terms.push_back((d == n || d == n - 1) ? m : zero_module(m.algebra(), m.side()));
    std::vector<Morphism> diffs;
    for (int d = lo + 1; d <= hi; ++d) {
        const Module& src = terms[static_cast<std::size_t>(d - lo)];
        const Module& tgt = terms[static_cast<std::size_t>(d - lo - 1)];
        diffs.push_back(d == n ? identity_morphism(m) : zero_morphism(src, tgt));
    }
    return make_complex(m.algebra(), m.side(), lo, std::move(terms), std::move(diffs));
}

WindowedComplex shift(const WindowedComplex& x, int s) {
    WindowedComplex y = x;
    y.lo = x.lo + s;
    y.hi = x.hi + s;
    if (s % 2 != 0) {
        for (Morphism& d : y.diffs)
            d = Morphism(d.source, d.target, neg(d.matrix), false);
    }
    return y;
}

HomologyResult homology_at(const WindowedComplex& x, int n) {
    if (n <= x.lo || n >= x.hi)
        throw precondition_error("homology is only assertable at interior degrees");
    SubmoduleResult cycles = kernel(x.diff(n));
    const FieldMatrix& boundaries = x.diff(n + 1).matrix;
    auto coords = solve(cycles.inclusion.matrix, boundaries);
    if (!coords) throw internal_error("boundaries do not lie inside cycles");
    QuotientResult h = quotient_by_columns(cycles.module, *coords);
    return HomologyResult{h.module.dim(), h.module};
}

std::optional<std::vector<std::int64_t>> homology_witness(const WindowedComplex& x, int n) {
    if (n <= x.lo || n >= x.hi)
        throw precondition_error("homology is only assertable at interior degrees");
    RowSpace cycles = RowSpace::from_cols(kernel_basis(x.diff(n).matrix));
    RowSpace boundaries = RowSpace::from_cols(x.diff(n + 1).matrix);
    FieldMatrix basis = cycles.basis_columns();
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        std::vector<std::int64_t> v = basis.col(c);
        if (!boundaries.contains_col(v)) return v;
    }
    return std::nullopt;
}

std::optional<ExactnessFailure> first_interior_failure(const WindowedComplex& x) {
    for (int n = x.lo + 1; n < x.hi; ++n) {
        auto w = homology_witness(x, n);
        if (w) return ExactnessFailure{n, *w};
    }
    return std::nullopt;
}

std::size_t VectorComplex::dim(int n) const {
    if (n < lo || n > hi) return 0;
    return dims[static_cast<std::size_t>(n - lo)];
}

const FieldMatrix& VectorComplex::diff(int n) const {
    if (n <= lo || n > hi) throw precondition_error("complex has no differential at this degree");
    return diffs[static_cast<std::size_t>(n - lo - 1)];
}

void VectorComplex::verify() const {
    if (lo > hi) throw invariant_error("complex window is empty");
    if (dims.size() != static_cast<std::size_t>(hi - lo) + 1)
        throw invariant_error("complex term count mismatch");
    if (diffs.size() != static_cast<std::size_t>(hi - lo))
        throw invariant_error("complex differential count mismatch");
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i].rows() != dims[i] || diffs[i].cols() != dims[i + 1])
            throw invariant_error("complex differential shape mismatch");
    }
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        if (!mul(diffs[i], diffs[i + 1]).is_zero())
            throw invariant_error("complex differentials do not compose to zero");
    }
}

std::size_t VectorComplex::homology_dim(int n) const {
    if (n < lo || n > hi) return 0;
    std::size_t ker = (n == lo) ? dim(n) : dim(n) - rank(diff(n));
    std::size_t im = (n == hi) ? 0 : rank(diff(n + 1));
    return ker - im;
}

std::optional<std::vector<std::int64_t>> VectorComplex::homology_witness(int n) const {
    if (n < lo || n > hi) return std::nullopt;
    RowSpace cycles = (n == lo) ? RowSpace::full(field, dim(n))
                                : RowSpace::from_cols(kernel_basis(diff(n)));
    RowSpace boundaries = (n == hi) ? RowSpace::zero(field, dim(n))
                                    : RowSpace::from_cols(diff(n + 1));
    FieldMatrix basis = cycles.basis_columns();
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        std::vector<std::int64_t> v = basis.col(c);
        if (!boundaries.contains_col(v)) return v;
    }
    return std::nullopt;
}

std::optional<ExactnessFailure> VectorComplex::first_interior_failure() const {
    for (int n = lo + 1; n < hi; ++n) {
        auto w = homology_witness(n);
        if (w) return ExactnessFailure{n, *w};
    }
    return std::nullopt;
}

HomComplex hom_complex(const WindowedComplex& x, const WindowedComplex& y) {
    if (!same_algebra(x.algebra, y.algebra) || x.side != y.side)
        throw precondition_error("hom complex needs complexes over one algebra and side");
    PrimeField f = x.algebra->field;
    int nlo = y.lo - x.hi;
    int nhi = y.hi - x.lo;

    HomComplex hc;
    hc.complex.field = f;
    hc.complex.lo = nlo;
    hc.complex.hi = nhi;
    for (int n = nlo; n <= nhi; ++n) {
        std::vector<HomComplex::Block> degree_blocks;
        std::size_t total = 0;
        for (int k = x.lo; k <= x.hi; ++k) {
            if (!y.in_window(k + n)) continue;
            HomComplex::Block b;
            b.source_degree = k;
            b.basis = hom_space(x.term(k), y.term(k + n));
            total += b.basis.size();
            degree_blocks.push_back(std::move(b));
        }
        hc.blocks.push_back(std::move(degree_blocks));
        hc.complex.dims.push_back(total);
    }

    auto block_offset = [&hc](int n, int source_degree) -> std::optional<std::size_t> {
        const auto& degree_blocks = hc.blocks[static_cast<std::size_t>(n - hc.complex.lo)];
        std::size_t off = 0;
        for (const auto& b : degree_blocks) {
            if (b.source_degree == source_degree) return off;
            off += b.basis.size();
        }
        return std::nullopt;
    };

    for (int n = nlo + 1; n <= nhi; ++n) {
        FieldMatrix d(f, hc.complex.dim(n - 1), hc.complex.dim(n));
        // -(-1)^n coefficient of the precomposition term.
        std::int64_t pre_sign = f.reduce(n % 2 == 0 ? -1 : 1);
        const auto& degree_blocks = hc.blocks[static_cast<std::size_t>(n - nlo)];
        std::size_t col = 0;
        for (const auto& b : degree_blocks) {
            int k = b.source_degree;
            for (const Morphism& basis_elem : b.basis) {
                // Postcompose with d^Y : lands in the (n-1, k) block.
                if (k + n > y.lo && k + n <= y.hi) {
                    auto off = block_offset(n - 1, k);
                    if (off) {
                        FieldMatrix g = mul(y.diff(k + n).matrix, basis_elem.matrix);
                        const auto& tblock =
                            hc.blocks[static_cast<std::size_t>(n - 1 - nlo)];
                        for (const auto& tb : tblock) {
                            if (tb.source_degree != k) continue;
                            std::vector<std::int64_t> coords = hom_coords(tb.basis, g);
                            for (std::size_t i = 0; i < coords.size(); ++i)
                                d.set(*off + i, col, coords[i]);
                        }
                    }
                }
                // Precompose with d^X : lands in the (n-1, k+1) block.
                if (k + 1 > x.lo && k + 1 <= x.hi && y.in_window(k + n)) {
                    auto off = block_offset(n - 1, k + 1);
                    if (off) {
                        FieldMatrix g = scale(pre_sign,
                                              mul(basis_elem.matrix, x.diff(k + 1).matrix));
                        const auto& tblock =
                            hc.blocks[static_cast<std::size_t>(n - 1 - nlo)];
                        for (const auto& tb : tblock) {
                            if (tb.source_degree != k + 1) continue;
                            std::vector<std::int64_t> coords = hom_coords(tb.basis, g);
                            for (std::size_t i = 0; i < coords.size(); ++i)
                                d.set(*off + i, col, f.add(d.at(*off + i, col), coords[i]));
                        }
                    }
                }
                ++col;
            }
        }
        hc.complex.diffs.push_back(std::move(d));
    }
    hc.complex.verify();
    return hc;
}

VectorComplex tensored_vector_complex(const Module& a, const WindowedComplex& c) {
    if (!same_algebra(a.algebra(), c.algebra))
        throw precondition_error("tensor needs module and complex over one algebra");
    if (a.side() == c.side)
        throw precondition_error("tensor needs one right and one left module");
    PrimeField f = c.algebra->field;
    VectorComplex vc;
    vc.field = f;
    vc.lo = c.lo;
    vc.hi = c.hi;
    std::vector<TensorSpace> spaces;
    for (int n = c.lo; n <= c.hi; ++n) {
        TensorSpace ts = c.side == Side::Left ? tensor_over_R(a, c.term(n))
                                              : tensor_over_R(c.term(n), a);
        vc.dims.push_back(ts.dim);
        spaces.push_back(std::move(ts));
    }
    for (int n = c.lo + 1; n <= c.hi; ++n) {
        std::size_t si = static_cast<std::size_t>(n - c.lo);
        const Morphism& d = c.diff(n);
        FieldMatrix induced =
            c.side == Side::Left
                ? tensor_map_left(spaces[si], spaces[si - 1], a, d)
                : tensor_map_right(spaces[si], spaces[si - 1], d, a);
        vc.diffs.push_back(std::move(induced));
    }
    vc.verify();
    return vc;
}

FieldMatrix ChainMap::component(int k) const {
    PrimeField f = source.algebra->field;
    std::size_t rows = term_dim(target, k);
    std::size_t cols = term_dim(source, k);
    if (k >= lo && k < lo + static_cast<int>(components.size()))
        return components[static_cast<std::size_t>(k - lo)];
    return zero_matrix(f, rows, cols);
}

void ChainMap::verify() const {
    if (!same_algebra(source.algebra, target.algebra) || source.side != target.side)
        throw invariant_error("chain map endpoints over different algebras or sides");
    for (int k = lo; k < lo + static_cast<int>(components.size()); ++k) {
        // The verifying constructor checks intertwining.
        Morphism check(source.term(k), target.term(k), component(k));
        (void)check;
    }
    int klo = std::min(source.lo, target.lo);
    int khi = std::max(source.hi, target.hi) + 1;
    for (int k = klo; k <= khi; ++k) {
        std::size_t rows = term_dim(target, k - 1);
        std::size_t cols = term_dim(source, k);
        if (rows == 0 || cols == 0) continue;
        PrimeField f = source.algebra->field;
        FieldMatrix lhs = (k > target.lo && k <= target.hi)
                              ? mul(target.diff(k).matrix, component(k))
                              : zero_matrix(f, rows, cols);
        FieldMatrix rhs = (k > source.lo && k <= source.hi)
                              ? mul(component(k - 1), source.diff(k).matrix)
                              : zero_matrix(f, rows, cols);
        if (lhs != rhs) throw invariant_error("chain map does not commute with differentials");
    }
}

std::vector<ChainMap> chain_map_space(const WindowedComplex& x, const WindowedComplex& y) {
    if (!same_algebra(x.algebra, y.algebra) || x.side != y.side)
        throw precondition_error("chain maps need complexes over one algebra and side");
    PrimeField f = x.algebra->field;
    int o_lo = std::max(x.lo, y.lo);
    int o_hi = std::min(x.hi, y.hi);
    if (o_lo > o_hi) return {};

    std::vector<std::vector<Morphism>> var_basis;
    std::vector<std::size_t> var_offsets;
    std::size_t total_vars = 0;
    for (int k = o_lo; k <= o_hi; ++k) {
        var_offsets.push_back(total_vars);
        var_basis.push_back(hom_space(x.term(k), y.term(k)));
        total_vars += var_basis.back().size();
    }
    if (total_vars == 0) return {};

    auto var_range = [&](int k) -> std::pair<std::size_t, const std::vector<Morphism>*> {
        std::size_t i = static_cast<std::size_t>(k - o_lo);
        return {var_offsets[i], &var_basis[i]};
    };

    std::vector<FieldMatrix> equations;
    for (int k = std::min(x.lo, y.lo); k <= std::max(x.hi, y.hi) + 1; ++k) {
        std::size_t rows = term_dim(y, k - 1);
        std::size_t cols = term_dim(x, k);
        if (rows == 0 || cols == 0) continue;
        FieldMatrix eq(f, rows * cols, total_vars);
        bool any = false;
        if (k > y.lo && k <= y.hi && k >= o_lo && k <= o_hi) {
            auto [off, basis] = var_range(k);
            for (std::size_t i = 0; i < basis->size(); ++i) {
                FieldMatrix v = vec_columns(mul(y.diff(k).matrix, (*basis)[i].matrix));
                for (std::size_t r = 0; r < v.rows(); ++r)
                    if (v.at(r, 0) != 0) {
                        eq.set(r, off + i, v.at(r, 0));
                        any = true;
                    }
            }
        }
        if (k > x.lo && k <= x.hi && k - 1 >= o_lo && k - 1 <= o_hi) {
            auto [off, basis] = var_range(k - 1);
            for (std::size_t i = 0; i < basis->size(); ++i) {
                FieldMatrix v = vec_columns(mul((*basis)[i].matrix, x.diff(k).matrix));
                for (std::size_t r = 0; r < v.rows(); ++r)
                    if (v.at(r, 0) != 0) {
                        eq.set(r, off + i, f.sub(eq.at(r, off + i), v.at(r, 0)));
                        any = true;
                    }
            }
        }
        if (any) equations.push_back(std::move(eq));
    }

    FieldMatrix system(f, 0, total_vars);
    for (const FieldMatrix& eq : equations) system = vstack(system, eq);
    FieldMatrix null_space = system.rows() == 0 ? FieldMatrix::identity(f, total_vars)
                                                : kernel_basis(system);

    std::vector<ChainMap> result;
    for (std::size_t c = 0; c < null_space.cols(); ++c) {
        ChainMap cm{x, y, o_lo, {}};
        for (int k = o_lo; k <= o_hi; ++k) {
            auto [off, basis] = var_range(k);
            FieldMatrix comp(f, term_dim(y, k), term_dim(x, k));
            for (std::size_t i = 0; i < basis->size(); ++i) {
                std::int64_t coeff = null_space.at(off + i, c);
                if (coeff != 0) comp = add(comp, scale(coeff, (*basis)[i].matrix));
            }
            cm.components.push_back(std::move(comp));
        }
        cm.verify();
        result.push_back(std::move(cm));
    }
    return result;
}

namespace {

/// The linear system behind homotopy/splitting questions: unknowns are
/// module maps u_k : X_k -> W_k, the operator is
/// (T u)_k = d^W_k u_k - u_{k-1} d^X_k in Hom(X_k, W_{k-1}).
struct TransferSystem {
    int u_lo = 0;
    int u_hi = -1;
    std::vector<std::vector<Morphism>> var_basis;
    std::vector<std::size_t> var_offsets;
    std::size_t total_vars = 0;
    std::vector<int> eq_degrees;
    std::vector<std::size_t> eq_offsets;
    std::size_t total_entries = 0;
    FieldMatrix op;

    TransferSystem(PrimeField f) : op(f, 0, 0) {}
};

TransferSystem build_transfer(const WindowedComplex& x, const WindowedComplex& w) {
    PrimeField f = x.algebra->field;
    TransferSystem ts(f);
    ts.u_lo = std::max(x.lo, w.lo);
    ts.u_hi = std::min(x.hi, w.hi);
    for (int k = ts.u_lo; k <= ts.u_hi; ++k) {
        ts.var_offsets.push_back(ts.total_vars);
        ts.var_basis.push_back(hom_space(x.term(k), w.term(k)));
        ts.total_vars += ts.var_basis.back().size();
    }
    for (int k = std::min(x.lo, w.lo); k <= std::max(x.hi, w.hi) + 1; ++k) {
        std::size_t rows = term_dim(w, k - 1);
        std::size_t cols = term_dim(x, k);
        if (rows == 0 || cols == 0) continue;
        ts.eq_degrees.push_back(k);
        ts.eq_offsets.push_back(ts.total_entries);
        ts.total_entries += rows * cols;
    }
    ts.op = FieldMatrix(f, ts.total_entries, ts.total_vars);
    for (std::size_t e = 0; e < ts.eq_degrees.size(); ++e) {
        int k = ts.eq_degrees[e];
        std::size_t row0 = ts.eq_offsets[e];
        if (k > w.lo && k <= w.hi && k >= ts.u_lo && k <= ts.u_hi) {
            std::size_t i = static_cast<std::size_t>(k - ts.u_lo);
            for (std::size_t b = 0; b < ts.var_basis[i].size(); ++b) {
                FieldMatrix v = vec_columns(mul(w.diff(k).matrix, ts.var_basis[i][b].matrix));
                for (std::size_t r = 0; r < v.rows(); ++r)
                    if (v.at(r, 0) != 0) ts.op.set(row0 + r, ts.var_offsets[i] + b, v.at(r, 0));
            }
        }
        if (k > x.lo && k <= x.hi && k - 1 >= ts.u_lo && k - 1 <= ts.u_hi) {
            std::size_t i = static_cast<std::size_t>(k - 1 - ts.u_lo);
            for (std::size_t b = 0; b < ts.var_basis[i].size(); ++b) {
                FieldMatrix v = vec_columns(mul(ts.var_basis[i][b].matrix, x.diff(k).matrix));
                for (std::size_t r = 0; r < v.rows(); ++r)
                    if (v.at(r, 0) != 0)
                        ts.op.set(row0 + r, ts.var_offsets[i] + b,
                                  f.sub(ts.op.at(row0 + r, ts.var_offsets[i] + b), v.at(r, 0)));
            }
        }
    }
    return ts;
}

FieldMatrix vec_transfer_rhs(const TransferSystem& ts, PrimeField f,
                             const std::function<FieldMatrix(int)>& rhs_at) {
    FieldMatrix rhs(f, ts.total_entries, 1);
    for (std::size_t e = 0; e < ts.eq_degrees.size(); ++e) {
        FieldMatrix v = vec_columns(rhs_at(ts.eq_degrees[e]));
        for (std::size_t r = 0; r < v.rows(); ++r)
            if (v.at(r, 0) != 0) rhs.set(ts.eq_offsets[e] + r, 0, v.at(r, 0));
    }
    return rhs;
}

}  // namespace

bool null_homotopic(const ChainMap& f) {
    f.verify();
    WindowedComplex w = shift(f.target, -1);
    TransferSystem ts = build_transfer(f.source, w);
    PrimeField fld = f.source.algebra->field;
    FieldMatrix rhs = vec_transfer_rhs(ts, fld, [&](int k) { return neg(f.component(k)); });
    if (rhs.is_zero()) return true;
    return solve(ts.op, rhs).has_value();
}

std::size_t chain_homotopy_classes_dim(const WindowedComplex& x, const WindowedComplex& y) {
    std::vector<ChainMap> cms = chain_map_space(x, y);
    if (cms.empty()) return 0;
    PrimeField f = x.algebra->field;

    int o_lo = std::max(x.lo, y.lo);
    int o_hi = std::min(x.hi, y.hi);
    std::vector<std::size_t> comp_offsets;
    std::size_t total_entries = 0;
    for (int k = o_lo; k <= o_hi; ++k) {
        comp_offsets.push_back(total_entries);
        total_entries += term_dim(y, k) * term_dim(x, k);
    }

    // Homotopy variables D_k : X_k -> Y_{k+1}.
    int h_lo = std::max(x.lo, y.lo - 1);
    int h_hi = std::min(x.hi, y.hi - 1);
    std::vector<FieldMatrix> boundary_cols;
    for (int k = h_lo; k <= h_hi; ++k) {
        for (const Morphism& b : hom_space(x.term(k), y.term(k + 1))) {
            FieldMatrix colv(f, total_entries, 1);
            if (k >= y.lo && k >= o_lo && k <= o_hi) {
                FieldMatrix part = mul(y.diff(k + 1).matrix, b.matrix);
                FieldMatrix v = vec_columns(part);
                std::size_t off = comp_offsets[static_cast<std::size_t>(k - o_lo)];
                for (std::size_t r = 0; r < v.rows(); ++r)
                    if (v.at(r, 0) != 0) colv.set(off + r, 0, v.at(r, 0));
            }
            if (k + 1 > x.lo && k + 1 <= x.hi && k + 1 >= o_lo && k + 1 <= o_hi) {
                FieldMatrix part = mul(b.matrix, x.diff(k + 1).matrix);
                FieldMatrix v = vec_columns(part);
                std::size_t off = comp_offsets[static_cast<std::size_t>(k + 1 - o_lo)];
                for (std::size_t r = 0; r < v.rows(); ++r)
                    if (v.at(r, 0) != 0)
                        colv.set(off + r, 0, f.add(colv.at(off + r, 0), v.at(r, 0)));
            }
            boundary_cols.push_back(std::move(colv));
        }
    }

    FieldMatrix boundary(f, total_entries, boundary_cols.size());
    for (std::size_t c = 0; c < boundary_cols.size(); ++c)
        for (std::size_t r = 0; r < total_entries; ++r)
            if (boundary_cols[c].at(r, 0) != 0) boundary.set(r, c, boundary_cols[c].at(r, 0));

    return cms.size() - rank(boundary);
}

Extension extension_from_chain_map(const ChainMap& f) {
    f.verify();
    const WindowedComplex& x = f.source;
    WindowedComplex w = shift(f.target, -1);
    PrimeField fld = x.algebra->field;

    int e_lo = std::min(w.lo, x.lo);
    int e_hi = std::max(w.hi, x.hi);
    std::vector<Module> terms;
    for (int m = e_lo; m <= e_hi; ++m) {
        Module wm = w.in_window(m) ? w.term(m) : zero_module(x.algebra, x.side);
        Module xm = x.in_window(m) ? x.term(m) : zero_module(x.algebra, x.side);
        terms.push_back(direct_sum({wm, xm}));
    }
    std::vector<Morphism> diffs;
    for (int m = e_lo + 1; m <= e_hi; ++m) {
        std::size_t w_rows = term_dim(w, m - 1), x_rows = term_dim(x, m - 1);
        std::size_t w_cols = term_dim(w, m), x_cols = term_dim(x, m);
        FieldMatrix d(fld, w_rows + x_rows, w_cols + x_cols);
        if (m > w.lo && m <= w.hi) paste_block(d, 0, 0, w.diff(m).matrix);
        // f_m : X_m -> Z_m = W_{m-1}.
        paste_block(d, 0, w_cols, f.component(m));
        if (m > x.lo && m <= x.hi) paste_block(d, w_rows, w_cols, x.diff(m).matrix);
        diffs.push_back(Morphism(terms[static_cast<std::size_t>(m - e_lo)],
                                 terms[static_cast<std::size_t>(m - e_lo - 1)], std::move(d)));
    }
    Extension e{make_complex(x.algebra, x.side, e_lo, std::move(terms), std::move(diffs)), w, x};
    return e;
}

bool is_degreewise_split_extension(const Extension& e) {
    const WindowedComplex& t = e.total;
    const WindowedComplex& s = e.sub;
    const WindowedComplex& q = e.quot;
    if (!same_algebra(t.algebra, s.algebra) || !same_algebra(t.algebra, q.algebra)) return false;
    if (t.side != s.side || t.side != q.side) return false;
    if (s.lo < t.lo || s.hi > t.hi || q.lo < t.lo || q.hi > t.hi) return false;
    for (int m = t.lo; m <= t.hi; ++m) {
        std::size_t sd = term_dim(s, m), qd = term_dim(q, m);
        if (sd + qd != t.term(m).dim()) return false;
        const auto& gens = t.term(m).gen_action();
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (sd > 0 && block_of(gens[g], 0, sd, 0, sd) != s.term(m).gen_action()[g])
                return false;
            if (qd > 0 && block_of(gens[g], sd, qd, sd, qd) != q.term(m).gen_action()[g])
                return false;
            if (sd > 0 && qd > 0 && !block_of(gens[g], sd, qd, 0, sd).is_zero()) return false;
            if (sd > 0 && qd > 0 && !block_of(gens[g], 0, sd, sd, qd).is_zero()) return false;
        }
    }
    for (int m = t.lo + 1; m <= t.hi; ++m) {
        const FieldMatrix& d = t.diff(m).matrix;
        std::size_t sr = term_dim(s, m - 1), qr = term_dim(q, m - 1);
        std::size_t sc = term_dim(s, m), qc = term_dim(q, m);
        if (sr > 0 && sc > 0) {
            FieldMatrix want = (m > s.lo && m <= s.hi) ? s.diff(m).matrix
                                                       : zero_matrix(d.field(), sr, sc);
            if (block_of(d, 0, sr, 0, sc) != want) return false;
        }
        if (qr > 0 && qc > 0) {
            FieldMatrix want = (m > q.lo && m <= q.hi) ? q.diff(m).matrix
                                                       : zero_matrix(d.field(), qr, qc);
            if (block_of(d, sr, qr, sc, qc) != want) return false;
        }
        if (qr > 0 && sc > 0 && !block_of(d, sr, qr, 0, sc).is_zero()) return false;
    }
    return true;
}

bool is_split_extension(const Extension& e) {
    if (!is_degreewise_split_extension(e))
        throw precondition_error("extension is not in degreewise split block form");
    const WindowedComplex& x = e.quot;
    const WindowedComplex& w = e.sub;
    PrimeField f = x.algebra->field;
    TransferSystem ts = build_transfer(x, w);
    FieldMatrix rhs = vec_transfer_rhs(ts, f, [&](int k) {
        // The gluing block of the total differential: W_{k-1} rows, X_k cols.
        const FieldMatrix& d = e.total.diff(k).matrix;
        std::size_t sr = term_dim(w, k - 1);
        std::size_t sc = term_dim(w, k), qc = term_dim(x, k);
        return neg(block_of(d, 0, sr, sc, qc));
    });
    if (rhs.is_zero()) return true;
    return solve(ts.op, rhs).has_value();
}

std::size_t extension_classes_dim(const WindowedComplex& x, const WindowedComplex& z) {
    std::vector<ChainMap> cms = chain_map_space(x, z);
    if (cms.empty()) return 0;
    PrimeField f = x.algebra->field;
    WindowedComplex w = shift(z, -1);
    TransferSystem ts = build_transfer(x, w);

    FieldMatrix glue(f, ts.total_entries, cms.size());
    for (std::size_t i = 0; i < cms.size(); ++i) {
        FieldMatrix col = vec_transfer_rhs(ts, f,
                                           [&](int k) { return neg(cms[i].component(k)); });
        for (std::size_t r = 0; r < col.rows(); ++r)
            if (col.at(r, 0) != 0) glue.set(r, i, col.at(r, 0));
    }
    std::size_t ker_t = ts.total_vars - rank(ts.op);
    std::size_t ker_joint = (ts.total_vars + cms.size()) - rank(hstack(ts.op, glue));
    std::size_t split_dim = ker_joint - ker_t;
    return cms.size() - split_dim;
}

Selection empty_selection(const WindowedComplex& x) {
    return Selection(x.terms.size());
}

Selection full_selection(const WindowedComplex& x) {
    if (!x.tags) throw precondition_error("complex has no summand tags");
    Selection s(x.terms.size());
    for (std::size_t d = 0; d < x.terms.size(); ++d)
        for (std::size_t b = 0; b < (*x.tags)[d].size(); ++b) s[d].push_back(b);
    return s;
}

bool selection_eq(const Selection& a, const Selection& b) { return a == b; }

WindowedComplex auto_free_tags(const WindowedComplex& x) {
    Module reg = regular_module(x.algebra, x.side);
    std::size_t rd = reg.dim();
    std::vector<std::vector<Summand>> tags;
    for (int n = x.lo; n <= x.hi; ++n) {
        const Module& t = x.term(n);
        if (t.dim() % rd != 0)
            throw invariant_error("term dimension is not a multiple of the regular module");
        std::size_t copies = t.dim() / rd;
        for (std::size_t g = 0; g < t.gen_action().size(); ++g) {
            const FieldMatrix& m = t.gen_action()[g];
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c) {
                    std::int64_t want = (r / rd == c / rd)
                                            ? reg.gen_action()[g].at(r % rd, c % rd)
                                            : 0;
                    if (m.at(r, c) != want)
                        throw invariant_error("term is not a standard free module");
                }
        }
        std::vector<Summand> degree_tags;
        for (std::size_t i = 0; i < copies; ++i)
            degree_tags.push_back(
                Summand{"f" + std::to_string(n) + "_" + std::to_string(i + 1), rd});
        tags.push_back(std::move(degree_tags));
    }
    WindowedComplex y = x;
    y.tags = std::move(tags);
    y.verify();
    return y;
}

namespace {

/// Flat view of a tagged complex: per-degree block dimensions plus raw
/// differential matrices. Used for both module-level and tensored complexes.
struct BlockComplex {
    PrimeField field;
    std::vector<std::vector<std::size_t>> block_dims;  ///< per degree index
    std::vector<std::vector<std::size_t>> block_offsets;
    std::vector<FieldMatrix> diffs;  ///< diffs[i] : degree i+1 -> degree i

    BlockComplex(PrimeField f) : field(f) {}

    std::size_t degrees() const { return block_dims.size(); }

    std::vector<std::size_t> coords(std::size_t deg, const std::vector<std::size_t>& sel) const {
        std::vector<std::size_t> out;
        for (std::size_t b : sel)
            for (std::size_t j = 0; j < block_dims[deg][b]; ++j)
                out.push_back(block_offsets[deg][b] + j);
        return out;
    }
};

BlockComplex block_view(const WindowedComplex& x) {
    if (!x.tags) throw precondition_error("complex has no summand tags");
    BlockComplex bc(x.algebra->field);
    for (std::size_t d = 0; d < x.terms.size(); ++d) {
        std::vector<std::size_t> dims, offsets;
        std::size_t off = 0;
        for (const Summand& s : (*x.tags)[d]) {
            dims.push_back(s.dim);
            offsets.push_back(off);
            off += s.dim;
        }
        bc.block_dims.push_back(std::move(dims));
        bc.block_offsets.push_back(std::move(offsets));
    }
    for (const Morphism& d : x.diffs) bc.diffs.push_back(d.matrix);
    return bc;
}

bool selection_contains(const std::vector<std::size_t>& sel, std::size_t b) {
    return std::find(sel.begin(), sel.end(), b) != sel.end();
}

void selection_insert(std::vector<std::size_t>& sel, std::size_t b) {
    auto it = std::lower_bound(sel.begin(), sel.end(), b);
    if (it == sel.end() || *it != b) sel.insert(it, b);
}

/// Smallest downward-closed selection containing seed, within the active
/// blocks (the quotient by everything outside active).
Selection downward_closure(const BlockComplex& bc, const Selection& seed,
                           const Selection& active) {
    Selection sel = seed;
    for (std::size_t d = 0; d < sel.size(); ++d)
        for (std::size_t b : sel[d])
            if (!selection_contains(active[d], b))
                throw precondition_error("seed selects a block outside the active blocks");
    for (std::size_t deg = bc.degrees() - 1; deg >= 1; --deg) {
        const FieldMatrix& d = bc.diffs[deg - 1];
        for (std::size_t src : sel[deg]) {
            for (std::size_t tgt : active[deg - 1]) {
                if (selection_contains(sel[deg - 1], tgt)) continue;
                bool hit = false;
                for (std::size_t r = 0; r < bc.block_dims[deg - 1][tgt] && !hit; ++r)
                    for (std::size_t c = 0; c < bc.block_dims[deg][src] && !hit; ++c)
                        if (d.at(bc.block_offsets[deg - 1][tgt] + r,
                                 bc.block_offsets[deg][src] + c) != 0)
                            hit = true;
                if (hit) selection_insert(sel[deg - 1], tgt);
            }
        }
        if (deg == 1) break;
    }
    return sel;
}

/// Kernel of the selected differential out of degree `deg`, embedded into
/// the active coordinates of degree `deg`.
RowSpace selected_kernel(const BlockComplex& bc, const Selection& sel, const Selection& active,
                         std::size_t deg) {
    std::vector<std::size_t> cols = bc.coords(deg, sel[deg]);
    std::vector<std::size_t> active_cols = bc.coords(deg, active[deg]);
    std::vector<std::size_t> rows = bc.coords(deg - 1, active[deg - 1]);
    if (cols.empty()) return RowSpace::zero(bc.field, active_cols.size());
    FieldMatrix d = bc.diffs[deg - 1].select_rows(rows).select_cols(cols);
    FieldMatrix ker = kernel_basis(d);
    // Scatter kernel coordinates (indexed by sel columns) into active ones.
    std::vector<std::size_t> pos(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        auto it = std::lower_bound(active_cols.begin(), active_cols.end(), cols[i]);
        pos[i] = static_cast<std::size_t>(it - active_cols.begin());
    }
    FieldMatrix embedded(bc.field, active_cols.size(), ker.cols());
    for (std::size_t r = 0; r < ker.rows(); ++r)
        for (std::size_t c = 0; c < ker.cols(); ++c)
            if (ker.at(r, c) != 0) embedded.set(pos[r], c, ker.at(r, c));
    return RowSpace::from_cols(embedded);
}

/// Image of the selected differential into degree `deg`, in active
/// coordinates of degree `deg`.
RowSpace selected_image(const BlockComplex& bc, const Selection& sel, const Selection& active,
                        std::size_t deg) {
    std::vector<std::size_t> rows = bc.coords(deg, active[deg]);
    std::vector<std::size_t> cols = bc.coords(deg + 1, sel[deg + 1]);
    if (cols.empty()) return RowSpace::zero(bc.field, rows.size());
    return RowSpace::from_cols(bc.diffs[deg].select_rows(rows).select_cols(cols));
}

std::size_t meet_dim(const RowSpace& a, const RowSpace& b) {
    return a.dim() + b.dim() - RowSpace::sum(a, b).dim();
}

/// Grows seed to a downward-closed, interior-exact selection by greedy
/// kernel coverage repairs. `active` is the complement of previously frozen
/// blocks; exactness is measured in the quotient by the frozen part.
Selection exact_cover(const BlockComplex& bc, const Selection& seed, const Selection& active) {
    Selection sel = downward_closure(bc, seed, active);
    std::size_t top = bc.degrees() - 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t deg = 1; deg < top; ++deg) {
            RowSpace ker = selected_kernel(bc, sel, active, deg);
            RowSpace img = selected_image(bc, sel, active, deg);
            if (ker == img) continue;
            // Repair: add blocks at deg+1 until their images cover the kernel.
            RowSpace covered = img;
            Selection addition(bc.degrees());
            for (std::size_t cand : active[deg + 1]) {
                if (selection_contains(sel[deg + 1], cand)) continue;
                Selection one(bc.degrees());
                one[deg + 1].push_back(cand);
                RowSpace gain = selected_image(bc, one, active, deg);
                RowSpace bigger = RowSpace::sum(covered, gain);
                if (meet_dim(bigger, ker) > meet_dim(covered, ker)) {
                    covered = bigger;
                    selection_insert(addition[deg + 1], cand);
                }
                if (ker.dim() == meet_dim(covered, ker)) break;
            }
            if (ker.dim() != meet_dim(covered, ker))
                throw internal_error("exact covering repair exhausted the available blocks");
            for (std::size_t b : addition[deg + 1]) selection_insert(sel[deg + 1], b);
            sel = downward_closure(bc, sel, active);
            changed = true;
            break;
        }
    }
    for (std::size_t deg = 1; deg < top; ++deg) {
        if (!(selected_kernel(bc, sel, active, deg) == selected_image(bc, sel, active, deg)))
            throw internal_error("exact covering result is not exact");
    }
    return sel;
}

Selection selection_union(const Selection& a, const Selection& b) {
    Selection out = a;
    for (std::size_t d = 0; d < b.size(); ++d)
        for (std::size_t blk : b[d]) selection_insert(out[d], blk);
    return out;
}

Selection selection_complement(const WindowedComplex& x, const Selection& s) {
    Selection out(x.terms.size());
    for (std::size_t d = 0; d < x.terms.size(); ++d)
        for (std::size_t b = 0; b < (*x.tags)[d].size(); ++b)
            if (!selection_contains(s[d], b)) out[d].push_back(b);
    return out;
}

WindowedComplex materialize_selection(const WindowedComplex& x, const Selection& sel,
                                      bool require_closed) {
    if (!x.tags) throw precondition_error("complex has no summand tags");
    if (sel.size() != x.terms.size()) throw precondition_error("selection size mismatch");
    BlockComplex bc = block_view(x);
    std::vector<std::vector<std::size_t>> coord_lists;
    for (std::size_t d = 0; d < x.terms.size(); ++d)
        coord_lists.push_back(bc.coords(d, sel[d]));

    if (require_closed) {
        for (std::size_t d = 1; d < x.terms.size(); ++d) {
            const FieldMatrix& dmat = bc.diffs[d - 1];
            for (std::size_t b = 0; b < (*x.tags)[d - 1].size(); ++b) {
                if (selection_contains(sel[d - 1], b)) continue;
                FieldMatrix blockm =
                    dmat.select_rows(bc.coords(d - 1, {b})).select_cols(coord_lists[d]);
                if (!blockm.is_zero())
                    throw invariant_error("selection is not closed under the differential");
            }
        }
    }

    std::vector<Module> terms;
    for (std::size_t d = 0; d < x.terms.size(); ++d) {
        std::vector<FieldMatrix> gens;
        for (const FieldMatrix& g : x.terms[d].gen_action())
            gens.push_back(g.select_rows(coord_lists[d]).select_cols(coord_lists[d]));
        terms.push_back(Module(x.algebra, x.side, std::move(gens)));
    }
    std::vector<Morphism> diffs;
    for (std::size_t d = 1; d < x.terms.size(); ++d)
        diffs.push_back(Morphism(
            terms[d], terms[d - 1],
            bc.diffs[d - 1].select_rows(coord_lists[d - 1]).select_cols(coord_lists[d])));

    std::vector<std::vector<Summand>> tags;
    for (std::size_t d = 0; d < x.terms.size(); ++d) {
        std::vector<Summand> degree_tags;
        for (std::size_t b : sel[d]) degree_tags.push_back((*x.tags)[d][b]);
        tags.push_back(std::move(degree_tags));
    }
    WindowedComplex out = make_complex(x.algebra, x.side, x.lo, std::move(terms),
                                       std::move(diffs));
    out.tags = std::move(tags);
    out.verify();
    return out;
}

}  // namespace

WindowedComplex subcomplex_from_selection(const WindowedComplex& x, const Selection& sel) {
    return materialize_selection(x, sel, true);
}

WindowedComplex subquotient_from_selection(const WindowedComplex& x, const Selection& sel) {
    return materialize_selection(x, sel, false);
}

Selection covering_closure(const WindowedComplex& x, const Selection& seed) {
    BlockComplex bc = block_view(x);
    return downward_closure(bc, seed, full_selection(x));
}

WindowedComplex covering_subcomplex(const WindowedComplex& x, const Selection& seed) {
    return subcomplex_from_selection(x, covering_closure(x, seed));
}

Selection exact_covering_selection(const WindowedComplex& x, const Selection& seed) {
    if (auto fail = first_interior_failure(x))
        throw precondition_error("exact covering needs an interior-exact complex");
    BlockComplex bc = block_view(x);
    return exact_cover(bc, seed, full_selection(x));
}

WindowedComplex exact_covering_subcomplex(const WindowedComplex& x, const Selection& seed) {
    return subcomplex_from_selection(x, exact_covering_selection(x, seed));
}

namespace {

/// A (x)_R P for a complex of standard frees P with rank-one tags: each
/// tensored block is a copy of A, and the block (j, i) of the induced
/// differential is the action of the copy-j component of d(unit of copy i).
BlockComplex tensored_block_view(const Module& a, const WindowedComplex& p) {
    if (a.side() == p.side) throw precondition_error("tensor needs opposite sides");
    std::size_t rd = p.algebra->dim;
    std::size_t unit = p.algebra->unit_index;
    BlockComplex bc(a.algebra()->field);
    for (std::size_t d = 0; d < p.terms.size(); ++d) {
        std::size_t copies = p.terms[d].dim() / rd;
        std::vector<std::size_t> dims(copies, a.dim()), offsets;
        for (std::size_t i = 0; i < copies; ++i) offsets.push_back(i * a.dim());
        bc.block_dims.push_back(std::move(dims));
        bc.block_offsets.push_back(std::move(offsets));
    }
    for (std::size_t d = 1; d < p.terms.size(); ++d) {
        const FieldMatrix& dm = p.diffs[d - 1].matrix;
        std::size_t src_copies = bc.block_dims[d].size();
        std::size_t tgt_copies = bc.block_dims[d - 1].size();
        FieldMatrix big(bc.field, tgt_copies * a.dim(), src_copies * a.dim());
        for (std::size_t i = 0; i < src_copies; ++i) {
            std::vector<std::int64_t> unit_image = dm.col(i * rd + unit);
            for (std::size_t j = 0; j < tgt_copies; ++j) {
                std::vector<std::int64_t> elem(unit_image.begin() + static_cast<long>(j * rd),
                                               unit_image.begin() +
                                                   static_cast<long>((j + 1) * rd));
                bool zero = true;
                for (std::int64_t v : elem)
                    if (v != 0) zero = false;
                if (zero) continue;
                paste_block(big, j * a.dim(), i * a.dim(), a.action_of(elem));
            }
        }
        bc.diffs.push_back(std::move(big));
    }
    for (std::size_t i = 0; i + 1 < bc.diffs.size(); ++i)
        if (!mul(bc.diffs[i], bc.diffs[i + 1]).is_zero())
            throw internal_error("tensored block complex differentials do not square to zero");
    return bc;
}

bool selection_full(const WindowedComplex& x, const Selection& s) {
    for (std::size_t d = 0; d < x.terms.size(); ++d)
        if (s[d].size() != (*x.tags)[d].size()) return false;
    return true;
}

bool block_interior_exact(const BlockComplex& bc, const Selection& sel, const Selection& active) {
    for (std::size_t deg = 1; deg + 1 < bc.degrees(); ++deg)
        if (!(selected_kernel(bc, sel, active, deg) == selected_image(bc, sel, active, deg)))
            return false;
    return true;
}

}  // namespace

Filtration filtration_by_small(const WindowedComplex& p, const Module& a) {
    WindowedComplex tagged = p.tags ? p : auto_free_tags(p);
    std::size_t rd = p.algebra->dim;
    for (const auto& degree_tags : *tagged.tags)
        for (const Summand& s : degree_tags)
            if (s.dim != rd)
                throw precondition_error("filtration needs rank-one free summand tags");
    // Validate the standard free structure (and keep the caller's labels).
    auto_free_tags(p);

    BlockComplex bc_p = block_view(tagged);
    BlockComplex bc_a = tensored_block_view(a, tagged);

    Selection everything = full_selection(tagged);
    if (!block_interior_exact(bc_a, everything, everything))
        throw precondition_error("tensored complex is not exact at interior degrees");

    Filtration out;
    Selection frozen = empty_selection(tagged);
    while (!selection_full(tagged, frozen)) {
        Selection active = selection_complement(tagged, frozen);
        // Seed: first remaining block at the topmost degree that has one.
        Selection seed(tagged.terms.size());
        for (std::size_t d = tagged.terms.size(); d-- > 0;) {
            if (!active[d].empty()) {
                seed[d].push_back(active[d].front());
                break;
            }
        }
        Selection sel = seed;
        while (true) {
            Selection closed_p = downward_closure(bc_p, sel, active);
            Selection closed_a = exact_cover(bc_a, closed_p, active);
            if (selection_eq(closed_a, closed_p)) {
                sel = closed_p;
                break;
            }
            sel = closed_a;
        }
        frozen = selection_union(frozen, sel);
        out.cumulative.push_back(frozen);
    }
    return out;
}

}  // namespace stablecat
