#include "stablecat/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace stablecat {

FieldMatrix Algebra::left_mult(std::size_t i) const {
    FieldMatrix m(field, dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) m.set(k, j, c(i, j, k));
    return m;
}

FieldMatrix Algebra::right_mult(std::size_t j) const {
    FieldMatrix m(field, dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t k = 0; k < dim; ++k) m.set(k, i, c(i, j, k));
    return m;
}

FieldMatrix Algebra::left_mult_element(const std::vector<std::int64_t>& coords) const {
    if (coords.size() != dim) throw invariant_error("element coordinate size mismatch");
    FieldMatrix m(field, dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::int64_t ci = field.reduce(coords[i]);
        if (ci == 0) continue;
        m = add(m, scale(ci, left_mult(i)));
    }
    return m;
}

std::size_t Algebra::generator_index(const std::string& label) const {
    for (std::size_t g = 0; g < generator_labels.size(); ++g)
        if (generator_labels[g] == label) return g;
    throw invariant_error("unknown generator label: " + label);
}

void Algebra::verify() const {
    if (dim == 0) throw invariant_error("algebra must be nonzero");
    if (basis_labels.size() != dim || basis_words.size() != dim ||
        structure.size() != dim * dim * dim)
        throw invariant_error("algebra table sizes inconsistent");
    // Unit law.
    FieldMatrix id = FieldMatrix::identity(field, dim);
    if (left_mult(unit_index) != id || right_mult(unit_index) != id)
        throw invariant_error("unit law fails");
    // Associativity: L_{e_i} L_{e_j} = sum_k c(i,j,k) L_{e_k}.
    std::vector<FieldMatrix> lm;
    lm.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) lm.push_back(left_mult(i));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            FieldMatrix lhs = mul(lm[i], lm[j]);
            FieldMatrix rhs(field, dim, dim);
            for (std::size_t k = 0; k < dim; ++k) {
                std::int64_t cij = c(i, j, k);
                if (cij != 0) rhs = add(rhs, scale(cij, lm[k]));
            }
            if (lhs != rhs) throw invariant_error("associativity fails");
        }
    // Radical: two-sided ideal, nilpotent, codimension 1 (local algebra).
    if (radical_basis.rows() != dim) throw invariant_error("radical ambient mismatch");
    RowSpace rad = RowSpace::from_cols(radical_basis);
    if (rad.dim() != dim - 1) throw invariant_error("catalog algebras must be local");
    for (std::size_t i = 0; i < dim; ++i) {
        if (!rad.contains_all_cols(mul(left_mult(i), radical_basis)))
            throw invariant_error("radical not a left ideal");
        if (!rad.contains_all_cols(mul(right_mult(i), radical_basis)))
            throw invariant_error("radical not a right ideal");
    }
    // Nilpotency: powers of the ideal must reach zero.
    RowSpace power = rad;
    for (std::size_t step = 0; step <= dim; ++step) {
        if (power.dim() == 0) break;
        if (step == dim) throw invariant_error("radical not nilpotent");
        // span of { r * s : r in rad, s in power }
        FieldMatrix span(field, dim, 0);
        for (std::size_t rcol = 0; rcol < radical_basis.cols(); ++rcol) {
            FieldMatrix lmul = left_mult_element(radical_basis.col(rcol));
            span = hstack(span, mul(lmul, power.basis_columns()));
        }
        power = RowSpace::from_cols(span);
    }
    // Generator words must reproduce the basis via left multiplications.
    for (std::size_t b = 0; b < dim; ++b) {
        std::vector<std::int64_t> e(dim, 0);
        e[unit_index] = 1;
        for (auto it = basis_words[b].rbegin(); it != basis_words[b].rend(); ++it) {
            if (*it >= generators.size()) throw invariant_error("bad generator index in word");
            e = mat_apply(lm[generators[*it]], e);
        }
        std::vector<std::int64_t> want(dim, 0);
        want[b] = 1;
        if (e != want) throw invariant_error("basis word does not spell basis element");
    }
}

namespace {

struct TableBuilder {
    std::size_t dim;
    std::vector<std::int64_t> t;
    explicit TableBuilder(std::size_t d) : dim(d), t(d * d * d, 0) {}
    void set(std::size_t i, std::size_t j, std::size_t k, std::int64_t v) {
        t[(i * dim + j) * dim + k] = v;
    }
};

std::vector<std::string> sq_zero_gen_labels(std::size_t n) {
    static const char* short_names[] = {"x", "y", "z"};
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        if (n <= 3)
            labels.push_back(short_names[i]);
        else
            labels.push_back("x" + std::to_string(i + 1));
    }
    return labels;
}

}  // namespace

AlgebraPtr mk_local_sq_zero(std::size_t n, std::int64_t p) {
    if (n == 0) throw invariant_error("local_sq_zero needs at least one variable");
    PrimeField f(p);
    std::size_t dim = n + 1;
    TableBuilder tb(dim);
    for (std::size_t j = 0; j < dim; ++j) tb.set(0, j, j, 1);
    for (std::size_t i = 1; i < dim; ++i) tb.set(i, 0, i, 1);
    // x_i x_j = 0 for all i,j: nothing else to set.
    FieldMatrix rad(f, dim, n);
    for (std::size_t i = 0; i < n; ++i) rad.set(i + 1, i, 1);
    auto a = std::make_shared<Algebra>(f, rad);
    a->dim = dim;
    a->structure = tb.t;
    a->unit_index = 0;
    a->generator_labels = sq_zero_gen_labels(n);
    a->basis_labels.push_back("1");
    for (const auto& g : a->generator_labels) a->basis_labels.push_back(g);
    for (std::size_t i = 0; i < n; ++i) a->generators.push_back(i + 1);
    a->basis_words.resize(dim);
    for (std::size_t i = 0; i < n; ++i) a->basis_words[i + 1] = {i};
    a->commutative = true;
    a->family = Algebra::Family::LocalSqZero;
    a->spec_string = "local_sq_zero(" + std::to_string(n) + "," + std::to_string(p) + ")";
    a->verify();
    return a;
}

AlgebraPtr mk_cyclic_group_algebra(std::int64_t m, std::int64_t p) {
    PrimeField f(p);
    if (m < 1) throw invariant_error("group order must be positive");
    std::int64_t q = m;
    while (q % p == 0) q /= p;
    if (q != 1) throw invariant_error("cyclic_group order must be a power of p");
    if (m == 1) throw invariant_error("cyclic_group order must exceed 1");
    std::size_t dim = static_cast<std::size_t>(m);
    TableBuilder tb(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) tb.set(i, j, (i + j) % dim, 1);
    // Augmentation ideal: spanned by s^i - 1, i = 1..m-1; nilpotent since m = p^e.
    FieldMatrix rad(f, dim, dim - 1);
    for (std::size_t i = 1; i < dim; ++i) {
        rad.set(i, i - 1, 1);
        rad.set(0, i - 1, f.p - 1);
    }
    auto a = std::make_shared<Algebra>(f, rad);
    a->dim = dim;
    a->structure = tb.t;
    a->unit_index = 0;
    a->generator_labels = {"s"};
    a->generators = {1};
    a->basis_labels.push_back("1");
    a->basis_labels.push_back("s");
    for (std::size_t i = 2; i < dim; ++i) a->basis_labels.push_back("s" + std::to_string(i));
    a->basis_words.resize(dim);
    for (std::size_t i = 1; i < dim; ++i) a->basis_words[i] = std::vector<std::size_t>(i, 0);
    a->commutative = true;
    a->family = Algebra::Family::CyclicGroup;
    a->spec_string = "cyclic_group(" + std::to_string(m) + "," + std::to_string(p) + ")";
    a->verify();
    return a;
}

AlgebraPtr mk_trunc_poly(std::size_t e, std::int64_t p) {
    if (e < 1) throw invariant_error("trunc_poly needs e >= 1");
    if (e == 1) throw invariant_error("trunc_poly needs e >= 2 to have a generator");
    PrimeField f(p);
    std::size_t dim = e;
    TableBuilder tb(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (i + j < dim) tb.set(i, j, i + j, 1);
    FieldMatrix rad(f, dim, dim - 1);
    for (std::size_t i = 1; i < dim; ++i) rad.set(i, i - 1, 1);
    auto a = std::make_shared<Algebra>(f, rad);
    a->dim = dim;
    a->structure = tb.t;
    a->unit_index = 0;
    a->generator_labels = {"x"};
    a->generators = {1};
    a->basis_labels.push_back("1");
    a->basis_labels.push_back("x");
    for (std::size_t i = 2; i < dim; ++i) a->basis_labels.push_back("x" + std::to_string(i));
    a->basis_words.resize(dim);
    for (std::size_t i = 1; i < dim; ++i) a->basis_words[i] = std::vector<std::size_t>(i, 0);
    a->commutative = true;
    a->family = Algebra::Family::TruncPoly;
    a->spec_string = "trunc_poly(" + std::to_string(e) + "," + std::to_string(p) + ")";
    a->verify();
    return a;
}

AlgebraPtr parse_ring_spec(const std::string& spec) {
    std::string s;
    for (char ch : spec)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw invariant_error("malformed ring spec: " + spec);
    std::string name = s.substr(0, open);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    auto comma = args.find(',');
    if (comma == std::string::npos) throw invariant_error("ring spec needs two arguments: " + spec);
    std::int64_t a1 = 0, a2 = 0;
    try {
        std::size_t used1 = 0, used2 = 0;
        std::string first = args.substr(0, comma), second = args.substr(comma + 1);
        a1 = std::stoll(first, &used1);
        a2 = std::stoll(second, &used2);
        if (used1 != first.size() || used2 != second.size())
            throw invariant_error("ring spec arguments must be integers: " + spec);
    } catch (const invariant_error&) {
        throw;
    } catch (const std::exception&) {
        throw invariant_error("ring spec arguments must be integers: " + spec);
    }
    if (name == "local_sq_zero") {
        if (a1 < 1) throw invariant_error("local_sq_zero needs n >= 1");
        return mk_local_sq_zero(static_cast<std::size_t>(a1), a2);
    }
    if (name == "cyclic_group") return mk_cyclic_group_algebra(a1, a2);
    if (name == "trunc_poly") {
        if (a1 < 1) throw invariant_error("trunc_poly needs e >= 1");
        return mk_trunc_poly(static_cast<std::size_t>(a1), a2);
    }
    throw invariant_error("unknown ring family: " + name);
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a.get() == b.get() || (a->field.p == b->field.p && a->spec_string == b->spec_string);
}

}  // namespace stablecat
