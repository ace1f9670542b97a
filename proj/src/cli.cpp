#include "stablecat/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stablecat/common.hpp"
#include "stablecat/counterexamples.hpp"
#include "stablecat/homalg.hpp"
#include "stablecat/stable.hpp"

namespace stablecat {

namespace {

// ---------------------------------------------------------------- JSON bits

ordered_json mat_to_json(const FieldMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

FieldMatrix mat_from_json(const PrimeField& f, std::size_t rows, std::size_t cols,
                          const ordered_json& j) {
    FieldMatrix m(f, rows, cols);
    if (!j.is_array()) throw invariant_error("a matrix payload must be an array of rows");
    if (rows * cols == 0) return m;
    if (j.size() != rows) throw invariant_error("matrix payload has the wrong number of rows");
    for (std::size_t r = 0; r < rows; ++r) {
        const ordered_json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw invariant_error("matrix payload has a row of the wrong length");
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, row[c].get<std::int64_t>());
    }
    return m;
}

ordered_json vec_to_json(const std::vector<std::int64_t>& v) {
    ordered_json out = ordered_json::array();
    for (std::int64_t x : v) out.push_back(x);
    return out;
}

const ordered_json& get_field(const ordered_json& j, const char* name, const char* what) {
    if (!j.is_object() || !j.contains(name))
        throw invariant_error(std::string(what) + " is missing the field '" + name + "'");
    return j.at(name);
}

// ------------------------------------------------------------- file loading

ordered_json parse_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw invariant_error(std::string("cannot open ") + what + ": " + path);
    return ordered_json::parse(in);
}

// --------------------------------------------------------- report envelope

ordered_json make_report(const std::string& command, const std::string& ring,
                         ordered_json inputs, ordered_json results,
                         const std::vector<std::string>& collapse_notes,
                         ordered_json window = nullptr) {
    ordered_json metadata;
    metadata["collapse_notes"] = collapse_notes;
    metadata["window"] = std::move(window);
    metadata["tool_version"] = kToolVersion;
    ordered_json report;
    report["command"] = command;
    report["ring"] = ring;
    report["inputs"] = std::move(inputs);
    report["results"] = std::move(results);
    report["metadata"] = std::move(metadata);
    return report;
}

void emit_json(const ordered_json& report) { std::cout << report.dump(2) << "\n"; }

/// One line per table row, tab-separated, no header (scripting surface).
void emit_tsv(const std::vector<std::vector<long long>>& rows) {
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            std::cout << (i ? "\t" : "") << row[i];
        std::cout << "\n";
    }
}

ordered_json window_json(int lo, int hi) {
    ordered_json w = ordered_json::array();
    w.push_back(lo);
    w.push_back(hi);
    return w;
}

// --------------------------------------------------------------- reporting

ordered_json acyclicity_json(const AcyclicityReport& rep) {
    ordered_json verdicts;
    verdicts["exact_interior"] = rep.exact_interior;
    if (rep.inj_acyclic) verdicts["inj_acyclic"] = *rep.inj_acyclic;
    verdicts["ac_acyclic"] = rep.ac_acyclic;
    if (rep.firmly_acyclic) verdicts["firmly_acyclic"] = *rep.firmly_acyclic;
    verdicts["totally_acyclic"] = rep.totally_acyclic;

    ordered_json witnesses = ordered_json::array();
    for (const VerdictWitness& w : rep.witnesses) {
        ordered_json entry;
        entry["verdict"] = w.verdict;
        entry["degree"] = w.degree;
        entry["vector"] = vec_to_json(w.vec);
        witnesses.push_back(std::move(entry));
    }

    ordered_json out;
    out["case"] = rep.injective_case ? "injective" : "projective";
    out["verdicts"] = std::move(verdicts);
    out["witnesses"] = std::move(witnesses);
    return out;
}

// ----------------------------------------------------------- small parsing

std::pair<int, int> parse_range(const std::string& s) {
    std::size_t pos = s.find("..");
    if (pos == std::string::npos)
        throw invariant_error("a range must look like a..b: " + s);
    int a = 0, b = 0;
    try {
        std::size_t used1 = 0, used2 = 0;
        a = std::stoi(s.substr(0, pos), &used1);
        b = std::stoi(s.substr(pos + 2), &used2);
        if (used1 != pos || used2 != s.size() - pos - 2)
            throw invariant_error("range bounds must be integers: " + s);
    } catch (const invariant_error&) {
        throw;
    } catch (const std::exception&) {
        throw invariant_error("range bounds must be integers: " + s);
    }
    if (a > b) throw invariant_error("range bounds must be ordered: " + s);
    return {a, b};
}

bool is_counterexample_name(const std::string& s) {
    for (CounterexampleKind k : {CounterexampleKind::InjX, CounterexampleKind::InjY,
                                 CounterexampleKind::ProjX, CounterexampleKind::ProjY})
        if (counterexample_kind_name(k) == s) return true;
    return false;
}

/// A complex given as a counterexample name (built with p/depth/base) or as
/// a complex-file path.
WindowedComplex load_complex_target(const std::string& target, std::int64_t p, int depth,
                                    int base) {
    if (is_counterexample_name(target))
        return build_counterexample({counterexample_kind_from_name(target), p, depth, base});
    return complex_from_json(parse_json_file(target, "complex file"));
}

std::vector<long long> term_dims_of(const WindowedComplex& x) {
    std::vector<long long> dims;
    for (const Module& t : x.terms) dims.push_back(static_cast<long long>(t.dim()));
    return dims;
}

// ------------------------------------------------------------- subcommands

struct ResolveOpts {
    std::string ring, module_ref;
    int length = 3;
    std::string direction = "proj", side = "left", format = "json";
};

void run_resolve(const ResolveOpts& o) {
    AlgebraPtr a = parse_ring_spec(o.ring);
    Side side = side_from_name(o.side);
    Module m = load_module_ref(a, side, o.module_ref);
    if (o.length < 0) throw invariant_error("--length must be nonnegative");

    Resolution res = o.direction == "proj"
                         ? projective_resolution(m, static_cast<std::size_t>(o.length))
                         : injective_coresolution(m, static_cast<std::size_t>(o.length));
    // Minimal resolutions stabilize at zero once they terminate; trim the
    // zero tail and report the honest length.
    std::size_t nterms = res.terms.size();
    while (nterms > 0 && res.terms[nterms - 1].dim() == 0) --nterms;

    ordered_json dims = ordered_json::array();
    ordered_json gens = ordered_json::array();
    ordered_json maps = ordered_json::array();
    std::vector<std::vector<long long>> tsv;
    for (std::size_t i = 0; i < nterms; ++i) {
        dims.push_back(res.terms[i].dim());
        gens.push_back(res.terms[i].dim() / a->dim);
        maps.push_back(mat_to_json(res.maps[i].matrix));
        tsv.push_back({static_cast<long long>(i), static_cast<long long>(res.terms[i].dim())});
    }

    if (o.format == "tsv") {
        emit_tsv(tsv);
        return;
    }
    ordered_json inputs;
    inputs["module"] = o.module_ref;
    inputs["length"] = o.length;
    inputs["direction"] = o.direction;
    inputs["side"] = o.side;
    ordered_json results;
    results["direction"] = o.direction;
    results["length"] = nterms == 0 ? 0 : nterms - 1;
    results["dims"] = std::move(dims);
    results["generator_counts"] = std::move(gens);
    results["maps"] = std::move(maps);
    emit_json(make_report("resolve", a->spec_string, std::move(inputs), std::move(results),
                          {"resolutions are minimal: covers by free modules, hulls by sums of J"}));
}

struct BifunctorOpts {
    std::string ring, m_ref, n_ref;
    std::string degrees = "0..3", side = "left", format = "json";
};

void run_ext(const BifunctorOpts& o) {
    AlgebraPtr a = parse_ring_spec(o.ring);
    Side side = side_from_name(o.side);
    Module m = load_module_ref(a, side, o.m_ref);
    Module n = load_module_ref(a, side, o.n_ref);
    auto [d0, d1] = parse_range(o.degrees);
    if (d0 < 0) throw invariant_error("Ext degrees must be nonnegative");

    ordered_json dims = ordered_json::array();
    std::vector<std::vector<long long>> tsv;
    for (int d = d0; d <= d1; ++d) {
        std::size_t dim = ext(m, n, static_cast<std::size_t>(d)).dim;
        dims.push_back(dim);
        tsv.push_back({d, static_cast<long long>(dim)});
    }
    if (o.format == "tsv") {
        emit_tsv(tsv);
        return;
    }
    ordered_json inputs;
    inputs["M"] = o.m_ref;
    inputs["N"] = o.n_ref;
    inputs["degrees"] = o.degrees;
    inputs["side"] = o.side;
    ordered_json results;
    results["degrees"] = window_json(d0, d1);
    results["dims"] = std::move(dims);
    emit_json(make_report("ext", a->spec_string, std::move(inputs), std::move(results), {}));
}

void run_tor(const BifunctorOpts& o) {
    AlgebraPtr a = parse_ring_spec(o.ring);
    Module m = load_module_ref(a, Side::Right, o.m_ref);
    Module n = load_module_ref(a, Side::Left, o.n_ref);
    auto [d0, d1] = parse_range(o.degrees);
    if (d0 < 0) throw invariant_error("Tor degrees must be nonnegative");

    ordered_json dims = ordered_json::array();
    std::vector<std::vector<long long>> tsv;
    for (int d = d0; d <= d1; ++d) {
        std::size_t dim = tor(m, n, static_cast<std::size_t>(d)).dim;
        dims.push_back(dim);
        tsv.push_back({d, static_cast<long long>(dim)});
    }
    if (o.format == "tsv") {
        emit_tsv(tsv);
        return;
    }
    ordered_json inputs;
    inputs["M"] = o.m_ref;
    inputs["N"] = o.n_ref;
    inputs["degrees"] = o.degrees;
    ordered_json results;
    results["degrees"] = window_json(d0, d1);
    results["dims"] = std::move(dims);
    emit_json(make_report("tor", a->spec_string, std::move(inputs), std::move(results),
                          {"M is taken as a right module, N as a left module"}));
}

struct StableHomOpts {
    std::string ring, m_ref, n_ref;
    std::string variant = "proj", side = "left";
};

void run_stable_hom(const StableHomOpts& o) {
    AlgebraPtr a = parse_ring_spec(o.ring);
    Side side = side_from_name(o.side);
    Module m = load_module_ref(a, side, o.m_ref);
    Module n = load_module_ref(a, side, o.n_ref);
    StableHomResult res = o.variant == "proj" ? stable_hom_proj(m, n) : stable_hom_inj(m, n);

    ordered_json reps = ordered_json::array();
    for (const Morphism& f : res.reps) reps.push_back(mat_to_json(f.matrix));
    ordered_json inputs;
    inputs["M"] = o.m_ref;
    inputs["N"] = o.n_ref;
    inputs["variant"] = o.variant;
    inputs["side"] = o.side;
    ordered_json results;
    results["variant"] = o.variant;
    results["dim"] = res.dim;
    results["representatives"] = std::move(reps);
    std::string note = o.variant == "proj"
                           ? "maps factoring through the projective cover are quotiented out"
                           : "maps factoring through the injective hull are quotiented out";
    emit_json(make_report("stable-hom", a->spec_string, std::move(inputs), std::move(results),
                          {note}));
}

struct TateOpts {
    std::int64_t p = 2;
    int e = 1;
    std::string range = "-4..4", format = "json";
};

void run_tate(const TateOpts& o) {
    auto [lo, hi] = parse_range(o.range);
    TateResult res = tate_cohomology(o.p, o.e, lo, hi);

    ordered_json dims = ordered_json::array();
    std::vector<std::vector<long long>> tsv;
    for (int n = lo; n <= hi; ++n) {
        std::size_t d = res.dims[static_cast<std::size_t>(n - lo)];
        dims.push_back(d);
        tsv.push_back({n, static_cast<long long>(d)});
    }
    if (o.format == "tsv") {
        emit_tsv(tsv);
        return;
    }
    std::string ring = "cyclic_group(" + std::to_string([&] {
                           std::int64_t m = 1;
                           for (int i = 0; i < o.e; ++i) m *= o.p;
                           return m;
                       }()) +
                       "," + std::to_string(o.p) + ")";
    ordered_json inputs;
    inputs["p"] = o.p;
    inputs["e"] = o.e;
    inputs["range"] = o.range;
    ordered_json results;
    results["lo"] = lo;
    results["hi"] = hi;
    results["dims"] = std::move(dims);
    emit_json(make_report(
        "tate", ring, std::move(inputs), std::move(results),
        {"computed on the 2-periodic complete resolution (multiplication by s-1 and the norm)"},
        window_json(lo - 2, hi + 2)));
}

struct CounterexampleOpts {
    std::string name;
    std::int64_t p = 2;
    int depth = 3, base = 1;
};

void run_counterexample(const CounterexampleOpts& o) {
    CounterexampleKind kind = counterexample_kind_from_name(o.name);
    CounterexampleSpec spec{kind, o.p, o.depth, o.base};
    WindowedComplex x = build_counterexample(spec);
    bool inj_case = kind == CounterexampleKind::InjX || kind == CounterexampleKind::InjY;
    AcyclicityReport rep =
        inj_case ? classify_inj_complex(x, o.name) : classify_proj_complex(x, o.name);

    ordered_json ranks = ordered_json::array();
    for (std::size_t r : counterexample_ranks(spec)) ranks.push_back(r);
    ordered_json inputs;
    inputs["name"] = o.name;
    inputs["p"] = o.p;
    inputs["depth"] = o.depth;
    inputs["base"] = o.base;
    ordered_json results;
    results["kind"] = o.name;
    results["ranks"] = std::move(ranks);
    results["term_dims"] = term_dims_of(x);
    results["classification"] = acyclicity_json(rep);
    results["complex"] = complex_to_json(x);
    emit_json(make_report("counterexample", x.algebra->spec_string, std::move(inputs),
                          std::move(results), rep.collapse_notes, window_json(x.lo, x.hi)));
}

struct ClassifyOpts {
    std::string path;
};

void run_classify(const ClassifyOpts& o) {
    WindowedComplex x = complex_from_json(parse_json_file(o.path, "complex file"));
    bool all_proj = true, all_inj = true;
    for (const Module& t : x.terms) {
        all_proj = all_proj && is_projective(t);
        all_inj = all_inj && is_injective(t);
    }
    AcyclicityReport rep;
    if (all_proj)
        rep = classify_proj_complex(x, o.path);
    else if (all_inj)
        rep = classify_inj_complex(x, o.path);
    else
        throw precondition_error(
            "classification needs a complex of projectives or a complex of injectives");

    ordered_json inputs;
    inputs["complex"] = o.path;
    ordered_json results;
    results["term_dims"] = term_dims_of(x);
    results["classification"] = acyclicity_json(rep);
    emit_json(make_report("classify", x.algebra->spec_string, std::move(inputs),
                          std::move(results), rep.collapse_notes, window_json(x.lo, x.hi)));
}

struct DualityOpts {
    std::string target;
    std::int64_t p = 2;
    int depth = 3, base = 1;
};

void run_duality_check(const DualityOpts& o) {
    WindowedComplex c = load_complex_target(o.target, o.p, o.depth, o.base);
    Side op = flip(c.side);
    std::vector<std::pair<std::string, Module>> catalog;
    for (const char* name : {"k", "R", "J", "m"})
        catalog.emplace_back(name, builtin_module(c.algebra, op, name));
    DualityPairReport rep = duality_pair_check(c, catalog);

    ordered_json rows = ordered_json::array();
    for (const DualityPairRow& row : rep.rows) {
        ordered_json r;
        r["module"] = row.module_label;
        r["tensor_exact"] = row.tensor_exact;
        r["hom_exact"] = row.hom_exact;
        r["agree"] = row.agree;
        rows.push_back(std::move(r));
    }
    ordered_json inputs;
    inputs["complex"] = o.target;
    inputs["p"] = o.p;
    inputs["depth"] = o.depth;
    inputs["base"] = o.base;
    ordered_json results;
    results["rows"] = std::move(rows);
    results["all_agree"] = rep.all_agree;
    emit_json(make_report("duality-check", c.algebra->spec_string, std::move(inputs),
                          std::move(results),
                          {"each row compares M (x) C exactness with Hom(C, dual M) exactness"},
                          window_json(c.lo, c.hi)));
}

struct FpProbeOpts {
    std::int64_t p = 2;
    std::string n_range = "1..4";
    std::string format = "json";
};

void run_fp_probe(const FpProbeOpts& o) {
    auto [n0, n1] = parse_range(o.n_range);
    if (n0 < 1) throw invariant_error("--n-range must start at 1 or higher");
    std::vector<std::size_t> ns;
    for (int n = n0; n <= n1; ++n) ns.push_back(static_cast<std::size_t>(n));
    std::vector<GrowthRow> rows = fp_growth_probe(o.p, ns);

    std::vector<std::vector<long long>> tsv;
    ordered_json jrows = ordered_json::array();
    for (const GrowthRow& r : rows) {
        ordered_json jr;
        jr["n"] = r.n;
        jr["mu1"] = r.mu1;
        jr["mu2"] = r.mu2;
        jrows.push_back(std::move(jr));
        tsv.push_back({static_cast<long long>(r.n), static_cast<long long>(r.mu1),
                       static_cast<long long>(r.mu2)});
    }
    if (o.format == "tsv") {
        emit_tsv(tsv);
        return;
    }
    ordered_json inputs;
    inputs["p"] = o.p;
    inputs["n_range"] = o.n_range;
    ordered_json results;
    results["rows"] = std::move(jrows);
    emit_json(make_report("fp-probe", "local_sq_zero(n," + std::to_string(o.p) + ")",
                          std::move(inputs), std::move(results),
                          {"mu_i counts minimal generators of the i-th syzygy of k"}));
}

struct FiltrationOpts {
    std::string target;
    std::int64_t p = 2;
    int depth = 3, base = 1;
    std::string coeff = "J";
};

Selection selection_difference(const Selection& big, const Selection& small) {
    Selection out(big.size());
    for (std::size_t d = 0; d < big.size(); ++d) {
        std::size_t j = 0;
        for (std::size_t tag : big[d]) {
            while (j < small[d].size() && small[d][j] < tag) ++j;
            if (j < small[d].size() && small[d][j] == tag) continue;
            out[d].push_back(tag);
        }
    }
    return out;
}

void run_filtration(const FiltrationOpts& o) {
    WindowedComplex px = load_complex_target(o.target, o.p, o.depth, o.base);
    if (!px.tags) px = auto_free_tags(px);
    Module coeff = builtin_module(px.algebra, flip(px.side), o.coeff);
    Filtration filt = filtration_by_small(px, coeff);

    ordered_json stages = ordered_json::array();
    for (std::size_t i = 0; i < filt.cumulative.size(); ++i) {
        const Selection& sel = filt.cumulative[i];
        std::size_t blocks = 0;
        ordered_json per_degree = ordered_json::array();
        for (const auto& degree_sel : sel) {
            blocks += degree_sel.size();
            per_degree.push_back(degree_sel);
        }
        WindowedComplex sub = subcomplex_from_selection(px, sel);
        bool stage_exact = !tensored_vector_complex(coeff, sub).first_interior_failure();
        Selection layer_sel =
            i == 0 ? sel : selection_difference(sel, filt.cumulative[i - 1]);
        WindowedComplex layer = subquotient_from_selection(px, layer_sel);
        bool layer_exact = !tensored_vector_complex(coeff, layer).first_interior_failure();

        ordered_json stage;
        stage["blocks"] = blocks;
        stage["selection"] = std::move(per_degree);
        stage["tensor_exact"] = stage_exact;
        stage["layer_tensor_exact"] = layer_exact;
        stages.push_back(std::move(stage));
    }

    ordered_json inputs;
    inputs["complex"] = o.target;
    inputs["p"] = o.p;
    inputs["depth"] = o.depth;
    inputs["base"] = o.base;
    inputs["A"] = o.coeff;
    ordered_json results;
    results["layers"] = filt.cumulative.size();
    results["stages"] = std::move(stages);
    emit_json(make_report("filtration", px.algebra->spec_string, std::move(inputs),
                          std::move(results),
                          {"stages are cumulative; each layer is the subquotient added by a stage"},
                          window_json(px.lo, px.hi)));
}

}  // namespace

// ------------------------------------------------------------ module files

ordered_json module_to_json(const Module& m) {
    const AlgebraPtr& a = m.algebra();
    ordered_json j;
    j["ring"] = a->spec_string;
    j["side"] = side_name(m.side());
    j["dim"] = m.dim();
    ordered_json action;
    for (std::size_t g = 0; g < a->generators.size(); ++g)
        action[a->generator_labels[g]] = mat_to_json(m.gen_action()[g]);
    j["action"] = std::move(action);
    return j;
}

Module module_from_json(const ordered_json& j) {
    AlgebraPtr a = parse_ring_spec(get_field(j, "ring", "module payload").get<std::string>());
    Side side = side_from_name(get_field(j, "side", "module payload").get<std::string>());
    std::size_t dim = get_field(j, "dim", "module payload").get<std::size_t>();
    const ordered_json& action = get_field(j, "action", "module payload");
    if (!action.is_object()) throw invariant_error("module action must map labels to matrices");
    if (action.size() != a->generators.size())
        throw invariant_error("module action must have one matrix per algebra generator");
    std::vector<FieldMatrix> mats;
    for (std::size_t g = 0; g < a->generators.size(); ++g) {
        const std::string& label = a->generator_labels[g];
        if (!action.contains(label))
            throw invariant_error("module action is missing generator '" + label + "'");
        mats.push_back(mat_from_json(a->field, dim, dim, action.at(label)));
    }
    return Module(a, side, std::move(mats));
}

// ----------------------------------------------------------- complex files

ordered_json complex_to_json(const WindowedComplex& x) {
    ordered_json j;
    j["ring"] = x.algebra->spec_string;
    j["side"] = side_name(x.side);
    j["lo"] = x.lo;
    j["hi"] = x.hi;
    ordered_json terms = ordered_json::array();
    for (const Module& t : x.terms) terms.push_back(module_to_json(t));
    j["terms"] = std::move(terms);
    ordered_json diffs = ordered_json::array();
    for (const Morphism& d : x.diffs) diffs.push_back(mat_to_json(d.matrix));
    j["diffs"] = std::move(diffs);
    if (x.tags) {
        ordered_json tags = ordered_json::array();
        for (const auto& per_degree : *x.tags) {
            ordered_json row = ordered_json::array();
            for (const Summand& s : per_degree) {
                ordered_json e;
                e["label"] = s.label;
                e["dim"] = s.dim;
                row.push_back(std::move(e));
            }
            tags.push_back(std::move(row));
        }
        j["tags"] = std::move(tags);
    }
    return j;
}

WindowedComplex complex_from_json(const ordered_json& j) {
    std::string ring = get_field(j, "ring", "complex payload").get<std::string>();
    AlgebraPtr a = parse_ring_spec(ring);
    Side side = side_from_name(get_field(j, "side", "complex payload").get<std::string>());
    int lo = get_field(j, "lo", "complex payload").get<int>();
    const ordered_json& jterms = get_field(j, "terms", "complex payload");
    if (!jterms.is_array() || jterms.empty())
        throw invariant_error("a complex payload needs a nonempty term list");

    std::vector<Module> terms;
    for (const ordered_json& t : jterms) {
        if (t.is_string()) {
            std::string name = t.get<std::string>();
            if (name == "zero") {
                terms.push_back(zero_module(a, side));
            } else if (name.rfind("free:", 0) == 0) {
                std::size_t n = 0;
                try {
                    n = static_cast<std::size_t>(std::stoul(name.substr(5)));
                } catch (const std::exception&) {
                    throw invariant_error("bad free-module term reference: " + name);
                }
                terms.push_back(free_module(a, side, n));
            } else {
                terms.push_back(builtin_module(a, side, name));
            }
        } else {
            ordered_json inline_term = t;
            if (!inline_term.contains("ring")) inline_term["ring"] = ring;
            if (!inline_term.contains("side")) inline_term["side"] = side_name(side);
            Module m = module_from_json(inline_term);
            if (!same_algebra(m.algebra(), a) || m.side() != side)
                throw invariant_error("an inline term disagrees with the complex ring or side");
            terms.push_back(std::move(m));
        }
    }

    if (j.contains("hi") &&
        j.at("hi").get<int>() != lo + static_cast<int>(terms.size()) - 1)
        throw invariant_error("complex window bounds disagree with the term list");

    const ordered_json& jdiffs = get_field(j, "diffs", "complex payload");
    if (!jdiffs.is_array() || jdiffs.size() + 1 != terms.size())
        throw invariant_error("a complex payload needs one differential per adjacent term pair");
    std::vector<Morphism> diffs;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i)
        diffs.emplace_back(terms[i + 1], terms[i],
                           mat_from_json(a->field, terms[i].dim(), terms[i + 1].dim(), jdiffs[i]));

    WindowedComplex x = make_complex(a, side, lo, std::move(terms), std::move(diffs));

    if (j.contains("tags")) {
        const ordered_json& jtags = j.at("tags");
        if (!jtags.is_array() || jtags.size() != x.terms.size())
            throw invariant_error("complex tags must list one summand row per degree");
        std::vector<std::vector<Summand>> tags;
        for (const ordered_json& row : jtags) {
            std::vector<Summand> per_degree;
            for (const ordered_json& e : row)
                per_degree.push_back(
                    {get_field(e, "label", "summand tag").get<std::string>(),
                     get_field(e, "dim", "summand tag").get<std::size_t>()});
            tags.push_back(std::move(per_degree));
        }
        x.tags = std::move(tags);
        x.verify();
    }
    return x;
}

Module load_module_ref(const AlgebraPtr& a, Side side, const std::string& ref) {
    std::string name = ref;
    if (name.rfind("builtin:", 0) == 0) name = name.substr(8);
    if (name == "k" || name == "R" || name == "J" || name == "m")
        return builtin_module(a, side, name);
    Module m = module_from_json(parse_json_file(ref, "module file"));
    if (!same_algebra(m.algebra(), a))
        throw invariant_error("module file ring does not match the command ring");
    if (m.side() != side)
        throw invariant_error("module file side does not match the expected side");
    return m;
}

// ------------------------------------------------------------- entry point

int run_cli(int argc, char** argv) {
    CLI::App app{"stablecat: exact homological computations over small local F_p-algebras"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("stablecat ") + kToolVersion);

    auto ropts = std::make_shared<ResolveOpts>();
    CLI::App* resolve = app.add_subcommand("resolve", "Minimal (co)resolution of a module");
    resolve->add_option("ring", ropts->ring, "ring spec, e.g. local_sq_zero(2,2)")->required();
    resolve->add_option("module", ropts->module_ref, "builtin name (k,R,J,m) or module file")
        ->required();
    resolve->add_option("--length", ropts->length, "number of resolution steps");
    resolve->add_option("--direction", ropts->direction)
        ->check(CLI::IsMember({"proj", "inj"}));
    resolve->add_option("--side", ropts->side)->check(CLI::IsMember({"left", "right"}));
    resolve->add_option("--format", ropts->format)->check(CLI::IsMember({"json", "tsv"}));
    resolve->callback([ropts] { run_resolve(*ropts); });

    auto eopts = std::make_shared<BifunctorOpts>();
    CLI::App* ext_cmd = app.add_subcommand("ext", "Ext dimensions over a degree range");
    ext_cmd->add_option("ring", eopts->ring)->required();
    ext_cmd->add_option("M", eopts->m_ref)->required();
    ext_cmd->add_option("N", eopts->n_ref)->required();
    ext_cmd->add_option("--degrees", eopts->degrees, "a..b");
    ext_cmd->add_option("--side", eopts->side)->check(CLI::IsMember({"left", "right"}));
    ext_cmd->add_option("--format", eopts->format)->check(CLI::IsMember({"json", "tsv"}));
    ext_cmd->callback([eopts] { run_ext(*eopts); });

    auto topts = std::make_shared<BifunctorOpts>();
    CLI::App* tor_cmd = app.add_subcommand("tor", "Tor dimensions over a degree range");
    tor_cmd->add_option("ring", topts->ring)->required();
    tor_cmd->add_option("M", topts->m_ref, "right module")->required();
    tor_cmd->add_option("N", topts->n_ref, "left module")->required();
    tor_cmd->add_option("--degrees", topts->degrees, "a..b");
    tor_cmd->add_option("--format", topts->format)->check(CLI::IsMember({"json", "tsv"}));
    tor_cmd->callback([topts] { run_tor(*topts); });

    auto sopts = std::make_shared<StableHomOpts>();
    CLI::App* shom = app.add_subcommand("stable-hom", "Hom modulo maps through projectives or injectives");
    shom->add_option("ring", sopts->ring)->required();
    shom->add_option("M", sopts->m_ref)->required();
    shom->add_option("N", sopts->n_ref)->required();
    shom->add_option("--variant", sopts->variant)->check(CLI::IsMember({"proj", "inj"}));
    shom->add_option("--side", sopts->side)->check(CLI::IsMember({"left", "right"}));
    shom->callback([sopts] { run_stable_hom(*sopts); });

    auto taopts = std::make_shared<TateOpts>();
    CLI::App* tate = app.add_subcommand("tate", "Tate cohomology of Z/p^e over F_p");
    tate->add_option("p", taopts->p)->required();
    tate->add_option("e", taopts->e)->required();
    tate->add_option("--range", taopts->range, "a..b");
    tate->add_option("--format", taopts->format)->check(CLI::IsMember({"json", "tsv"}));
    tate->callback([taopts] { run_tate(*taopts); });

    auto copts = std::make_shared<CounterexampleOpts>();
    CLI::App* cex = app.add_subcommand("counterexample", "Build and classify a separating complex");
    cex->add_option("name", copts->name,
                    "inj-exact-not-total | inj-acyclic-not-exact | proj-exact-not-firm | "
                    "proj-firm-not-exact")
        ->required();
    cex->add_option("--p", copts->p, "field characteristic");
    cex->add_option("--depth", copts->depth, "window height (>= 3)");
    cex->add_option("--base", copts->base, "rank multiplier (>= 1)");
    cex->callback([copts] { run_counterexample(*copts); });

    auto clopts = std::make_shared<ClassifyOpts>();
    CLI::App* classify = app.add_subcommand("classify", "Acyclicity verdicts for a complex file");
    classify->add_option("complex", clopts->path, "complex file")->required();
    classify->callback([clopts] { run_classify(*clopts); });

    auto dopts = std::make_shared<DualityOpts>();
    CLI::App* dual_cmd = app.add_subcommand(
        "duality-check", "Compare M (x) C with Hom(C, dual M) across the builtin catalog");
    dual_cmd->add_option("complex", dopts->target, "counterexample name or complex file")
        ->required();
    dual_cmd->add_option("--p", dopts->p);
    dual_cmd->add_option("--depth", dopts->depth);
    dual_cmd->add_option("--base", dopts->base);
    dual_cmd->callback([dopts] { run_duality_check(*dopts); });

    auto fopts = std::make_shared<FpProbeOpts>();
    CLI::App* probe = app.add_subcommand("fp-probe", "Syzygy generator growth over local_sq_zero(n,p)");
    probe->add_option("--p", fopts->p, "field characteristic");
    probe->add_option("--n-range", fopts->n_range, "a..b");
    probe->add_option("--format", fopts->format)->check(CLI::IsMember({"json", "tsv"}));
    probe->callback([fopts] { run_fp_probe(*fopts); });

    auto fiopts = std::make_shared<FiltrationOpts>();
    CLI::App* filt = app.add_subcommand("filtration", "Filter a complex of frees into small exact layers");
    filt->add_option("complex", fiopts->target, "counterexample name or complex file")->required();
    filt->add_option("--p", fiopts->p);
    filt->add_option("--depth", fiopts->depth);
    filt->add_option("--base", fiopts->base);
    filt->add_option("--A", fiopts->coeff, "coefficient module on the opposite side");
    filt->callback([fiopts] { run_filtration(*fiopts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const invariant_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

}  // namespace stablecat
