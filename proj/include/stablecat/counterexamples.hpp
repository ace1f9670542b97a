#pragma once

#include "stablecat/complexes.hpp"

namespace stablecat {

/// The four separating complexes over local_sq_zero(2,p).
///   InjX  — complex of injectives, interior-exact, not an acyclic complex
///           of injectives ("inj-exact-not-total");
///   InjY  — Hom(J,-)-acyclic complex of injectives that is not exact
///           ("inj-acyclic-not-exact");
///   ProjX — complex of projectives, interior-exact, not firmly acyclic
///           ("proj-exact-not-firm");
///   ProjY — firmly acyclic complex of projectives that is not exact
///           ("proj-firm-not-exact").
enum class CounterexampleKind { InjX, InjY, ProjX, ProjY };

CounterexampleKind counterexample_kind_from_name(const std::string& name);
std::string counterexample_kind_name(CounterexampleKind kind);

struct CounterexampleSpec {
    CounterexampleKind kind;
    std::int64_t p = 2;
    int depth = 3;  ///< window height; the window is [0, depth], depth >= 3
    int base = 1;   ///< rank multiplier, >= 1
};

/// The module J = dual of the regular module, with ordered basis
/// (alpha, beta, gamma): x.beta = gamma, y.alpha = gamma, socle = <gamma>.
Module j_module(const AlgebraPtr& a);

/// Per-degree copy counts: doubling kinds (InjX, ProjY) have rank
/// base*2^(depth-n) at degree n, halving kinds (InjY, ProjX) have base*2^n.
std::vector<std::size_t> counterexample_ranks(const CounterexampleSpec& spec);

/// The tagged windowed complex realizing the chosen kind. Left modules over
/// local_sq_zero(2,p); copies indexed from 1 inside each degree.
WindowedComplex build_counterexample(const CounterexampleSpec& spec);

/// Hom(J, -) applied to an injective-kind counterexample, as the hom complex
/// from the degree-zero sphere on J.
HomComplex hom_J_report(const CounterexampleSpec& spec);

}  // namespace stablecat
