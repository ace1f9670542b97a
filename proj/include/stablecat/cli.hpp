#pragma once

#include <json.hpp>

#include "stablecat/complexes.hpp"

namespace stablecat {

using ordered_json = nlohmann::ordered_json;

/// Module file payload: {"ring", "side", "dim", "action": {label: matrix}}.
/// Loading re-verifies every module invariant.
ordered_json module_to_json(const Module& m);
Module module_from_json(const ordered_json& j);

/// Complex file payload: ring, side, window bounds, per-degree terms (builtin
/// names, "free:<n>", "zero", or inline module objects), differential
/// matrices, optional summand tags. Verified on load.
ordered_json complex_to_json(const WindowedComplex& x);
WindowedComplex complex_from_json(const ordered_json& j);

/// Resolves "k" / "R" / "J" / "m" (optionally prefixed "builtin:") or a
/// module-file path against the given algebra and side.
Module load_module_ref(const AlgebraPtr& a, Side side, const std::string& ref);

/// Entry point behind the binary. Exit codes: 0 success, 2 input or
/// invariant error, 3 precondition error, 4 internal inconsistency.
int run_cli(int argc, char** argv);

}  // namespace stablecat
