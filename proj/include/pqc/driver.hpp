#pragma once

#include "pqc/algebra.hpp"
#include "pqc/ast.hpp"
#include "pqc/gate_spec.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pqc {

/// A desugared program together with the gate spec it runs against.
struct LoadedProgram {
    ast::Program program;
    GateSpec spec;
};

/// Parses and desugars program text. A `gates "path";` header is resolved
/// against `base_dir`; `gates_override` replaces it when set.
LoadedProgram load_program_text(std::string_view text, const std::filesystem::path& base_dir,
                                const std::optional<std::filesystem::path>& gates_override = std::nullopt);
/// Reads `path` first; throws Error with code IOError when it cannot.
LoadedProgram load_program(const std::filesystem::path& path,
                           const std::optional<std::filesystem::path>& gates_override = std::nullopt);

/// How an Asrt effect is reported: the image of `precondition` (every basis
/// state when empty), projected onto the first `restrict` output qubits.
struct AssertView {
    std::vector<std::uint64_t> precondition;
    std::optional<std::size_t> restrict;
};

/// Tropical entries are integers, −∞ is the string "-inf".
nlohmann::json effect_json(const Effect& e, const AssertView& view = {});

/// Image of an Asrt effect under the view, projection applied.
AssertTable::Image assert_image(const AssertTable& t, const AssertView& view);

/// The number compared against --bound: the scalar, depth_bound or the
/// assertion cost.
std::int64_t effect_magnitude(const Effect& e, const AssertView& view = {});

/// Parses "00,11" into basis states of the given width.
std::vector<std::uint64_t> parse_precondition(std::string_view text, std::size_t width);

struct CircuitStats {
    std::uint64_t gates = 0;
    std::uint64_t width = 0;
    std::int64_t depth = 0;
};

CircuitStats circuit_stats(const Circuit& c, const GateSpec& spec);

} // namespace pqc
