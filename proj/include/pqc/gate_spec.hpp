#pragma once

#include "pqc/algebra.hpp"
#include "pqc/boxed.hpp"
#include "pqc/circuit.hpp"
#include "pqc/labels.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqc {

/// Per-gate weights for every algebra.
struct GateDef {
    Gate gate;
    BundleType dom_shape;
    BundleType cod_shape;
    std::uint64_t count = 1;
    std::uint64_t depth = 1;
    std::optional<std::string> unitary;
    /// Declared rows; they take precedence over rows derived from `unitary`.
    std::map<std::uint64_t, AssertTable::Image> assert_rows;
};

class GateSpec {
public:
    /// H, X, Z, CNOT, meas, init, discard. init and discard have depth 0.
    static GateSpec builtin();

    void define(GateDef def);
    /// `name` denotes one layer running `parts` side by side.
    void define_parallel(const std::string& name, const std::vector<std::string>& parts);

    const GateDef* find(std::string_view name) const;
    const GateDef& at(std::string_view name) const;
    bool has_literal(std::string_view name) const;
    std::vector<std::string> literal_names() const;

    /// Boxed circuit denoted by `@name`.
    BoxedCircuit literal(std::string_view name) const;
    GateRegistry registry() const;

    /// Throws UnsupportedWire for non-qubit gates and UnknownUnitary when a
    /// row is neither declared nor derivable.
    AssertTable assert_table(std::string_view name) const;

private:
    std::map<std::string, GateDef, std::less<>> gates_;
    std::map<std::string, std::vector<std::string>, std::less<>> parallel_;
};

/// Gate-spec syntax:
///   gate NAME : BTYPE -> BTYPE { count N; depth N; unitary U;
///                                assert "b" -> {"z", ...} cost N; }
///   gate NAME { ... }            overrides fields of an existing gate
///   gate NAME = A | B | ...;     parallel composite
/// Lines starting with "--" are comments.
GateSpec parse_gate_spec(std::string_view text, GateSpec base = GateSpec::builtin());
GateSpec load_gate_spec(const std::filesystem::path& path, GateSpec base = GateSpec::builtin());

} // namespace pqc
