#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pqc {

/// Square matrix on `qubits` qubits, row-major. Column b is U|b⟩ with the
/// basis indexed like AssertTable.
struct Unitary {
    std::string name;
    std::size_t qubits = 0;
    std::vector<std::complex<double>> matrix;

    std::complex<double> at(std::uint64_t row, std::uint64_t col) const {
        return matrix[row * (std::uint64_t{1} << qubits) + col];
    }
};

/// H, X, Z, CNOT (control on wire 0), CNOT21 (control on wire 1), SWAP.
const Unitary* find_unitary(std::string_view name);

struct DerivedRow {
    std::vector<std::uint64_t> post;
    bool fixes = false;
};

/// Support of U|b⟩, and whether U|b⟩ = |b⟩ exactly.
DerivedRow derive_assert_row(const Unitary& u, std::uint64_t basis);

} // namespace pqc
