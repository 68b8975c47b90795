#include "pqc/unitary.hpp"

#include <cmath>
#include <map>

namespace pqc {

namespace {

constexpr double kTolerance = 1e-9;

Unitary make(std::string name, std::size_t qubits, std::vector<std::complex<double>> m) {
    return Unitary{std::move(name), qubits, std::move(m)};
}

const std::map<std::string, Unitary, std::less<>>& table() {
    static const std::map<std::string, Unitary, std::less<>> unitaries = [] {
        const double r = 1.0 / std::sqrt(2.0);
        std::map<std::string, Unitary, std::less<>> m;
        m.emplace("H", make("H", 1, {r, r, r, -r}));
        m.emplace("X", make("X", 1, {0, 1, 1, 0}));
        m.emplace("Z", make("Z", 1, {1, 0, 0, -1}));
        // |c t⟩ with c on wire 0: 10 <-> 11.
        m.emplace("CNOT", make("CNOT", 2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}));
        // Control on wire 1: 01 <-> 11.
        m.emplace("CNOT21", make("CNOT21", 2, {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0}));
        m.emplace("SWAP", make("SWAP", 2, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1}));
        return m;
    }();
    return unitaries;
}

} // namespace

const Unitary* find_unitary(std::string_view name) {
    auto it = table().find(name);
    return it == table().end() ? nullptr : &it->second;
}

DerivedRow derive_assert_row(const Unitary& u, std::uint64_t basis) {
    const std::uint64_t dim = std::uint64_t{1} << u.qubits;
    DerivedRow row;
    bool fixes = true;
    for (std::uint64_t z = 0; z < dim; ++z) {
        const std::complex<double> amp = u.at(z, basis);
        if (std::abs(amp) > kTolerance) row.post.push_back(z);
        const std::complex<double> target = z == basis ? 1.0 : 0.0;
        if (std::abs(amp - target) > kTolerance) fixes = false;
    }
    row.fixes = fixes;
    return row;
}

} // namespace pqc
