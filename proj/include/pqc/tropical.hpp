#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace pqc {

/// Element of the max-plus semiring over ℕ ∪ {−∞}. −∞ is a sentinel below
/// every natural and absorbs addition.
using Tropical = std::int64_t;

inline constexpr Tropical kNegInf = std::numeric_limits<std::int64_t>::min();

inline Tropical trop_add(Tropical a, Tropical b) {
    return (a == kNegInf || b == kNegInf) ? kNegInf : a + b;
}

inline Tropical trop_max(Tropical a, Tropical b) {
    return a < b ? b : a;
}

std::string tropical_to_string(Tropical t);

class TropicalMatrix {
public:
    TropicalMatrix() = default;
    TropicalMatrix(std::size_t rows, std::size_t cols, Tropical fill = kNegInf)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    /// 0 on the diagonal, −∞ elsewhere.
    static TropicalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Tropical& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Tropical at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    /// Max-plus product.
    TropicalMatrix operator*(const TropicalMatrix& other) const;
    /// Block diagonal with −∞ off the blocks.
    TropicalMatrix direct_sum(const TropicalMatrix& other) const;
    TropicalMatrix pointwise_max(const TropicalMatrix& other) const;
    bool pointwise_leq(const TropicalMatrix& other) const;
    Tropical max_entry() const;

    bool operator==(const TropicalMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Tropical> data_;
};

/// Row vector times matrix.
std::vector<Tropical> operator*(const std::vector<Tropical>& row, const TropicalMatrix& m);
/// Matrix times column vector.
std::vector<Tropical> operator*(const TropicalMatrix& m, const std::vector<Tropical>& col);
std::vector<Tropical> pointwise_max(const std::vector<Tropical>& a, const std::vector<Tropical>& b);

} // namespace pqc
