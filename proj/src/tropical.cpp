#include "pqc/tropical.hpp"

#include "pqc/error.hpp"

namespace pqc {

std::string tropical_to_string(Tropical t) {
    return t == kNegInf ? "-inf" : std::to_string(t);
}

TropicalMatrix TropicalMatrix::identity(std::size_t n) {
    TropicalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 0;
    return m;
}

TropicalMatrix TropicalMatrix::operator*(const TropicalMatrix& other) const {
    if (cols_ != other.rows_) throw AlgebraError("ObjectMismatch", "tropical product dimension mismatch");
    TropicalMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Tropical a = at(i, k);
            if (a == kNegInf) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Tropical b = other.at(k, j);
                if (b == kNegInf) continue;
                Tropical& cell = out.at(i, j);
                cell = trop_max(cell, a + b);
            }
        }
    }
    return out;
}

TropicalMatrix TropicalMatrix::direct_sum(const TropicalMatrix& other) const {
    TropicalMatrix out(rows_ + other.rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < other.rows_; ++i)
        for (std::size_t j = 0; j < other.cols_; ++j) out.at(rows_ + i, cols_ + j) = other.at(i, j);
    return out;
}

TropicalMatrix TropicalMatrix::pointwise_max(const TropicalMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw AlgebraError("ObjectMismatch", "tropical join dimension mismatch");
    TropicalMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = trop_max(data_[i], other.data_[i]);
    return out;
}

bool TropicalMatrix::pointwise_leq(const TropicalMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (data_[i] > other.data_[i]) return false;
    return true;
}

Tropical TropicalMatrix::max_entry() const {
    Tropical best = kNegInf;
    for (Tropical t : data_) best = trop_max(best, t);
    return best;
}

std::vector<Tropical> operator*(const std::vector<Tropical>& row, const TropicalMatrix& m) {
    if (row.size() != m.rows()) throw AlgebraError("ObjectMismatch", "tropical vector dimension mismatch");
    std::vector<Tropical> out(m.cols(), kNegInf);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < row.size(); ++i) out[j] = trop_max(out[j], trop_add(row[i], m.at(i, j)));
    return out;
}

std::vector<Tropical> operator*(const TropicalMatrix& m, const std::vector<Tropical>& col) {
    if (col.size() != m.cols()) throw AlgebraError("ObjectMismatch", "tropical vector dimension mismatch");
    std::vector<Tropical> out(m.rows(), kNegInf);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < col.size(); ++j) out[i] = trop_max(out[i], trop_add(m.at(i, j), col[j]));
    return out;
}

std::vector<Tropical> pointwise_max(const std::vector<Tropical>& a, const std::vector<Tropical>& b) {
    if (a.size() != b.size()) throw AlgebraError("ObjectMismatch", "tropical vector dimension mismatch");
    std::vector<Tropical> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = trop_max(a[i], b[i]);
    return out;
}

} // namespace pqc
