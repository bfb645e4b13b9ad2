#include "wdist/fp_matrix.hpp"

#include <algorithm>

namespace wdist {

namespace {

std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

std::vector<std::uint32_t> FpMatrix::apply(const std::vector<std::uint32_t>& v) const {
  std::vector<std::uint32_t> out(rows_, 0);
  for (std::uint32_t r = 0; r < rows_; ++r) {
    std::uint64_t s = 0;
    for (std::uint32_t c = 0; c < cols_; ++c) s += std::uint64_t{at(r, c)} * v[c];
    out[r] = static_cast<std::uint32_t>(s % p_);
  }
  return out;
}

std::vector<std::uint32_t> FpMatrix::reduce() {
  std::vector<std::uint32_t> pivots;
  std::uint32_t row = 0;
  for (std::uint32_t col = 0; col < cols_ && row < rows_; ++col) {
    std::uint32_t sel = row;
    while (sel < rows_ && at(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != row) {
      for (std::uint32_t c = 0; c < cols_; ++c) std::swap(at(sel, c), at(row, c));
    }
    const std::uint32_t inv = inverse(at(row, col), p_);
    for (std::uint32_t c = col; c < cols_; ++c) at(row, c) = static_cast<std::uint32_t>(std::uint64_t{at(row, c)} * inv % p_);
    for (std::uint32_t r = 0; r < rows_; ++r) {
      if (r == row || at(r, col) == 0) continue;
      const std::uint32_t factor = p_ - at(r, col);
      for (std::uint32_t c = col; c < cols_; ++c) {
        at(r, c) = static_cast<std::uint32_t>((at(r, c) + std::uint64_t{factor} * at(row, c)) % p_);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::uint32_t FpMatrix::rank() const {
  FpMatrix copy = *this;
  return static_cast<std::uint32_t>(copy.reduce().size());
}

std::vector<std::vector<std::uint32_t>> FpMatrix::null_space() const {
  FpMatrix rref = *this;
  const std::vector<std::uint32_t> pivots = rref.reduce();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::uint32_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols_, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = (p_ - rref.at(static_cast<std::uint32_t>(i), free)) % p_;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace wdist
