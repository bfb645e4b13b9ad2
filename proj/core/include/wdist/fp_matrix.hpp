#pragma once

#include <cstdint>
#include <vector>

namespace wdist {

/// Dense matrix over F_p, row-major.
class FpMatrix {
 public:
  FpMatrix(std::uint32_t p, std::uint32_t rows, std::uint32_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(std::size_t{rows} * cols, 0) {}

  std::uint32_t p() const { return p_; }
  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }

  std::uint32_t& at(std::uint32_t r, std::uint32_t c) { return data_[std::size_t{r} * cols_ + c]; }
  std::uint32_t at(std::uint32_t r, std::uint32_t c) const { return data_[std::size_t{r} * cols_ + c]; }

  bool is_zero() const;
  std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& v) const;

  std::uint32_t rank() const;
  /// Basis of {v : M v = 0}, one vector per free column.
  std::vector<std::vector<std::uint32_t>> null_space() const;

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  // Reduced row echelon form in place; returns pivot column of each pivot row.
  std::vector<std::uint32_t> reduce();

  std::uint32_t p_;
  std::uint32_t rows_;
  std::uint32_t cols_;
  std::vector<std::uint32_t> data_;
};

}  // namespace wdist
