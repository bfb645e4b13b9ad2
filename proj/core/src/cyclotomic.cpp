#include "wdist/cyclotomic.hpp"

#include <algorithm>
#include <numeric>

#include "wdist/error.hpp"
#include "wdist/finite_field.hpp"

namespace wdist {

namespace {

std::size_t mod_index(std::int64_t r, std::uint32_t p) {
  const std::int64_t pp = p;
  return static_cast<std::size_t>(((r % pp) + pp) % pp);
}

void require_same_p(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.p() != b.p()) throw Error(ErrorCode::InvalidArgument, "cyclotomic elements over different p");
}

}  // namespace

Cyclotomic Cyclotomic::rational(std::uint32_t p, std::int64_t value) {
  Cyclotomic c(p);
  c.c_[0] = value;
  return c;
}

Cyclotomic Cyclotomic::zeta_power(std::uint32_t p, std::int64_t r) {
  Cyclotomic c(p);
  c.c_[mod_index(r, p)] = 1;
  return c;
}

Cyclotomic Cyclotomic::gauss_sum(std::uint32_t p) {
  Cyclotomic g(p);
  for (std::uint32_t r = 1; r < p; ++r) g.c_[r] = quadratic_character(p, r);
  return g;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  require_same_p(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  require_same_p(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(std::int64_t k) {
  for (auto& v : c_) v *= k;
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  require_same_p(a, b);
  const std::uint32_t p = a.p();
  Cyclotomic r(p);
  for (std::uint32_t i = 0; i < p; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::uint32_t j = 0; j < p; ++j) {
      const std::uint32_t k = i + j >= p ? i + j - p : i + j;
      r.c_[k] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

Cyclotomic Cyclotomic::rotated(std::int64_t r) const {
  Cyclotomic out(p());
  for (std::uint32_t i = 0; i < p(); ++i) out.c_[mod_index(std::int64_t{i} + r, p())] = c_[i];
  return out;
}

Cyclotomic Cyclotomic::galois(std::int64_t t) const {
  if (mod_index(t, p()) == 0) throw Error(ErrorCode::InvalidArgument, "galois index must be a unit");
  Cyclotomic out(p());
  for (std::uint32_t i = 0; i < p(); ++i) out.c_[mod_index(std::int64_t{i} * t, p())] += c_[i];
  return out;
}

Cyclotomic Cyclotomic::reduced() const {
  const std::int64_t m = *std::min_element(c_.begin(), c_.end());
  Cyclotomic out = *this;
  for (auto& v : out.c_) v -= m;
  return out;
}

std::optional<std::int64_t> Cyclotomic::rational_value() const {
  for (std::size_t i = 2; i < c_.size(); ++i) {
    if (c_[i] != c_[1]) return std::nullopt;
  }
  return c_[0] - c_[1];
}

bool Cyclotomic::equals(const Cyclotomic& o) const {
  require_same_p(*this, o);
  const std::int64_t shift = c_[0] - o.c_[0];
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] - o.c_[i] != shift) return false;
  }
  return true;
}

std::int64_t CyclotomicCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

}  // namespace wdist
