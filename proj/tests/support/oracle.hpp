#pragma once

// Slow reference arithmetic for GF(p^n), built only from polynomial
// multiplication and reduction. Used to cross-check the table-driven field.

#include <cstdint>
#include <algorithm>
#include <vector>

#include "wdist/finite_field.hpp"

namespace oracle {

using Poly = std::vector<std::uint32_t>;  // ascending, length n

struct Field {
  std::uint32_t p, n, q;
  Poly modulus;  // monic, length n + 1

  Field(std::uint32_t p_, std::uint32_t n_, Poly mod) : p(p_), n(n_), q(1), modulus(std::move(mod)) {
    for (std::uint32_t i = 0; i < n; ++i) q *= p;
  }

  Poly from_index(std::uint32_t idx) const {
    Poly a(n);
    for (std::uint32_t i = 0; i < n; ++i, idx /= p) a[i] = idx % p;
    return a;
  }
  std::uint32_t to_index(const Poly& a) const {
    std::uint32_t idx = 0;
    for (std::uint32_t i = n; i-- > 0;) idx = idx * p + a[i];
    return idx;
  }

  Poly add(const Poly& a, const Poly& b) const {
    Poly c(n);
    for (std::uint32_t i = 0; i < n; ++i) c[i] = (a[i] + b[i]) % p;
    return c;
  }
  Poly neg(const Poly& a) const {
    Poly c(n);
    for (std::uint32_t i = 0; i < n; ++i) c[i] = (p - a[i]) % p;
    return c;
  }
  Poly mul(const Poly& a, const Poly& b) const {
    std::vector<std::uint64_t> c(2 * n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) c[i + j] += std::uint64_t{a[i]} * b[j];
    for (auto& v : c) v %= p;
    for (std::uint32_t deg = 2 * n - 1; deg >= n; --deg) {
      const std::uint64_t top = c[deg];
      if (top == 0) continue;
      for (std::uint32_t i = 0; i <= n; ++i) {
        c[deg - n + i] = (c[deg - n + i] + (p - top) * modulus[i]) % p;
      }
    }
    Poly r(n);
    for (std::uint32_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>(c[i]);
    return r;
  }
  Poly one() const {
    Poly a(n, 0);
    a[0] = 1;
    return a;
  }
  Poly pow(Poly a, std::uint64_t e) const {
    Poly r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  // x^(p^j) by repeated p-th powering, j in [0, n).
  Poly frob(const Poly& a, std::int64_t j) const {
    const std::int64_t jj = ((j % n) + n) % n;
    Poly r = a;
    for (std::int64_t t = 0; t < jj; ++t) r = pow(r, p);
    return r;
  }
  std::uint32_t trace(const Poly& a) const {
    Poly s(n, 0), b = a;
    for (std::uint32_t i = 0; i < n; ++i) {
      s = add(s, b);
      b = pow(b, p);
    }
    return s[0];
  }
};

/// Smallest primitive monic polynomial by direct order computation, in
/// lexicographic order of the ascending coefficient list.
inline Poly smallest_primitive(std::uint32_t p, std::uint32_t n) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly mod(n + 1);
    std::uint64_t c = code;
    // Enumerate with c0 as the most significant digit.
    for (std::uint32_t i = n; i-- > 0;) {
      mod[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    mod[n] = 1;
    if (mod[0] == 0) continue;
    Field f(p, n, mod);
    Poly x(n, 0);
    if (n > 1) x[1] = 1; else x[0] = (p - mod[0]) % p;
    Poly cur = f.one();
    std::uint64_t order = 0;
    bool ok = true;
    for (std::uint64_t i = 1; i < f.q; ++i) {
      cur = f.mul(cur, x);
      if (cur == f.one()) {
        order = i;
        break;
      }
      if (std::all_of(cur.begin(), cur.end(), [](std::uint32_t v) { return v == 0; })) {
        ok = false;
        break;
      }
    }
    if (ok && order == f.q - 1) return mod;
  }
  return {};
}

/// Counts of Tr(eps x + gamma x^(p^k+1) + delta x^(p^3k+1)) over the field.
inline std::vector<std::int64_t> counts(const Field& f, std::uint32_t k, const Poly& eps, const Poly& gamma,
                                        const Poly& delta) {
  std::vector<std::int64_t> out(f.p, 0);
  for (std::uint32_t xi = 0; xi < f.q; ++xi) {
    const Poly x = f.from_index(xi);
    Poly v = f.mul(eps, x);
    v = f.add(v, f.mul(gamma, f.mul(f.frob(x, k), x)));
    v = f.add(v, f.mul(delta, f.mul(f.frob(x, 3 * k), x)));
    ++out[f.trace(v)];
  }
  return out;
}

/// |ker L| by exhaustive search.
inline std::uint64_t kernel_size(const Field& f, std::uint32_t k, const Poly& gamma, const Poly& delta) {
  const std::int64_t kk = k;
  const Poly g2 = f.frob(gamma, -kk), d2 = f.frob(delta, -3 * kk);
  std::uint64_t size = 0;
  for (std::uint32_t zi = 0; zi < f.q; ++zi) {
    const Poly z = f.from_index(zi);
    Poly v = f.mul(gamma, f.frob(z, kk));
    v = f.add(v, f.mul(g2, f.frob(z, -kk)));
    v = f.add(v, f.mul(delta, f.frob(z, 3 * kk)));
    v = f.add(v, f.mul(d2, f.frob(z, -3 * kk)));
    if (f.to_index(v) == 0) ++size;
  }
  return size;
}

}  // namespace oracle
