#include "wdist/finite_field.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace wdist {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t f = 3; f * f <= value; f += 2) {
    if (value % f == 0) return false;
  }
  return true;
}

int quadratic_character(std::uint64_t p, std::int64_t a) {
  const std::int64_t pp = static_cast<std::int64_t>(p);
  std::uint64_t r = static_cast<std::uint64_t>(((a % pp) + pp) % pp);
  if (r == 0) return 0;
  // Euler's criterion.
  std::uint64_t result = 1, base = r, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

CodeParams validate_params(std::int64_t p, std::int64_t n, std::int64_t k) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p) + " is not prime");
  }
  if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "p must be odd");
  if (n < 3) throw Error(ErrorCode::NTooSmall, "n = " + std::to_string(n) + " < 3");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (p > 0xffff || n > 64 || k > 0xffffffffLL) {
    throw Error(ErrorCode::InvalidArgument, "parameters out of supported range");
  }
  CodeParams params;
  params.p = static_cast<std::uint32_t>(p);
  params.n = static_cast<std::uint32_t>(n);
  params.k = static_cast<std::uint32_t>(k);
  params.d = std::gcd(params.n, params.k);
  params.s = params.n / params.d;
  if (params.s % 2 == 0) {
    throw Error(ErrorCode::EvenS, "s = n/gcd(n,k) = " + std::to_string(params.s) + " is even");
  }
  if (params.s == 1) throw Error(ErrorCode::InvalidArgument, "k is a multiple of n (s = 1)");
  return params;
}

namespace {

void trim(Polynomial& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
Polynomial poly_mod(Polynomial a, std::span<const std::uint32_t> f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  while (a.size() > df) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - lead} * f[i]) % p);
    }
    trim(a);
  }
  return a;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Polynomial r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

Polynomial poly_mulmod(const Polynomial& a, const Polynomial& b, std::span<const std::uint32_t> f,
                       std::uint32_t p) {
  return poly_mod(poly_mul(a, b, p), f, p);
}

Polynomial poly_powmod(Polynomial base, std::uint64_t e, std::span<const std::uint32_t> f,
                       std::uint32_t p) {
  Polynomial result{1};
  base = poly_mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    e >>= 1;
    if (e > 0) base = poly_mulmod(base, base, f, p);
  }
  return poly_mod(std::move(result), f, p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

Polynomial poly_gcd(Polynomial a, Polynomial b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // make b monic so poly_mod applies
    const std::uint32_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = static_cast<std::uint32_t>(std::uint64_t{c} * li % p);
    Polynomial r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      out.push_back(f);
      while (v % f == 0) v /= f;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

bool is_monic_of_degree(std::span<const std::uint32_t> f, std::uint32_t p) {
  if (f.size() < 2 || f.back() != 1) return false;
  return std::all_of(f.begin(), f.end(), [p](std::uint32_t c) { return c < p; });
}

bool checked_power(std::uint64_t p, std::uint64_t n, std::uint64_t limit, std::uint64_t& out) {
  out = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (out > limit / p) return false;
    out *= p;
  }
  return true;
}

}  // namespace

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> f) {
  if (!is_monic_of_degree(f, p)) return false;
  const std::uint64_t n = f.size() - 1;
  if (n == 1) return true;
  const Polynomial x{0, 1};
  // Rabin: x^(p^n) = x mod f, and gcd(x^(p^(n/r)) - x, f) = 1 for primes r | n.
  auto x_pow_p_pow = [&](std::uint64_t i) {
    Polynomial h = x;
    for (std::uint64_t j = 0; j < i; ++j) h = poly_powmod(h, p, f, p);
    return h;
  };
  Polynomial full = x_pow_p_pow(n);
  if (full != poly_mod(x, f, p)) return false;
  Polynomial fcopy(f.begin(), f.end());
  for (std::uint64_t r : prime_factors(n)) {
    Polynomial h = x_pow_p_pow(n / r);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Polynomial g = poly_gcd(fcopy, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool is_primitive_polynomial(std::uint32_t p, std::span<const std::uint32_t> f) {
  if (!is_monic_of_degree(f, p)) return false;
  std::uint64_t q = 0;
  if (!checked_power(p, f.size() - 1, std::uint64_t{1} << 62, q)) return false;
  const std::uint64_t order = q - 1;
  const Polynomial x{0, 1};
  if (poly_powmod(x, order, f, p) != Polynomial{1}) return false;
  for (std::uint64_t r : prime_factors(order)) {
    if (poly_powmod(x, order / r, f, p) == Polynomial{1}) return false;
  }
  return true;
}

Polynomial parse_modulus(std::string_view text) {
  Polynomial out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::InvalidModulus, "cannot parse modulus \"" + std::string(text) + "\"");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::string format_modulus(std::span<const std::uint32_t> coeffs) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(coeffs[i]);
  }
  return out;
}

namespace {

Polynomial find_primitive(std::uint32_t p, std::uint32_t n) {
  // Odometer over (c0, ..., c_{n-1}) with c0 most significant.
  Polynomial f(n + 1, 0);
  f[n] = 1;
  for (;;) {
    if (f[0] != 0 && is_irreducible(p, f) && is_primitive_polynomial(p, f)) return f;
    std::int64_t i = static_cast<std::int64_t>(n) - 1;
    while (i >= 0) {
      if (++f[i] < p) break;
      f[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  throw Error(ErrorCode::Internal, "no primitive polynomial found");
}

}  // namespace

FieldCtx FieldCtx::make(std::int64_t p_in, std::int64_t n_in, std::optional<Polynomial> modulus,
                        const FieldOptions& options) {
  if (p_in < 2 || !is_prime(static_cast<std::uint64_t>(p_in))) {
    throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p_in) + " is not prime");
  }
  if (p_in == 2) throw Error(ErrorCode::EvenCharacteristic, "characteristic 2 is not supported");
  if (n_in < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const std::uint64_t cap = std::min<std::uint64_t>(options.table_cap, std::uint64_t{1} << 31);
  std::uint64_t q64 = 0;
  if (!checked_power(static_cast<std::uint64_t>(p_in), static_cast<std::uint64_t>(n_in), cap, q64)) {
    throw Error(ErrorCode::TableLimitExceeded,
                std::to_string(p_in) + "^" + std::to_string(n_in) + " exceeds table cap " +
                    std::to_string(cap));
  }
  const auto p = static_cast<std::uint32_t>(p_in);
  const auto n = static_cast<std::uint32_t>(n_in);

  if (modulus) {
    if (modulus->size() != n + 1 || modulus->back() != 1 ||
        std::any_of(modulus->begin(), modulus->end(), [p](std::uint32_t c) { return c >= p; })) {
      throw Error(ErrorCode::InvalidModulus, "modulus must be monic of degree " + std::to_string(n) +
                                                 " with coefficients in [0, p)");
    }
    if (!is_irreducible(p, *modulus)) {
      throw Error(ErrorCode::ReduciblePolynomial, format_modulus(*modulus));
    }
    if (!is_primitive_polynomial(p, *modulus)) {
      throw Error(ErrorCode::NotPrimitive, format_modulus(*modulus));
    }
  } else {
    modulus = find_primitive(p, n);
  }

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->n = n;
  t->q = static_cast<std::uint32_t>(q64);
  t->q1 = t->q - 1;
  t->modulus = *modulus;
  t->powers_of_p.resize(n + 1);
  t->powers_of_p[0] = 1;
  for (std::uint32_t i = 1; i <= n; ++i) t->powers_of_p[i] = t->powers_of_p[i - 1] * p;

  // exp/log by repeated multiplication with x.
  t->exp.resize(t->q1);
  t->log.assign(t->q, kNoLog);
  std::vector<std::uint32_t> cur(n, 0);
  cur[0] = 1;
  for (std::uint32_t i = 0; i < t->q1; ++i) {
    std::uint32_t idx = 0;
    for (std::uint32_t j = 0; j < n; ++j) idx += cur[j] * t->powers_of_p[j];
    if (t->log[idx] != kNoLog) throw Error(ErrorCode::NotPrimitive, "alpha order check failed");
    t->exp[i] = idx;
    t->log[idx] = i;
    const std::uint32_t top = cur[n - 1];
    for (std::uint32_t j = n - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
      cur[j] = static_cast<std::uint32_t>((cur[j] + std::uint64_t{p - top} * t->modulus[j]) % p);
    }
  }

  t->frob_shift.resize(n);
  std::uint64_t shift = 1;
  for (std::uint32_t j = 0; j < n; ++j) {
    t->frob_shift[j] = static_cast<std::uint32_t>(t->q1 == 0 ? 0 : shift % t->q1);
    shift = shift * p % std::max<std::uint32_t>(t->q1, 1);
  }

  FieldCtx partial(t);
  // Zech logarithms: log(1 + alpha^i).
  t->zech.resize(t->q1);
  for (std::uint32_t i = 0; i < t->q1; ++i) {
    Element s = partial.add_coeffwise(Element{t->exp[i]}, Element{1});
    t->zech[i] = s.is_zero() ? kNoLog : t->log[s.index()];
  }

  // Frobenius matrices and the trace of each basis vector, via schoolbook powers.
  t->frob_matrix.assign(n, std::vector<std::uint32_t>(std::size_t{n} * n, 0));
  std::vector<std::uint32_t> basis_trace(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    Element b{t->powers_of_p[i]};
    Element power = b;
    Element acc{0};
    for (std::uint32_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> c = partial.coeffs(power);
      for (std::uint32_t r = 0; r < n; ++r) t->frob_matrix[j][std::size_t{i} * n + r] = c[r];
      acc = partial.add_coeffwise(acc, power);
      Element next{1};
      for (std::uint32_t e = 0; e < p; ++e) next = partial.mul_schoolbook(next, power);
      power = next;
    }
    if (acc.index() >= p) throw Error(ErrorCode::Internal, "trace left the prime field");
    basis_trace[i] = acc.index();
  }
  t->trace.resize(t->q);
  for (std::uint32_t idx = 0; idx < t->q; ++idx) {
    std::uint32_t v = idx;
    std::uint64_t s = 0;
    for (std::uint32_t j = 0; j < n; ++j) {
      s += std::uint64_t{v % p} * basis_trace[j];
      v /= p;
    }
    t->trace[idx] = static_cast<std::uint8_t>(s % p);
  }
  return FieldCtx(std::move(t));
}

std::size_t FieldCtx::table_bytes() const {
  return t_->exp.size() * 4 + t_->log.size() * 4 + t_->zech.size() * 4 + t_->trace.size();
}

Element FieldCtx::element(std::uint32_t index) const {
  if (index >= t_->q) throw Error(ErrorCode::InvalidArgument, "element index out of range");
  return Element{index};
}

Element FieldCtx::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != t_->n) throw Error(ErrorCode::InvalidArgument, "coefficient vector has wrong length");
  std::uint32_t idx = 0;
  for (std::uint32_t j = 0; j < t_->n; ++j) {
    if (c[j] >= t_->p) throw Error(ErrorCode::InvalidArgument, "coefficient out of range");
    idx += c[j] * t_->powers_of_p[j];
  }
  return Element{idx};
}

std::vector<std::uint32_t> FieldCtx::coeffs(Element x) const {
  std::vector<std::uint32_t> c(t_->n);
  std::uint32_t v = x.index();
  for (std::uint32_t j = 0; j < t_->n; ++j) {
    c[j] = v % t_->p;
    v /= t_->p;
  }
  return c;
}

Element FieldCtx::from_int(std::int64_t a) const {
  const std::int64_t p = t_->p;
  return Element{static_cast<std::uint32_t>(((a % p) + p) % p)};
}

std::uint32_t FieldCtx::log(Element x) const {
  if (x.is_zero()) throw Error(ErrorCode::DivisionByZero, "log of zero");
  return t_->log[x.index()];
}

Element FieldCtx::inv(Element a) const {
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t l = t_->log[a.index()];
  return Element{t_->exp[l == 0 ? 0 : t_->q1 - l]};
}

Element FieldCtx::pow(Element a, std::uint64_t e) const {
  if (a.is_zero()) return e == 0 ? one() : zero();
  const std::uint64_t l = t_->log[a.index()];
  return Element{t_->exp[l * (e % t_->q1) % t_->q1]};
}

Element FieldCtx::add_coeffwise(Element a, Element b) const {
  std::uint32_t x = a.index(), y = b.index(), out = 0;
  for (std::uint32_t j = 0; j < t_->n; ++j) {
    out += ((x % t_->p + y % t_->p) % t_->p) * t_->powers_of_p[j];
    x /= t_->p;
    y /= t_->p;
  }
  return Element{out};
}

Element FieldCtx::mul_schoolbook(Element a, Element b) const {
  Polynomial pa = coeffs(a), pb = coeffs(b);
  Polynomial r = poly_mod(poly_mul(pa, pb, t_->p), t_->modulus, t_->p);
  r.resize(t_->n, 0);
  return from_coeffs(r);
}

Element FieldCtx::frobenius_linear(Element x, std::int64_t j) const {
  const auto& m = t_->frob_matrix[reduce_shift(j)];
  const std::uint32_t n = t_->n;
  std::vector<std::uint32_t> in = coeffs(x), out(n, 0);
  for (std::uint32_t col = 0; col < n; ++col) {
    if (in[col] == 0) continue;
    for (std::uint32_t r = 0; r < n; ++r) {
      out[r] = static_cast<std::uint32_t>((out[r] + std::uint64_t{in[col]} * m[std::size_t{col} * n + r]) % t_->p);
    }
  }
  return from_coeffs(out);
}

Element FieldCtx::trace_to(std::uint32_t m, Element x) const {
  if (m == 0 || t_->n % m != 0) {
    throw Error(ErrorCode::NotADivisor, std::to_string(m) + " does not divide " + std::to_string(t_->n));
  }
  Element acc = zero();
  for (std::uint32_t i = 0; i < t_->n / m; ++i) acc = add(acc, frobenius(x, std::int64_t{m} * i));
  return acc;
}

std::filesystem::path ModulusCache::path_for(std::uint32_t p, std::uint32_t n) const {
  return dir_ / ("modulus-p" + std::to_string(p) + "-n" + std::to_string(n) + ".txt");
}

std::optional<Polynomial> ModulusCache::load(std::uint32_t p, std::uint32_t n) const {
  std::ifstream in(path_for(p, n));
  if (!in) return std::nullopt;
  std::string header, key, mod;
  if (!std::getline(in, header) || header != kHeader) return std::nullopt;
  if (!std::getline(in, key) || key != "p=" + std::to_string(p) + " n=" + std::to_string(n)) {
    return std::nullopt;
  }
  if (!std::getline(in, mod) || mod.rfind("modulus=", 0) != 0) return std::nullopt;
  try {
    Polynomial f = parse_modulus(std::string_view(mod).substr(8));
    if (f.size() != n + 1) return std::nullopt;
    return f;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void ModulusCache::store(std::uint32_t p, std::uint32_t n, std::span<const std::uint32_t> modulus) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto target = path_for(p, n);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;
    out << kHeader << '\n'
        << "p=" << p << " n=" << n << '\n'
        << "modulus=" << format_modulus(modulus) << '\n';
    if (!out) return;
  }
  std::filesystem::rename(tmp, target, ec);
}

FieldCtx make_field_cached(std::int64_t p, std::int64_t n, const ModulusCache* cache,
                           const FieldOptions& options) {
  if (cache && p > 0 && n > 0) {
    if (auto f = cache->load(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(n))) {
      try {
        return FieldCtx::make(p, n, std::move(f), options);
      } catch (const Error& e) {
        if (classify(e.code()) == ErrorClass::Budget) throw;
        // stale or corrupted record: fall through to a fresh search
      }
    }
  }
  FieldCtx ctx = FieldCtx::make(p, n, std::nullopt, options);
  if (cache) cache->store(ctx.p(), ctx.n(), ctx.modulus());
  return ctx;
}

}  // namespace wdist
