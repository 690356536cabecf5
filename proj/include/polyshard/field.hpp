#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyshard {

/// Field element in canonical form. Prime fields store the least nonnegative
/// residue; binary fields store the coefficient bit pattern (degree < m).
/// Which field a value belongs to is carried by the field object, not here.
struct Fe {
  std::uint64_t v = 0;
  friend auto operator<=>(const Fe&, const Fe&) = default;
};

/// Tallies scalar field operations. Vector routines tick once per element.
/// Each simulated node owns its own counter; merging happens via operator+=.
struct OpCounter {
  std::uint64_t additions = 0;       // add, sub, neg
  std::uint64_t multiplications = 0;
  std::uint64_t inversions = 0;

  std::uint64_t total() const { return additions + multiplications + inversions; }
  void reset() { additions = multiplications = inversions = 0; }
  OpCounter& operator+=(const OpCounter& o) {
    additions += o.additions;
    multiplications += o.multiplications;
    inversions += o.inversions;
    return *this;
  }
  friend bool operator==(const OpCounter&, const OpCounter&) = default;
};

enum class FieldKind { Prime, Binary };

struct FieldSpec {
  FieldKind kind = FieldKind::Prime;
  std::uint64_t p = 0; // prime modulus, if kind == Prime
  unsigned m = 0;      // extension degree, if kind == Binary
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, p);
    a = mulmod_u64(a, a, p);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs with this base set.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

} // namespace detail

/// GF(p) for an odd prime p < 2^62. The default pipeline modulus 2^61 - 1 gets
/// a Mersenne reduction fast path; anything else goes through 128-bit divide.
class PrimeField {
 public:
  static constexpr std::uint64_t kDefaultPrime = 0x1fffffffffffffffULL; // 2^61 - 1

  explicit PrimeField(std::uint64_t p) : p_(p), mersenne61_(p == kDefaultPrime) {
    if (p < 3 || p >= (1ULL << 62))
      throw std::invalid_argument("PrimeField: modulus must be an odd prime in [3, 2^62)");
    if (!detail::is_prime_u64(p))
      throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
  }

  FieldSpec spec() const { return {FieldKind::Prime, p_, 0}; }
  std::uint64_t modulus() const { return p_; }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }

  Fe add(Fe a, Fe b) const {
    std::uint64_t s = a.v + b.v;
    return Fe{s >= p_ ? s - p_ : s};
  }
  Fe sub(Fe a, Fe b) const { return Fe{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
  Fe neg(Fe a) const { return Fe{a.v == 0 ? 0 : p_ - a.v}; }

  Fe mul(Fe a, Fe b) const {
    if (mersenne61_) {
      unsigned __int128 x = static_cast<unsigned __int128>(a.v) * b.v;
      std::uint64_t lo = static_cast<std::uint64_t>(x) & p_;
      std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
      std::uint64_t s = lo + hi;
      s = (s & p_) + (s >> 61);
      return Fe{s >= p_ ? s - p_ : s};
    }
    return Fe{detail::mulmod_u64(a.v, b.v, p_)};
  }

  Fe inv(Fe a) const {
    if (a.v == 0) throw std::invalid_argument("PrimeField: inverse of zero");
    // extended Euclid; coefficients stay below p so 128-bit headroom is ample
    __int128 t = 0, newt = 1;
    __int128 r = p_, newr = a.v;
    while (newr != 0) {
      __int128 q = r / newr;
      __int128 tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += p_;
    return Fe{static_cast<std::uint64_t>(t)};
  }

  Fe from_u64(std::uint64_t x) const { return Fe{x % p_}; }

  Fe from_signed(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return Fe{static_cast<std::uint64_t>(r)};
  }

  /// Maps onto the symmetric range [-(p-1)/2, (p-1)/2].
  std::int64_t signed_repr(Fe a) const {
    if (a.v <= (p_ - 1) / 2) return static_cast<std::int64_t>(a.v);
    return static_cast<std::int64_t>(a.v) - static_cast<std::int64_t>(p_);
  }

  Fe embed_bit(unsigned b) const {
    if (b > 1) throw std::invalid_argument("embed_bit: argument must be 0 or 1");
    return Fe{b};
  }

 private:
  std::uint64_t p_;
  bool mersenne61_;
};

/// GF(2^m), m in 1..16, with a fixed irreducible modulus per degree.
/// Elements are coefficient bit patterns; addition is xor.
class BinaryField {
 public:
  explicit BinaryField(unsigned m) : m_(m) {
    if (m < 1 || m > 16)
      throw std::invalid_argument("BinaryField: extension degree must be in 1..16");
    mod_ = kModuli[m - 1];
    mask_ = (m == 64) ? ~0ULL : ((1ULL << m) - 1);
  }

  FieldSpec spec() const { return {FieldKind::Binary, 0, m_}; }
  unsigned degree() const { return m_; }
  std::uint64_t modulus() const { return mod_; }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }

  Fe add(Fe a, Fe b) const { return Fe{a.v ^ b.v}; }
  Fe sub(Fe a, Fe b) const { return Fe{a.v ^ b.v}; }
  Fe neg(Fe a) const { return a; } // characteristic 2

  Fe mul(Fe a, Fe b) const { return Fe{reduce(clmul(a.v, b.v))}; }

  Fe inv(Fe a) const {
    if (a.v == 0) throw std::invalid_argument("BinaryField: inverse of zero");
    // a^(2^m - 2); multiplicative group has order 2^m - 1
    std::uint64_t e = (mask_ - 1);
    std::uint64_t r = 1, base = a.v;
    while (e) {
      if (e & 1) r = reduce(clmul(r, base));
      base = reduce(clmul(base, base));
      e >>= 1;
    }
    return Fe{r};
  }

  Fe from_u64(std::uint64_t x) const { return Fe{x & mask_}; }

  Fe from_signed(std::int64_t x) const {
    if (x < 0)
      throw std::invalid_argument("BinaryField: no signed embedding in characteristic 2");
    return from_u64(static_cast<std::uint64_t>(x));
  }

  std::int64_t signed_repr(Fe) const {
    throw std::invalid_argument("BinaryField: signed_repr requires a prime field");
  }

  Fe embed_bit(unsigned b) const {
    if (b > 1) throw std::invalid_argument("embed_bit: argument must be 0 or 1");
    return Fe{b};
  }

 private:
  static constexpr std::array<std::uint64_t, 16> kModuli = {
      0x3,     0x7,    0xB,    0x13,   0x25,   0x43,   0x83,   0x11B,
      0x203,   0x409,  0x805,  0x1009, 0x201B, 0x4021, 0x8003, 0x1002B};

  static std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
      if (b & 1) r ^= a;
      a <<= 1;
      b >>= 1;
    }
    return r;
  }

  std::uint64_t reduce(std::uint64_t x) const {
    while (x > mask_) {
      int d = 63 - __builtin_clzll(x);
      x ^= mod_ << (d - m_);
    }
    return x;
  }

  unsigned m_;
  std::uint64_t mod_ = 0;
  std::uint64_t mask_ = 0;
};

template <class F>
concept FieldLike = requires(const F f, Fe a, Fe b) {
  { f.zero() } -> std::same_as<Fe>;
  { f.one() } -> std::same_as<Fe>;
  { f.add(a, b) } -> std::same_as<Fe>;
  { f.sub(a, b) } -> std::same_as<Fe>;
  { f.neg(a) } -> std::same_as<Fe>;
  { f.mul(a, b) } -> std::same_as<Fe>;
  { f.inv(a) } -> std::same_as<Fe>;
  { f.from_u64(std::uint64_t{}) } -> std::same_as<Fe>;
  { f.spec() } -> std::same_as<FieldSpec>;
};

/// Same interface as the wrapped field, plus a tick per arithmetic op.
/// Conversions, comparisons and signed_repr are free.
template <FieldLike F>
class CountedField {
 public:
  CountedField(const F& base, OpCounter& counter) : f_(base), c_(counter) {}

  FieldSpec spec() const { return f_.spec(); }
  Fe zero() const { return f_.zero(); }
  Fe one() const { return f_.one(); }

  Fe add(Fe a, Fe b) const { ++c_.additions; return f_.add(a, b); }
  Fe sub(Fe a, Fe b) const { ++c_.additions; return f_.sub(a, b); }
  Fe neg(Fe a) const { ++c_.additions; return f_.neg(a); }
  Fe mul(Fe a, Fe b) const { ++c_.multiplications; return f_.mul(a, b); }
  Fe inv(Fe a) const { ++c_.inversions; return f_.inv(a); }

  Fe from_u64(std::uint64_t x) const { return f_.from_u64(x); }
  Fe from_signed(std::int64_t x) const { return f_.from_signed(x); }
  std::int64_t signed_repr(Fe a) const { return f_.signed_repr(a); }
  Fe embed_bit(unsigned b) const { return f_.embed_bit(b); }

  OpCounter& counter() const { return c_; }
  const F& base() const { return f_; }

 private:
  const F& f_;
  OpCounter& c_;
};

/// Square-and-multiply; ticks multiplications when given a CountedField.
template <class F>
Fe field_pow(const F& f, Fe a, std::uint64_t e) {
  Fe r = f.one();
  Fe base = a;
  while (e) {
    if (e & 1) r = f.mul(r, base);
    base = f.mul(base, base);
    e >>= 1;
  }
  return r;
}

} // namespace polyshard
