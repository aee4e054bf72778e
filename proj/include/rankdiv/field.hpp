#pragma once

/**
 * Exact arithmetic in F_{p^h}.
 *
 * An element is stored as a Code: the integer sum_i c_i p^i of its coordinates c_i in the power basis of a root x
 * of the defining polynomial. For p = 2 the code is a bit vector and addition is XOR. Multiplication goes through
 * exp/log tables built once per field; fields are interned, so two Field handles built from the same (p, modulus)
 * share their tables.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace rankdiv {

using Code = std::uint32_t;

/// Largest field order for which tables are built.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 22;

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Polynomials over F_p as coefficient vectors (constant term first); only used to validate moduli.
using RawPoly = std::vector<std::uint32_t>;

inline void raw_trim(RawPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    return static_cast<std::uint32_t>(powmod(a, p - 2, p));
}

inline RawPoly raw_rem(RawPoly a, const RawPoly& b, std::uint32_t p) {
    raw_trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{a.back()} * lead_inv % p);
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - c} * b[i]) % p);
        raw_trim(a);
    }
    return a;
}

// Trial division by every monic polynomial of degree <= deg/2.
inline bool raw_is_irreducible(const RawPoly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) return deg == 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t n = 0; n < count; ++n) {
            RawPoly g(d + 1);
            std::uint64_t t = n;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            g[d] = 1;
            if (raw_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

struct FieldData {
    std::uint32_t p = 0;
    std::uint32_t h = 0;
    std::uint32_t order = 0;
    std::vector<std::uint32_t> modulus;  // length h+1, monic
    std::vector<std::uint32_t> p_pow;    // p^i for i <= h
    std::vector<Code> exp;               // exp[i] = g^i, doubled length so exp[a+b] needs no reduction
    std::vector<std::uint32_t> log;      // log[0] unused
    std::vector<Code> add_table;         // order*order, only for small odd-characteristic fields
    std::vector<Code> neg_table;
    Code primitive = 0;
};

inline std::vector<std::uint32_t> code_digits(Code c, std::uint32_t p, std::uint32_t h) {
    std::vector<std::uint32_t> d(h);
    for (std::uint32_t i = 0; i < h; ++i) {
        d[i] = c % p;
        c /= p;
    }
    return d;
}

// Multiply digit vectors modulo the monic modulus.
inline std::vector<std::uint32_t> slow_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                           const FieldData& f) {
    const std::uint32_t p = f.p, h = f.h;
    std::vector<std::uint64_t> prod(2 * h, 0);
    for (std::uint32_t i = 0; i < h; ++i) {
        if (!a[i]) continue;
        for (std::uint32_t j = 0; j < h; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
    for (std::size_t k = 2 * h - 1; k >= h; --k) {
        const std::uint64_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (std::uint32_t i = 0; i < h; ++i)
            prod[k - h + i] = (prod[k - h + i] + (p - c) * f.modulus[i]) % p;
    }
    std::vector<std::uint32_t> out(h);
    for (std::uint32_t i = 0; i < h; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
}

inline Code digits_code(const std::vector<std::uint32_t>& d, const FieldData& f) {
    Code c = 0;
    for (std::uint32_t i = 0; i < f.h; ++i) c += d[i] * f.p_pow[i];
    return c;
}

inline Code slow_pow(Code a, std::uint64_t e, const FieldData& f) {
    std::vector<std::uint32_t> r(f.h, 0);
    r[0] = 1;
    auto b = code_digits(a, f.p, f.h);
    while (e) {
        if (e & 1) r = slow_mul(r, b, f);
        b = slow_mul(b, b, f);
        e >>= 1;
    }
    return digits_code(r, f);
}

inline bool slow_is_primitive(Code g, const FieldData& f, const std::vector<std::uint64_t>& factors) {
    if (g == 0) return false;
    const std::uint64_t n = f.order - 1;
    for (std::uint64_t r : factors)
        if (slow_pow(g, n / r, f) == 1) return false;
    return true;
}

inline std::shared_ptr<const FieldData> build_field(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    auto f = std::make_shared<FieldData>();
    f->p = p;
    f->h = static_cast<std::uint32_t>(modulus.size() - 1);
    f->modulus = std::move(modulus);
    f->p_pow.resize(f->h + 1);
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i <= f->h; ++i) {
        f->p_pow[i] = static_cast<std::uint32_t>(order);
        if (i < f->h) order *= p;
    }
    f->order = static_cast<std::uint32_t>(order);
    const std::uint32_t n = f->order - 1;
    f->exp.assign(2 * std::size_t{n} + 1, 0);
    f->log.assign(f->order, 0);

    const auto factors = prime_factors(n);
    // Prefer the class of x itself; otherwise the smallest primitive code.
    Code x = f->h > 1 ? p : static_cast<Code>((p - f->modulus[0]) % p);
    Code g = 0;
    if (n == 1) {
        g = 1;
    } else if (slow_is_primitive(x, *f, factors)) {
        g = x;
    } else {
        for (Code c = 2; c < f->order; ++c)
            if (slow_is_primitive(c, *f, factors)) {
                g = c;
                break;
            }
    }
    f->primitive = g;

    // Multiplication by g is F_p-linear: tabulate g*x^i once.
    std::vector<std::vector<std::uint32_t>> g_times_basis(f->h);
    const auto gd = code_digits(g, p, f->h);
    for (std::uint32_t i = 0; i < f->h; ++i) {
        std::vector<std::uint32_t> xi(f->h, 0);
        xi[i] = 1;
        g_times_basis[i] = slow_mul(gd, xi, *f);
    }
    std::vector<Code> g_times_basis_code(f->h);
    for (std::uint32_t i = 0; i < f->h; ++i) g_times_basis_code[i] = digits_code(g_times_basis[i], *f);

    Code cur = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        f->exp[i] = cur;
        f->log[cur] = i;
        if (p == 2) {
            Code next = 0;
            for (std::uint32_t b = 0; b < f->h; ++b)
                if (cur >> b & 1u) next ^= g_times_basis_code[b];
            cur = next;
        } else {
            std::vector<std::uint64_t> acc(f->h, 0);
            Code t = cur;
            for (std::uint32_t b = 0; b < f->h; ++b) {
                const std::uint32_t db = t % p;
                t /= p;
                if (!db) continue;
                for (std::uint32_t j = 0; j < f->h; ++j) acc[j] += std::uint64_t{db} * g_times_basis[b][j];
            }
            Code next = 0;
            for (std::uint32_t j = 0; j < f->h; ++j) next += static_cast<Code>(acc[j] % p) * f->p_pow[j];
            cur = next;
        }
    }
    for (std::uint32_t i = n; i < 2 * n + 1; ++i) f->exp[i] = f->exp[i - n];

    if (p != 2) {
        f->neg_table.resize(f->order);
        for (Code a = 0; a < f->order; ++a) {
            Code r = 0;
            Code t = a;
            for (std::uint32_t i = 0; i < f->h; ++i) {
                r += ((p - t % p) % p) * f->p_pow[i];
                t /= p;
            }
            f->neg_table[a] = r;
        }
        if (f->order <= 1024) {
            f->add_table.resize(std::size_t{f->order} * f->order);
            for (Code a = 0; a < f->order; ++a)
                for (Code b = 0; b < f->order; ++b) {
                    Code r = 0, ta = a, tb = b;
                    for (std::uint32_t i = 0; i < f->h; ++i) {
                        r += ((ta % p + tb % p) % p) * f->p_pow[i];
                        ta /= p;
                        tb /= p;
                    }
                    f->add_table[std::size_t{a} * f->order + b] = r;
                }
        }
    }
    return f;
}

}  // namespace detail

class FieldElement;

/// Handle to an immutable finite field F_{p^h}. Cheap to copy.
class Field {
   public:
    Field() = default;
    explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

    bool valid() const { return static_cast<bool>(d_); }
    std::uint32_t characteristic() const { return d_->p; }
    std::uint32_t degree() const { return d_->h; }
    std::uint32_t order() const { return d_->order; }
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
    bool is_prime_field() const { return d_->h == 1; }
    Code primitive_element() const { return d_->primitive; }
    /// The class of x modulo the defining polynomial.
    Code root() const { return d_->h > 1 ? d_->p : static_cast<Code>((d_->p - d_->modulus[0]) % d_->p); }

    Code add(Code a, Code b) const {
        if (d_->p == 2) return a ^ b;
        if (!d_->add_table.empty()) return d_->add_table[std::size_t{a} * d_->order + b];
        const std::uint32_t p = d_->p;
        Code r = 0;
        for (std::uint32_t i = 0; i < d_->h; ++i) {
            const std::uint32_t s = a % p + b % p;
            r += (s >= p ? s - p : s) * d_->p_pow[i];
            a /= p;
            b /= p;
        }
        return r;
    }
    Code neg(Code a) const { return d_->p == 2 ? a : d_->neg_table[a]; }
    Code sub(Code a, Code b) const { return add(a, neg(b)); }
    Code mul(Code a, Code b) const {
        if (a == 0 || b == 0) return 0;
        return d_->exp[d_->log[a] + d_->log[b]];
    }
    Code inv(Code a) const {
        if (a == 0) fail(ErrorKind::NotInvertible, "inverse of zero");
        const std::uint32_t n = d_->order - 1;
        return d_->exp[(n - d_->log[a]) % n];
    }
    Code div(Code a, Code b) const { return mul(a, inv(b)); }
    Code pow(Code a, std::uint64_t e) const {
        if (e == 0) return 1;
        if (a == 0) return 0;
        const std::uint64_t n = d_->order - 1;
        return d_->exp[detail::mulmod(d_->log[a], e % n, n)];
    }
    /// x^{p^j}
    Code frobenius_power(Code a, std::uint32_t j) const {
        if (a == 0) return 0;
        const std::uint64_t n = d_->order - 1;
        const std::uint64_t e = detail::powmod(d_->p, j, n);
        return d_->exp[detail::mulmod(d_->log[a], e, n)];
    }
    std::uint32_t log(Code a) const { return d_->log[a]; }
    Code exp(std::uint64_t i) const { return d_->exp[i % (d_->order - 1)]; }

    std::uint32_t digit(Code a, std::uint32_t i) const {
        return d_->p == 2 ? (a >> i) & 1u : (a / d_->p_pow[i]) % d_->p;
    }
    std::vector<std::uint32_t> digits(Code a) const { return detail::code_digits(a, d_->p, d_->h); }
    Code from_digits(std::span<const std::uint32_t> ds) const {
        if (ds.size() > d_->h) fail(ErrorKind::ParseError, "too many coordinates for F_" + std::to_string(order()));
        Code c = 0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (ds[i] >= d_->p) fail(ErrorKind::ParseError, "coordinate out of range");
            c += ds[i] * d_->p_pow[i];
        }
        return c;
    }
    std::uint32_t p_power(std::uint32_t i) const { return d_->p_pow[i]; }

    FieldElement element(Code c) const;
    FieldElement zero() const;
    FieldElement one() const;

    /// `p^h:c_0,...,c_h`
    std::string spec_string() const {
        std::string s = std::to_string(d_->p) + "^" + std::to_string(d_->h) + ":";
        for (std::size_t i = 0; i < d_->modulus.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(d_->modulus[i]);
        }
        return s;
    }

    friend bool operator==(const Field& a, const Field& b) {
        if (a.d_ == b.d_) return true;
        if (!a.d_ || !b.d_) return false;
        return a.d_->p == b.d_->p && a.d_->modulus == b.d_->modulus;
    }

   private:
    std::shared_ptr<const detail::FieldData> d_;
};

/// A field value that remembers its field; mixing fields is an error.
class FieldElement {
   public:
    FieldElement(Field f, Code c) : f_(std::move(f)), c_(c) {
        if (c_ >= f_.order()) fail(ErrorKind::ParseError, "element code out of range");
    }
    const Field& field() const { return f_; }
    Code code() const { return c_; }

    FieldElement operator+(const FieldElement& o) const { return {f_, f_.add(c_, same(o))}; }
    FieldElement operator-(const FieldElement& o) const { return {f_, f_.sub(c_, same(o))}; }
    FieldElement operator*(const FieldElement& o) const { return {f_, f_.mul(c_, same(o))}; }
    FieldElement operator/(const FieldElement& o) const { return {f_, f_.div(c_, same(o))}; }
    FieldElement operator-() const { return {f_, f_.neg(c_)}; }
    FieldElement inverse() const { return {f_, f_.inv(c_)}; }
    FieldElement pow(std::uint64_t e) const { return {f_, f_.pow(c_, e)}; }
    bool is_zero() const { return c_ == 0; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

   private:
    Code same(const FieldElement& o) const {
        if (!(o.f_ == f_)) fail(ErrorKind::FieldMismatch, "elements of " + f_.spec_string() + " and " + o.f_.spec_string());
        return o.c_;
    }
    Field f_;
    Code c_;
};

inline FieldElement Field::element(Code c) const { return {*this, c}; }
inline FieldElement Field::zero() const { return {*this, 0}; }
inline FieldElement Field::one() const { return {*this, 1}; }

namespace detail {
inline std::mutex& field_registry_mutex() {
    static std::mutex m;
    return m;
}
inline std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::shared_ptr<const FieldData>>&
field_registry() {
    static std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::shared_ptr<const FieldData>> r;
    return r;
}
}  // namespace detail

/// Validates (p, modulus) and returns the field F_p[x]/(modulus). The modulus is constant-term first.
inline Field make_field(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    if (!detail::is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (modulus.size() < 2) fail(ErrorKind::NotIrreducible, "modulus must have degree >= 1");
    for (auto c : modulus)
        if (c >= p) fail(ErrorKind::ParseError, "modulus coefficient out of range");
    if (modulus.back() != 1) fail(ErrorKind::NotMonic, "modulus must be monic");
    std::uint64_t order = 1;
    for (std::size_t i = 1; i < modulus.size(); ++i) {
        order *= p;
        if (order > kMaxFieldOrder) fail(ErrorKind::TooLarge, "field order exceeds 2^22");
    }
    auto key = std::make_pair(p, modulus);
    {
        std::lock_guard lock(detail::field_registry_mutex());
        auto it = detail::field_registry().find(key);
        if (it != detail::field_registry().end()) return Field(it->second);
    }
    if (!detail::raw_is_irreducible(modulus, p)) fail(ErrorKind::NotIrreducible, "modulus is reducible over F_" + std::to_string(p));
    auto data = detail::build_field(p, std::move(modulus));
    std::lock_guard lock(detail::field_registry_mutex());
    auto [it, inserted] = detail::field_registry().emplace(std::move(key), std::move(data));
    return Field(it->second);
}

/// The monic irreducible of degree h whose low coefficients, read as a base-p integer, are smallest.
inline std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t h) {
    if (!detail::is_prime(p)) fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (h == 0) fail(ErrorKind::BadParams, "degree must be positive");
    if (h == 1) return {0, 1};
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < h; ++i) {
        count *= p;
        if (count > kMaxFieldOrder) fail(ErrorKind::TooLarge, "field order exceeds 2^22");
    }
    for (std::uint64_t n = 0; n < count; ++n) {
        detail::RawPoly f(h + 1);
        std::uint64_t t = n;
        for (std::uint32_t i = 0; i < h; ++i) {
            f[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        f[h] = 1;
        if (f[0] == 0) continue;
        if (detail::raw_is_irreducible(f, p)) return f;
    }
    fail(ErrorKind::NotIrreducible, "no irreducible polynomial found");
}

inline Field default_field(std::uint32_t p, std::uint32_t h) { return make_field(p, default_modulus(p, h)); }

/// Prime-power decomposition q = p^h, or nullopt-like failure.
inline std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
    if (q < 2) fail(ErrorKind::BadParams, "not a prime power: " + std::to_string(q));
    for (std::uint32_t p = 2; std::uint64_t{p} * p <= q || p == q; ++p) {
        if (q % p) continue;
        std::uint32_t h = 0;
        std::uint64_t t = q;
        while (t % p == 0) {
            t /= p;
            ++h;
        }
        if (t != 1 || !detail::is_prime(p)) fail(ErrorKind::BadParams, "not a prime power: " + std::to_string(q));
        return {p, h};
    }
    if (detail::is_prime(q)) return {static_cast<std::uint32_t>(q), 1};
    fail(ErrorKind::BadParams, "not a prime power: " + std::to_string(q));
}

}  // namespace rankdiv
