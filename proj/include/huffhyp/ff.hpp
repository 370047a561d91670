#pragma once

// Finite fields F_q, q = p^r with p an odd prime, fully materialized:
// every element has a small integer code, multiplication goes through
// exp/log tables and addition in extension fields through a Zech table.

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace huffhyp {

/// Largest field size accepted when no override is configured.
inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 16;

/// Name of the environment variable that overrides the field-size cap.
inline constexpr const char* kFieldCapEnv = "HUFFHYP_QCAP";

class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Current cap on q: HUFFHYP_QCAP when set to a positive integer, else the default.
inline std::uint64_t field_cap()
{
    if (const char* env = std::getenv(kFieldCapEnv)) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return v;
        }
    }
    return kDefaultFieldCap;
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

/// Distinct prime factors in increasing order.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) {
                n /= d;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

/// Element of a FieldCtx, identified by its position in the canonical element order.
struct FieldElement {
    std::uint32_t code = 0;

    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

class FieldCtx {
public:
    /// Builds F_{p^r}. The modulus is the lexicographically smallest monic
    /// irreducible of degree r (tuple order on (c_0, ..., c_{r-1})) and the
    /// generator is the first element of full order in element order.
    static FieldCtx make(std::int64_t p, std::int64_t r, std::uint64_t cap = field_cap())
    {
        if (p < 3 || p % 2 == 0) {
            throw FieldError("characteristic must be an odd prime (got p=" + std::to_string(p) + ")");
        }
        if (!is_prime(static_cast<std::uint64_t>(p))) {
            throw FieldError("characteristic must be prime (got composite p=" + std::to_string(p) + ")");
        }
        if (r < 1) {
            throw FieldError("extension degree must be at least 1 (got r=" + std::to_string(r) + ")");
        }
        std::uint64_t q = 1;
        for (std::int64_t i = 0; i < r; ++i) {
            if (q > cap / static_cast<std::uint64_t>(p)) {
                throw FieldError("field size p^r exceeds the cap of " + std::to_string(cap));
            }
            q *= static_cast<std::uint64_t>(p);
        }
        if (q > cap) {
            throw FieldError("field size p^r exceeds the cap of " + std::to_string(cap));
        }
        if (q > std::numeric_limits<std::uint32_t>::max()) {
            throw FieldError("field size too large for element codes");
        }
        return FieldCtx(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r),
                        static_cast<std::uint32_t>(q));
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t r() const noexcept { return r_; }
    std::uint32_t q() const noexcept { return q_; }
    /// Order of the multiplicative group, q - 1.
    std::uint32_t order() const noexcept { return q_ - 1; }
    bool is_prime_field() const noexcept { return r_ == 1; }

    /// Monic modulus coefficients c_0..c_{r-1} (leading 1 implied). For r = 1 this is {0}, i.e. x.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    FieldElement gen() const noexcept { return gen_; }

    FieldElement zero() const noexcept { return {0}; }
    FieldElement one() const noexcept { return one_; }
    FieldElement minus_one() const noexcept { return neg(one_); }

    /// Integer n mapped to n * 1 (negative values wrap).
    FieldElement from_int(std::int64_t n) const noexcept
    {
        std::int64_t m = n % static_cast<std::int64_t>(p_);
        if (m < 0) {
            m += p_;
        }
        return scalar(static_cast<std::uint32_t>(m));
    }

    /// Element from coefficients (c_0, ..., c_{k-1}) with k <= r, each reduced mod p.
    FieldElement from_coeffs(std::span<const std::int64_t> c) const
    {
        if (c.size() > r_) {
            throw FieldError("too many coefficients for F_" + std::to_string(q_));
        }
        std::vector<std::uint32_t> digits(r_, 0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::int64_t m = c[i] % static_cast<std::int64_t>(p_);
            digits[i] = static_cast<std::uint32_t>(m < 0 ? m + p_ : m);
        }
        return {encode(digits)};
    }

    /// Coefficient tuple (c_0, ..., c_{r-1}).
    std::vector<std::uint32_t> coeffs(FieldElement x) const
    {
        std::vector<std::uint32_t> d(r_);
        std::uint32_t c = x.code;
        for (std::uint32_t i = r_; i-- > 0;) {
            d[i] = c % p_;
            c /= p_;
        }
        return d;
    }

    /// All q elements in canonical order (lexicographic on coefficient tuples).
    std::vector<FieldElement> elements() const
    {
        std::vector<FieldElement> out(q_);
        for (std::uint32_t i = 0; i < q_; ++i) {
            out[i] = {i};
        }
        return out;
    }

    bool contains(FieldElement x) const noexcept { return x.code < q_; }

    FieldElement add(FieldElement x, FieldElement y) const noexcept
    {
        if (r_ == 1) {
            const std::uint32_t s = x.code + y.code;
            return {s >= p_ ? s - p_ : s};
        }
        if (x.code == 0) {
            return y;
        }
        if (y.code == 0) {
            return x;
        }
        // x + y = x (1 + y/x)
        const std::uint32_t lx = log_[x.code];
        std::uint32_t d = log_[y.code] + n_ - lx;
        if (d >= n_) {
            d -= n_;
        }
        const std::uint32_t z = zech_[d];
        if (z == kNoLog) {
            return {0};
        }
        std::uint32_t e = lx + z;
        if (e >= n_) {
            e -= n_;
        }
        return {exp_[e]};
    }

    FieldElement neg(FieldElement x) const noexcept
    {
        if (r_ == 1) {
            return {x.code == 0 ? 0 : p_ - x.code};
        }
        return {neg_[x.code]};
    }

    FieldElement sub(FieldElement x, FieldElement y) const noexcept { return add(x, neg(y)); }

    FieldElement mul(FieldElement x, FieldElement y) const noexcept
    {
        if (x.code == 0 || y.code == 0) {
            return {0};
        }
        if (r_ == 1) {
            return {static_cast<std::uint32_t>(std::uint64_t{x.code} * y.code % p_)};
        }
        std::uint32_t e = log_[x.code] + log_[y.code];
        if (e >= n_) {
            e -= n_;
        }
        return {exp_[e]};
    }

    FieldElement inv(FieldElement x) const
    {
        if (x.code == 0) {
            throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
        }
        const std::uint32_t l = log_[x.code];
        return {exp_[l == 0 ? 0 : n_ - l]};
    }

    FieldElement div(FieldElement x, FieldElement y) const { return mul(x, inv(y)); }

    FieldElement pow(FieldElement x, std::uint64_t e) const noexcept
    {
        FieldElement result = one_;
        FieldElement base = x;
        while (e > 0) {
            if (e & 1u) {
                result = mul(result, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }

    FieldElement square(FieldElement x) const noexcept { return mul(x, x); }

    /// Index k in [0, q-2] with gen^k = x.
    std::uint32_t dlog(FieldElement x) const
    {
        if (x.code == 0 || x.code >= q_) {
            throw std::domain_error("discrete logarithm of zero is undefined");
        }
        return log_[x.code];
    }

    /// gen^k, k taken mod q-1.
    FieldElement exp(std::uint64_t k) const noexcept { return {exp_[k % n_]}; }

    bool is_square(FieldElement x) const noexcept { return x.code != 0 && log_[x.code] % 2 == 0; }

    /// Integer for prime fields, "c0,c1,..." otherwise.
    std::string to_string(FieldElement x) const
    {
        if (r_ == 1) {
            return std::to_string(x.code);
        }
        std::string s;
        for (auto c : coeffs(x)) {
            if (!s.empty()) {
                s += ',';
            }
            s += std::to_string(c);
        }
        return s;
    }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) noexcept
    {
        return a.p_ == b.p_ && a.r_ == b.r_;
    }

private:
    static constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

    using Poly = std::vector<std::uint32_t>;  // low degree first

    FieldCtx(std::uint32_t p, std::uint32_t r, std::uint32_t q) : p_(p), r_(r), q_(q), n_(q - 1)
    {
        one_ = scalar(1);
        modulus_ = r_ == 1 ? Poly{0} : find_modulus();
        build_tables();
    }

    FieldElement scalar(std::uint32_t c) const noexcept
    {
        // (c, 0, ..., 0): c_0 is the most significant digit of the code
        std::uint32_t code = c;
        for (std::uint32_t i = 1; i < r_; ++i) {
            code *= p_;
        }
        return {code};
    }

    std::uint32_t encode(const std::vector<std::uint32_t>& digits) const noexcept
    {
        std::uint32_t code = 0;
        for (std::uint32_t i = 0; i < r_; ++i) {
            code = code * p_ + digits[i];
        }
        return code;
    }

    // Polynomial remainder of a by monic b over F_p.
    Poly poly_rem(Poly a, const Poly& b) const
    {
        const std::size_t db = b.size() - 1;
        for (std::size_t k = a.size(); k-- > db;) {
            const std::uint32_t c = a[k] % p_;
            if (c == 0) {
                continue;
            }
            for (std::size_t i = 0; i <= db; ++i) {
                const std::uint64_t t = std::uint64_t{c} * b[i] % p_;
                a[k - db + i] = static_cast<std::uint32_t>((a[k - db + i] + p_ - t) % p_);
            }
        }
        a.resize(db);
        return a;
    }

    bool is_irreducible(const Poly& f) const
    {
        const std::size_t deg = f.size() - 1;
        for (std::size_t d = 1; d <= deg / 2; ++d) {
            // every monic g of degree d
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < d; ++i) {
                count *= p_;
            }
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                Poly g(d + 1, 0);
                std::uint64_t t = idx;
                for (std::size_t i = 0; i < d; ++i) {
                    g[i] = static_cast<std::uint32_t>(t % p_);
                    t /= p_;
                }
                g[d] = 1;
                const Poly rem = poly_rem(f, g);
                bool zero = true;
                for (auto c : rem) {
                    zero = zero && c == 0;
                }
                if (zero) {
                    return false;
                }
            }
        }
        return true;
    }

    Poly find_modulus() const
    {
        // candidate codes enumerate (c_0, ..., c_{r-1}) lexicographically
        for (std::uint32_t code = 0; code < q_; ++code) {
            Poly f = coeffs({code});
            f.push_back(1);
            if (is_irreducible(f)) {
                f.pop_back();
                return f;
            }
        }
        throw FieldError("no irreducible polynomial found");
    }

    Poly poly_mulmod(const Poly& a, const Poly& b) const
    {
        Poly prod(2 * r_ - 1, 0);
        for (std::uint32_t i = 0; i < r_; ++i) {
            for (std::uint32_t j = 0; j < r_; ++j) {
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_);
            }
        }
        Poly m = modulus_;
        m.push_back(1);
        return poly_rem(prod, m);
    }

    Poly poly_powmod(Poly base, std::uint64_t e) const
    {
        Poly result(r_, 0);
        result[0] = 1;
        while (e > 0) {
            if (e & 1u) {
                result = poly_mulmod(result, base);
            }
            base = poly_mulmod(base, base);
            e >>= 1;
        }
        return result;
    }

    Poly as_poly(FieldElement x) const { return coeffs(x); }

    bool poly_is_one(const Poly& a) const
    {
        if (a[0] != 1) {
            return false;
        }
        for (std::size_t i = 1; i < a.size(); ++i) {
            if (a[i] != 0) {
                return false;
            }
        }
        return true;
    }

    void build_tables()
    {
        const auto factors = prime_factors(n_);
        bool found = false;
        for (std::uint32_t code = 1; code < q_ && !found; ++code) {
            const Poly g = as_poly({code});
            bool primitive = true;
            for (auto l : factors) {
                if (poly_is_one(poly_powmod(g, n_ / l))) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                gen_ = {code};
                found = true;
            }
        }
        if (!found) {
            throw FieldError("no generator found for F_" + std::to_string(q_));
        }

        exp_.assign(n_, 0);
        log_.assign(q_, kNoLog);
        Poly cur(r_, 0);
        cur[0] = 1;
        const Poly g = as_poly(gen_);
        for (std::uint32_t k = 0; k < n_; ++k) {
            const std::uint32_t code = encode(cur);
            exp_[k] = code;
            log_[code] = k;
            cur = poly_mulmod(cur, g);
        }

        if (r_ > 1) {
            neg_.assign(q_, 0);
            for (std::uint32_t code = 0; code < q_; ++code) {
                auto d = coeffs({code});
                for (auto& c : d) {
                    c = (p_ - c) % p_;
                }
                neg_[code] = encode(d);
            }
            // zech_[k] = log(1 + gen^k)
            zech_.assign(n_, kNoLog);
            for (std::uint32_t k = 0; k < n_; ++k) {
                auto d = coeffs({exp_[k]});
                d[0] = (d[0] + 1) % p_;  // c_0 is the constant term
                const std::uint32_t code = encode(d);
                zech_[k] = code == 0 ? kNoLog : log_[code];
            }
        }
    }

    std::uint32_t p_;
    std::uint32_t r_;
    std::uint32_t q_;
    std::uint32_t n_;
    FieldElement one_{};
    FieldElement gen_{};
    Poly modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> zech_;
};

inline FieldCtx make_field(std::int64_t p, std::int64_t r, std::uint64_t cap = field_cap())
{
    return FieldCtx::make(p, r, cap);
}

/// Odd prime powers q <= q_max in increasing order, as (p, r) pairs.
struct PrimePower {
    std::uint32_t q;
    std::uint32_t p;
    std::uint32_t r;
};

inline std::vector<PrimePower> odd_prime_powers(std::uint64_t q_max)
{
    std::vector<PrimePower> out;
    for (std::uint64_t q = 3; q <= q_max; q += 2) {
        for (std::uint64_t p = 3; p <= q; p += 2) {
            if (q % p != 0) {
                continue;
            }
            if (!is_prime(p)) {
                break;
            }
            std::uint64_t t = q;
            std::uint32_t r = 0;
            while (t % p == 0) {
                t /= p;
                ++r;
            }
            if (t == 1) {
                out.push_back({static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(p), r});
            }
            break;
        }
    }
    return out;
}

/// (p, r) with p^r = q, or nullopt-like {0,0,0} when q is not an odd prime power.
inline PrimePower decompose_prime_power(std::uint64_t q)
{
    if (q < 3 || q % 2 == 0) {
        return {0, 0, 0};
    }
    for (std::uint64_t p = 3; p * p <= q || p == q; p += 2) {
        if (q % p == 0) {
            if (!is_prime(p)) {
                return {0, 0, 0};
            }
            std::uint64_t t = q;
            std::uint32_t r = 0;
            while (t % p == 0) {
                t /= p;
                ++r;
            }
            if (t != 1) {
                return {0, 0, 0};
            }
            return {static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(p), r};
        }
    }
    return {static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(q), 1};
}

}  // namespace huffhyp
