#pragma once

// Exact arithmetic in the rational group ring Q[Z_n] = Q[x]/(x^n - 1).
// An element stores integer numerators over one positive common
// denominator; coefficient m multiplies zeta^m for a primitive n-th root of
// unity zeta. Raw vectors are not unique: two elements are equal when their
// remainders modulo the n-th cyclotomic polynomial agree.

#include "huffhyp/rational.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace huffhyp {

class NonRationalValue : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Integer polynomial, lowest degree first.
struct IntPoly {
    std::vector<BigInt> coeffs;

    std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    bool is_monic() const noexcept { return !coeffs.empty() && coeffs.back() == 1; }

    friend bool operator==(const IntPoly&, const IntPoly&) = default;
};

inline std::size_t euler_phi(std::size_t n)
{
    std::size_t result = n;
    for (std::size_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            while (n % d == 0) {
                n /= d;
            }
            result -= result / d;
        }
    }
    if (n > 1) {
        result -= result / n;
    }
    return result;
}

namespace detail {

struct CycloEntry {
    IntPoly poly;
    std::vector<std::int64_t> small;  // same coefficients when they all fit
    bool fits_small = false;
};

// Exact quotient a / b for monic b.
inline std::vector<BigInt> divide_exact(std::vector<BigInt> a, const std::vector<BigInt>& b)
{
    const std::size_t db = b.size() - 1;
    std::vector<BigInt> quot(a.size() - db, 0);
    for (std::size_t k = a.size(); k-- > db;) {
        const BigInt c = a[k];
        quot[k - db] = c;
        if (c == 0) {
            continue;
        }
        for (std::size_t i = 0; i <= db; ++i) {
            a[k - db + i] -= c * b[i];
        }
    }
    for (const auto& r : a) {
        if (r != 0) {
            throw std::logic_error("inexact polynomial division");
        }
    }
    return quot;
}

inline std::shared_ptr<const CycloEntry> cyclotomic_entry(std::size_t n)
{
    static std::recursive_mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const CycloEntry>> cache;

    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) {
        return it->second;
    }
    // x^n - 1 = prod_{d | n} Phi_d
    std::vector<BigInt> poly(n + 1, 0);
    poly[0] = -1;
    poly[n] = 1;
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d == 0) {
            poly = divide_exact(std::move(poly), cyclotomic_entry(d)->poly.coeffs);
        }
    }
    auto entry = std::make_shared<CycloEntry>();
    entry->poly.coeffs = std::move(poly);
    entry->fits_small = true;
    for (const auto& c : entry->poly.coeffs) {
        if (c > (BigInt(1) << 30) || c < -(BigInt(1) << 30)) {
            entry->fits_small = false;
            break;
        }
        entry->small.push_back(c.convert_to<std::int64_t>());
    }
    cache.emplace(n, entry);
    return entry;
}

// Copies v into out when every entry has magnitude <= limit.
inline bool narrow(const std::vector<BigInt>& v, std::vector<std::int64_t>& out, std::int64_t limit)
{
    out.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > limit || v[i] < -limit) {
            return false;
        }
        out[i] = v[i].convert_to<std::int64_t>();
    }
    return true;
}

}  // namespace detail

/// n-th cyclotomic polynomial, from x^n - 1 = prod_{d | n} Phi_d.
inline IntPoly cyclotomic_poly(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("cyclotomic polynomial index must be positive");
    }
    return detail::cyclotomic_entry(n)->poly;
}

/// Reduced representative: rational polynomial in zeta_n of degree < phi(n),
/// trailing zeros removed. The zero element has no coefficients.
struct CanonicalForm {
    std::size_t n = 1;
    std::vector<Rat> coeffs;

    bool is_zero() const noexcept { return coeffs.empty(); }
    bool is_rational() const noexcept { return coeffs.size() <= 1; }
    Rat constant() const { return coeffs.empty() ? Rat(0) : coeffs[0]; }

    std::complex<long double> embed() const
    {
        std::complex<long double> z{0.0L, 0.0L};
        for (std::size_t m = 0; m < coeffs.size(); ++m) {
            const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(m) /
                                      static_cast<long double>(n);
            z += to_long_double(coeffs[m]) * std::complex<long double>(std::cos(angle), std::sin(angle));
        }
        return z;
    }

    /// e.g. "-1/1 + -2/1*z" with z a primitive n-th root of unity; "0/1" for zero.
    std::string to_string() const
    {
        if (coeffs.empty()) {
            return "0/1";
        }
        std::string s;
        for (std::size_t m = 0; m < coeffs.size(); ++m) {
            if (coeffs[m] == 0) {
                continue;
            }
            if (!s.empty()) {
                s += " + ";
            }
            s += huffhyp::to_string(coeffs[m]);
            if (m == 1) {
                s += "*z";
            } else if (m > 1) {
                s += "*z^" + std::to_string(m);
            }
        }
        return s;
    }

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

class GroupRingElement {
public:
    GroupRingElement() : GroupRingElement(1) {}

    /// Zero element of Q[Z_n].
    explicit GroupRingElement(std::size_t n) : n_(n), num_(n, 0), den_(1)
    {
        if (n == 0) {
            throw std::invalid_argument("group ring modulus must be positive");
        }
    }

    /// zeta^m, exponent taken mod n.
    static GroupRingElement unit(std::size_t n, std::int64_t m)
    {
        GroupRingElement e(n);
        e.num_[wrap(m, n)] = 1;
        return e;
    }

    static GroupRingElement constant(std::size_t n, const Rat& c)
    {
        GroupRingElement e(n);
        e.num_[0] = boost::multiprecision::numerator(c);
        e.den_ = boost::multiprecision::denominator(c);
        return e;
    }

    static GroupRingElement from_integers(std::size_t n, std::vector<BigInt> num, BigInt den = 1)
    {
        if (num.size() != n) {
            throw std::invalid_argument("coefficient vector length must equal n");
        }
        if (den <= 0) {
            throw std::invalid_argument("common denominator must be positive");
        }
        GroupRingElement e(n);
        e.num_ = std::move(num);
        e.den_ = std::move(den);
        e.normalize();
        return e;
    }

    std::size_t n() const noexcept { return n_; }
    Rat coeff(std::size_t m) const { return make_rat(num_.at(m), den_); }
    const std::vector<BigInt>& numerators() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }

    GroupRingElement& operator+=(const GroupRingElement& other)
    {
        combine(other, 1);
        return *this;
    }

    GroupRingElement& operator-=(const GroupRingElement& other)
    {
        combine(other, -1);
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }

    friend GroupRingElement operator-(GroupRingElement a)
    {
        for (auto& c : a.num_) {
            c = -c;
        }
        return a;
    }

    /// Cyclic convolution: result[k] = sum over i + j = k (mod n) of a[i] b[j].
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b)
    {
        a.require_same(b);
        const std::size_t n = a.n_;
        GroupRingElement out(n);
        out.den_ = a.den_ * b.den_;

        std::vector<std::int64_t> sa;
        std::vector<std::int64_t> sb;
        constexpr std::int64_t kLimit = std::int64_t{1} << 31;
        if (n <= (std::size_t{1} << 20) && detail::narrow(a.num_, sa, kLimit) && detail::narrow(b.num_, sb, kLimit)) {
            std::vector<__int128> acc(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (sa[i] == 0) {
                    continue;
                }
                const __int128 ai = sa[i];
                for (std::size_t j = 0; j < n; ++j) {
                    if (sb[j] == 0) {
                        continue;
                    }
                    std::size_t k = i + j;
                    if (k >= n) {
                        k -= n;
                    }
                    acc[k] += ai * sb[j];
                }
            }
            for (std::size_t k = 0; k < n; ++k) {
                out.num_[k] = from_i128(acc[k]);
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                if (a.num_[i] == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    if (b.num_[j] == 0) {
                        continue;
                    }
                    out.num_[(i + j) % n] += a.num_[i] * b.num_[j];
                }
            }
        }
        out.normalize();
        return out;
    }

    GroupRingElement& operator*=(const GroupRingElement& other) { return *this = *this * other; }

    GroupRingElement scaled(const Rat& s) const
    {
        GroupRingElement out = *this;
        const BigInt& sn = boost::multiprecision::numerator(s);
        for (auto& c : out.num_) {
            c *= sn;
        }
        out.den_ *= boost::multiprecision::denominator(s);
        out.normalize();
        return out;
    }

    /// Multiplication by zeta^k.
    GroupRingElement rotated(std::int64_t k) const
    {
        GroupRingElement out(n_);
        out.den_ = den_;
        const std::size_t shift = wrap(k, n_);
        for (std::size_t m = 0; m < n_; ++m) {
            std::size_t t = m + shift;
            if (t >= n_) {
                t -= n_;
            }
            out.num_[t] = num_[m];
        }
        return out;
    }

    /// this += zeta^k * other, without forming the rotated copy.
    void add_rotated(const GroupRingElement& other, std::int64_t k)
    {
        require_same(other);
        if (den_ != other.den_) {
            *this += other.rotated(k);
            return;
        }
        const std::size_t shift = wrap(k, n_);
        for (std::size_t m = 0; m < n_; ++m) {
            if (other.num_[m] == 0) {
                continue;
            }
            std::size_t t = m + shift;
            if (t >= n_) {
                t -= n_;
            }
            num_[t] += other.num_[m];
        }
    }

    /// Remainder modulo Phi_n.
    CanonicalForm canonical() const
    {
        const auto entry = detail::cyclotomic_entry(n_);
        const std::size_t deg = entry->poly.degree();
        CanonicalForm form;
        form.n = n_;

        std::vector<BigInt> rem;
        std::vector<std::int64_t> small;
        if (entry->fits_small && detail::narrow(num_, small, std::int64_t{1} << 40) && reduce_small(small, entry->small)) {
            rem.reserve(deg);
            for (std::size_t i = 0; i < deg; ++i) {
                rem.emplace_back(small[i]);
            }
        } else {
            rem = num_;
            const auto& f = entry->poly.coeffs;
            for (std::size_t k = n_; k-- > deg;) {
                const BigInt c = rem[k];
                if (c == 0) {
                    continue;
                }
                for (std::size_t i = 0; i < deg; ++i) {
                    rem[k - deg + i] -= c * f[i];
                }
                rem[k] = 0;
            }
            rem.resize(deg);
        }
        while (!rem.empty() && rem.back() == 0) {
            rem.pop_back();
        }
        form.coeffs.reserve(rem.size());
        for (const auto& c : rem) {
            form.coeffs.push_back(make_rat(c, den_));
        }
        return form;
    }

    bool is_zero() const { return canonical().is_zero(); }

    /// Exact value when the element is rational; NonRationalValue otherwise.
    Rat to_rational() const
    {
        const CanonicalForm form = canonical();
        if (!form.is_rational()) {
            throw NonRationalValue("non-rational value: " + form.to_string() + " (z = zeta_" + std::to_string(n_) +
                                   ")");
        }
        return form.constant();
    }

    /// Complex embedding zeta -> exp(2 pi i / n), in long double.
    std::complex<long double> embed() const
    {
        std::complex<long double> z{0.0L, 0.0L};
        for (std::size_t m = 0; m < n_; ++m) {
            if (num_[m] == 0) {
                continue;
            }
            const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(m) /
                                      static_cast<long double>(n_);
            z += num_[m].convert_to<long double>() * std::complex<long double>(std::cos(angle), std::sin(angle));
        }
        return z / den_.convert_to<long double>();
    }

    /// Semantic equality (equal canonical forms).
    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b)
    {
        a.require_same(b);
        return (a - b).is_zero();
    }

private:
    static std::size_t wrap(std::int64_t m, std::size_t n)
    {
        const auto sn = static_cast<std::int64_t>(n);
        std::int64_t r = m % sn;
        return static_cast<std::size_t>(r < 0 ? r + sn : r);
    }

    void require_same(const GroupRingElement& other) const
    {
        if (n_ != other.n_) {
            throw std::invalid_argument("group ring size mismatch: " + std::to_string(n_) + " vs " +
                                        std::to_string(other.n_));
        }
    }

    void combine(const GroupRingElement& other, int sign)
    {
        require_same(other);
        if (den_ == other.den_) {
            for (std::size_t m = 0; m < n_; ++m) {
                if (other.num_[m] != 0) {
                    num_[m] += sign > 0 ? other.num_[m] : BigInt(-other.num_[m]);
                }
            }
        } else {
            const BigInt g = boost::multiprecision::gcd(den_, other.den_);
            const BigInt fa = other.den_ / g;
            const BigInt fb = den_ / g;
            for (std::size_t m = 0; m < n_; ++m) {
                num_[m] = num_[m] * fa + (sign > 0 ? other.num_[m] * fb : BigInt(-other.num_[m] * fb));
            }
            den_ *= fa;
        }
        normalize();
    }

    void normalize()
    {
        if (den_ == 1) {
            return;
        }
        BigInt g = den_;
        for (const auto& c : num_) {
            if (c != 0) {
                g = boost::multiprecision::gcd(g, c);
                if (g == 1) {
                    return;
                }
            }
        }
        for (auto& c : num_) {
            c /= g;
        }
        den_ /= g;
    }

    // In-place reduction with overflow checks; false means fall back to BigInt.
    static bool reduce_small(std::vector<std::int64_t>& v, const std::vector<std::int64_t>& f)
    {
        const std::size_t deg = f.size() - 1;
        for (std::size_t k = v.size(); k-- > deg;) {
            const std::int64_t c = v[k];
            if (c == 0) {
                continue;
            }
            for (std::size_t i = 0; i < deg; ++i) {
                if (f[i] == 0) {
                    continue;
                }
                std::int64_t t = 0;
                if (__builtin_mul_overflow(c, f[i], &t) || __builtin_sub_overflow(v[k - deg + i], t, &v[k - deg + i])) {
                    return false;
                }
            }
            v[k] = 0;
        }
        return true;
    }

    std::size_t n_;
    std::vector<BigInt> num_;
    BigInt den_;
};

/// Integer vector accumulator for sums of roots of unity (Jacobi-type sums).
class CycAccumulator {
public:
    explicit CycAccumulator(std::size_t n) : counts_(n, 0)
    {
        if (n == 0) {
            throw std::invalid_argument("group ring modulus must be positive");
        }
    }

    void add(std::uint64_t exponent, std::int64_t k = 1)
    {
        auto& slot = counts_[exponent % counts_.size()];
        if (__builtin_add_overflow(slot, k, &slot)) {
            throw std::overflow_error("accumulator overflow");
        }
    }

    std::size_t n() const noexcept { return counts_.size(); }

    GroupRingElement finish(BigInt den = 1) const
    {
        std::vector<BigInt> num(counts_.begin(), counts_.end());
        return GroupRingElement::from_integers(counts_.size(), std::move(num), std::move(den));
    }

private:
    std::vector<std::int64_t> counts_;
};

}  // namespace huffhyp
