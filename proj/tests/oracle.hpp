#pragma once

// Independent brute-force references for the test suite. Nothing here calls
// the library's arithmetic: field elements are coefficient vectors multiplied
// by schoolbook polynomial products, discrete logs come from repeated
// multiplication, and character sums are evaluated in complex doubles.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

/// F_{p^r} from an explicit monic modulus (non-leading coefficients, constant first).
/// Elements use the same integer code as the library: c_0 is the most significant digit.
class Field {
public:
    Field(int p, int r, std::vector<int> modulus) : p_(p), r_(r), mod_(std::move(modulus))
    {
        q_ = 1;
        for (int i = 0; i < r; ++i) {
            q_ *= p;
        }
        if (static_cast<int>(mod_.size()) != r) {
            throw std::invalid_argument("modulus size");
        }
        build_logs();
    }

    explicit Field(int p) : Field(p, 1, {0}) {}

    int p() const { return p_; }
    int r() const { return r_; }
    int q() const { return q_; }
    int gen() const { return gen_; }

    std::vector<int> digits(int code) const
    {
        std::vector<int> d(r_);
        for (int i = r_ - 1; i >= 0; --i) {
            d[i] = code % p_;
            code /= p_;
        }
        return d;
    }

    int code(const std::vector<int>& d) const
    {
        int c = 0;
        for (int i = 0; i < r_; ++i) {
            c = c * p_ + ((d[i] % p_) + p_) % p_;
        }
        return c;
    }

    int from_int(long long n) const
    {
        std::vector<int> d(r_, 0);
        d[0] = static_cast<int>(((n % p_) + p_) % p_);
        return code(d);
    }

    int add(int x, int y) const
    {
        auto a = digits(x);
        auto b = digits(y);
        for (int i = 0; i < r_; ++i) {
            a[i] = (a[i] + b[i]) % p_;
        }
        return code(a);
    }

    int neg(int x) const
    {
        auto a = digits(x);
        for (auto& c : a) {
            c = (p_ - c) % p_;
        }
        return code(a);
    }

    int sub(int x, int y) const { return add(x, neg(y)); }

    int mul(int x, int y) const
    {
        if (r_ == 1) {
            return static_cast<int>(static_cast<long long>(x) * y % p_);
        }
        auto a = digits(x);
        auto b = digits(y);
        std::vector<long long> prod(2 * r_ - 1, 0);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < r_; ++j) {
                prod[i + j] += static_cast<long long>(a[i]) * b[j];
            }
        }
        // t^r = -(m_0 + m_1 t + ... + m_{r-1} t^{r-1})
        for (int k = 2 * r_ - 2; k >= r_; --k) {
            const long long c = prod[k] % p_;
            prod[k] = 0;
            for (int i = 0; i < r_; ++i) {
                prod[k - r_ + i] -= c * mod_[i];
            }
        }
        std::vector<int> out(r_);
        for (int i = 0; i < r_; ++i) {
            out[i] = static_cast<int>(((prod[i] % p_) + p_) % p_);
        }
        return code(out);
    }

    int pow(int x, long long e) const
    {
        int result = from_int(1);
        for (long long i = 0; i < e; ++i) {
            result = mul(result, x);
        }
        return result;
    }

    int inv(int x) const
    {
        for (int y = 1; y < q_; ++y) {
            if (mul(x, y) == from_int(1)) {
                return y;
            }
        }
        throw std::domain_error("no inverse");
    }

    int div(int x, int y) const { return mul(x, inv(y)); }

    int log(int x) const { return log_.at(x); }

    /// +1 / -1 / 0 by searching for a square root.
    int legendre(int x) const
    {
        if (x == 0) {
            return 0;
        }
        for (int y = 1; y < q_; ++y) {
            if (mul(y, y) == x) {
                return 1;
            }
        }
        return -1;
    }

private:
    void build_logs()
    {
        const int n = q_ - 1;
        for (int g = 1; g < q_; ++g) {
            std::vector<int> seen(q_, -1);
            int cur = from_int(1);
            bool ok = true;
            for (int k = 0; k < n; ++k) {
                if (seen[cur] != -1) {
                    ok = false;
                    break;
                }
                seen[cur] = k;
                cur = mul(cur, g);
            }
            if (ok) {
                gen_ = g;
                log_ = std::move(seen);
                return;
            }
        }
        throw std::logic_error("no generator");
    }

    int p_;
    int r_;
    int q_;
    std::vector<int> mod_;
    int gen_ = 0;
    std::vector<int> log_;
};

using cd = std::complex<double>;

/// chi_j(x) for the oracle's own generator.
inline cd chi(const Field& f, int j, int x)
{
    if (x == 0) {
        return 0.0;
    }
    const int n = f.q() - 1;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(j) * f.log(x)) % n) / n;
    return std::polar(1.0, angle);
}

inline cd jacobi(const Field& f, int a, int b)
{
    cd s = 0.0;
    const int one = f.from_int(1);
    for (int x = 0; x < f.q(); ++x) {
        s += chi(f, a, x) * chi(f, b, f.sub(one, x));
    }
    return s;
}

/// (chi_a choose chi_b) = chi_b(-1)/q * J(chi_a, conj chi_b)
inline cd binom(const Field& f, int a, int b)
{
    const int n = f.q() - 1;
    return chi(f, b, f.neg(f.from_int(1))) / static_cast<double>(f.q()) * jacobi(f, a, (n - b) % n);
}

/// 2F1(phi,phi;eps|x) straight from the series definition.
inline double two_f_one(const Field& f, int x)
{
    const int n = f.q() - 1;
    const int h = n / 2;
    cd s = 0.0;
    for (int j = 0; j < n; ++j) {
        s += binom(f, (h + j) % n, j) * binom(f, (h + j) % n, j) * chi(f, j, x);
    }
    s *= static_cast<double>(f.q()) / n;
    return s.real();
}

inline long long count_general_huff(const Field& f, int a, int b)
{
    long long c = 3;
    const int one = f.from_int(1);
    for (int x = 0; x < f.q(); ++x) {
        for (int y = 0; y < f.q(); ++y) {
            const int lhs = f.mul(x, f.sub(f.mul(a, f.mul(y, y)), one));
            const int rhs = f.mul(y, f.sub(f.mul(b, f.mul(x, x)), one));
            c += lhs == rhs;
        }
    }
    return c;
}

inline long long count_huff(const Field& f, int a, int b)
{
    long long c = 3;
    const int one = f.from_int(1);
    for (int x = 0; x < f.q(); ++x) {
        for (int y = 0; y < f.q(); ++y) {
            const int lhs = f.mul(a, f.mul(x, f.sub(f.mul(y, y), one)));
            const int rhs = f.mul(b, f.mul(y, f.sub(f.mul(x, x), one)));
            c += lhs == rhs;
        }
    }
    return c;
}

inline long long count_weierstrass(const Field& f, int a, int b)
{
    long long c = 1;
    for (int x = 0; x < f.q(); ++x) {
        const int rhs = f.mul(x, f.mul(f.add(x, a), f.add(x, b)));
        for (int y = 0; y < f.q(); ++y) {
            c += f.mul(y, y) == rhs;
        }
    }
    return c;
}

inline long long count_edwards_affine(const Field& f, int d2)
{
    long long c = 0;
    const int one = f.from_int(1);
    for (int x = 0; x < f.q(); ++x) {
        for (int y = 0; y < f.q(); ++y) {
            const int x2 = f.mul(x, x);
            const int y2 = f.mul(y, y);
            c += f.add(x2, y2) == f.add(one, f.mul(d2, f.mul(x2, y2)));
        }
    }
    return c;
}

/// (p, x, y) with x^2 + y^2 = p, x odd, both positive, by exhaustive search.
inline std::pair<long long, long long> two_squares(long long p)
{
    for (long long x = 1; x * x < p; x += 2) {
        for (long long y = 2; x * x + y * y <= p; y += 2) {
            if (x * x + y * y == p) {
                return {x, y};
            }
        }
    }
    throw std::domain_error("not a sum of two squares");
}

inline bool is_prime(long long n)
{
    if (n < 2) {
        return false;
    }
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace oracle
