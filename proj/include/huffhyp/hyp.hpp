#pragma once

// Gaussian hypergeometric series over F_q:
//
//   F(A_0..A_n; B_1..B_n | x) = q/(q-1) * sum_chi (A_0 chi choose chi)
//                                  * prod_i (A_i chi choose B_i chi) * chi(x)
//
// evaluated exactly in the group ring and extracted as a rational.

#include "huffhyp/chars.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace huffhyp {

struct HypSpec {
    std::vector<Character> top;     // A_0, ..., A_n
    std::vector<Character> bottom;  // B_1, ..., B_n
    FieldElement x;
};

namespace detail {

inline const FieldCtx& validate(const HypSpec& spec)
{
    if (spec.top.empty()) {
        throw std::invalid_argument("hypergeometric spec needs at least one top character");
    }
    if (spec.top.size() != spec.bottom.size() + 1) {
        throw std::invalid_argument("hypergeometric spec needs len(top) = len(bottom) + 1");
    }
    const FieldCtx& f = spec.top.front().ctx();
    for (const auto& c : spec.top) {
        spec.top.front().require_same(c);
    }
    for (const auto& c : spec.bottom) {
        spec.top.front().require_same(c);
    }
    if (!f.contains(spec.x)) {
        throw std::invalid_argument("argument is not an element of the field");
    }
    return f;
}

template <typename BinomFn>
Rat hyp_sum(const FieldCtx& f, const HypSpec& spec, BinomFn&& choose)
{
    const std::uint32_t n = f.order();
    GroupRingElement total(n);
    if (spec.x.code == 0) {
        return 0;
    }
    const std::uint64_t lx = f.dlog(spec.x);
    for (std::uint32_t j = 0; j < n; ++j) {
        const Character chi(f, j);
        GroupRingElement term = choose(spec.top[0] * chi, chi);
        for (std::size_t i = 0; i < spec.bottom.size(); ++i) {
            term = term * choose(spec.top[i + 1] * chi, spec.bottom[i] * chi);
        }
        total.add_rotated(term, static_cast<std::int64_t>(j * lx % n));
    }
    return total.to_rational() * make_rat(f.q(), n);
}

}  // namespace detail

/// Generic evaluator, computing every binomial symbol from its Jacobi sum.
inline Rat hyp_eval(const HypSpec& spec)
{
    const FieldCtx& f = detail::validate(spec);
    return detail::hyp_sum(f, spec, [](const Character& a, const Character& b) { return binom(a, b); });
}

/// Generic evaluator reading binomials from a precomputed table of the same field.
inline Rat hyp_eval(const HypSpec& spec, const BinomialTable& table)
{
    const FieldCtx& f = detail::validate(spec);
    if (!(f == table.ctx())) {
        throw std::invalid_argument("binomial table belongs to a different field");
    }
    return detail::hyp_sum(f, spec, [&](const Character& a, const Character& b) -> const GroupRingElement& {
        return table(a, b);
    });
}

/// 2F1(phi, phi; eps | lambda) for one field.
///
/// Uses 2F1(lambda) = q/(q-1) sum_chi (phi chi choose chi)^2 chi(lambda). The
/// squares equal J(phi chi, conj chi)^2 / q^2 and are built once; each lambda
/// then costs one rotated sum plus a reduction. Values are memoized per lambda
/// and safe to request from several threads.
class TwoF1Table {
public:
    explicit TwoF1Table(const FieldCtx& ctx)
        : ctx_(&ctx), values_(ctx.q()), once_(std::make_unique<std::once_flag[]>(ctx.q()))
    {
        const std::uint32_t n = ctx.order();
        const Character phi = Character::quadratic(ctx);
        squares_.reserve(n);
        for (std::uint32_t j = 0; j < n; ++j) {
            const Character chi(ctx, j);
            const GroupRingElement jac = jacobi(phi * chi, chi.conj());
            squares_.push_back(jac * jac);
        }
    }

    const FieldCtx& ctx() const noexcept { return *ctx_; }

    const Rat& operator()(FieldElement lambda) const
    {
        if (!ctx_->contains(lambda)) {
            throw std::invalid_argument("argument is not an element of the field");
        }
        std::call_once(once_[lambda.code], [&] { values_[lambda.code] = compute(lambda); });
        return values_[lambda.code];
    }

private:
    Rat compute(FieldElement lambda) const
    {
        if (lambda.code == 0) {
            return 0;
        }
        const std::uint32_t n = ctx_->order();
        const std::uint64_t l = ctx_->dlog(lambda);
        GroupRingElement total(n);
        for (std::uint32_t j = 0; j < n; ++j) {
            total.add_rotated(squares_[j], static_cast<std::int64_t>(j * l % n));
        }
        const BigInt q = ctx_->q();
        return total.to_rational() / Rat(q * (q - 1));
    }

    const FieldCtx* ctx_;
    std::vector<GroupRingElement> squares_;
    mutable std::vector<Rat> values_;
    std::unique_ptr<std::once_flag[]> once_;
};

/// 2F1(phi, phi; eps | lambda); builds a one-off table, so prefer TwoF1Table for sweeps.
inline Rat two_f_one(const FieldCtx& ctx, FieldElement lambda) { return TwoF1Table(ctx)(lambda); }

/// HypSpec for 2F1(phi, phi; eps | x).
inline HypSpec two_f_one_spec(const FieldCtx& ctx, FieldElement x)
{
    const Character phi = Character::quadratic(ctx);
    return {{phi, phi}, {Character::trivial(ctx)}, x};
}

/// HypSpec for 2F1(phi, eps; phi | x).
inline HypSpec phi_eps_phi_spec(const FieldCtx& ctx, FieldElement x)
{
    const Character phi = Character::quadratic(ctx);
    return {{phi, Character::trivial(ctx)}, {phi}, x};
}

/// p = x^2 + y^2 with x odd and both positive.
struct TwoSquares {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t p = 0;

    friend bool operator==(const TwoSquares&, const TwoSquares&) = default;
};

class NoRepresentation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two-square decomposition of a prime p = 1 mod 4 by the Euclidean remainder
/// sequence on (p, s) with s^2 = -1 mod p.
inline TwoSquares cornacchia(std::int64_t p)
{
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
        throw std::invalid_argument("cornacchia needs a prime (got " + std::to_string(p) + ")");
    }
    if (p % 4 != 1) {
        throw NoRepresentation("no representation as a sum of two squares: " + std::to_string(p) +
                               " is not 1 mod 4");
    }
    const FieldCtx f = make_field(p, 1, static_cast<std::uint64_t>(p));
    const std::int64_t s = f.pow(f.gen(), static_cast<std::uint64_t>((p - 1) / 4)).code;

    std::int64_t a = p;
    std::int64_t b = s;
    while (b * b > p) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    // b is the first remainder below sqrt(p)
    const std::int64_t rest = p - b * b;
    auto other = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(rest))));
    while (other * other > rest) {
        --other;
    }
    while ((other + 1) * (other + 1) <= rest) {
        ++other;
    }
    if (other * other != rest) {
        throw std::logic_error("cornacchia failed for p=" + std::to_string(p));
    }
    TwoSquares out{b, other, p};
    if (out.x % 2 == 0) {
        std::swap(out.x, out.y);
    }
    return out;
}

/// 2x(-1)^{(x+y+1)/2} / p for any signs of x (odd) and y (even).
inline Rat ono_formula(std::int64_t x, std::int64_t y, std::int64_t p)
{
    const std::int64_t e = (x + y + 1) / 2;  // x + y + 1 is even
    const std::int64_t sign = (e % 2 == 0) ? 1 : -1;
    return make_rat(2 * x * sign, p);
}

/// 2F1(-1) over F_p from the two-square decomposition; 0 when p = 3 mod 4.
inline Rat ono_value_minus1(std::int64_t p)
{
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
        throw std::invalid_argument("ono_value_minus1 needs an odd prime (got " + std::to_string(p) + ")");
    }
    if (p % 4 == 3) {
        return 0;
    }
    const TwoSquares ts = cornacchia(p);
    return ono_formula(ts.x, ts.y, p);
}

}  // namespace huffhyp
