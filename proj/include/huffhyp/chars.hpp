#pragma once

// Multiplicative characters of F_q, extended by chi(0) = 0, together with
// Jacobi sums and the binomial symbol (A choose B) = B(-1)/q * J(A, conj B).
// chi_j(gen^k) = zeta^{jk} with zeta a primitive (q-1)-th root of unity, so
// every value lives in the group ring over Z_{q-1}.

#include "huffhyp/cyclo.hpp"
#include "huffhyp/ff.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace huffhyp {

class Character {
public:
    Character(const FieldCtx& ctx, std::int64_t j) : ctx_(&ctx), j_(wrap(j, ctx.order())) {}

    static Character trivial(const FieldCtx& ctx) { return {ctx, 0}; }
    static Character quadratic(const FieldCtx& ctx) { return {ctx, ctx.order() / 2}; }

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    std::uint32_t index() const noexcept { return j_; }
    bool is_trivial() const noexcept { return j_ == 0; }

    Character conj() const { return {*ctx_, -static_cast<std::int64_t>(j_)}; }
    Character pow(std::int64_t k) const { return {*ctx_, static_cast<std::int64_t>(j_) * k}; }

    /// Exponent m with chi(x) = zeta^m; nullopt at x = 0.
    std::optional<std::uint32_t> exponent(FieldElement x) const
    {
        if (x.code == 0) {
            return std::nullopt;
        }
        const std::uint64_t m = std::uint64_t{j_} * ctx_->dlog(x) % ctx_->order();
        return static_cast<std::uint32_t>(m);
    }

    GroupRingElement operator()(FieldElement x) const
    {
        const auto m = exponent(x);
        if (!m) {
            return GroupRingElement(ctx_->order());
        }
        return GroupRingElement::unit(ctx_->order(), *m);
    }

    /// chi(x) as +1/-1/0 for characters of order dividing 2.
    int sign(FieldElement x) const
    {
        const auto m = exponent(x);
        if (!m) {
            return 0;
        }
        if (*m == 0) {
            return 1;
        }
        if (2 * *m == ctx_->order()) {
            return -1;
        }
        throw NonRationalValue("character value is not real");
    }

    friend Character operator*(const Character& a, const Character& b)
    {
        a.require_same(b);
        return {*a.ctx_, static_cast<std::int64_t>(a.j_) + b.j_};
    }

    friend bool operator==(const Character& a, const Character& b)
    {
        return *a.ctx_ == *b.ctx_ && a.j_ == b.j_;
    }

    void require_same(const Character& other) const
    {
        if (!(*ctx_ == *other.ctx_)) {
            throw std::invalid_argument("characters belong to different fields");
        }
    }

private:
    static std::uint32_t wrap(std::int64_t j, std::uint32_t n)
    {
        const std::int64_t r = j % static_cast<std::int64_t>(n);
        return static_cast<std::uint32_t>(r < 0 ? r + n : r);
    }

    const FieldCtx* ctx_;
    std::uint32_t j_;
};

/// phi(-1): +1 when -1 is a square in F_q.
inline int phi_at_minus1(const FieldCtx& ctx) { return Character::quadratic(ctx).sign(ctx.minus_one()); }

/// delta(x): 1 at x = 0, else 0.
inline int delta(FieldElement x) noexcept { return x.code == 0 ? 1 : 0; }

/// delta(A): 1 for the trivial character, else 0.
inline int delta(const Character& a) noexcept { return a.is_trivial() ? 1 : 0; }

/// J(A, B) = sum_x A(x) B(1 - x), as a raw integer vector.
inline GroupRingElement jacobi(const Character& a, const Character& b)
{
    a.require_same(b);
    const FieldCtx& f = a.ctx();
    const std::uint64_t n = f.order();
    const std::uint64_t ja = a.index();
    const std::uint64_t jb = b.index();
    CycAccumulator acc(n);
    // x ranges over F_q \ {0, 1}; both characters vanish elsewhere
    for (std::uint32_t k = 0; k < n; ++k) {
        const FieldElement x = f.exp(k);
        const FieldElement y = f.sub(f.one(), x);
        if (y.code == 0) {
            continue;
        }
        acc.add((ja * k + jb * f.dlog(y)) % n);
    }
    return acc.finish();
}

/// (A choose B) = B(-1)/q * J(A, conj B).
inline GroupRingElement binom(const Character& a, const Character& b)
{
    GroupRingElement j = jacobi(a, b.conj());
    const int sign = b.index() % 2 == 0 ? 1 : -1;  // B(-1) = zeta^{b (q-1)/2}
    return j.scaled(make_rat(sign, a.ctx().q()));
}

/// Every (chi_i choose chi_j) for one field, computed once and read-only afterwards.
class BinomialTable {
public:
    explicit BinomialTable(const FieldCtx& ctx) : ctx_(&ctx), n_(ctx.order())
    {
        // J(chi_i, chi_j) for all pairs from one pass over x
        const std::uint64_t n = n_;
        std::vector<std::uint32_t> log_x;
        std::vector<std::uint32_t> log_1mx;
        for (std::uint32_t k = 0; k < n; ++k) {
            const FieldElement x = ctx.exp(k);
            const FieldElement y = ctx.sub(ctx.one(), x);
            if (y.code == 0) {
                continue;
            }
            log_x.push_back(k);
            log_1mx.push_back(ctx.dlog(y));
        }
        table_.reserve(n * n);
        const BigInt q = ctx.q();
        for (std::uint64_t i = 0; i < n; ++i) {
            for (std::uint64_t j = 0; j < n; ++j) {
                // (chi_i choose chi_j) uses J(chi_i, chi_{-j})
                const std::uint64_t jb = (n - j) % n;
                CycAccumulator acc(n);
                for (std::size_t t = 0; t < log_x.size(); ++t) {
                    acc.add((i * log_x[t] + jb * log_1mx[t]) % n);
                }
                GroupRingElement e = acc.finish();
                table_.push_back(e.scaled(make_rat(j % 2 == 0 ? BigInt(1) : BigInt(-1), q)));
            }
        }
    }

    const FieldCtx& ctx() const noexcept { return *ctx_; }

    const GroupRingElement& operator()(std::uint32_t i, std::uint32_t j) const
    {
        return table_[static_cast<std::size_t>(i % n_) * n_ + j % n_];
    }

    const GroupRingElement& operator()(const Character& a, const Character& b) const
    {
        return (*this)(a.index(), b.index());
    }

private:
    const FieldCtx* ctx_;
    std::uint32_t n_;
    std::vector<GroupRingElement> table_;
};

}  // namespace huffhyp
