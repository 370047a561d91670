#pragma once

// Character-sum identities for the binomial symbol and Jacobi sums, checked
// exhaustively over one field. Every comparison is an equality of canonical
// forms. The two identities that divide by a binomial symbol are checked with
// that symbol multiplied through.

#include "huffhyp/chars.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace huffhyp {

struct PropertyResult {
    std::string name;
    std::uint32_t q = 0;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::string first_failure;

    bool pass() const noexcept { return failures == 0; }
};

class LemmaSuite {
public:
    explicit LemmaSuite(const FieldCtx& ctx) : f_(ctx), n_(ctx.order()), table_(ctx) {}

    const FieldCtx& field() const noexcept { return f_; }
    const BinomialTable& binomials() const noexcept { return table_; }

    std::vector<PropertyResult> run_all(std::uint64_t seed) const
    {
        return {binomial_expansion_plus(), binomial_expansion_minus(), complement(), negation(),
                trivial_bottom(),          duplication_b(),            duplication_a(), squares_sum(seed),
                squares_jacobi(),          squares_jacobi_phi(),       phi_top(),       trivial_pair(),
                chi_squared()};
    }

    // A(1+x) = delta(x) + q/(q-1) sum_chi (A choose chi) chi(x)
    PropertyResult binomial_expansion_plus() const
    {
        return expansion("binomial expansion of A(1+x)", [&](std::uint32_t a, std::uint32_t j) {
            return table_(a, j);
        }, [&](std::uint32_t a, FieldElement x) { return Character(f_, a)(f_.add(f_.one(), x)); });
    }

    // conj A(1-x) = delta(x) + q/(q-1) sum_chi (A chi choose chi) chi(x)
    PropertyResult binomial_expansion_minus() const
    {
        return expansion("binomial expansion of conj A(1-x)", [&](std::uint32_t a, std::uint32_t j) {
            return table_(a + j, j);
        }, [&](std::uint32_t a, FieldElement x) { return Character(f_, a).conj()(f_.sub(f_.one(), x)); });
    }

    // (A choose B) = (A choose A conj B)
    PropertyResult complement() const
    {
        PropertyResult r = start("(A choose B) = (A choose A conj B)");
        for_pairs([&](std::uint32_t a, std::uint32_t b) {
            record(r, table_(a, b) == table_(a, a + n_ - b), a, b);
        });
        return r;
    }

    // (A choose B) = (B conj A choose B) B(-1)
    PropertyResult negation() const
    {
        PropertyResult r = start("(A choose B) = (B conj A choose B) B(-1)");
        for_pairs([&](std::uint32_t a, std::uint32_t b) {
            GroupRingElement rhs = table_(b + n_ - a, b);
            if (b % 2 == 1) {
                rhs = -rhs;
            }
            record(r, table_(a, b) == rhs, a, b);
        });
        return r;
    }

    // (A choose eps) = (A choose A) = -1/q + (q-1)/q delta(A)
    PropertyResult trivial_bottom() const
    {
        PropertyResult r = start("(A choose eps) = (A choose A) = -1/q + (q-1)/q delta(A)");
        const Rat q = f_.q();
        for (std::uint32_t a = 0; a < n_; ++a) {
            const Rat value = -1 / q + (q - 1) / q * delta(Character(f_, a));
            const GroupRingElement expected = GroupRingElement::constant(n_, value);
            record(r, table_(a, 0) == expected && table_(a, a) == expected, a, a);
        }
        return r;
    }

    // (B^2 chi^2 choose chi)(phi choose phi B) = (phi B chi choose chi)(B chi choose B^2 chi) B chi(4)
    PropertyResult duplication_b() const
    {
        PropertyResult r = start("duplication in (B^2 chi^2 choose chi), product form");
        const std::uint32_t h = n_ / 2;
        const FieldElement four = f_.from_int(4);
        for_pairs([&](std::uint32_t b, std::uint32_t c) {
            const GroupRingElement lhs = table_(2 * b + 2 * c, c) * table_(h, h + b);
            const GroupRingElement rhs =
                table_(h + b + c, c) * table_(b + c, 2 * b + c) * Character(f_, b + c)(four);
            record(r, lhs == rhs, b, c);
        });
        return r;
    }

    // (A^2 choose AB)(phi choose B) = (A choose B)(phi A choose AB) A(4)
    PropertyResult duplication_a() const
    {
        PropertyResult r = start("duplication in (A^2 choose AB), product form");
        const std::uint32_t h = n_ / 2;
        const FieldElement four = f_.from_int(4);
        for_pairs([&](std::uint32_t a, std::uint32_t b) {
            const GroupRingElement lhs = table_(2 * a, a + b) * table_(h, b);
            const GroupRingElement rhs = table_(a, b) * table_(h + a, a + b) * Character(f_, a)(four);
            record(r, lhs == rhs, a, b);
        });
        return r;
    }

    // sum_x phi(x) f(x) = sum_x f(x^2) - sum_x f(x), for 20 seeded random f
    PropertyResult squares_sum(std::uint64_t seed, int functions = 20) const
    {
        PropertyResult r = start("sum phi(x) f(x) = sum f(x^2) - sum f(x)");
        std::mt19937_64 rng(seed ^ (std::uint64_t{f_.q()} * 0x9E3779B97F4A7C15ULL));
        std::uniform_int_distribution<int> coeff(-9, 9);
        const Character phi = Character::quadratic(f_);
        for (int t = 0; t < functions; ++t) {
            std::vector<GroupRingElement> values;
            values.reserve(f_.q());
            for (std::uint32_t x = 0; x < f_.q(); ++x) {
                std::vector<BigInt> num(n_);
                for (auto& c : num) {
                    c = coeff(rng);
                }
                values.push_back(GroupRingElement::from_integers(n_, std::move(num), 1 + (x % 3)));
            }
            GroupRingElement lhs(n_);
            GroupRingElement rhs(n_);
            for (std::uint32_t x = 0; x < f_.q(); ++x) {
                const FieldElement e{x};
                lhs += values[x].scaled(phi.sign(e));
                rhs += values[f_.square(e).code];
                rhs -= values[x];
            }
            record(r, lhs == rhs, static_cast<std::uint32_t>(t), 0);
        }
        return r;
    }

    // sum_x psi(x^2) chi(1+ax^2) = psi(-1/a) J(psi,chi) + phi psi(-1/a) J(phi psi,chi)
    PropertyResult squares_jacobi() const
    {
        PropertyResult r = start("sum psi(x^2) chi(1+ax^2) via Jacobi sums");
        const std::vector<GroupRingElement> jac = jacobi_table();
        const std::uint32_t h = n_ / 2;
        for (std::uint32_t la = 0; la < n_; ++la) {
            const FieldElement a = f_.exp(la);
            const std::uint64_t lm = f_.dlog(f_.neg(f_.inv(a)));
            const auto [log_x2, log_rest] = square_logs(a);
            for_pairs([&](std::uint32_t psi, std::uint32_t chi) {
                CycAccumulator acc(n_);
                for (std::size_t t = 0; t < log_x2.size(); ++t) {
                    acc.add((std::uint64_t{psi} * log_x2[t] + std::uint64_t{chi} * log_rest[t]) % n_);
                }
                GroupRingElement rhs = jac[psi * n_ + chi].rotated(static_cast<std::int64_t>(psi * lm % n_));
                rhs.add_rotated(jac[((psi + h) % n_) * n_ + chi], static_cast<std::int64_t>((psi + h) * lm % n_));
                record(r, acc.finish() == rhs, psi, chi);
            });
        }
        return r;
    }

    // sum_x psi(x^2) phi(1+ax^2) = q phi(-1)[psi(-1/a)(psi choose phi psi) + phi psi(-1/a)(phi psi choose psi)]
    PropertyResult squares_jacobi_phi() const
    {
        PropertyResult r = start("sum psi(x^2) phi(1+ax^2) via binomial symbols");
        const std::uint32_t h = n_ / 2;
        const Rat scale = Rat(f_.q()) * phi_at_minus1(f_);
        for (std::uint32_t la = 0; la < n_; ++la) {
            const FieldElement a = f_.exp(la);
            const std::uint64_t lm = f_.dlog(f_.neg(f_.inv(a)));
            const auto [log_x2, log_rest] = square_logs(a);
            for (std::uint32_t psi = 0; psi < n_; ++psi) {
                CycAccumulator acc(n_);
                for (std::size_t t = 0; t < log_x2.size(); ++t) {
                    acc.add((std::uint64_t{psi} * log_x2[t] + std::uint64_t{h} * log_rest[t]) % n_);
                }
                GroupRingElement rhs = table_(psi, psi + h).rotated(static_cast<std::int64_t>(psi * lm % n_));
                rhs.add_rotated(table_(psi + h, psi), static_cast<std::int64_t>((psi + h) * lm % n_));
                record(r, acc.finish() == rhs.scaled(scale), la, psi);
            }
        }
        return r;
    }

    // (phi choose chi) = (phi chi choose chi) chi(-1)
    PropertyResult phi_top() const
    {
        PropertyResult r = start("(phi choose chi) = (phi chi choose chi) chi(-1)");
        const std::uint32_t h = n_ / 2;
        for (std::uint32_t c = 0; c < n_; ++c) {
            GroupRingElement rhs = table_(h + c, c);
            if (c % 2 == 1) {
                rhs = -rhs;
            }
            record(r, table_(h, c) == rhs, c, 0);
        }
        return r;
    }

    // (eps choose eps) = (q-2)/q
    PropertyResult trivial_pair() const
    {
        PropertyResult r = start("(eps choose eps) = (q-2)/q");
        const GroupRingElement expected = GroupRingElement::constant(n_, make_rat(f_.q() - 2, f_.q()));
        record(r, table_(0, 0) == expected, 0, 0);
        return r;
    }

    // (chi^2 choose chi) = (phi chi choose chi) chi(4), chi != eps
    PropertyResult chi_squared() const
    {
        PropertyResult r = start("(chi^2 choose chi) = (phi chi choose chi) chi(4)");
        const std::uint32_t h = n_ / 2;
        const FieldElement four = f_.from_int(4);
        for (std::uint32_t c = 1; c < n_; ++c) {
            record(r, table_(2 * c, c) == table_(h + c, c) * Character(f_, c)(four), c, 0);
        }
        return r;
    }

private:
    PropertyResult start(std::string name) const
    {
        PropertyResult r;
        r.name = std::move(name);
        r.q = f_.q();
        return r;
    }

    static void record(PropertyResult& r, bool ok, std::uint32_t i, std::uint32_t j)
    {
        ++r.checks;
        if (!ok) {
            if (r.failures == 0) {
                std::ostringstream os;
                os << "q=" << r.q << " at (" << i << "," << j << ")";
                r.first_failure = os.str();
            }
            ++r.failures;
        }
    }

    template <typename Fn>
    void for_pairs(Fn&& fn) const
    {
        for (std::uint32_t i = 0; i < n_; ++i) {
            for (std::uint32_t j = 0; j < n_; ++j) {
                fn(i, j);
            }
        }
    }

    template <typename Symbol, typename Value>
    PropertyResult expansion(std::string name, Symbol&& symbol, Value&& value) const
    {
        PropertyResult r = start(std::move(name));
        const Rat scale = make_rat(f_.q(), n_);
        for (std::uint32_t a = 0; a < n_; ++a) {
            for (std::uint32_t x = 0; x < f_.q(); ++x) {
                const FieldElement e{x};
                GroupRingElement rhs = GroupRingElement::constant(n_, delta(e));
                if (x != 0) {
                    GroupRingElement sum(n_);
                    const std::uint64_t lx = f_.dlog(e);
                    for (std::uint32_t j = 0; j < n_; ++j) {
                        sum.add_rotated(symbol(a, j), static_cast<std::int64_t>(j * lx % n_));
                    }
                    rhs += sum.scaled(scale);
                }
                record(r, value(a, e) == rhs, a, x);
            }
        }
        return r;
    }

    std::vector<GroupRingElement> jacobi_table() const
    {
        std::vector<GroupRingElement> out;
        out.reserve(std::size_t{n_} * n_);
        for_pairs([&](std::uint32_t i, std::uint32_t j) { out.push_back(jacobi(Character(f_, i), Character(f_, j))); });
        return out;
    }

    // For x != 0 with 1 + a x^2 != 0: dlog(x^2) and dlog(1 + a x^2).
    std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> square_logs(FieldElement a) const
    {
        std::vector<std::uint32_t> lx;
        std::vector<std::uint32_t> lr;
        for (std::uint32_t x = 1; x < f_.q(); ++x) {
            const FieldElement x2 = f_.square({x});
            const FieldElement rest = f_.add(f_.one(), f_.mul(a, x2));
            if (rest.code == 0) {
                continue;
            }
            lx.push_back(static_cast<std::uint32_t>(f_.dlog(x2)));
            lr.push_back(static_cast<std::uint32_t>(f_.dlog(rest)));
        }
        return {std::move(lx), std::move(lr)};
    }

    const FieldCtx& f_;
    std::uint32_t n_;
    BinomialTable table_;
};

}  // namespace huffhyp
