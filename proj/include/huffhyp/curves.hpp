#pragma once

// Brute-force point counts on the curve models
//
//   general Huff  G_{a,b}: x(a y^2 - 1) = y(b x^2 - 1),  ab(a - b) != 0
//   Huff          H_{a,b}: a x(y^2 - 1) = b y(x^2 - 1),  ab != 0, a^2 != b^2
//   Weierstrass   E_{a,b}: y^2 = x(x + a)(x + b),        ab(a - b) != 0
//   Edwards       E_{d2}:  x^2 + y^2 = 1 + d2 x^2 y^2,   d2 != 0, 1
//
// and the birational maps between them. These counts are the ground truth
// the character-sum side is checked against.

#include "huffhyp/chars.hpp"
#include "huffhyp/ff.hpp"

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace huffhyp {

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GeneralHuffParams {
    FieldElement a;
    FieldElement b;
};

struct HuffParams {
    FieldElement a;
    FieldElement b;
};

struct WeierstrassABParams {
    FieldElement a;
    FieldElement b;
};

struct EdwardsParams {
    FieldElement d2;
};

struct CurveCount {
    std::int64_t affine = 0;
    std::int64_t at_infinity = 0;
    std::int64_t total = 0;

    friend bool operator==(const CurveCount&, const CurveCount&) = default;
};

inline void validate(const FieldCtx& f, const GeneralHuffParams& g)
{
    if (!f.contains(g.a) || !f.contains(g.b)) {
        throw ParameterError("general Huff parameters are not field elements");
    }
    if (g.a.code == 0 || g.b.code == 0 || g.a == g.b) {
        throw ParameterError("general Huff curve needs ab(a-b) != 0");
    }
}

inline void validate(const FieldCtx& f, const HuffParams& h)
{
    if (!f.contains(h.a) || !f.contains(h.b)) {
        throw ParameterError("Huff parameters are not field elements");
    }
    if (h.a.code == 0 || h.b.code == 0) {
        throw ParameterError("Huff curve needs a, b != 0");
    }
    if (f.square(h.a) == f.square(h.b)) {
        throw ParameterError("Huff curve needs a^2 != b^2");
    }
}

inline void validate(const FieldCtx& f, const WeierstrassABParams& w)
{
    if (!f.contains(w.a) || !f.contains(w.b)) {
        throw ParameterError("Weierstrass parameters are not field elements");
    }
    if (w.a.code == 0 || w.b.code == 0 || w.a == w.b) {
        throw ParameterError("y^2 = x(x+a)(x+b) needs distinct nonzero a, b");
    }
}

inline void validate(const FieldCtx& f, const EdwardsParams& e)
{
    if (!f.contains(e.d2)) {
        throw ParameterError("Edwards parameter is not a field element");
    }
    if (e.d2.code == 0 || e.d2 == f.one()) {
        throw ParameterError("Edwards curve needs d2 != 0, 1");
    }
}

/// Affine solutions by full scan plus the three points (1:0:0), (0:1:0), (a:b:0).
inline CurveCount count_general_huff(const FieldCtx& f, const GeneralHuffParams& g)
{
    validate(f, g);
    std::int64_t affine = 0;
    const FieldElement one = f.one();
    for (std::uint32_t xc = 0; xc < f.q(); ++xc) {
        const FieldElement x = {xc};
        const FieldElement rhs_factor = f.sub(f.mul(g.b, f.square(x)), one);  // b x^2 - 1
        for (std::uint32_t yc = 0; yc < f.q(); ++yc) {
            const FieldElement y = {yc};
            const FieldElement lhs = f.mul(x, f.sub(f.mul(g.a, f.square(y)), one));
            if (lhs == f.mul(y, rhs_factor)) {
                ++affine;
            }
        }
    }
    return {affine, 3, affine + 3};
}

/// Affine solutions by full scan; the closure meets Z = 0 in XY(aY - bX) = 0, three points.
inline CurveCount count_huff(const FieldCtx& f, const HuffParams& h)
{
    validate(f, h);
    std::int64_t affine = 0;
    const FieldElement one = f.one();
    for (std::uint32_t xc = 0; xc < f.q(); ++xc) {
        const FieldElement x = {xc};
        const FieldElement right = f.mul(h.b, f.sub(f.square(x), one));  // b (x^2 - 1)
        const FieldElement ax = f.mul(h.a, x);
        for (std::uint32_t yc = 0; yc < f.q(); ++yc) {
            const FieldElement y = {yc};
            if (f.mul(ax, f.sub(f.square(y), one)) == f.mul(y, right)) {
                ++affine;
            }
        }
    }
    return {affine, 3, affine + 3};
}

/// Affine solutions of y^2 = x(x+a)(x+b) by scanning y for each x, plus one point at infinity.
inline CurveCount count_weierstrass(const FieldCtx& f, const WeierstrassABParams& w)
{
    validate(f, w);
    std::int64_t affine = 0;
    for (std::uint32_t xc = 0; xc < f.q(); ++xc) {
        const FieldElement x = {xc};
        const FieldElement rhs = f.mul(x, f.mul(f.add(x, w.a), f.add(x, w.b)));
        for (std::uint32_t yc = 0; yc < f.q(); ++yc) {
            if (f.square({yc}) == rhs) {
                ++affine;
            }
        }
    }
    return {affine, 1, affine + 1};
}

/// Affine solutions only; the four axis points (0, +-1), (+-1, 0) are always among them.
inline std::int64_t count_edwards_affine(const FieldCtx& f, const EdwardsParams& e)
{
    validate(f, e);
    std::int64_t affine = 0;
    const FieldElement one = f.one();
    for (std::uint32_t xc = 0; xc < f.q(); ++xc) {
        const FieldElement x2 = f.square({xc});
        const FieldElement dx2 = f.mul(e.d2, x2);
        for (std::uint32_t yc = 0; yc < f.q(); ++yc) {
            const FieldElement y2 = f.square({yc});
            if (f.add(x2, y2) == f.add(one, f.mul(dx2, y2))) {
                ++affine;
            }
        }
    }
    return affine;
}

/// Count through the completed-square form Y^2 = (b^2 x^4 + (4a - 2b) x^2 + 1)/(4 a^2 x^2):
/// total = 3 (infinity) + 1 (the point with x = 0) + (q - 1) + sum_{x != 0} phi(quartic).
inline CurveCount count_general_huff_quartic(const FieldCtx& f, const GeneralHuffParams& g)
{
    validate(f, g);
    const Character phi = Character::quadratic(f);
    const FieldElement b2 = f.square(g.b);
    const FieldElement mid = f.sub(f.mul(f.from_int(4), g.a), f.mul(f.from_int(2), g.b));
    std::int64_t sum = 0;
    for (std::uint32_t xc = 1; xc < f.q(); ++xc) {
        const FieldElement x2 = f.square({xc});
        const FieldElement quartic = f.add(f.add(f.mul(b2, f.square(x2)), f.mul(mid, x2)), f.one());
        sum += phi.sign(quartic);
    }
    const std::int64_t affine = 1 + (static_cast<std::int64_t>(f.q()) - 1) + sum;
    return {affine, 3, affine + 3};
}

// ---------------------------------------------------------------------------
// Birational maps

enum class Model { general_huff, huff, weierstrass, edwards };

inline std::string to_string(Model m)
{
    switch (m) {
    case Model::general_huff:
        return "ghuff";
    case Model::huff:
        return "huff";
    case Model::weierstrass:
        return "weier";
    case Model::edwards:
        return "edwards";
    }
    return "?";
}

inline Model parse_model(const std::string& s)
{
    if (s == "ghuff") {
        return Model::general_huff;
    }
    if (s == "huff") {
        return Model::huff;
    }
    if (s == "weier") {
        return Model::weierstrass;
    }
    if (s == "edwards") {
        return Model::edwards;
    }
    throw std::invalid_argument("unknown curve model '" + s + "'");
}

using AffinePoint = std::pair<FieldElement, FieldElement>;

struct MapReport {
    std::int64_t source_points = 0;       // affine points of the source curve
    std::int64_t mapped = 0;              // points where every denominator is nonzero
    std::int64_t exceptional_source = 0;  // points with a vanishing denominator
    std::int64_t exceptional_target = 0;  // affine target points not hit by any image
    bool injective = true;
    bool images_on_target = true;
};

namespace detail {

template <typename Pred>
std::vector<AffinePoint> affine_points(const FieldCtx& f, Pred&& on_curve)
{
    std::vector<AffinePoint> pts;
    for (std::uint32_t xc = 0; xc < f.q(); ++xc) {
        for (std::uint32_t yc = 0; yc < f.q(); ++yc) {
            if (on_curve(FieldElement{xc}, FieldElement{yc})) {
                pts.emplace_back(FieldElement{xc}, FieldElement{yc});
            }
        }
    }
    return pts;
}

}  // namespace detail

/// Applies the rational map source -> target point by point. (a, b) are the
/// parameters of the Huff-type side:
///   ghuff <-> weier    G_{a,b} <-> E_{a,b}: u = (bx - ay)/(y - x), v = (b - a)/(y - x);
///                      x = (u + a)/v, y = (u + b)/v
///   huff  <-> ghuff    H_{a,b} <-> G_{a^2,b^2}: (x, y) -> (x/b, y/a)
///   huff  <-> edwards  H_{a,b} <-> E_{d^2}, d = (a - b)/(a + b):
///                      X = (bx - ay)/(b - a), Y = (a + b)(x - y)/((b - a)(x + y))
inline MapReport map_points(const FieldCtx& f, Model source, Model target, FieldElement a, FieldElement b)
{
    const FieldElement one = f.one();
    auto on_ghuff = [&](FieldElement ga, FieldElement gb) {
        return [&f, one, ga, gb](FieldElement x, FieldElement y) {
            return f.mul(x, f.sub(f.mul(ga, f.square(y)), one)) == f.mul(y, f.sub(f.mul(gb, f.square(x)), one));
        };
    };
    auto on_weier = [&](FieldElement wa, FieldElement wb) {
        return [&f, wa, wb](FieldElement u, FieldElement v) {
            return f.square(v) == f.mul(u, f.mul(f.add(u, wa), f.add(u, wb)));
        };
    };
    auto on_huff = [&f, one, a, b](FieldElement x, FieldElement y) {
        return f.mul(f.mul(a, x), f.sub(f.square(y), one)) == f.mul(f.mul(b, y), f.sub(f.square(x), one));
    };

    using Mapper = std::function<std::optional<AffinePoint>(AffinePoint)>;
    using Curve = std::function<bool(FieldElement, FieldElement)>;
    Curve src_curve;
    Curve dst_curve;
    Mapper mapper;

    auto pair_is = [&](Model s, Model t) { return source == s && target == t; };
    if (pair_is(Model::general_huff, Model::weierstrass) || pair_is(Model::weierstrass, Model::general_huff)) {
        validate(f, GeneralHuffParams{a, b});
        const Curve g = on_ghuff(a, b);
        const Curve e = on_weier(a, b);
        if (source == Model::general_huff) {
            src_curve = g;
            dst_curve = e;
            mapper = [&f, a, b](AffinePoint pt) -> std::optional<AffinePoint> {
                const auto [x, y] = pt;
                const FieldElement den = f.sub(y, x);
                if (den.code == 0) {
                    return std::nullopt;
                }
                const FieldElement inv = f.inv(den);
                return AffinePoint{f.mul(f.sub(f.mul(b, x), f.mul(a, y)), inv), f.mul(f.sub(b, a), inv)};
            };
        } else {
            src_curve = e;
            dst_curve = g;
            mapper = [&f, a, b](AffinePoint pt) -> std::optional<AffinePoint> {
                const auto [u, v] = pt;
                if (v.code == 0) {
                    return std::nullopt;
                }
                const FieldElement inv = f.inv(v);
                return AffinePoint{f.mul(f.add(u, a), inv), f.mul(f.add(u, b), inv)};
            };
        }
    } else if (pair_is(Model::huff, Model::general_huff) || pair_is(Model::general_huff, Model::huff)) {
        validate(f, HuffParams{a, b});
        const Curve g = on_ghuff(f.square(a), f.square(b));
        if (source == Model::huff) {
            src_curve = on_huff;
            dst_curve = g;
            mapper = [&f, ia = f.inv(a), ib = f.inv(b)](AffinePoint pt) -> std::optional<AffinePoint> {
                return AffinePoint{f.mul(pt.first, ib), f.mul(pt.second, ia)};
            };
        } else {
            src_curve = g;
            dst_curve = on_huff;
            mapper = [&f, a, b](AffinePoint pt) -> std::optional<AffinePoint> {
                return AffinePoint{f.mul(pt.first, b), f.mul(pt.second, a)};
            };
        }
    } else if (pair_is(Model::huff, Model::edwards) || pair_is(Model::edwards, Model::huff)) {
        validate(f, HuffParams{a, b});
        const FieldElement apb = f.add(a, b);
        if (apb.code == 0) {
            throw ParameterError("Edwards map needs a + b != 0");
        }
        const FieldElement bma = f.sub(b, a);
        const FieldElement d = f.div(f.sub(a, b), apb);
        const FieldElement d2 = f.square(d);
        const Curve edw = [&f, one, d2](FieldElement x, FieldElement y) {
            const FieldElement x2 = f.square(x);
            const FieldElement y2 = f.square(y);
            return f.add(x2, y2) == f.add(one, f.mul(d2, f.mul(x2, y2)));
        };
        if (source == Model::huff) {
            src_curve = on_huff;
            dst_curve = edw;
            mapper = [&f, a, b, apb, bma](AffinePoint pt) -> std::optional<AffinePoint> {
                const auto [x, y] = pt;
                const FieldElement s = f.add(x, y);
                if (s.code == 0) {
                    return std::nullopt;
                }
                const FieldElement ex = f.div(f.sub(f.mul(b, x), f.mul(a, y)), bma);
                const FieldElement ey = f.div(f.mul(apb, f.sub(x, y)), f.mul(bma, s));
                return AffinePoint{ex, ey};
            };
        } else {
            src_curve = edw;
            dst_curve = on_huff;
            mapper = [&f, one, apb, bma](AffinePoint pt) -> std::optional<AffinePoint> {
                const auto [ex, ey] = pt;
                const FieldElement den = f.add(one, ey);
                if (den.code == 0) {
                    return std::nullopt;
                }
                const FieldElement k = f.div(f.mul(bma, ey), apb);
                const FieldElement t = f.div(ex, den);
                return AffinePoint{f.mul(f.add(one, k), t), f.mul(f.sub(one, k), t)};
            };
        }
    } else {
        throw std::invalid_argument("no map from " + to_string(source) + " to " + to_string(target));
    }

    const auto src_pts = detail::affine_points(f, src_curve);
    const auto dst_pts = detail::affine_points(f, dst_curve);
    MapReport report;
    report.source_points = static_cast<std::int64_t>(src_pts.size());
    std::set<AffinePoint> images;
    for (const auto& pt : src_pts) {
        const auto img = mapper(pt);
        if (!img) {
            ++report.exceptional_source;
            continue;
        }
        ++report.mapped;
        if (!dst_curve(img->first, img->second)) {
            report.images_on_target = false;
        }
        if (!images.insert(*img).second) {
            report.injective = false;
        }
    }
    for (const auto& pt : dst_pts) {
        if (!images.contains(pt)) {
            ++report.exceptional_target;
        }
    }
    return report;
}

}  // namespace huffhyp
