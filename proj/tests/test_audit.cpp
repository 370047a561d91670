#include "huffhyp/audit.hpp"
#include "huffhyp/report.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <map>
#include <set>

using namespace huffhyp;

namespace {

const PointRecord* find_point(const IdentityReport& r, std::uint32_t q, std::optional<std::uint32_t> a,
                              std::optional<std::uint32_t> b, std::optional<std::uint32_t> lambda = std::nullopt)
{
    for (const auto& rec : r.records) {
        auto matches = [](const std::optional<Param>& p, std::optional<std::uint32_t> v) {
            if (!v) {
                return !p.has_value();
            }
            return p.has_value() && p->value.code == *v;
        };
        if (rec.q == q && matches(rec.a, a) && matches(rec.b, b) && matches(rec.lambda, lambda)) {
            return &rec;
        }
    }
    return nullptr;
}

std::map<std::string, bool> statuses(const std::vector<IdentityReport>& reports)
{
    std::map<std::string, bool> out;
    for (const auto& r : reports) {
        out[r.id] = r.pass();
    }
    return out;
}

}  // namespace

TEST(Registry, Structure)
{
    const auto& reg = registry();
    EXPECT_GE(reg.size(), 15u);
    std::set<std::string> ids;
    for (const auto& id : reg) {
        EXPECT_TRUE(ids.insert(id.id).second) << "duplicate " << id.id;
        EXPECT_TRUE(id.lhs && id.rhs) << id.id;
        if (id.provenance == Provenance::printed) {
            EXPECT_FALSE(id.counterpart.empty()) << id.id;
        }
    }
    for (const char* required : {"T4.1", "C4.2", "C5.1", "T5.2a", "T5.2b", "T5.2c", "T5.3a", "T5.3b", "C1", "C2",
                                 "C3", "C4a", "C4b", "C4c", "C5.3", "G-reflect", "G-ratio", "G-316", "O-minus1"}) {
        EXPECT_EQ(ids.count(required), 1u) << required;
    }
    for (const auto& id : reg) {
        if (id.provenance == Provenance::printed) {
            EXPECT_EQ(ids.count(id.counterpart), 1u) << id.id << " -> " << id.counterpart;
        }
    }
    EXPECT_THROW(find_identity("T9.9"), UnknownIdentity);
}

TEST(AuditIdentity, RejectsBadFieldSizes)
{
    EXPECT_THROW(audit_identity("C1", {15}), std::invalid_argument);
    EXPECT_THROW(audit_identity("C1", {8}), std::invalid_argument);
    EXPECT_THROW(audit_identity("C1", {70001}), std::invalid_argument);
    EXPECT_THROW(audit_identity("nope", {5}), UnknownIdentity);
}

TEST(AuditIdentity, PrintedGeneralHuffCount)
{
    const IdentityReport r = audit_identity("T4.1", {5});
    EXPECT_FALSE(r.pass());
    const PointRecord* p14 = find_point(r, 5, 1, 4);
    ASSERT_NE(p14, nullptr);
    EXPECT_EQ(p14->lhs, Rat(8));
    EXPECT_EQ(p14->rhs, Rat(7));
    EXPECT_EQ(p14->residual, Rat(1));
    const PointRecord* p12 = find_point(r, 5, 1, 2);
    ASSERT_NE(p12, nullptr);
    EXPECT_EQ(p12->rhs, make_rat(23, 2));
    EXPECT_EQ(p12->residual, make_rat(-7, 2));
    // the printed count is not even an integer when b/a is a non-square
    const FieldCtx f = make_field(5, 1);
    for (const auto& rec : r.records) {
        if (f.is_square(f.div(rec.b->value, rec.a->value))) {
            EXPECT_TRUE(is_integer(rec.rhs));
        } else {
            EXPECT_FALSE(is_integer(rec.rhs));
        }
    }
}

TEST(AuditIdentity, PrintedHuffCount)
{
    const IdentityReport r = audit_identity("C4.2", {5});
    const PointRecord* p = find_point(r, 5, 1, 2);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->lhs, Rat(8));
    EXPECT_EQ(p->rhs, Rat(7));
    EXPECT_FALSE(r.pass());
}

TEST(AuditIdentity, PrintedQuadraticTransformation)
{
    const IdentityReport r = audit_identity("T5.2b", {13});
    const PointRecord* p = find_point(r, 13, std::nullopt, std::nullopt, 2);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->lhs, make_rat(2, 13));
    EXPECT_EQ(p->rhs, make_rat(38, 169));
    EXPECT_EQ(p->residual, make_rat(-12, 169));
    const IdentityReport c = audit_identity("C4b", {13});
    const PointRecord* pc = find_point(c, 13, std::nullopt, std::nullopt, 2);
    ASSERT_NE(pc, nullptr);
    EXPECT_TRUE(pc->pass);
    EXPECT_TRUE(c.pass());
}

TEST(AuditIdentity, CorrectedWeierstrassCount)
{
    const IdentityReport r = audit_identity("C1", {5, 7, 9, 11, 13});
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.fields, (std::vector<std::uint32_t>{5, 7, 9, 11, 13}));
    std::size_t expected = 0;
    for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
        expected += (q - 1) * (q - 2);
    }
    EXPECT_EQ(r.records.size(), expected);
}

TEST(AuditIdentity, CorrectedCountsAgreeWithOracle)
{
    // the corrected right-hand sides against schoolbook counts
    const IdentityReport c1 = audit_identity("C1", {7});
    const IdentityReport c3 = audit_identity("C3", {7});
    const oracle::Field o(7);
    for (const auto& rec : c1.records) {
        EXPECT_EQ(rec.rhs, Rat(oracle::count_weierstrass(o, rec.a->value.code, rec.b->value.code)));
    }
    for (const auto& rec : c3.records) {
        EXPECT_EQ(rec.rhs, Rat(oracle::count_huff(o, rec.a->value.code, rec.b->value.code)));
    }
}

TEST(AuditIdentity, PrimeOnlyDomainsSkipExtensions)
{
    const IdentityReport r = audit_identity("O-minus1", {5, 9, 13, 25});
    EXPECT_EQ(r.fields, (std::vector<std::uint32_t>{5, 13}));
    EXPECT_EQ(r.records.size(), 2u);
    EXPECT_TRUE(r.pass());
    const IdentityReport s = audit_identity("C5.3", {5, 7, 13});
    EXPECT_EQ(s.records.size(), 4u);  // two square roots of -1 for p = 5 and 13
    EXPECT_TRUE(s.pass());
}

TEST(AuditIdentity, CounterexampleCap)
{
    AuditOptions opts;
    opts.counterexample_cap = 3;
    BundleCache cache;
    const IdentityReport r = audit_identity(find_identity("T4.1"), {5, 7}, cache, opts);
    EXPECT_EQ(r.counterexamples.size(), 3u);
    EXPECT_TRUE(r.truncated);
    EXPECT_GT(r.failures, 3u);
    const IdentityReport full = audit_identity("T4.1", {5});
    EXPECT_FALSE(full.truncated);
    EXPECT_EQ(full.counterexamples.size(), full.failures);
}

TEST(AuditIdentity, PassIffResidualZero)
{
    for (const auto& r : sweep(11)) {
        std::size_t fails = 0;
        for (const auto& rec : r.records) {
            EXPECT_EQ(rec.pass, rec.residual == 0);
            EXPECT_EQ(rec.residual, rec.lhs - rec.rhs);
            fails += !rec.pass;
        }
        EXPECT_EQ(fails, r.failures);
        EXPECT_EQ(r.pass(), r.counterexamples.empty());
    }
}

TEST(Sweep, ProvenanceOutcomesAtThirteen)
{
    for (const auto& [id, ok] : statuses(sweep(13, Provenance::corrected))) {
        EXPECT_TRUE(ok) << id;
    }
    for (const auto& [id, ok] : statuses(sweep(13, Provenance::greene))) {
        EXPECT_TRUE(ok) << id;
    }
    for (const auto& [id, ok] : statuses(sweep(13, Provenance::ono))) {
        EXPECT_TRUE(ok) << id;
    }
    const auto printed = statuses(sweep(13, Provenance::printed));
    for (const char* id : {"T4.1", "C4.2", "C5.1", "T5.2a", "T5.2b", "T5.2c", "T5.3a", "T5.3b"}) {
        EXPECT_FALSE(printed.at(id)) << id;
    }
    EXPECT_THROW(sweep(70000), std::invalid_argument);
}

TEST(Sweep, RecordsAreSortedAndScheduleIndependent)
{
    AuditOptions serial;
    AuditOptions parallel;
    parallel.jobs = 4;
    const auto a = sweep(13, std::nullopt, serial);
    const auto b = sweep(13, std::nullopt, parallel);
    EXPECT_EQ(emit(a, "json"), emit(b, "json"));
    EXPECT_EQ(emit(a, "csv"), emit(b, "csv"));
    for (const auto& r : a) {
        for (std::size_t i = 1; i < r.records.size(); ++i) {
            const auto& x = r.records[i - 1];
            const auto& y = r.records[i];
            auto key = [](const PointRecord& p) {
                return std::make_tuple(p.q, p.a ? p.a->value.code : 0u, p.b ? p.b->value.code : 0u,
                                       p.lambda ? p.lambda->value.code : 0u);
            };
            EXPECT_LT(key(x), key(y)) << r.id;
        }
    }
}

TEST(Emit, JsonSchema)
{
    const IdentityReport r = audit_identity("T4.1", {5});
    const auto doc = nlohmann::ordered_json::parse(emit({r}, "json"));
    ASSERT_TRUE(doc.is_array());
    ASSERT_EQ(doc.size(), r.records.size() + 1);
    bool found = false;
    for (const auto& row : doc) {
        if (row.contains("summary")) {
            EXPECT_EQ(row["status"], "FAIL");
            EXPECT_EQ(row["failures"], r.failures);
            continue;
        }
        if (row["a"] == 1 && row["b"] == 4) {
            found = true;
            EXPECT_EQ(row.dump(), R"({"identity":"T4.1","q":5,"a":1,"b":4,"lhs":"8/1","rhs":"7/1","residual":"1/1","pass":false})");
        }
    }
    EXPECT_TRUE(found);
}

TEST(Emit, ExtensionFieldElementsAreTuples)
{
    const IdentityReport r = audit_identity("G-reflect", {9});
    const auto doc = nlohmann::json::parse(emit({r}, "json"));
    EXPECT_TRUE(doc[0]["lambda"].is_string());
    EXPECT_NE(doc[0]["lambda"].get<std::string>().find(','), std::string::npos);
    const std::string csv = emit({r}, "csv");
    EXPECT_NE(csv.find("\"0,2\""), std::string::npos);
}

TEST(Emit, CsvAndEmptyReports)
{
    EXPECT_EQ(emit({}, "json"), "[]\n");
    EXPECT_EQ(emit({}, "csv"), "identity,q,a,b,lambda,lhs,rhs,residual,pass\r\n");
    EXPECT_THROW(emit({}, "xml"), std::invalid_argument);
    const std::string csv = emit({audit_identity("T4.1", {5})}, "csv");
    EXPECT_NE(csv.find("T4.1,5,1,4,,8/1,7/1,1/1,false\r\n"), std::string::npos);
    EXPECT_NE(csv.find("T4.1,,,,,,,,FAIL\r\n"), std::string::npos);
}
